use thiserror::Error;

use crate::ring::SpaceSign;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("operands carry different space signs ({left:?} vs {right:?})")]
    SignMismatch { left: SpaceSign, right: SpaceSign },

    #[error("zero divisor: double number {re} + {im}u has vanishing modulus")]
    ZeroDivisor { re: f64, im: f64 },

    #[error("ring element is zero and cannot be inverted")]
    NonInvertible,

    #[error("square root requires a real positive ring element, got {re} + {im}u")]
    SqrtDomain { re: f64, im: f64 },

    #[error("lightlike element: norm vanishes")]
    NullNorm,

    #[error("norm is not real ({re} + {im}u)")]
    NonRealNorm { re: f64, im: f64 },

    #[error("point lies on the lower sheet (X0 = {x0})")]
    WrongSheet { x0: f64 },

    #[error("biquaternion is not of Minkowski type")]
    NotMinkowski,

    #[error("chart point outside the domain (lambda = {lambda})")]
    ChartDomain { lambda: f64 },

    #[error("point at chart infinity (X0 = 0)")]
    EquatorSingularity,

    #[error("vector addition denominator is not invertible")]
    NonInvertibleDenominator,

    #[error("distance argument {value} outside the admissible domain")]
    NumericalDomain { value: f64 },

    #[error("transformation is not unit (|A Abar - 1| = {deviation})")]
    NotUnit { deviation: f64 },

    #[error("center of mass is degenerate (norm {norm})")]
    DegenerateCM { norm: f64 },

    #[error("relative variable reaches chart infinity (scalar part {scalar})")]
    ChartInfinity { scalar: f64 },

    #[error("points coincide (r = {r}); relative axis undefined")]
    CoincidentPoints { r: f64 },

    #[error("potential is singular at r = {r}")]
    PotentialSingularity { r: f64 },

    #[error("trajectory left the chart after sample {last_valid}")]
    ChartExit { last_valid: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
