//! Two-body mechanics on the 3-sphere and on Lobachevsky space, written in
//! quaternions over the double and complex numbers.
//!
//! The core types are generic over the scalar ([`Real`] is implemented for
//! `f32` and `f64`); the `*64` aliases below fix `f64`, which is what the
//! tolerances in the test-suites are calibrated for.

pub mod biquaternion;
pub mod dynamics;
pub mod error;
pub mod kinematics;
pub mod ring;
pub mod sampling;
pub mod scalar;
pub mod space;
pub mod state;
pub mod vec3;

pub use biquaternion::Biquaternion;
pub use error::{Error, Result};
pub use ring::{RingScalar, RingVector3, SpaceSign};
pub use scalar::{real, Real};
pub use space::{ChartPoint, Isometry, PairVector};
pub use state::{Masses, PhaseState};
pub use vec3::Vec3;

pub type Biquaternion64 = Biquaternion<f64>;
pub type RingScalar64 = RingScalar<f64>;
pub type RingVector64 = RingVector3<f64>;
pub type ChartPoint64 = ChartPoint<f64>;
pub type PairVector64 = PairVector<f64>;
pub type Isometry64 = Isometry<f64>;
pub type Vec3f64 = Vec3<f64>;
pub type PhaseState64 = PhaseState<f64>;
pub type Masses64 = Masses<f64>;
pub type TwoBodyConfig64 = kinematics::TwoBodyConfig<f64>;
