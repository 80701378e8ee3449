//! Kinetic energy in its various forms, potentials and time integration.

pub mod audit;
pub mod eom;
pub mod integrate;
pub mod kinetic;
pub mod polar;
pub mod potential;

pub use audit::{kinetic_audit, FormPair, KineticReport};
pub use eom::eom_rhs;
pub use integrate::{integrate, rk4_step, IntegratorSettings, Sample, Trajectory};
pub use kinetic::{
    kinetic_chart, kinetic_cm_rel, kinetic_embedding, kinetic_y12, CmRelKinetic, FormValue, XcTermSign,
};
pub use polar::{
    calibrate, kinetic_equal_mass, kinetic_polar, kinetic_small_r, polar_decompose, BracketDenominator,
    BracketSign, Calibration, CorrectionFlags, LineJoin, PolarRelative,
};
pub use potential::PotentialSpec;
