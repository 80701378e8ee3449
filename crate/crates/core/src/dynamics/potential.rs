//! Central potentials of the geodesic separation.

use crate::error::{Error, Result};
use crate::ring::SpaceSign;
use crate::scalar::{real, to_f64, Real};

/// Distance from a singular separation at which evaluation is refused.
pub const POTENTIAL_GUARD: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PotentialSpec<T> {
    Free,
    /// `-alpha cot r` (`-alpha coth r`).
    Coulomb { alpha: T },
    /// `omega^2 / 2 tan^2 r` (`tanh^2 r`).
    Oscillator { omega: T },
}

impl<T: Real> PotentialSpec<T> {
    pub fn name(&self) -> &'static str {
        match self {
            PotentialSpec::Free => "free",
            PotentialSpec::Coulomb { .. } => "coulomb",
            PotentialSpec::Oscillator { .. } => "oscillator",
        }
    }

    /// Whether the potential diverges as the particles meet.
    pub fn singular_at_contact(&self) -> bool {
        matches!(self, PotentialSpec::Coulomb { .. })
    }

    /// `(V(r), dV/dr)`.
    pub fn eval(&self, sign: SpaceSign, r: T) -> Result<(T, T)> {
        let guard = real::<T>(POTENTIAL_GUARD);
        let singular = || Err(Error::PotentialSingularity { r: to_f64(r) });
        if !r.is_finite() {
            return singular();
        }
        let two = T::one() + T::one();
        match *self {
            PotentialSpec::Free => Ok((T::zero(), T::zero())),
            PotentialSpec::Coulomb { alpha } => {
                if r <= guard || (sign == SpaceSign::Sphere && (T::PI() - r).abs() <= guard) {
                    return singular();
                }
                let s = sign.sin(r);
                Ok((-alpha * sign.cos(r) / s, alpha / (s * s)))
            }
            PotentialSpec::Oscillator { omega } => {
                if sign == SpaceSign::Sphere && (r - T::FRAC_PI_2()).abs() <= guard {
                    return singular();
                }
                let t = sign.tan(r);
                let c = sign.cos(r);
                let w2 = omega * omega;
                Ok((w2 / two * t * t, w2 * t / (c * c)))
            }
        }
    }

    pub fn value(&self, sign: SpaceSign, r: T) -> Result<T> {
        Ok(self.eval(sign, r)?.0)
    }
}
