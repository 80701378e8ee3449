//! Equations of motion in Beltrami coordinates.
//!
//! Each particle follows `a = -Gamma(w, w) - g^-1 grad V / m`, with the
//! gradient taken through `cos r = (1 + sigma v1.v2) / sqrt(lambda1 lambda2)`.

use crate::dynamics::potential::PotentialSpec;
use crate::error::Result;
use crate::ring::SpaceSign;
use crate::space::chart::mat_vec;
use crate::space::{distance_cosine, distance_from_cosine};
use crate::state::{Masses, PhaseState};
use crate::scalar::Real;
use crate::vec3::Vec3;

/// Gradients of `cos r` (`cosh r`) with respect to `v1` and `v2`.
pub fn cosine_gradients<T: Real>(state: &PhaseState<T>) -> Result<(Vec3<T>, Vec3<T>)> {
    let sigma = state.sign.sigma_as::<T>();
    let l1 = state.p1().checked_lambda()?;
    let l2 = state.p2().checked_lambda()?;
    let c = distance_cosine(&state.p1(), &state.p2())?;
    let root = (l1 * l2).sqrt().recip();
    let g1 = state.v2.scale(sigma * root) - state.v1.scale(c * sigma / l1);
    let g2 = state.v1.scale(sigma * root) - state.v2.scale(c * sigma / l2);
    Ok((g1, g2))
}

/// `(dV/dv1, dV/dv2)` and the separation `r`.
pub fn potential_gradients<T: Real>(
    state: &PhaseState<T>,
    potential: &PotentialSpec<T>,
) -> Result<(Vec3<T>, Vec3<T>)> {
    if let PotentialSpec::Free = potential {
        return Ok((Vec3::zero(), Vec3::zero()));
    }
    let c = distance_cosine(&state.p1(), &state.p2())?;
    let r = distance_from_cosine(state.sign, c)?;
    let (_, dv) = potential.eval(state.sign, r)?;
    if dv == T::zero() {
        return Ok((Vec3::zero(), Vec3::zero()));
    }
    // dr/dc = -1/sin r (sphere), 1/sinh r (Lobachevsky)
    let s = state.sign.sin(r);
    let dr_dc = match state.sign {
        SpaceSign::Sphere => -s.recip(),
        SpaceSign::Hyperbolic => s.recip(),
    };
    let (g1, g2) = cosine_gradients(state)?;
    let k = dv * dr_dc;
    Ok((g1.scale(k), g2.scale(k)))
}

/// Chart accelerations of both particles.
pub fn eom_rhs<T: Real>(
    state: &PhaseState<T>,
    masses: &Masses<T>,
    potential: &PotentialSpec<T>,
) -> Result<(Vec3<T>, Vec3<T>)> {
    let (p1, p2) = (state.p1(), state.p2());
    let mut a1 = p1.geodesic_acceleration(&state.w1)?;
    let mut a2 = p2.geodesic_acceleration(&state.w2)?;
    let (f1, f2) = potential_gradients(state, potential)?;
    if f1.max_abs() > T::zero() || f2.max_abs() > T::zero() {
        a1 = a1 - mat_vec(&p1.inverse_metric()?, &f1).scale(masses.m1.recip());
        a2 = a2 - mat_vec(&p2.inverse_metric()?, &f2).scale(masses.m2.recip());
    }
    Ok((a1, a2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn cosine_gradient_matches_finite_differences() {
        let h = 1e-6;
        for s in SpaceSign::BOTH {
            let st = PhaseState::new(
                Vec3::new(0.2, -0.1, 0.3),
                Vec3::new(-0.25, 0.3, 0.1),
                Vec3::zero(),
                Vec3::zero(),
                s,
            )
            .unwrap();
            let (g1, g2) = cosine_gradients(&st).unwrap();
            for i in 0..3 {
                let mut a = st;
                let mut b = st;
                a.v1.0[i] += h;
                b.v1.0[i] -= h;
                let fd = (distance_cosine(&a.p1(), &a.p2()).unwrap()
                    - distance_cosine(&b.p1(), &b.p2()).unwrap())
                    / (2.0 * h);
                assert_relative_eq!(g1[i], fd, max_relative = 1e-8);
                let mut a = st;
                let mut b = st;
                a.v2.0[i] += h;
                b.v2.0[i] -= h;
                let fd = (distance_cosine(&a.p1(), &a.p2()).unwrap()
                    - distance_cosine(&b.p1(), &b.p2()).unwrap())
                    / (2.0 * h);
                assert_relative_eq!(g2[i], fd, max_relative = 1e-8);
            }
        }
    }

    #[test]
    fn free_motion_is_geodesic() {
        let st = PhaseState::new(
            Vec3::new(0.2, 0.0, 0.0),
            Vec3::new(0.0, 0.5, 0.0),
            Vec3::new(0.1, 0.3, 0.0),
            Vec3::zero(),
            SpaceSign::Sphere,
        )
        .unwrap();
        let m = Masses::new(1.0, 1.0).unwrap();
        let (a1, a2) = eom_rhs(&st, &m, &PotentialSpec::Free).unwrap();
        assert_eq!(a1, st.p1().geodesic_acceleration(&st.w1).unwrap());
        assert_eq!(a2, Vec3::zero());
    }
}
