//! Kinetic energy in embedding, chart and center-of-mass/relative form.
//!
//! Ground truth is `T = 1/2 sum_i m_i Re(dXi bar(dXi))`, which equals the
//! chart quadratic form `1/2 sum_i m_i g(v_i)(w_i, w_i)`. Substituting
//! `Xi = Yi Xc` gives, per particle,
//!
//! ```text
//! dXi bar(dXi) = sigma dYi bar(dYi) + dXc bar(dXc)
//!              + Yi dXc bar(Xc) bar(dYi) + dYi Xc bar(dXc) bar(Yi)
//! ```
//!
//! The last two terms couple relative and center-of-mass motion.

use crate::biquaternion::Biquaternion;
use crate::error::Result;
use crate::kinematics::{Decomposition, TwoBodyConfig};
use crate::ring::SpaceSign;
use crate::scalar::Real;
use crate::space::chart::quadratic_form;
use crate::state::{Masses, PhaseState};

/// Sign multiplying a `dXc bar(dXc)` term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum XcTermSign {
    /// `+` on the sphere, `-` on Lobachevsky space (the printed "upper/lower").
    Printed,
    /// `+` in both spaces, as obtained by direct substitution.
    Positive,
}

impl XcTermSign {
    pub fn value<T: Real>(self, sign: SpaceSign) -> T {
        match self {
            XcTermSign::Printed => sign.sigma_as(),
            XcTermSign::Positive => T::one(),
        }
    }
}

/// Scalar value of a biquaternion-valued kinetic expression together with
/// the size of everything that is not its real scalar part.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FormValue<T> {
    pub value: T,
    pub nonscalar_residual: T,
}

impl<T: Real> FormValue<T> {
    /// Halves a full `L'`-type biquaternion (which is twice the kinetic
    /// energy) into kinetic-energy scale.
    pub(crate) fn from_twice(total: Biquaternion<T>) -> Self {
        let half = (T::one() + T::one()).recip();
        Self {
            value: total.s.re * half,
            nonscalar_residual: total.non_real_magnitude() * half,
        }
    }
}

/// `1/2 sum m_i Re(dXi bar dXi)`.
pub fn kinetic_embedding<T: Real>(state: &PhaseState<T>, masses: &Masses<T>) -> Result<T> {
    Ok(kinetic_embedding_form(state, masses)?.value)
}

pub(crate) fn kinetic_embedding_form<T: Real>(
    state: &PhaseState<T>,
    masses: &Masses<T>,
) -> Result<FormValue<T>> {
    let (d1, d2) = state.embedding_velocities()?;
    let total = (d1 * d1.bar()).scale(masses.m1) + (d2 * d2.bar()).scale(masses.m2);
    Ok(FormValue::from_twice(total))
}

/// `1/2 sum m_i g_ab(v_i) w_i^a w_i^b` with the pullback metric.
pub fn kinetic_chart<T: Real>(state: &PhaseState<T>, masses: &Masses<T>) -> Result<T> {
    let g1 = state.p1().metric_tensor()?;
    let g2 = state.p2().metric_tensor()?;
    let half = (T::one() + T::one()).recip();
    Ok(half * (masses.m1 * quadratic_form(&g1, &state.w1) + masses.m2 * quadratic_form(&g2, &state.w2)))
}

/// Chart kinetic energy with the literally printed metric. Audit only.
pub fn kinetic_chart_literal_metric<T: Real>(state: &PhaseState<T>, masses: &Masses<T>) -> Result<T> {
    let g1 = state.p1().metric_tensor_literal()?;
    let g2 = state.p2().metric_tensor_literal()?;
    let half = (T::one() + T::one()).recip();
    Ok(half * (masses.m1 * quadratic_form(&g1, &state.w1) + masses.m2 * quadratic_form(&g2, &state.w2)))
}

/// Pieces of the center-of-mass/relative form.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CmRelKinetic<T> {
    pub total: FormValue<T>,
    /// Separated part: `sigma m_i dYi bar dYi` and `dXc bar dXc` terms (halved).
    pub separated: FormValue<T>,
    /// Coupling part (halved), as a full biquaternion.
    pub coupling: Biquaternion<T>,
}

impl<T: Real> CmRelKinetic<T> {
    /// Size of all coupling terms, the inseparability witness.
    pub fn cross_term_magnitude(&self) -> T {
        self.coupling.magnitude()
    }
}

/// Center-of-mass/relative kinetic form with a chosen sign on the
/// `dXc bar(dXc)` terms. The `dYi bar(dYi)` terms always carry `sigma`.
pub fn kinetic_cm_rel_with<T: Real>(
    sign: SpaceSign,
    masses: &Masses<T>,
    d: &Decomposition<T>,
    xc_sign: XcTermSign,
) -> CmRelKinetic<T> {
    let sigma = sign.sigma_as::<T>();
    let xs = xc_sign.value::<T>(sign);
    let (xc, xd) = (d.cm.xc, d.rates.xc_dot);
    let xcxc = xd * xd.bar();
    let b = xd * xc.bar();
    let b_bar = xc * xd.bar();
    let particle = |m: T, y: Biquaternion<T>, yd: Biquaternion<T>| {
        let sep = (yd * yd.bar()).scale(sigma) + xcxc.scale(xs);
        let cross = y * b * yd.bar() + yd * b_bar * y.bar();
        (sep.scale(m), cross.scale(m))
    };
    let (s1, c1) = particle(masses.m1, d.rel.y1, d.rates.y1_dot);
    let (s2, c2) = particle(masses.m2, d.rel.y2, d.rates.y2_dot);
    let half = (T::one() + T::one()).recip();
    CmRelKinetic {
        total: FormValue::from_twice(s1 + s2 + c1 + c2),
        separated: FormValue::from_twice(s1 + s2),
        coupling: (c1 + c2).scale(half),
    }
}

/// Center-of-mass/relative kinetic energy (the form that equals the
/// embedding kinetic energy).
pub fn kinetic_cm_rel<T: Real>(state: &PhaseState<T>, masses: &Masses<T>) -> Result<CmRelKinetic<T>> {
    let cfg = TwoBodyConfig::new(*masses, *state)?;
    let d = crate::kinematics::decompose(&cfg)?;
    Ok(kinetic_cm_rel_with(state.sign, masses, &d, XcTermSign::Positive))
}

/// The same form written through `Y12` alone (with `F = m1^2 + m2^2 + 2 m1 m2 Y12(0)`):
///
/// ```text
/// L' = sigma m1 m2 M dY12 bar(dY12) / F - sigma m1^2 m2^2 M dY12(0)^2 / F^2 + s_xc M dXc bar(dXc)
///    + m1 m2 / F [ m1 (Y12 B bar(dY12) + dY12 Bb bar(Y12)) + m2 (bar(Y12) B dY12 + bar(dY12) Bb Y12) ]
///    + m1 m2 / F [ m1 (B dY12 + bar(dY12) Bb) + m2 (B bar(dY12) + dY12 Bb) ]
/// ```
///
/// with `B = dXc bar(Xc)`, `Bb = Xc bar(dXc)`. `L'` is twice the kinetic
/// energy; the returned value is halved.
pub fn kinetic_y12_with<T: Real>(
    sign: SpaceSign,
    masses: &Masses<T>,
    d: &Decomposition<T>,
    xc_sign: XcTermSign,
) -> FormValue<T> {
    let sigma = sign.sigma_as::<T>();
    let Masses { m1, m2 } = *masses;
    let m = masses.total();
    let (y, yd) = (d.rel.y12, d.rates.y12_dot);
    let (xc, xd) = (d.cm.xc, d.rates.xc_dot);
    let f = masses.f_factor(y.s.re);
    let c_dot = yd.s.re;
    let b = xd * xc.bar();
    let bb = xc * xd.bar();

    let radial = (yd * yd.bar()).scale(sigma * m1 * m2 * m / f);
    let correction = sigma * m1 * m1 * m2 * m2 * m * c_dot * c_dot / (f * f);
    let com = (xd * xd.bar()).scale(xc_sign.value::<T>(sign) * m);
    let k = m1 * m2 / f;
    let line2 = (y * b * yd.bar() + yd * bb * y.bar()).scale(m1)
        + (y.bar() * b * yd + yd.bar() * bb * y).scale(m2);
    let line3 = (b * yd + yd.bar() * bb).scale(m1) + (b * yd.bar() + yd * bb).scale(m2);
    let mut total = radial + com + (line2 + line3).scale(k);
    total.s.re = total.s.re - correction;
    FormValue::from_twice(total)
}

pub fn kinetic_y12<T: Real>(state: &PhaseState<T>, masses: &Masses<T>) -> Result<FormValue<T>> {
    let cfg = TwoBodyConfig::new(*masses, *state)?;
    let d = crate::kinematics::decompose(&cfg)?;
    Ok(kinetic_y12_with(state.sign, masses, &d, XcTermSign::Positive))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vec3::Vec3;
    use approx::assert_abs_diff_eq;
    use SpaceSign::*;

    fn st(v1: [f64; 3], v2: [f64; 3], w1: [f64; 3], w2: [f64; 3], s: SpaceSign) -> PhaseState<f64> {
        PhaseState::new(Vec3(v1), Vec3(v2), Vec3(w1), Vec3(w2), s).unwrap()
    }

    #[test]
    fn at_rest_is_zero() {
        for s in SpaceSign::BOTH {
            let x = st([0.1, 0.2, 0.0], [0.0, -0.3, 0.2], [0.0; 3], [0.0; 3], s);
            let m = Masses::new(1.0, 2.0).unwrap();
            assert_eq!(kinetic_embedding(&x, &m).unwrap(), 0.0);
            assert_eq!(kinetic_chart(&x, &m).unwrap(), 0.0);
        }
    }

    #[test]
    fn unit_speed_at_origin() {
        let x = st([0.0; 3], [0.3, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0; 3], Sphere);
        let m = Masses::new(1.0, 7.0).unwrap();
        assert_abs_diff_eq!(kinetic_embedding(&x, &m).unwrap(), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn klein_metric_example() {
        let x = st([0.5, 0.0, 0.0], [0.0; 3], [1.0, 0.0, 0.0], [0.0; 3], Hyperbolic);
        let m = Masses::new(2.0, 1.0).unwrap();
        assert_abs_diff_eq!(kinetic_chart(&x, &m).unwrap(), 16.0 / 9.0, epsilon = 1e-14);
        assert_abs_diff_eq!(kinetic_embedding(&x, &m).unwrap(), 16.0 / 9.0, epsilon = 1e-14);
    }

    #[test]
    fn all_exact_forms_agree() {
        for s in SpaceSign::BOTH {
            let x = st([0.2, -0.1, 0.3], [-0.25, 0.3, 0.1], [0.5, 0.2, -0.3], [-0.1, 0.4, 0.6], s);
            let m = Masses::new(1.4, 0.8).unwrap();
            let t23 = kinetic_embedding(&x, &m).unwrap();
            assert_abs_diff_eq!(kinetic_chart(&x, &m).unwrap(), t23, epsilon = 1e-14);
            let cm = kinetic_cm_rel(&x, &m).unwrap();
            assert_abs_diff_eq!(cm.total.value, t23, epsilon = 1e-13);
            assert!(cm.total.nonscalar_residual < 1e-13);
            assert!(cm.cross_term_magnitude() > 1e-3);
            let y = kinetic_y12(&x, &m).unwrap();
            assert_abs_diff_eq!(y.value, t23, epsilon = 1e-13);
            assert!(y.nonscalar_residual < 1e-13);
        }
    }

    #[test]
    fn literal_metric_differs_off_origin() {
        let x = st([0.6, 0.0, 0.0], [0.0; 3], [1.0, 0.0, 0.0], [0.0; 3], Sphere);
        let m = Masses::new(1.0, 1.0).unwrap();
        let lit = kinetic_chart_literal_metric(&x, &m).unwrap();
        let t = kinetic_chart(&x, &m).unwrap();
        assert!((lit - t).abs() > 0.1);
    }
}
