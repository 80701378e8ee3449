//! Center of mass and relative variables of a two-body system.
//!
//! With embedding points `X1`, `X2` (so `Xi bar(Xi) = sigma`):
//!
//! ```text
//! Xc  = (m1 X1 + m2 X2) / sqrt(F),   F = m1^2 + m2^2 + 2 m1 m2 cos r   (cosh r)
//! Y12 = sigma X2 bar(X1),   Y1 = sigma X1 bar(Xc),   Y2 = sigma X2 bar(Xc)
//! ```
//!
//! so that `X2 = Y12 X1`, `Xi = Yi Xc` and `Y12 = Y2 bar(Y1)`. Relative
//! variables have unit norm. `Y1` and `Y2` depend on `Y12` only:
//! `Y1 = (m1 + m2 bar(Y12)) / sqrt(F)` and `Y2 = (m1 Y12 + m2) / sqrt(F)`.

use crate::biquaternion::Biquaternion;
use crate::error::{Error, Result};
use crate::ring::SpaceSign;
use crate::scalar::{real, to_f64, Real};
use crate::space::{vector_add, ChartPoint, PairVector};
use crate::state::{Masses, PhaseState};
use crate::vec3::Vec3;

/// Relative tolerance below which the center-of-mass norm counts as null.
pub const DEGENERATE_CM_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoBodyConfig<T> {
    pub masses: Masses<T>,
    pub state: PhaseState<T>,
}

impl<T: Real> TwoBodyConfig<T> {
    pub fn new(masses: Masses<T>, state: PhaseState<T>) -> Result<Self> {
        state.validate()?;
        Ok(Self { masses, state })
    }

    pub fn sign(&self) -> SpaceSign {
        self.state.sign
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CenterOfMass<T> {
    pub xc: Biquaternion<T>,
    pub qc: ChartPoint<T>,
    /// `sigma * norm(m1 X1 + m2 X2)`; equals `m1^2 + m2^2 + 2 m1 m2 cos r`.
    pub f: T,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RelativeSet<T> {
    pub y12: Biquaternion<T>,
    pub y1: Biquaternion<T>,
    pub y2: Biquaternion<T>,
    /// Chart of `Y12`: `(Y12 - bar Y12)(Y12 + bar Y12)^-1`.
    pub qy: PairVector<T>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KinematicRates<T> {
    pub xc_dot: Biquaternion<T>,
    pub y12_dot: Biquaternion<T>,
    pub y1_dot: Biquaternion<T>,
    pub y2_dot: Biquaternion<T>,
}

fn weighted_sum<T: Real>(cfg: &TwoBodyConfig<T>) -> Result<(Biquaternion<T>, Biquaternion<T>)> {
    let (x1, x2) = cfg.state.embeddings()?;
    let (d1, d2) = cfg.state.embedding_velocities()?;
    let Masses { m1, m2 } = cfg.masses;
    Ok((x1.scale(m1) + x2.scale(m2), d1.scale(m1) + d2.scale(m2)))
}

/// Normalised mass-weighted sum of the embedding points.
pub fn center_of_mass<T: Real>(cfg: &TwoBodyConfig<T>) -> Result<CenterOfMass<T>> {
    let (s, _) = weighted_sum(cfg)?;
    let sigma = cfg.sign().sigma_as::<T>();
    let f = sigma * s.norm().re;
    let m = cfg.masses.total();
    if !(f > real::<T>(DEGENERATE_CM_TOL) * m * m) {
        return Err(Error::DegenerateCM { norm: to_f64(f) });
    }
    let xc = s.scale(f.sqrt().recip());
    let qc = ChartPoint::from_embedding(&xc)?;
    Ok(CenterOfMass { xc, qc, f })
}

/// The chart-native center of mass: a flat weighted mean with effective
/// masses `mi / sqrt(lambda_i)`.
pub fn center_of_mass_chart<T: Real>(cfg: &TwoBodyConfig<T>) -> Result<Vec3<T>> {
    let k1 = cfg.masses.m1 / cfg.state.p1().checked_lambda()?.sqrt();
    let k2 = cfg.masses.m2 / cfg.state.p2().checked_lambda()?.sqrt();
    let den = k1 + k2;
    if !(den.abs() > T::zero()) {
        return Err(Error::DegenerateCM { norm: to_f64(den) });
    }
    Ok((cfg.state.v1.scale(k1) + cfg.state.v2.scale(k2)).scale(den.recip()))
}

pub fn relative_variables<T: Real>(
    cfg: &TwoBodyConfig<T>,
    cm: &CenterOfMass<T>,
) -> Result<RelativeSet<T>> {
    let sigma = cfg.sign().sigma_as::<T>();
    let (x1, x2) = cfg.state.embeddings()?;
    let y12 = (x2 * x1.bar()).scale(sigma);
    let y1 = (x1 * cm.xc.bar()).scale(sigma);
    let y2 = (x2 * cm.xc.bar()).scale(sigma);
    let qy = PairVector::from_biquaternion(&y12)?;
    Ok(RelativeSet { y12, y1, y2, qy })
}

/// `sqrt(1 + qy . qy)`, exact as `1 / scalar(Y12)` for a point pair.
fn relative_root<T: Real>(rel: &RelativeSet<T>) -> Result<T> {
    let c = rel.y12.s.re;
    if !(c > T::zero()) {
        return Err(Error::ChartInfinity { scalar: to_f64(c) });
    }
    Ok(c.recip())
}

/// CM-frame chart vectors of the two particles, `chart(Y1)` and `chart(Y2)`,
/// expressed through `qy`:
///
/// ```text
/// qy1 = -qy / (1 + (m1/m2) s),   qy2 = qy / (1 + (m2/m1) s),   s = sqrt(1 + qy . qy)
/// ```
///
/// These satisfy `q1 = <qy1, qc>`, `q2 = <qy2, qc>` and `qy = <qy2, -qy1>`.
pub fn per_particle_relative<T: Real>(
    masses: &Masses<T>,
    rel: &RelativeSet<T>,
) -> Result<(PairVector<T>, PairVector<T>)> {
    let (qy1, qy2) = per_particle_relative_unsigned(masses, rel)?;
    Ok((-qy1, qy2))
}

/// Same as [`per_particle_relative`] but with the first vector carrying the
/// same orientation as `qy`, as in the printed form of the first-particle
/// formula. Kept for the audit.
pub fn per_particle_relative_unsigned<T: Real>(
    masses: &Masses<T>,
    rel: &RelativeSet<T>,
) -> Result<(PairVector<T>, PairVector<T>)> {
    let s = relative_root(rel)?;
    let Masses { m1, m2 } = *masses;
    let k1 = (T::one() + m1 / m2 * s).recip();
    let k2 = (T::one() + m2 / m1 * s).recip();
    Ok((PairVector::new(rel.qy.q.scale(k1)), PairVector::new(rel.qy.q.scale(k2))))
}

/// Reconstructs both particles' chart vectors `<qy1, qc>`, `<qy2, qc>`.
pub fn reconstruct_particles<T: Real>(
    qy1: &PairVector<T>,
    qy2: &PairVector<T>,
    qc: &ChartPoint<T>,
) -> Result<(PairVector<T>, PairVector<T>)> {
    let c = PairVector::from(*qc);
    Ok((vector_add(qy1, &c)?, vector_add(qy2, &c)?))
}

/// Analytic time derivatives of `Xc`, `Y12`, `Y1`, `Y2`.
pub fn kinematic_rates<T: Real>(
    cfg: &TwoBodyConfig<T>,
    cm: &CenterOfMass<T>,
) -> Result<KinematicRates<T>> {
    let sign = cfg.sign();
    let sigma = sign.sigma_as::<T>();
    let two = T::one() + T::one();
    let (x1, x2) = cfg.state.embeddings()?;
    let (d1, d2) = cfg.state.embedding_velocities()?;
    let (s, sdot) = weighted_sum(cfg)?;
    let f = cm.f;
    let fdot = sigma * two * (sdot * s.bar()).s.re;
    let root = f.sqrt();
    let xc_dot = sdot.scale(root.recip()) - s.scale(fdot / (two * f * root));
    let y12_dot = (d2 * x1.bar() + x2 * d1.bar()).scale(sigma);
    let y1_dot = (d1 * cm.xc.bar() + x1 * xc_dot.bar()).scale(sigma);
    let y2_dot = (d2 * cm.xc.bar() + x2 * xc_dot.bar()).scale(sigma);
    Ok(KinematicRates { xc_dot, y12_dot, y1_dot, y2_dot })
}

/// Everything in one pass.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Decomposition<T> {
    pub cm: CenterOfMass<T>,
    pub rel: RelativeSet<T>,
    pub rates: KinematicRates<T>,
}

pub fn decompose<T: Real>(cfg: &TwoBodyConfig<T>) -> Result<Decomposition<T>> {
    let cm = center_of_mass(cfg)?;
    let rel = relative_variables(cfg, &cm)?;
    let rates = kinematic_rates(cfg, &cm)?;
    Ok(Decomposition { cm, rel, rates })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::Isometry;
    use approx::assert_abs_diff_eq;
    use SpaceSign::*;

    fn cfg(m1: f64, m2: f64, v1: [f64; 3], v2: [f64; 3], s: SpaceSign) -> TwoBodyConfig<f64> {
        cfg_w(m1, m2, v1, v2, [0.0; 3], [0.0; 3], s)
    }

    fn cfg_w(
        m1: f64,
        m2: f64,
        v1: [f64; 3],
        v2: [f64; 3],
        w1: [f64; 3],
        w2: [f64; 3],
        s: SpaceSign,
    ) -> TwoBodyConfig<f64> {
        let st = PhaseState::new(Vec3(v1), Vec3(v2), Vec3(w1), Vec3(w2), s).unwrap();
        TwoBodyConfig::new(Masses::new(m1, m2).unwrap(), st).unwrap()
    }

    #[test]
    fn coincident_points_give_the_point() {
        for s in SpaceSign::BOTH {
            let c = cfg(1.0, 3.0, [0.2, -0.1, 0.3], [0.2, -0.1, 0.3], s);
            let cm = center_of_mass(&c).unwrap();
            assert!((cm.xc - c.state.embeddings().unwrap().0).magnitude() < 1e-15);
            let rel = relative_variables(&c, &cm).unwrap();
            assert!((rel.y12 - Biquaternion::one(s)).magnitude() < 1e-15);
            assert!(rel.qy.q.magnitude() < 1e-15);
            assert!((rel.y1 - rel.y2).magnitude() < 1e-15);
        }
    }

    #[test]
    fn symmetric_equal_masses_center_at_origin() {
        let c = cfg(2.0, 2.0, [0.3, 0.1, -0.2], [-0.3, -0.1, 0.2], Hyperbolic);
        let cm = center_of_mass(&c).unwrap();
        assert!(cm.qc.v.max_abs() < 1e-15);
    }

    #[test]
    fn sphere_cm_example_agrees_with_chart_formula() {
        let c = cfg(1.0, 2.0, [0.0; 3], [3f64.sqrt(), 0.0, 0.0], Sphere);
        let cm = center_of_mass(&c).unwrap();
        assert_abs_diff_eq!(cm.xc.x0(), 2.0 / 7f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(cm.xc.v.re[0], 3f64.sqrt() / 7f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(cm.qc.v[0], 3f64.sqrt() / 2.0, epsilon = 1e-15);
        let chart = center_of_mass_chart(&c).unwrap();
        assert_abs_diff_eq!(chart[0], 0.866_025_403_784_438_6, epsilon = 1e-15);
        assert_abs_diff_eq!(cm.f, 7.0, epsilon = 1e-14);
    }

    #[test]
    fn relative_example_on_sphere() {
        let t = 0.5f64;
        let c = cfg(1.0, 1.0, [0.0; 3], [t.tan(), 0.0, 0.0], Sphere);
        let cm = center_of_mass(&c).unwrap();
        let rel = relative_variables(&c, &cm).unwrap();
        let want = Biquaternion::from_components(
            [t.cos(), 0.0, 0.0, 0.0, 0.0, t.sin(), 0.0, 0.0],
            Sphere,
        );
        assert!((rel.y12 - want).magnitude() < 1e-15);
        assert_abs_diff_eq!(rel.qy.q.im[0], t.tan(), epsilon = 1e-15);
        assert_eq!(rel.qy.imaginary_purity_residual(), 0.0);
    }

    #[test]
    fn relative_set_identities() {
        for s in SpaceSign::BOTH {
            let c = cfg(1.3, 0.7, [0.2, -0.4, 0.1], [-0.3, 0.25, 0.5], s);
            let cm = center_of_mass(&c).unwrap();
            let rel = relative_variables(&c, &cm).unwrap();
            let (x1, x2) = c.state.embeddings().unwrap();
            for y in [rel.y12, rel.y1, rel.y2] {
                assert!((y.norm().re - 1.0).abs() < 1e-14 && y.norm().im.abs() < 1e-14);
            }
            assert!((rel.y12 - rel.y2 * rel.y1.bar()).magnitude() < 1e-14);
            assert!((x1 - rel.y1 * cm.xc).magnitude() < 1e-14);
            assert!((x2 - rel.y2 * cm.xc).magnitude() < 1e-14);
            assert!((x2 - rel.y12 * x1).magnitude() < 1e-14);

            // Y1, Y2 as functions of Y12 alone
            let f = cm.f.sqrt();
            let one = Biquaternion::one(s);
            let y1 = (one.scale(1.3) + rel.y12.bar().scale(0.7)).scale(1.0 / f);
            let y2 = (rel.y12.scale(1.3) + one.scale(0.7)).scale(1.0 / f);
            assert!((y1 - rel.y1).magnitude() < 1e-14);
            assert!((y2 - rel.y2).magnitude() < 1e-14);

            // qy as the triangle sum <q2, -q1>
            let tri = vector_add(&c.state.p2().into(), &(-PairVector::from(c.state.p1()))).unwrap();
            assert!((tri.q - rel.qy.q).magnitude() < 1e-14);
        }
    }

    #[test]
    fn per_particle_round_trip() {
        for s in SpaceSign::BOTH {
            let c = cfg(0.6, 2.1, [0.1, 0.3, -0.2], [-0.2, -0.1, 0.35], s);
            let cm = center_of_mass(&c).unwrap();
            let rel = relative_variables(&c, &cm).unwrap();
            let (qy1, qy2) = per_particle_relative(&c.masses, &rel).unwrap();
            let c1 = PairVector::from_biquaternion(&rel.y1).unwrap();
            let c2 = PairVector::from_biquaternion(&rel.y2).unwrap();
            assert!((qy1.q - c1.q).magnitude() < 1e-14);
            assert!((qy2.q - c2.q).magnitude() < 1e-14);
            let (q1, q2) = reconstruct_particles(&qy1, &qy2, &cm.qc).unwrap();
            assert!(q1.imaginary_purity_residual() < 1e-14);
            assert!((q1.q.im - c.state.v1).max_abs() < 1e-14);
            assert!((q2.q.im - c.state.v2).max_abs() < 1e-14);
            let back = vector_add(&qy2, &(-qy1)).unwrap();
            assert!((back.q - rel.qy.q).magnitude() < 1e-14);
        }
    }

    #[test]
    fn equal_masses_split_the_separation() {
        let c = cfg(1.0, 1.0, [0.001, 0.0, 0.0], [0.003, 0.001, 0.0], Hyperbolic);
        let cm = center_of_mass(&c).unwrap();
        let rel = relative_variables(&c, &cm).unwrap();
        let (qy1, qy2) = per_particle_relative(&c.masses, &rel).unwrap();
        let half = rel.qy.q.scale(0.5);
        assert!((qy2.q - half).magnitude() < 1e-5 * half.magnitude());
        assert!((qy1.q + half).magnitude() < 1e-5 * half.magnitude());
    }

    #[test]
    fn light_first_particle_carries_the_separation() {
        let c = cfg(1e-12, 1.0, [0.1, 0.0, 0.0], [0.4, 0.2, 0.0], Sphere);
        let cm = center_of_mass(&c).unwrap();
        let rel = relative_variables(&c, &cm).unwrap();
        let (qy1, _) = per_particle_relative(&c.masses, &rel).unwrap();
        assert!((qy1.q + rel.qy.q).magnitude() < 1e-10);
    }

    #[test]
    fn chart_infinity_at_quarter_turn() {
        // +-pi/4 on one great circle: separation pi/2, scalar(Y12) = 0 exactly
        let c = cfg(1.0, 1.0, [1.0, 0.0, 0.0], [-1.0, 0.0, 0.0], Sphere);
        let cm = center_of_mass(&c).unwrap();
        let r = relative_variables(&c, &cm);
        assert!(matches!(r, Err(Error::ChartInfinity { .. })));
    }

    #[test]
    fn flat_limit_is_the_weighted_mean() {
        for s in SpaceSign::BOTH {
            let v1 = [1e-4, -5e-5, 3e-5];
            let v2 = [-6e-5, 8e-5, 1e-4];
            let c = cfg(1.5, 0.5, v1, v2, s);
            let cm = center_of_mass(&c).unwrap();
            let mean = (Vec3(v1).scale(1.5) + Vec3(v2).scale(0.5)).scale(0.5);
            assert!((cm.qc.v - mean).max_abs() < 1e-7);
        }
    }

    #[test]
    fn rates_vanish_at_rest() {
        for s in SpaceSign::BOTH {
            let c = cfg(1.0, 2.0, [0.1, 0.2, 0.3], [-0.2, 0.1, 0.0], s);
            let r = kinematic_rates(&c, &center_of_mass(&c).unwrap()).unwrap();
            for b in [r.xc_dot, r.y12_dot, r.y1_dot, r.y2_dot] {
                assert_eq!(b.magnitude(), 0.0);
            }
        }
    }

    #[test]
    fn rates_match_finite_differences() {
        let h = 1e-6;
        for s in SpaceSign::BOTH {
            let base = cfg_w(
                1.4,
                0.8,
                [0.2, -0.1, 0.3],
                [-0.25, 0.3, 0.1],
                [0.5, 0.2, -0.3],
                [-0.1, 0.4, 0.6],
                s,
            );
            let shift = |t: f64| {
                let st = base.state;
                let moved = PhaseState::new(
                    st.v1 + st.w1.scale(t),
                    st.v2 + st.w2.scale(t),
                    st.w1,
                    st.w2,
                    s,
                )
                .unwrap();
                decompose(&TwoBodyConfig::new(base.masses, moved).unwrap()).unwrap()
            };
            let d = decompose(&base).unwrap();
            let (p, m) = (shift(h), shift(-h));
            let pairs = [
                (d.rates.xc_dot, p.cm.xc - m.cm.xc),
                (d.rates.y12_dot, p.rel.y12 - m.rel.y12),
                (d.rates.y1_dot, p.rel.y1 - m.rel.y1),
                (d.rates.y2_dot, p.rel.y2 - m.rel.y2),
            ];
            for (analytic, diff) in pairs {
                let fd = diff.scale(0.5 / h);
                assert!((analytic - fd).magnitude() <= 1e-6 * analytic.magnitude().max(1e-3));
            }
            // tangency of every unit constraint
            for (y, yd) in [
                (d.rel.y12, d.rates.y12_dot),
                (d.rel.y1, d.rates.y1_dot),
                (d.rel.y2, d.rates.y2_dot),
                (d.cm.xc, d.rates.xc_dot),
            ] {
                assert!((yd * y.bar() + y * yd.bar()).s.magnitude() < 1e-10);
            }
        }
    }

    #[test]
    fn rigid_translation_along_the_pair_freezes_y12() {
        // X(t) = A(t) X A(t)* with A(t) a translation along the axis through
        // both particles: d/dt Y12 = 0.
        for s in SpaceSign::BOTH {
            let axis = Vec3::new(1.0, 0.0, 0.0);
            let p1 = ChartPoint::new(Vec3::new(-0.2, 0.0, 0.0), s).unwrap();
            let p2 = ChartPoint::new(Vec3::new(0.3, 0.0, 0.0), s).unwrap();
            let h = 1e-6;
            let mv = |p: &ChartPoint<f64>, t: f64| {
                Isometry::translation(s, axis, t).apply_point(p).unwrap().v
            };
            let w1 = (mv(&p1, h) - mv(&p1, -h)).scale(0.5 / h);
            let w2 = (mv(&p2, h) - mv(&p2, -h)).scale(0.5 / h);
            let c = cfg_w(1.0, 2.0, p1.v.0, p2.v.0, w1.0, w2.0, s);
            let d = decompose(&c).unwrap();
            assert!(d.rates.y12_dot.magnitude() < 1e-9);
            assert!(d.rates.xc_dot.magnitude() > 0.1);
        }
    }
}
