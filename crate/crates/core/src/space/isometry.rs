//! Motions `X -> A X star(bar(A))` with `A bar(A) = 1`.

use rand::Rng;

use crate::biquaternion::Biquaternion;
use crate::error::{Error, Result};
use crate::ring::{RingScalar, RingVector3, SpaceSign};
use crate::scalar::{real, to_f64, Real};
use crate::space::chart::ChartPoint;
use crate::vec3::Vec3;

pub const UNIT_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Isometry<T> {
    a: Biquaternion<T>,
}

impl<T: Real> Isometry<T> {
    pub fn new(a: Biquaternion<T>) -> Result<Self> {
        let dev = (a * a.bar() - Biquaternion::one(a.sign())).magnitude();
        if !(dev <= real(UNIT_TOL)) {
            return Err(Error::NotUnit { deviation: to_f64(dev) });
        }
        Ok(Self { a })
    }

    pub fn identity(sign: SpaceSign) -> Self {
        Self { a: Biquaternion::one(sign) }
    }

    pub fn biquaternion(&self) -> &Biquaternion<T> {
        &self.a
    }

    pub fn sign(&self) -> SpaceSign {
        self.a.sign()
    }

    /// Real rotation by `angle` about `axis` (normalised internally).
    pub fn rotation(sign: SpaceSign, axis: Vec3<T>, angle: T) -> Self {
        let half = angle / (T::one() + T::one());
        let n = axis.scale(axis.norm().recip());
        Self {
            a: Biquaternion::new(
                RingScalar::from_real(half.cos(), sign),
                RingVector3::from_real(n.scale(half.sin()), sign),
            ),
        }
    }

    /// Translation moving the base point a geodesic distance `distance` along
    /// `axis`.
    pub fn translation(sign: SpaceSign, axis: Vec3<T>, distance: T) -> Self {
        let half = distance / (T::one() + T::one());
        let n = axis.scale(axis.norm().recip());
        Self {
            a: Biquaternion::new(
                RingScalar::from_real(sign.cos(half), sign),
                RingVector3::pure_imaginary(n.scale(sign.sin(half)), sign),
            ),
        }
    }

    /// Draws a motion as rotation * translation * rotation with random axes
    /// and angles. Hyperbolic translations are limited to rapidity
    /// `max_boost`. No distributional claim is made.
    pub fn sample<R: Rng + ?Sized>(sign: SpaceSign, max_boost: f64, rng: &mut R) -> Self {
        let axis = |rng: &mut R| loop {
            let v = Vec3::new(
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            );
            let n: f64 = v.norm();
            if n > 1e-3 && n <= 1.0 {
                break Vec3::new(real::<T>(v[0]), real(v[1]), real(v[2]));
            }
        };
        let pi = std::f64::consts::PI;
        let r1 = Self::rotation(sign, axis(rng), real(rng.gen_range(-pi..pi)));
        let dist = match sign {
            SpaceSign::Sphere => rng.gen_range(-pi..pi),
            SpaceSign::Hyperbolic => rng.gen_range(-max_boost..max_boost),
        };
        let t = Self::translation(sign, axis(rng), real(dist));
        let r2 = Self::rotation(sign, axis(rng), real(rng.gen_range(-pi..pi)));
        r1.compose(&t).compose(&r2)
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self { a: self.a * other.a }
    }

    /// `A X star(bar(A))`. Linear, so it also maps velocities.
    pub fn apply(&self, x: &Biquaternion<T>) -> Biquaternion<T> {
        self.a * *x * self.a.bar().star()
    }

    /// Conjugation `A Y bar(A)`, the induced action on relative variables.
    pub fn conjugate(&self, y: &Biquaternion<T>) -> Biquaternion<T> {
        self.a * *y * self.a.bar()
    }

    /// Moves a chart point. On the sphere the image may be the antipode of a
    /// chart point, which maps to the same chart coordinates.
    pub fn apply_point(&self, p: &ChartPoint<T>) -> Result<ChartPoint<T>> {
        ChartPoint::from_embedding(&self.apply(&p.embedding()?))
    }
}

/// Seeded convenience wrapper around [`Isometry::sample`].
pub fn random_isometry<T: Real>(sign: SpaceSign, seed: u64) -> Isometry<T> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    Isometry::sample(sign, 1.5, &mut rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::pair::{embedded_distance, geodesic_distance};
    use approx::assert_abs_diff_eq;
    use SpaceSign::*;

    #[test]
    fn identity_fixes_points() {
        for s in SpaceSign::BOTH {
            let x = ChartPoint::new(Vec3::new(0.3, 0.2, -0.1), s).unwrap().embedding().unwrap();
            assert_eq!(Isometry::identity(s).apply(&x), x);
        }
    }

    #[test]
    fn rejects_non_unit() {
        let a = Biquaternion::<f64>::one(Sphere).scale(1.1);
        assert!(matches!(Isometry::new(a), Err(Error::NotUnit { .. })));
    }

    #[test]
    fn translation_moves_origin_by_distance() {
        for s in SpaceSign::BOTH {
            let t = Isometry::translation(s, Vec3::new(0.0, 1.0, 0.0), 0.7);
            let o = ChartPoint::origin(s);
            let moved = t.apply_point(&o).unwrap();
            assert_abs_diff_eq!(geodesic_distance(&o, &moved).unwrap(), 0.7, epsilon = 1e-14);
            assert_abs_diff_eq!(moved.v[1], s.tan(0.7), epsilon = 1e-14);
        }
    }

    #[test]
    fn random_motions_are_unit_and_preserve_structure() {
        for s in SpaceSign::BOTH {
            for seed in 0..50 {
                let a = random_isometry::<f64>(s, seed);
                assert!(Isometry::new(*a.biquaternion()).is_ok());
                let x1 = ChartPoint::new(Vec3::new(0.1, -0.3, 0.2), s).unwrap().embedding().unwrap();
                let x2 = ChartPoint::new(Vec3::new(-0.4, 0.05, 0.3), s).unwrap().embedding().unwrap();
                let y1 = a.apply(&x1);
                let y2 = a.apply(&x2);
                assert!(y1.is_minkowski() && y2.is_minkowski());
                assert_abs_diff_eq!(y1.norm().re, s.sigma_as::<f64>(), epsilon = 1e-13);
                assert_abs_diff_eq!(
                    embedded_distance(&y1, &y2).unwrap(),
                    embedded_distance(&x1, &x2).unwrap(),
                    epsilon = 1e-12
                );
                if s == Hyperbolic {
                    assert!(y1.x0() > 0.0);
                }
            }
        }
    }
}
