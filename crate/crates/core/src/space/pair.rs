//! Ordered point pairs: the triangle addition rule, pair transforms and
//! geodesic distance.

use crate::biquaternion::Biquaternion;
use crate::error::{Error, Result};
use crate::ring::{RingScalar, RingVector3, SpaceSign};
use crate::scalar::{real, to_f64, Real};
use crate::space::chart::ChartPoint;

/// Clamp window for the distance argument at the edges of its domain.
pub const DISTANCE_GUARD: f64 = 1e-12;

/// A ring-valued 3-vector describing an ordered pair of points (or a
/// directed line). Pure-imaginary instances are chart points.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairVector<T> {
    pub q: RingVector3<T>,
}

impl<T: Real> PairVector<T> {
    pub fn new(q: RingVector3<T>) -> Self {
        Self { q }
    }

    pub fn zero(sign: SpaceSign) -> Self {
        Self::new(RingVector3::zero(sign))
    }

    pub fn sign(&self) -> SpaceSign {
        self.q.sign
    }

    /// `1 + q . q`, the scalar under the root of the lift.
    pub fn denom_scalar(&self) -> RingScalar<T> {
        RingScalar::one(self.sign()) + self.q.dot(&self.q)
    }

    /// `1 + q` without normalisation. Its chart is `q` again.
    pub fn lift_unnormalized(&self) -> Biquaternion<T> {
        Biquaternion::new(RingScalar::one(self.sign()), self.q)
    }

    /// `(1 + q) / sqrt(1 + q . q)`; needs the denominator to be real positive.
    pub fn lift(&self) -> Result<Biquaternion<T>> {
        let root = self.denom_scalar().sqrt_real()?;
        Ok(self.lift_unnormalized().scale(root.re.recip()))
    }

    /// Chart of a biquaternion: `vec(Q) / scalar(Q)`.
    pub fn from_biquaternion(q: &Biquaternion<T>) -> Result<Self> {
        let inv = q.s.invert().map_err(|e| match e {
            Error::ZeroDivisor { .. } | Error::NonInvertible => Error::ChartInfinity {
                scalar: to_f64(q.s.re),
            },
            other => other,
        })?;
        Ok(Self::new(q.v.mul_scalar(inv)))
    }

    /// Size of the real part; zero for chart points.
    pub fn imaginary_purity_residual(&self) -> T {
        self.q.re.max_abs()
    }

    pub fn to_chart_point(&self) -> Result<ChartPoint<T>> {
        ChartPoint::new(self.q.im, self.sign())
    }
}

impl<T: Real> core::ops::Neg for PairVector<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.q)
    }
}

impl<T: Real> From<ChartPoint<T>> for PairVector<T> {
    fn from(p: ChartPoint<T>) -> Self {
        Self::new(p.ring_vector())
    }
}

/// Triangle addition `<a, b> = (a + b + a x b) / (1 - a . b)`.
pub fn vector_add<T: Real>(a: &PairVector<T>, b: &PairVector<T>) -> Result<PairVector<T>> {
    crate::ring::same_sign(a.sign(), b.sign())?;
    let denom = RingScalar::one(a.sign()) - a.q.dot(&b.q);
    let inv = denom.invert().map_err(|_| Error::NonInvertibleDenominator)?;
    let num = a.q + b.q + a.q.cross(&b.q);
    Ok(PairVector::new(num.mul_scalar(inv)))
}

/// `Q = sigma X2 bar(X1)`, the unit biquaternion carrying `p1` to `p2`.
pub fn pair_transform<T: Real>(p1: &ChartPoint<T>, p2: &ChartPoint<T>) -> Result<Biquaternion<T>> {
    crate::ring::same_sign(p1.sign, p2.sign)?;
    let x1 = p1.embedding()?;
    let x2 = p2.embedding()?;
    Ok((x2 * x1.bar()).scale(p1.sign.sigma_as()))
}

/// `cos r` (sphere) or `cosh r` (hyperbolic) between two chart points.
pub fn distance_cosine<T: Real>(p1: &ChartPoint<T>, p2: &ChartPoint<T>) -> Result<T> {
    crate::ring::same_sign(p1.sign, p2.sign)?;
    let l1 = p1.checked_lambda()?;
    let l2 = p2.checked_lambda()?;
    let sigma = p1.sign.sigma_as::<T>();
    Ok((T::one() + sigma * p1.v.dot(&p2.v)) / (l1 * l2).sqrt())
}

/// Inverts `cos r` / `cosh r` with a clamp window of [`DISTANCE_GUARD`].
pub fn distance_from_cosine<T: Real>(sign: SpaceSign, c: T) -> Result<T> {
    let guard = real::<T>(DISTANCE_GUARD);
    let bad = || Error::NumericalDomain { value: to_f64(c) };
    if !c.is_finite() {
        return Err(bad());
    }
    match sign {
        SpaceSign::Sphere => {
            if c > T::one() + guard || c < -T::one() - guard {
                return Err(bad());
            }
            Ok(c.max(-T::one()).min(T::one()).acos())
        }
        SpaceSign::Hyperbolic => {
            if c < T::one() - guard {
                return Err(bad());
            }
            Ok(c.max(T::one()).acosh())
        }
    }
}

/// Geodesic distance between two chart points.
pub fn geodesic_distance<T: Real>(p1: &ChartPoint<T>, p2: &ChartPoint<T>) -> Result<T> {
    distance_from_cosine(p1.sign, distance_cosine(p1, p2)?)
}

/// Geodesic distance between two embedded points, without going through a
/// chart. On the sphere this is the distance on S^3 (not its elliptic
/// quotient).
pub fn embedded_distance<T: Real>(x1: &Biquaternion<T>, x2: &Biquaternion<T>) -> Result<T> {
    crate::ring::same_sign(x1.sign(), x2.sign())?;
    let sign = x1.sign();
    let q = (*x2 * x1.bar()).scale(sign.sigma_as());
    distance_from_cosine(sign, q.s.re)
}
