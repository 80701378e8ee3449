//! Quaternions over the ring `R[u]/(u^2 - sigma)`.
//!
//! A biquaternion is a ring scalar plus a ring 3-vector, eight real numbers in
//! total. Products of points (which live in the Minkowski-type subspace) fill
//! all eight slots, so the general algebra is kept throughout.

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::ring::{same_sign, RingScalar, RingVector3, SpaceSign};
use crate::scalar::{real, to_f64, Real};
use crate::vec3::Vec3;

/// Default tolerance for the Minkowski-type test on computed values.
pub const MINKOWSKI_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Biquaternion<T> {
    pub s: RingScalar<T>,
    pub v: RingVector3<T>,
}

impl<T: Real> Biquaternion<T> {
    pub fn new(s: RingScalar<T>, v: RingVector3<T>) -> Self {
        assert!(s.sign == v.sign, "space sign mismatch: {:?} vs {:?}", s.sign, v.sign);
        Self { s, v }
    }

    /// Builds from the eight real coefficients
    /// `[s.re, s.im, v.re.x, v.re.y, v.re.z, v.im.x, v.im.y, v.im.z]`.
    pub fn from_components(c: [T; 8], sign: SpaceSign) -> Self {
        Self::new(
            RingScalar::new(c[0], c[1], sign),
            RingVector3::new(Vec3::new(c[2], c[3], c[4]), Vec3::new(c[5], c[6], c[7]), sign),
        )
    }

    pub fn components(&self) -> [T; 8] {
        [
            self.s.re, self.s.im, self.v.re[0], self.v.re[1], self.v.re[2], self.v.im[0],
            self.v.im[1], self.v.im[2],
        ]
    }

    pub fn sign(&self) -> SpaceSign {
        self.s.sign
    }

    pub fn zero(sign: SpaceSign) -> Self {
        Self::new(RingScalar::zero(sign), RingVector3::zero(sign))
    }

    pub fn one(sign: SpaceSign) -> Self {
        Self::from_scalar(RingScalar::one(sign))
    }

    /// `(u; 0)`: the base point of both spaces.
    pub fn base_point(sign: SpaceSign) -> Self {
        Self::from_scalar(RingScalar::unit(sign))
    }

    pub fn from_scalar(s: RingScalar<T>) -> Self {
        Self::new(s, RingVector3::zero(s.sign))
    }

    pub fn from_vector(v: RingVector3<T>) -> Self {
        Self::new(RingScalar::zero(v.sign), v)
    }

    /// Quaternion conjugate: `(s, -v)`.
    pub fn bar(&self) -> Self {
        Self::new(self.s, -self.v)
    }

    /// Ring conjugate `u -> -u` on all eight components.
    pub fn star(&self) -> Self {
        Self::new(self.s.conj_u(), self.v.conj_u())
    }

    /// `X * bar(X)`, a ring scalar (the vector part cancels identically).
    pub fn norm(&self) -> RingScalar<T> {
        self.s * self.s + self.v.dot(&self.v)
    }

    pub fn scale(&self, k: T) -> Self {
        Self::new(self.s.scale(k), self.v.scale(k))
    }

    pub fn mul_scalar(&self, k: RingScalar<T>) -> Self {
        Self::new(self.s * k, self.v.mul_scalar(k))
    }

    pub fn scalar_part(&self) -> Self {
        Self::from_scalar(self.s)
    }

    pub fn vector_part(&self) -> Self {
        Self::from_vector(self.v)
    }

    /// Euclidean size of the eight coefficients.
    pub fn magnitude(&self) -> T {
        self.components().iter().fold(T::zero(), |acc, x| acc + *x * *x).sqrt()
    }

    /// Size of everything except the real part of the scalar.
    pub fn non_real_magnitude(&self) -> T {
        let c = self.components();
        c[1..].iter().fold(T::zero(), |acc, x| acc + *x * *x).sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.components().iter().all(|x| x.is_finite())
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        same_sign(self.sign(), o.sign())?;
        Ok(*self * *o)
    }

    /// `X = -star(bar(X))`, i.e. imaginary scalar and real vector, up to `tol`
    /// relative to the size of `X`.
    pub fn is_minkowski_within(&self, tol: T) -> bool {
        let scale = self.magnitude().max(T::one());
        self.s.re.abs() <= tol * scale && self.v.im.max_abs() <= tol * scale
    }

    pub fn is_minkowski(&self) -> bool {
        self.is_minkowski_within(real(MINKOWSKI_TOL))
    }

    /// The time-like coordinate `X0` of a Minkowski-type element.
    pub fn x0(&self) -> T {
        self.s.im
    }

    /// Rescales a point-like element so that `X bar(X) = sigma`, with
    /// `X0 > 0` enforced on the hyperbolic sheet.
    pub fn normalize_point(&self) -> Result<Self> {
        let n = self.norm();
        let sigma = n.sigma();
        if n.im.abs() > real::<T>(1e-12) * n.re.abs().max(T::one()) {
            return Err(Error::NonRealNorm { re: to_f64(n.re), im: to_f64(n.im) });
        }
        if n.re == T::zero() {
            return Err(if self.magnitude() == T::zero() {
                Error::NonInvertible
            } else {
                Error::NullNorm
            });
        }
        let signed = sigma * n.re;
        if signed < T::zero() {
            // wrong causal character for this space
            return Err(Error::NullNorm);
        }
        if self.sign() == SpaceSign::Hyperbolic && self.x0() <= T::zero() {
            return Err(Error::WrongSheet { x0: to_f64(self.x0()) });
        }
        Ok(self.scale(signed.sqrt().recip()))
    }

    /// Rescales to `X bar(X) = 1` when the norm is real and positive.
    pub fn normalize_unit(&self) -> Result<Self> {
        let n = self.norm();
        if n.re == T::zero() && n.im == T::zero() {
            return Err(Error::NullNorm);
        }
        n.invert()?;
        let root = n.sqrt_real().map_err(|_| Error::NonRealNorm {
            re: to_f64(n.re),
            im: to_f64(n.im),
        })?;
        Ok(self.scale(root.re.recip()))
    }
}

impl<T: Real> Add for Biquaternion<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.s + o.s, self.v + o.v)
    }
}

impl<T: Real> Sub for Biquaternion<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.s - o.s, self.v - o.v)
    }
}

impl<T: Real> Neg for Biquaternion<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.s, -self.v)
    }
}

impl<T: Real> Mul for Biquaternion<T> {
    type Output = Self;
    /// `(s, v)(s', v') = (s s' - v.v', s v' + s' v + v x v')`.
    fn mul(self, o: Self) -> Self {
        let s = self.s * o.s - self.v.dot(&o.v);
        let v = o.v.mul_scalar(self.s) + self.v.mul_scalar(o.s) + self.v.cross(&o.v);
        Self::new(s, v)
    }
}

impl<T: Real> fmt::Display for Biquaternion<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({} + {}u; [{}, {}, {}] + [{}, {}, {}]u)",
            self.s.re, self.s.im, self.v.re[0], self.v.re[1], self.v.re[2], self.v.im[0],
            self.v.im[1], self.v.im[2]
        )
    }
}
