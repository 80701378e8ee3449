//! The two commutative rings `R[u]/(u^2 - sigma)` and 3-vectors over them.
//!
//! `sigma = +1` gives the double (split-complex) numbers, which describe the
//! 3-sphere; `sigma = -1` gives the complex numbers, which describe
//! Lobachevsky space. Every value carries its [`SpaceSign`]; mixing the two
//! rings in one operation is a programming error. The operator impls panic on
//! a mismatch, the `try_*` methods report [`Error::SignMismatch`].

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::{real, to_f64, Real};
use crate::vec3::Vec3;

/// Which space of constant curvature a value belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpaceSign {
    /// `u^2 = +1`: double numbers, the 3-sphere.
    Sphere,
    /// `u^2 = -1`: complex numbers, Lobachevsky space.
    Hyperbolic,
}

impl SpaceSign {
    pub const BOTH: [SpaceSign; 2] = [SpaceSign::Sphere, SpaceSign::Hyperbolic];

    pub fn sigma(self) -> i8 {
        match self {
            SpaceSign::Sphere => 1,
            SpaceSign::Hyperbolic => -1,
        }
    }

    pub fn sigma_as<T: Real>(self) -> T {
        match self {
            SpaceSign::Sphere => T::one(),
            SpaceSign::Hyperbolic => -T::one(),
        }
    }

    pub fn from_sigma(sigma: i64) -> Result<Self> {
        match sigma {
            1 => Ok(SpaceSign::Sphere),
            -1 => Ok(SpaceSign::Hyperbolic),
            s => Err(Error::InvalidArgument(format!("sigma must be +1 or -1, got {s}"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SpaceSign::Sphere => "sphere",
            SpaceSign::Hyperbolic => "hyperbolic",
        }
    }

    /// cos for the sphere, cosh for Lobachevsky space.
    pub fn cos<T: Real>(self, r: T) -> T {
        match self {
            SpaceSign::Sphere => r.cos(),
            SpaceSign::Hyperbolic => r.cosh(),
        }
    }

    /// sin for the sphere, sinh for Lobachevsky space.
    pub fn sin<T: Real>(self, r: T) -> T {
        match self {
            SpaceSign::Sphere => r.sin(),
            SpaceSign::Hyperbolic => r.sinh(),
        }
    }

    /// tan for the sphere, tanh for Lobachevsky space.
    pub fn tan<T: Real>(self, r: T) -> T {
        match self {
            SpaceSign::Sphere => r.tan(),
            SpaceSign::Hyperbolic => r.tanh(),
        }
    }
}

impl fmt::Display for SpaceSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SpaceSign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sphere" => Ok(SpaceSign::Sphere),
            "hyperbolic" => Ok(SpaceSign::Hyperbolic),
            other => Err(Error::InvalidArgument(format!(
                "space must be \"sphere\" or \"hyperbolic\", got {other:?}"
            ))),
        }
    }
}

pub(crate) fn same_sign(a: SpaceSign, b: SpaceSign) -> Result<SpaceSign> {
    if a == b {
        Ok(a)
    } else {
        Err(Error::SignMismatch { left: a, right: b })
    }
}

#[inline]
fn expect_same(a: SpaceSign, b: SpaceSign) -> SpaceSign {
    assert!(a == b, "space sign mismatch: {a:?} vs {b:?}");
    a
}

/// `re + im * u` with `u^2 = sigma`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RingScalar<T> {
    pub re: T,
    pub im: T,
    pub sign: SpaceSign,
}

impl<T: Real> RingScalar<T> {
    pub fn new(re: T, im: T, sign: SpaceSign) -> Self {
        Self { re, im, sign }
    }

    pub fn from_real(re: T, sign: SpaceSign) -> Self {
        Self::new(re, T::zero(), sign)
    }

    pub fn zero(sign: SpaceSign) -> Self {
        Self::from_real(T::zero(), sign)
    }

    pub fn one(sign: SpaceSign) -> Self {
        Self::from_real(T::one(), sign)
    }

    /// The generator `u`.
    pub fn unit(sign: SpaceSign) -> Self {
        Self::new(T::zero(), T::one(), sign)
    }

    pub fn sigma(&self) -> T {
        self.sign.sigma_as()
    }

    /// `u -> -u`.
    pub fn conj_u(&self) -> Self {
        Self::new(self.re, -self.im, self.sign)
    }

    /// `re^2 - sigma im^2`, i.e. `a * conj_u(a)`.
    pub fn modulus_sq(&self) -> T {
        self.re * self.re - self.sigma() * self.im * self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re == T::zero() && self.im == T::zero()
    }

    pub fn scale(&self, k: T) -> Self {
        Self::new(self.re * k, self.im * k, self.sign)
    }

    /// Euclidean size of the coefficient pair, used for residuals.
    pub fn magnitude(&self) -> T {
        self.re.hypot(self.im)
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        same_sign(self.sign, o.sign)?;
        Ok(*self + *o)
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        same_sign(self.sign, o.sign)?;
        Ok(*self * *o)
    }

    pub fn invert(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::NonInvertible);
        }
        let m = self.modulus_sq();
        if m == T::zero() {
            return Err(Error::ZeroDivisor {
                re: to_f64(self.re),
                im: to_f64(self.im),
            });
        }
        Ok(self.conj_u().scale(m.recip()))
    }

    /// Square root of a real positive element. The imaginary part may carry
    /// rounding noise up to `1e-12 * |re|`.
    pub fn sqrt_real(&self) -> Result<Self> {
        let guard = real::<T>(1e-12) * self.re.abs();
        if self.im.abs() > guard || !(self.re > T::zero()) {
            return Err(Error::SqrtDomain {
                re: to_f64(self.re),
                im: to_f64(self.im),
            });
        }
        Ok(Self::from_real(self.re.sqrt(), self.sign))
    }
}

impl<T: Real> Add for RingScalar<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let sign = expect_same(self.sign, o.sign);
        Self::new(self.re + o.re, self.im + o.im, sign)
    }
}

impl<T: Real> Sub for RingScalar<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let sign = expect_same(self.sign, o.sign);
        Self::new(self.re - o.re, self.im - o.im, sign)
    }
}

impl<T: Real> Neg for RingScalar<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im, self.sign)
    }
}

impl<T: Real> Mul for RingScalar<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let sign = expect_same(self.sign, o.sign);
        let s = sign.sigma_as::<T>();
        Self::new(
            self.re * o.re + s * self.im * o.im,
            self.re * o.im + self.im * o.re,
            sign,
        )
    }
}

/// A 3-vector whose components live in the ring.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RingVector3<T> {
    pub re: Vec3<T>,
    pub im: Vec3<T>,
    pub sign: SpaceSign,
}

impl<T: Real> RingVector3<T> {
    pub fn new(re: Vec3<T>, im: Vec3<T>, sign: SpaceSign) -> Self {
        Self { re, im, sign }
    }

    pub fn zero(sign: SpaceSign) -> Self {
        Self::new(Vec3::zero(), Vec3::zero(), sign)
    }

    pub fn from_real(re: Vec3<T>, sign: SpaceSign) -> Self {
        Self::new(re, Vec3::zero(), sign)
    }

    /// `u * v` for a real vector `v`.
    pub fn pure_imaginary(v: Vec3<T>, sign: SpaceSign) -> Self {
        Self::new(Vec3::zero(), v, sign)
    }

    pub fn get(&self, i: usize) -> RingScalar<T> {
        RingScalar::new(self.re[i], self.im[i], self.sign)
    }

    pub fn from_components(c: [RingScalar<T>; 3]) -> Self {
        let sign = expect_same(expect_same(c[0].sign, c[1].sign), c[2].sign);
        Self::new(
            Vec3::new(c[0].re, c[1].re, c[2].re),
            Vec3::new(c[0].im, c[1].im, c[2].im),
            sign,
        )
    }

    /// Ring-valued `sum_a q_a q'_a`.
    pub fn dot(&self, o: &Self) -> RingScalar<T> {
        (0..3).fold(RingScalar::zero(expect_same(self.sign, o.sign)), |acc, i| {
            acc + self.get(i) * o.get(i)
        })
    }

    pub fn cross(&self, o: &Self) -> Self {
        let (a, b) = (self, o);
        Self::from_components([
            a.get(1) * b.get(2) - a.get(2) * b.get(1),
            a.get(2) * b.get(0) - a.get(0) * b.get(2),
            a.get(0) * b.get(1) - a.get(1) * b.get(0),
        ])
    }

    pub fn scale(&self, k: T) -> Self {
        Self::new(self.re.scale(k), self.im.scale(k), self.sign)
    }

    pub fn mul_scalar(&self, k: RingScalar<T>) -> Self {
        Self::from_components([self.get(0) * k, self.get(1) * k, self.get(2) * k])
    }

    pub fn conj_u(&self) -> Self {
        Self::new(self.re, -self.im, self.sign)
    }

    pub fn magnitude(&self) -> T {
        (self.re.norm_sq() + self.im.norm_sq()).sqrt()
    }
}

impl<T: Real> Add for RingVector3<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let sign = expect_same(self.sign, o.sign);
        Self::new(self.re + o.re, self.im + o.im, sign)
    }
}

impl<T: Real> Sub for RingVector3<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let sign = expect_same(self.sign, o.sign);
        Self::new(self.re - o.re, self.im - o.im, sign)
    }
}

impl<T: Real> Neg for RingVector3<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im, self.sign)
    }
}
