//! Beltrami charts and the embedding into the eight-component algebra.
//!
//! A point of either space is stored as a real 3-vector `v`, standing for the
//! ring vector `q = u v`. With `lambda = 1 + sigma |v|^2` the embedding is
//!
//! ```text
//! X = (u + sigma v) / sqrt(lambda),   X bar(X) = sigma,   X0 = 1/sqrt(lambda) > 0
//! ```
//!
//! which is the pair transform from the base point `(u; 0)` applied to the
//! base point. Geodesics are straight lines in this chart (gnomonic on the
//! sphere, Klein on the hyperbolic side).

use crate::biquaternion::Biquaternion;
use crate::error::{Error, Result};
use crate::ring::{RingScalar, RingVector3, SpaceSign};
use crate::scalar::{to_f64, Real};
use crate::vec3::Vec3;

pub type Matrix3<T> = [[T; 3]; 3];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChartPoint<T> {
    pub v: Vec3<T>,
    pub sign: SpaceSign,
}

pub(crate) fn lambda_of<T: Real>(v: &Vec3<T>, sign: SpaceSign) -> T {
    T::one() + sign.sigma_as::<T>() * v.norm_sq()
}

impl<T: Real> ChartPoint<T> {
    pub fn new(v: Vec3<T>, sign: SpaceSign) -> Result<Self> {
        let lambda = lambda_of(&v, sign);
        if !v.is_finite() || !(lambda > T::zero()) {
            return Err(Error::ChartDomain { lambda: to_f64(lambda) });
        }
        Ok(Self { v, sign })
    }

    pub fn origin(sign: SpaceSign) -> Self {
        Self { v: Vec3::zero(), sign }
    }

    /// `1 + sigma |v|^2`, positive on the chart domain.
    pub fn lambda(&self) -> T {
        lambda_of(&self.v, self.sign)
    }

    pub(crate) fn checked_lambda(&self) -> Result<T> {
        let l = self.lambda();
        if l > T::zero() && self.v.is_finite() {
            Ok(l)
        } else {
            Err(Error::ChartDomain { lambda: to_f64(l) })
        }
    }

    /// The ring vector `q = u v`.
    pub fn ring_vector(&self) -> RingVector3<T> {
        RingVector3::pure_imaginary(self.v, self.sign)
    }

    /// Embedding `X = (u + sigma v)/sqrt(lambda)`.
    pub fn embedding(&self) -> Result<Biquaternion<T>> {
        let lambda = self.checked_lambda()?;
        let k = lambda.sqrt().recip();
        let sigma = self.sign.sigma_as::<T>();
        Ok(Biquaternion::new(
            RingScalar::new(T::zero(), k, self.sign),
            RingVector3::from_real(self.v.scale(sigma * k), self.sign),
        ))
    }

    /// Inverse of [`embedding`](Self::embedding): `v = sigma vec(X) / X0`.
    ///
    /// On the sphere `X` and `-X` give the same chart point (elliptic
    /// identification of antipodes).
    pub fn from_embedding(x: &Biquaternion<T>) -> Result<Self> {
        if !x.is_minkowski() {
            return Err(Error::NotMinkowski);
        }
        let sign = x.sign();
        let x0 = x.x0();
        match sign {
            SpaceSign::Sphere if x0 == T::zero() => return Err(Error::EquatorSingularity),
            SpaceSign::Hyperbolic if !(x0 > T::zero()) => {
                return Err(Error::WrongSheet { x0: to_f64(x0) })
            }
            _ => {}
        }
        let v = x.v.re.scale(sign.sigma_as::<T>() / x0);
        Self::new(v, sign)
    }

    /// Time derivative of the embedding along chart velocity `vdot`.
    pub fn embedding_velocity(&self, vdot: &Vec3<T>) -> Result<Biquaternion<T>> {
        let lambda = self.checked_lambda()?;
        let sigma = self.sign.sigma_as::<T>();
        let root = lambda.sqrt();
        // d/dt lambda^(-1/2) = -sigma (v . vdot) lambda^(-3/2)
        let k = -sigma * self.v.dot(vdot) / (lambda * root);
        let x = self.embedding()?;
        let lead = Biquaternion::from_vector(RingVector3::from_real(
            vdot.scale(sigma / root),
            self.sign,
        ));
        Ok(lead + x.scale(k * root))
    }

    /// Chart velocity recovered from an embedding point and its derivative.
    pub fn chart_velocity(x: &Biquaternion<T>, xdot: &Biquaternion<T>) -> Result<Vec3<T>> {
        let x0 = x.x0();
        if x0 == T::zero() {
            return Err(Error::EquatorSingularity);
        }
        let sigma = x.sign().sigma_as::<T>();
        let num = xdot.v.re.scale(x0) - x.v.re.scale(xdot.x0());
        Ok(num.scale(sigma / (x0 * x0)))
    }

    /// Pullback of the embedding metric: `g = (lambda I - sigma v v^T) / lambda^2`.
    pub fn metric_tensor(&self) -> Result<Matrix3<T>> {
        let lambda = self.checked_lambda()?;
        let sigma = self.sign.sigma_as::<T>();
        let l2 = lambda * lambda;
        Ok(core::array::from_fn(|a| {
            core::array::from_fn(|b| {
                let delta = if a == b { lambda } else { T::zero() };
                (delta - sigma * self.v[a] * self.v[b]) / l2
            })
        }))
    }

    /// `g^{-1} = lambda (I + sigma v v^T)`.
    pub fn inverse_metric(&self) -> Result<Matrix3<T>> {
        let lambda = self.checked_lambda()?;
        let sigma = self.sign.sigma_as::<T>();
        Ok(core::array::from_fn(|a| {
            core::array::from_fn(|b| {
                let delta = if a == b { T::one() } else { T::zero() };
                lambda * (delta + sigma * self.v[a] * self.v[b])
            })
        }))
    }

    /// Metric with the inner sign read literally from the printed chart
    /// formula, `(lambda I + sigma v v^T) / lambda^2`. Only used by the audit.
    pub fn metric_tensor_literal(&self) -> Result<Matrix3<T>> {
        let lambda = self.checked_lambda()?;
        let sigma = self.sign.sigma_as::<T>();
        let l2 = lambda * lambda;
        Ok(core::array::from_fn(|a| {
            core::array::from_fn(|b| {
                let delta = if a == b { lambda } else { T::zero() };
                (delta + sigma * self.v[a] * self.v[b]) / l2
            })
        }))
    }

    /// Christoffel symbols `Gamma[a][b][c] = -sigma (v_b d_ac + v_c d_ab) / lambda`.
    pub fn christoffel(&self) -> Result<[Matrix3<T>; 3]> {
        let lambda = self.checked_lambda()?;
        let k = -self.sign.sigma_as::<T>() / lambda;
        let d = |i: usize, j: usize| if i == j { T::one() } else { T::zero() };
        Ok(core::array::from_fn(|a| {
            core::array::from_fn(|b| {
                core::array::from_fn(|c| k * (self.v[b] * d(a, c) + self.v[c] * d(a, b)))
            })
        }))
    }

    /// `-Gamma^a_bc w^b w^c`, the free-motion acceleration in the chart.
    pub fn geodesic_acceleration(&self, w: &Vec3<T>) -> Result<Vec3<T>> {
        let lambda = self.checked_lambda()?;
        let two = T::one() + T::one();
        Ok(w.scale(two * self.sign.sigma_as::<T>() * self.v.dot(w) / lambda))
    }
}

pub(crate) fn quadratic_form<T: Real>(g: &Matrix3<T>, w: &Vec3<T>) -> T {
    let mut acc = T::zero();
    for a in 0..3 {
        for b in 0..3 {
            acc = acc + g[a][b] * w[a] * w[b];
        }
    }
    acc
}

pub(crate) fn mat_vec<T: Real>(g: &Matrix3<T>, w: &Vec3<T>) -> Vec3<T> {
    Vec3(core::array::from_fn(|a| g[a][0] * w[0] + g[a][1] * w[1] + g[a][2] * w[2]))
}
