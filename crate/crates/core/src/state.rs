//! Two-body phase state in chart coordinates.

use crate::biquaternion::Biquaternion;
use crate::error::{Error, Result};
use crate::ring::SpaceSign;
use crate::scalar::{real, Real};
use crate::space::{ChartPoint, Isometry};
use crate::vec3::Vec3;

/// Beltrami positions and chart velocities of both particles.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhaseState<T> {
    pub v1: Vec3<T>,
    pub v2: Vec3<T>,
    pub w1: Vec3<T>,
    pub w2: Vec3<T>,
    pub sign: SpaceSign,
}

impl<T: Real> PhaseState<T> {
    pub fn new(v1: Vec3<T>, v2: Vec3<T>, w1: Vec3<T>, w2: Vec3<T>, sign: SpaceSign) -> Result<Self> {
        let s = Self { v1, v2, w1, w2, sign };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        ChartPoint::new(self.v1, self.sign)?;
        ChartPoint::new(self.v2, self.sign)?;
        if !(self.w1.is_finite() && self.w2.is_finite()) {
            return Err(Error::InvalidArgument("velocities must be finite".into()));
        }
        Ok(())
    }

    pub fn p1(&self) -> ChartPoint<T> {
        ChartPoint { v: self.v1, sign: self.sign }
    }

    pub fn p2(&self) -> ChartPoint<T> {
        ChartPoint { v: self.v2, sign: self.sign }
    }

    /// Embedding points `X1, X2`.
    pub fn embeddings(&self) -> Result<(Biquaternion<T>, Biquaternion<T>)> {
        Ok((self.p1().embedding()?, self.p2().embedding()?))
    }

    /// Embedding velocities `dX1/dt, dX2/dt`.
    pub fn embedding_velocities(&self) -> Result<(Biquaternion<T>, Biquaternion<T>)> {
        Ok((
            self.p1().embedding_velocity(&self.w1)?,
            self.p2().embedding_velocity(&self.w2)?,
        ))
    }

    /// Applies a motion to both particles, positions and velocities.
    ///
    /// On the sphere an image point in the lower hemisphere is replaced by
    /// its antipode (same chart coordinates). Images closer than `1e-3` to the
    /// chart equator are rejected with [`Error::EquatorSingularity`].
    pub fn transformed(&self, iso: &Isometry<T>) -> Result<Self> {
        let (x1, x2) = self.embeddings()?;
        let (d1, d2) = self.embedding_velocities()?;
        let map = |x: Biquaternion<T>, d: Biquaternion<T>| -> Result<(Vec3<T>, Vec3<T>)> {
            let (x, d) = (iso.apply(&x), iso.apply(&d));
            if x.x0().abs() < real(1e-3) {
                return Err(Error::EquatorSingularity);
            }
            let p = ChartPoint::from_embedding(&x)?;
            Ok((p.v, ChartPoint::chart_velocity(&x, &d)?))
        };
        let (v1, w1) = map(x1, d1)?;
        let (v2, w2) = map(x2, d2)?;
        Self::new(v1, v2, w1, w2, self.sign)
    }

    pub(crate) fn to_array(self) -> [T; 12] {
        let mut a = [T::zero(); 12];
        for i in 0..3 {
            a[i] = self.v1[i];
            a[3 + i] = self.v2[i];
            a[6 + i] = self.w1[i];
            a[9 + i] = self.w2[i];
        }
        a
    }

    pub(crate) fn from_array(a: &[T; 12], sign: SpaceSign) -> Self {
        let v = |k: usize| Vec3::new(a[k], a[k + 1], a[k + 2]);
        Self { v1: v(0), v2: v(3), w1: v(6), w2: v(9), sign }
    }
}

/// Strictly positive particle masses.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Masses<T> {
    pub m1: T,
    pub m2: T,
}

impl<T: Real> Masses<T> {
    pub fn new(m1: T, m2: T) -> Result<Self> {
        if !(m1 > T::zero() && m2 > T::zero() && m1.is_finite() && m2.is_finite()) {
            return Err(Error::InvalidArgument(format!("masses must be positive, got {m1}, {m2}")));
        }
        Ok(Self { m1, m2 })
    }

    pub fn total(&self) -> T {
        self.m1 + self.m2
    }

    pub fn reduced(&self) -> T {
        self.m1 * self.m2 / self.total()
    }

    /// `m1^2 + m2^2 + 2 m1 m2 c` for `c = cos r` or `cosh r`.
    pub fn f_factor(&self, c: T) -> T {
        let two = T::one() + T::one();
        self.m1 * self.m1 + self.m2 * self.m2 + two * self.m1 * self.m2 * c
    }
}
