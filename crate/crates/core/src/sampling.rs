//! Seeded generators of points, states and special configurations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::biquaternion::Biquaternion;
use crate::error::{Error, Result};
use crate::ring::{RingVector3, SpaceSign};
use crate::scalar::{real, Real};
use crate::space::{geodesic_distance, ChartPoint, Isometry, PairVector};
use crate::state::{Masses, PhaseState};
use crate::vec3::Vec3;

/// Deterministic generator used across tests and the CLI.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Closest separation drawn by [`random_state`].
pub const MIN_SEPARATION: f64 = 1e-3;

fn in_ball<R: Rng + ?Sized>(rng: &mut R, radius: f64) -> Vec3<f64> {
    loop {
        let v = Vec3::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        if v.norm_sq() <= 1.0 {
            return v.scale(radius);
        }
    }
}

fn cube<R: Rng + ?Sized>(rng: &mut R, half: f64) -> Vec3<f64> {
    Vec3::new(rng.gen_range(-half..half), rng.gen_range(-half..half), rng.gen_range(-half..half))
}

fn cast<T: Real>(v: Vec3<f64>) -> Vec3<T> {
    Vec3::new(real(v[0]), real(v[1]), real(v[2]))
}

/// Chart radius inside which random points are drawn: `tan 0.6` on the
/// sphere (so separations stay below `pi/2`), `0.9` in the disc.
pub fn sampling_radius(sign: SpaceSign) -> f64 {
    match sign {
        SpaceSign::Sphere => 0.6f64.tan(),
        SpaceSign::Hyperbolic => 0.9,
    }
}

pub fn random_point<T: Real, R: Rng + ?Sized>(sign: SpaceSign, rng: &mut R) -> ChartPoint<T> {
    ChartPoint { v: cast(in_ball(rng, sampling_radius(sign))), sign }
}

pub fn random_masses<T: Real, R: Rng + ?Sized>(rng: &mut R) -> Masses<T> {
    Masses { m1: real(rng.gen_range(0.2..3.0)), m2: real(rng.gen_range(0.2..3.0)) }
}

/// Random positions (separated by at least [`MIN_SEPARATION`]) and chart
/// velocities in `[-1, 1]^3`.
pub fn random_state<T: Real, R: Rng + ?Sized>(sign: SpaceSign, rng: &mut R) -> PhaseState<T> {
    loop {
        let p1 = random_point::<T, R>(sign, rng);
        let p2 = random_point::<T, R>(sign, rng);
        let w1 = cast(cube(rng, 1.0));
        let w2 = cast(cube(rng, 1.0));
        match geodesic_distance(&p1, &p2) {
            Ok(r) if r > real(MIN_SEPARATION) => {
                return PhaseState { v1: p1.v, v2: p2.v, w1, w2, sign };
            }
            _ => continue,
        }
    }
}

/// Biquaternion with components uniform in `[-1, 1]`.
pub fn random_biquaternion<T: Real, R: Rng + ?Sized>(sign: SpaceSign, rng: &mut R) -> Biquaternion<T> {
    let mut c = [T::zero(); 8];
    for x in &mut c {
        *x = real(rng.gen_range(-1.0..1.0));
    }
    Biquaternion::from_components(c, sign)
}

/// General ring-valued pair vector with components in `[-0.5, 0.5]`.
pub fn random_pair_vector<T: Real, R: Rng + ?Sized>(sign: SpaceSign, rng: &mut R) -> PairVector<T> {
    PairVector::new(RingVector3::new(cast(cube(rng, 0.5)), cast(cube(rng, 0.5)), sign))
}

/// Applies a motion, requiring both images to stay in the chart's own
/// hemisphere with `X0 >= min_x0` (no antipodal identification needed).
pub fn transform_strict<T: Real>(state: &PhaseState<T>, iso: &Isometry<T>, min_x0: T) -> Result<PhaseState<T>> {
    let (x1, x2) = state.embeddings()?;
    let (d1, d2) = state.embedding_velocities()?;
    let (y1, y2) = (iso.apply(&x1), iso.apply(&x2));
    if !(y1.x0() >= min_x0 && y2.x0() >= min_x0) {
        return Err(Error::EquatorSingularity);
    }
    let (p1, p2) = (ChartPoint::from_embedding(&y1)?, ChartPoint::from_embedding(&y2)?);
    PhaseState::new(
        p1.v,
        p2.v,
        ChartPoint::chart_velocity(&y1, &iso.apply(&d1))?,
        ChartPoint::chart_velocity(&y2, &iso.apply(&d2))?,
        state.sign,
    )
}

/// A state whose center of mass sits at rest at the origin, moved by a
/// random motion. With `y_i = v_i / sqrt(lambda_i)` the constraints are
/// `m1 y1 + m2 y2 = 0` and `m1 dy1 + m2 dy2 = 0`.
pub fn dumbbell_state<T: Real, R: Rng + ?Sized>(
    sign: SpaceSign,
    masses: &Masses<T>,
    rng: &mut R,
) -> PhaseState<T> {
    let sigma = f64::from(sign.sigma());
    let (m1, m2) = (masses.m1.to_f64().unwrap_or(1.0), masses.m2.to_f64().unwrap_or(1.0));
    let to_chart = |y: Vec3<f64>, yd: Vec3<f64>| {
        let mu = 1.0 - sigma * y.norm_sq();
        let v = y.scale(mu.sqrt().recip());
        let w = yd.scale(mu.sqrt().recip()) + y.scale(sigma * y.dot(&yd) / (mu * mu.sqrt()));
        (v, w)
    };
    loop {
        let y1 = in_ball(rng, 0.5);
        let y2 = y1.scale(-m1 / m2);
        if y2.norm() > 0.6 || (y1 - y2).norm() < 1e-2 {
            continue;
        }
        let yd1 = cube(rng, 1.0);
        let yd2 = yd1.scale(-m1 / m2);
        let (v1, w1) = to_chart(y1, yd1);
        let (v2, w2) = to_chart(y2, yd2);
        let base = PhaseState { v1: cast(v1), v2: cast(v2), w1: cast(w1), w2: cast(w2), sign };
        let iso = Isometry::sample(sign, 0.5, rng);
        if let Ok(s) = transform_strict(&base, &iso, real(0.3)) {
            return s;
        }
    }
}

/// Two particles on the `e1` geodesic at separation `r`, separating at rate
/// `r_dot`, with the center of mass at arc position `phi` moving at rate
/// `phi_dot` along the same line.
pub fn collinear_state<T: Real>(
    sign: SpaceSign,
    masses: &Masses<T>,
    r: T,
    r_dot: T,
    phi: T,
    phi_dot: T,
) -> Result<PhaseState<T>> {
    let Masses { m1, m2 } = *masses;
    let (s, c) = (sign.sin(r), sign.cos(r));
    let t = m2 * s / (m1 + m2 * c);
    let a1 = match sign {
        SpaceSign::Sphere => t.atan(),
        SpaceSign::Hyperbolic => t.atanh(),
    };
    let a2 = r - a1;
    let (c1, c2) = (sign.cos(a1), sign.cos(a2));
    let a1_dot = m2 * c2 * r_dot / (m1 * c1 + m2 * c2);
    let a2_dot = r_dot - a1_dot;
    let (th1, th2) = (phi - a1, phi + a2);
    let (th1_dot, th2_dot) = (phi_dot - a1_dot, phi_dot + a2_dot);
    let chart = |th: T, th_dot: T| {
        let k = sign.cos(th);
        (sign.tan(th), th_dot / (k * k))
    };
    let (x1, u1) = chart(th1, th1_dot);
    let (x2, u2) = chart(th2, th2_dot);
    PhaseState::new(
        Vec3::new(x1, T::zero(), T::zero()),
        Vec3::new(x2, T::zero(), T::zero()),
        Vec3::new(u1, T::zero(), T::zero()),
        Vec3::new(u2, T::zero(), T::zero()),
        sign,
    )
}

/// Equal masses on a circular orbit of radius `a` about the origin in the
/// `e1 e2` plane with angular rate `omega`.
pub fn circular_state<T: Real>(sign: SpaceSign, a: T, omega: T) -> Result<PhaseState<T>> {
    let x = sign.tan(a);
    let w = x * omega;
    PhaseState::new(
        Vec3::new(x, T::zero(), T::zero()),
        Vec3::new(-x, T::zero(), T::zero()),
        Vec3::new(T::zero(), w, T::zero()),
        Vec3::new(T::zero(), -w, T::zero()),
        sign,
    )
}
