//! Fixed-step RK4 integration of the two-body system.

use crate::dynamics::eom::eom_rhs;
use crate::dynamics::kinetic::kinetic_chart;
use crate::dynamics::potential::PotentialSpec;
use crate::error::{Error, Result};
use crate::kinematics::{center_of_mass_chart, TwoBodyConfig};
use crate::ring::SpaceSign;
use crate::scalar::{real, to_f64, Real};
use crate::space::geodesic_distance;
use crate::state::{Masses, PhaseState};
use crate::vec3::Vec3;

/// Hyperbolic positions must stay within `1 - 1e-9` of the origin.
pub const HYPERBOLIC_EDGE: f64 = 1e-9;
/// Sphere positions must stay below `tan(pi/2 - 1e-6)`.
pub const SPHERE_EDGE: f64 = 1e-6;

/// For potentials singular at contact, a step may move the particles
/// relative to each other by at most this fraction of their chart separation.
pub const ENCOUNTER_RESOLUTION: f64 = 0.5;

/// One recorded point of a trajectory.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sample<T> {
    pub step: usize,
    pub t: T,
    pub state: PhaseState<T>,
    pub r: T,
    pub qc: Vec3<T>,
    pub kinetic: T,
    pub potential: T,
}

impl<T: Real> Sample<T> {
    pub fn energy(&self) -> T {
        self.kinetic + self.potential
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory<T> {
    pub samples: Vec<Sample<T>>,
    /// Why integration ended early, if it did. Samples up to the last valid
    /// step are kept.
    pub stop: Option<Error>,
}

impl<T: Real> Trajectory<T> {
    pub fn completed(&self) -> bool {
        self.stop.is_none()
    }
}

/// Integration settings.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntegratorSettings<T> {
    pub dt: T,
    pub steps: usize,
    pub output_every: usize,
}

impl<T: Real> IntegratorSettings<T> {
    pub fn new(dt: T, steps: usize) -> Self {
        Self { dt, steps, output_every: 1 }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt > T::zero() && self.dt.is_finite()) {
            return Err(Error::InvalidArgument(format!("dt must be positive, got {}", self.dt)));
        }
        if self.output_every == 0 {
            return Err(Error::InvalidArgument("output_every must be at least 1".into()));
        }
        Ok(())
    }
}

fn inside_chart<T: Real>(v: &Vec3<T>, sign: SpaceSign) -> bool {
    if !v.is_finite() {
        return false;
    }
    let n = v.norm();
    match sign {
        SpaceSign::Sphere => n <= (T::FRAC_PI_2() - real(SPHERE_EDGE)).tan(),
        SpaceSign::Hyperbolic => n <= T::one() - real(HYPERBOLIC_EDGE),
    }
}

/// Records time, distance, chart center of mass and energies for a state.
pub fn sample_state<T: Real>(
    step: usize,
    t: T,
    state: &PhaseState<T>,
    masses: &Masses<T>,
    potential: &PotentialSpec<T>,
) -> Result<Sample<T>> {
    let r = geodesic_distance(&state.p1(), &state.p2())?;
    let qc = center_of_mass_chart(&TwoBodyConfig::new(*masses, *state)?)?;
    let kinetic = kinetic_chart(state, masses)?;
    let potential = potential.value(state.sign, r)?;
    Ok(Sample { step, t, state: *state, r, qc, kinetic, potential })
}

fn derivative<T: Real>(
    y: &[T; 12],
    sign: SpaceSign,
    masses: &Masses<T>,
    potential: &PotentialSpec<T>,
) -> Result<[T; 12]> {
    let st = PhaseState::from_array(y, sign);
    if !(inside_chart(&st.v1, sign) && inside_chart(&st.v2, sign)) {
        return Err(Error::ChartExit { last_valid: 0 });
    }
    let (a1, a2) = eom_rhs(&st, masses, potential)?;
    let mut d = [T::zero(); 12];
    for i in 0..3 {
        d[i] = y[6 + i];
        d[3 + i] = y[9 + i];
        d[6 + i] = a1[i];
        d[9 + i] = a2[i];
    }
    Ok(d)
}

/// One classical RK4 step.
pub fn rk4_step<T: Real>(
    state: &PhaseState<T>,
    masses: &Masses<T>,
    potential: &PotentialSpec<T>,
    dt: T,
) -> Result<PhaseState<T>> {
    let sign = state.sign;
    let y = state.to_array();
    let two = T::one() + T::one();
    let six = two + two + two;
    let axpy = |k: &[T; 12], h: T| {
        let mut out = y;
        for i in 0..12 {
            out[i] = y[i] + h * k[i];
        }
        out
    };
    let k1 = derivative(&y, sign, masses, potential)?;
    let k2 = derivative(&axpy(&k1, dt / two), sign, masses, potential)?;
    let k3 = derivative(&axpy(&k2, dt / two), sign, masses, potential)?;
    let k4 = derivative(&axpy(&k3, dt), sign, masses, potential)?;
    let mut out = y;
    for i in 0..12 {
        out[i] = y[i] + dt / six * (k1[i] + two * k2[i] + two * k3[i] + k4[i]);
    }
    Ok(PhaseState::from_array(&out, sign))
}

/// True when a close encounter is too fast for the step to resolve.
fn unresolved_encounter<T: Real>(state: &PhaseState<T>, potential: &PotentialSpec<T>, dt: T) -> bool {
    if !potential.singular_at_contact() {
        return false;
    }
    let gap = (state.v2 - state.v1).norm();
    let closing = (state.w2 - state.w1).norm() * dt;
    closing > real::<T>(ENCOUNTER_RESOLUTION) * gap
}

fn classify(e: Error, last_valid: usize) -> Error {
    match e {
        Error::PotentialSingularity { .. } => e,
        _ => Error::ChartExit { last_valid },
    }
}

/// Integrates `settings.steps` RK4 steps from `initial`.
///
/// Samples every `output_every` steps, always including step 0 and the last
/// step reached. A step that leaves the chart (or produces non-finite
/// values) ends integration with [`Error::ChartExit`]; a separation at a
/// potential singularity, or a collision faster than the step can resolve
/// (see [`ENCOUNTER_RESOLUTION`]), ends it with [`Error::PotentialSingularity`].
pub fn integrate<T: Real>(
    initial: &PhaseState<T>,
    masses: &Masses<T>,
    potential: &PotentialSpec<T>,
    settings: &IntegratorSettings<T>,
) -> Result<Trajectory<T>> {
    settings.validate()?;
    initial.validate()?;
    let first = sample_state(0, T::zero(), initial, masses, potential)?;
    let mut samples = vec![first];
    let mut state = *initial;
    let mut last = first;
    for step in 1..=settings.steps {
        let t = real::<T>(step as f64) * settings.dt;
        let next = rk4_step(&state, masses, potential, settings.dt).and_then(|s| {
            if !(inside_chart(&s.v1, s.sign) && inside_chart(&s.v2, s.sign) && s.w1.is_finite() && s.w2.is_finite()) {
                return Err(Error::ChartExit { last_valid: step - 1 });
            }
            let sample = sample_state(step, t, &s, masses, potential)?;
            if unresolved_encounter(&s, potential, settings.dt) {
                return Err(Error::PotentialSingularity { r: to_f64(sample.r) });
            }
            Ok((s, sample))
        });
        match next {
            Ok((s, sample)) => {
                state = s;
                last = sample;
                if step % settings.output_every == 0 || step == settings.steps {
                    samples.push(sample);
                }
            }
            Err(e) => {
                if samples.last().map(|s| s.step) != Some(last.step) {
                    samples.push(last);
                }
                return Ok(Trajectory { samples, stop: Some(classify(e, step - 1)) });
            }
        }
    }
    Ok(Trajectory { samples, stop: None })
}
