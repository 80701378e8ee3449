//! Side-by-side evaluation of every kinetic-energy form for one state.

use crate::dynamics::kinetic::{
    kinetic_chart, kinetic_chart_literal_metric, kinetic_cm_rel_with, kinetic_embedding,
    kinetic_y12_with, FormValue, XcTermSign,
};
use crate::dynamics::polar::{
    kinetic_equal_mass_with, kinetic_polar_with, kinetic_small_r_with, polar_decompose,
    relative_residual, CorrectionFlags,
};
use crate::error::{Error, Result};
use crate::kinematics::{decompose, per_particle_relative, per_particle_relative_unsigned, TwoBodyConfig};
use crate::ring::SpaceSign;
use crate::scalar::Real;
use crate::space::{vector_add, PairVector};
use crate::state::{Masses, PhaseState};

/// A kinetic form evaluated as printed and with corrections.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FormPair<T> {
    pub printed: FormValue<T>,
    pub corrected: FormValue<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct KineticReport<T> {
    pub sign: SpaceSign,
    /// Embedding kinetic energy, the reference for everything else.
    pub embedding: T,
    pub chart: T,
    pub chart_literal_metric: T,
    pub cm_rel: Option<FormPair<T>>,
    pub cross_term: Option<T>,
    pub y12: Option<FormPair<T>>,
    pub polar: Option<FormPair<T>>,
    pub equal_mass: Option<FormPair<T>>,
    pub small_r: Option<FormPair<T>>,
    /// How far `<qy2, -qy1>` lands from `qy` with the signed and the printed
    /// first-particle vector.
    pub per_particle: Option<(T, T)>,
    pub flags: CorrectionFlags,
    /// Forms that could not be evaluated, with the reason.
    pub skipped: Vec<(&'static str, Error)>,
}

impl<T: Real> KineticReport<T> {
    pub fn residual(&self, v: &FormValue<T>) -> T {
        relative_residual(v.value, self.embedding) + v.nonscalar_residual
    }

    /// `(name, printed residual, corrected residual)` for every evaluated form.
    pub fn residuals(&self) -> Vec<(&'static str, T, T)> {
        let mut out = Vec::new();
        let mut push = |name, p: &Option<FormPair<T>>| {
            if let Some(p) = p {
                out.push((name, self.residual(&p.printed), self.residual(&p.corrected)));
            }
        };
        push("cm_rel", &self.cm_rel);
        push("y12", &self.y12);
        push("polar", &self.polar);
        push("equal_mass", &self.equal_mass);
        push("small_r", &self.small_r);
        out
    }
}

fn per_particle_mismatch<T: Real>(qy1: &PairVector<T>, qy2: &PairVector<T>, qy: &PairVector<T>) -> Result<T> {
    Ok((vector_add(qy2, &-*qy1)?.q - qy.q).magnitude())
}

/// Evaluates every form. Only the ground truth is required; other forms are
/// skipped with their error when undefined for this state.
pub fn kinetic_audit<T: Real>(state: &PhaseState<T>, masses: &Masses<T>) -> Result<KineticReport<T>> {
    let sign = state.sign;
    let flags = CorrectionFlags::frozen(sign);
    let mut report = KineticReport {
        sign,
        embedding: kinetic_embedding(state, masses)?,
        chart: kinetic_chart(state, masses)?,
        chart_literal_metric: kinetic_chart_literal_metric(state, masses)?,
        cm_rel: None,
        cross_term: None,
        y12: None,
        polar: None,
        equal_mass: None,
        small_r: None,
        per_particle: None,
        flags,
        skipped: Vec::new(),
    };
    let d = match decompose(&TwoBodyConfig::new(*masses, *state)?) {
        Ok(d) => d,
        Err(e) => {
            report.skipped.push(("decomposition", e));
            return Ok(report);
        }
    };
    let printed = kinetic_cm_rel_with(sign, masses, &d, XcTermSign::Printed);
    let corrected = kinetic_cm_rel_with(sign, masses, &d, XcTermSign::Positive);
    report.cm_rel = Some(FormPair { printed: printed.total, corrected: corrected.total });
    report.cross_term = Some(corrected.cross_term_magnitude());
    report.y12 = Some(FormPair {
        printed: kinetic_y12_with(sign, masses, &d, XcTermSign::Printed),
        corrected: kinetic_y12_with(sign, masses, &d, XcTermSign::Positive),
    });

    let pp = per_particle_relative(masses, &d.rel).and_then(|(a, b)| {
        let (pa, pb) = per_particle_relative_unsigned(masses, &d.rel)?;
        Ok((per_particle_mismatch(&a, &b, &d.rel.qy)?, per_particle_mismatch(&pa, &pb, &d.rel.qy)?))
    });
    match pp {
        Ok(v) => report.per_particle = Some(v),
        Err(e) => report.skipped.push(("per_particle", e)),
    }

    match polar_decompose(&d) {
        Ok(p) => {
            report.polar = Some(FormPair {
                printed: kinetic_polar_with(masses, &d, &p, CorrectionFlags::printed(sign)),
                corrected: kinetic_polar_with(masses, &d, &p, flags),
            });
            if masses.m1 == masses.m2 {
                report.equal_mass = Some(FormPair {
                    printed: kinetic_equal_mass_with(masses.m1, &d, &p, XcTermSign::Printed),
                    corrected: kinetic_equal_mass_with(masses.m1, &d, &p, XcTermSign::Positive),
                });
            }
            report.small_r = Some(FormPair {
                printed: kinetic_small_r_with(masses, &d, &p, XcTermSign::Printed),
                corrected: kinetic_small_r_with(masses, &d, &p, XcTermSign::Positive),
            });
        }
        Err(e) => report.skipped.push(("polar", e)),
    }
    Ok(report)
}
