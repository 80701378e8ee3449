//! The invariant suite behind `curvebody verify`.
//!
//! Every check is evaluated over seeded random cases and reduced to a worst
//! value. Asserted checks carry a tolerance; reported checks (the printed
//! forms of the kinetic-energy expressions) are shown but never fail.

use std::fmt::Write as _;

use curvebody::dynamics::{
    calibrate, integrate, kinetic_audit, CorrectionFlags, IntegratorSettings, PotentialSpec, XcTermSign,
};
use curvebody::dynamics::polar::{BracketDenominator, BracketSign, LineJoin};
use curvebody::kinematics::{
    center_of_mass, center_of_mass_chart, decompose, per_particle_relative, reconstruct_particles, TwoBodyConfig,
};
use curvebody::sampling::{
    circular_state, collinear_state, dumbbell_state, random_biquaternion, random_masses, random_pair_vector,
    random_point, random_state, transform_strict,
};
use curvebody::space::{embedded_distance, pair_transform, vector_add, Isometry, PairVector};
use curvebody::{Biquaternion, ChartPoint, Error, Masses, PhaseState, RingScalar, SpaceSign, Vec3};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

type Res = Result<f64, Error>;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Check {
    AtMost(f64),
    AtLeast(f64),
    Within(f64, f64),
    Reported,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub space: SpaceSign,
    pub group: &'static str,
    pub name: &'static str,
    pub check: Check,
    pub value: f64,
    pub cases: usize,
    pub error: Option<String>,
}

impl Row {
    pub fn passed(&self) -> bool {
        if self.error.is_some() {
            return matches!(self.check, Check::Reported);
        }
        match self.check {
            Check::AtMost(tol) => self.value <= tol,
            Check::AtLeast(tol) => self.value >= tol,
            Check::Within(lo, hi) => (lo..=hi).contains(&self.value),
            Check::Reported => true,
        }
    }

    pub fn asserted(&self) -> bool {
        !matches!(self.check, Check::Reported)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FlagsSummary {
    pub space: SpaceSign,
    pub frozen: CorrectionFlags,
    pub calibrated: Option<CorrectionFlags>,
    pub residual: f64,
    pub printed_residual: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub seed: u64,
    pub cases: usize,
    pub rows: Vec<Row>,
    pub flags: Vec<FlagsSummary>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(Row::passed)
    }

    pub fn failures(&self) -> Vec<&Row> {
        self.rows.iter().filter(|r| !r.passed()).collect()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "curvebody verify");
        let _ = writeln!(out, "seed: {}", self.seed);
        let _ = writeln!(out, "cases per space: {}", self.cases);
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "{:<11} {:<10} {:<48} {:<7} {:>14} {:>11} {:>7}  status",
            "space", "group", "check", "kind", "limit", "worst", "cases"
        );
        for r in &self.rows {
            let (kind, limit) = match r.check {
                Check::AtMost(t) => ("assert", format!("<= {t:.1e}")),
                Check::AtLeast(t) => ("assert", format!(">= {t:.1e}")),
                Check::Within(lo, hi) => ("assert", format!("in [{lo}, {hi}]")),
                Check::Reported => ("report", "-".to_string()),
            };
            let status = match (&r.error, r.passed(), r.asserted()) {
                (Some(_), _, true) => "FAIL",
                (Some(_), _, false) => "n/a",
                (None, true, true) => "pass",
                (None, false, _) => "FAIL",
                (None, true, false) => "info",
            };
            let _ = write!(
                out,
                "{:<11} {:<10} {:<48} {:<7} {:>14} {:>11.3e} {:>7}  {}",
                r.space.name(),
                r.group,
                r.name,
                kind,
                limit,
                r.value,
                r.cases,
                status
            );
            if let Some(e) = &r.error {
                let _ = write!(out, " ({e})");
            }
            let _ = writeln!(out);
        }
        let _ = writeln!(out);
        let _ = writeln!(out, "correction flags (frozen) for the polar kinetic forms");
        for f in &self.flags {
            let _ = writeln!(out, "{:<11} {}", f.space.name(), describe_flags(&f.frozen));
            let cal = match &f.calibrated {
                Some(c) if *c == f.frozen => "calibration reproduces the frozen set".to_string(),
                Some(c) => format!("calibration chose a different set: {}", describe_flags(c)),
                None => "calibration failed".to_string(),
            };
            let _ = writeln!(
                out,
                "{:<11} {}; worst residual {:.3e} (printed form {:.3e})",
                "", cal, f.residual, f.printed_residual
            );
        }
        let _ = writeln!(out);
        let asserted = self.rows.iter().filter(|r| r.asserted()).count();
        let failed = self.failures().len();
        let verdict = if failed == 0 { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "result: {verdict} ({asserted} asserted checks, {failed} failed)");
        out
    }
}

pub fn describe_flags(f: &CorrectionFlags) -> String {
    let xc = match f.xc_sign {
        XcTermSign::Printed => "printed",
        XcTermSign::Positive => "positive",
    };
    let bs = match f.bracket_sign {
        BracketSign::Printed => "printed",
        BracketSign::Negated => "negated",
    };
    let join = match f.line_join {
        LineJoin::Product => "product",
        LineJoin::Plus => "plus",
        LineJoin::Minus => "minus",
    };
    let den = match f.denominator {
        BracketDenominator::Printed => "printed",
        BracketDenominator::Matched => "matched",
    };
    format!("xc_sign={xc} bracket_sign={bs} line_join={join} denominator={den}")
}

/// Worst value over a set of cases.
struct Measured {
    value: f64,
    cases: usize,
    error: Option<String>,
}

fn reduce<I, F>(items: I, maximize: bool, mut f: F) -> Measured
where
    I: IntoIterator,
    F: FnMut(I::Item) -> Res,
{
    let mut m = Measured { value: if maximize { 0.0 } else { f64::INFINITY }, cases: 0, error: None };
    for item in items {
        m.cases += 1;
        match f(item) {
            Ok(v) if v.is_nan() => {
                m.error.get_or_insert_with(|| "non-finite residual".into());
            }
            Ok(v) => m.value = if maximize { m.value.max(v) } else { m.value.min(v) },
            Err(e) => {
                m.error.get_or_insert_with(|| e.to_string());
            }
        }
    }
    m
}

fn worst<I, F>(items: I, f: F) -> Measured
where
    I: IntoIterator,
    F: FnMut(I::Item) -> Res,
{
    reduce(items, true, f)
}

fn least<I, F>(items: I, f: F) -> Measured
where
    I: IntoIterator,
    F: FnMut(I::Item) -> Res,
{
    reduce(items, false, f)
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

fn rel_vec(a: &Vec3<f64>, b: &Vec3<f64>) -> f64 {
    (*a - *b).norm() / b.norm().max(1.0)
}

fn stream(seed: u64, space: SpaceSign, id: u64) -> ChaCha8Rng {
    let mut g = curvebody::sampling::rng(seed);
    let s = match space {
        SpaceSign::Sphere => 0,
        SpaceSign::Hyperbolic => 1 << 32,
    };
    g.set_stream(s + id);
    g
}

struct Suite {
    space: SpaceSign,
    seed: u64,
    n: usize,
    rows: Vec<Row>,
}

impl Suite {
    fn push(&mut self, group: &'static str, name: &'static str, check: Check, m: Measured) {
        self.rows.push(Row { space: self.space, group, name, check, value: m.value, cases: m.cases, error: m.error });
    }

    fn rng(&self, id: u64) -> ChaCha8Rng {
        stream(self.seed, self.space, id)
    }
}

fn random_motion(space: SpaceSign, rng: &mut ChaCha8Rng) -> Isometry<f64> {
    Isometry::sample(space, 1.0, rng)
}

/// Moves a state by random motions until both images stay well inside the
/// chart.
fn moved(state: &PhaseState<f64>, rng: &mut ChaCha8Rng) -> (Isometry<f64>, PhaseState<f64>) {
    loop {
        let iso = random_motion(state.sign, rng);
        if let Ok(s) = transform_strict(state, &iso, 0.2) {
            if s.v1.norm() < 4.0 && s.v2.norm() < 4.0 {
                return (iso, s);
            }
        }
    }
}

fn algebra(s: &mut Suite) {
    let sign = s.space;
    let n = s.n;
    let mut g = s.rng(1);
    let triples: Vec<[Biquaternion<f64>; 3]> = (0..n)
        .map(|_| [random_biquaternion(sign, &mut g), random_biquaternion(sign, &mut g), random_biquaternion(sign, &mut g)])
        .collect();
    let m = worst(&triples, |[p, q, r]| {
        let scale = p.magnitude() * q.magnitude() * r.magnitude();
        Ok(((*p * *q) * *r - *p * (*q * *r)).magnitude() / scale.max(1e-300))
    });
    s.push("algebra", "associativity (PQ)R = P(QR)", Check::AtMost(1e-12), m);
    let m = worst(&triples, |[p, q, _]| {
        let scale = (p.magnitude() * q.magnitude()).max(1e-300);
        let laws = [
            (p.bar().bar() - *p).magnitude(),
            (p.star().star() - *p).magnitude(),
            (p.bar().star() - p.star().bar()).magnitude(),
            ((*p * *q).bar() - q.bar() * p.bar()).magnitude() / scale,
            ((*p * *q).star() - p.star() * q.star()).magnitude() / scale,
        ];
        Ok(laws.into_iter().fold(0.0, f64::max))
    });
    s.push("algebra", "conjugation laws", Check::AtMost(1e-12), m);
    let m = worst(&triples, |[p, q, _]| {
        let lhs = (*p * *q).norm();
        let rhs = p.norm() * q.norm();
        let scale = (p.magnitude() * q.magnitude()).powi(2).max(1e-300);
        Ok((lhs - rhs).magnitude() / scale)
    });
    s.push("algebra", "norm multiplicativity", Check::AtMost(1e-12), m);

    let mut g = s.rng(2);
    let m = worst(0..n, |_| {
        let a: f64 = g.gen_range(-2.0..2.0);
        let b: f64 = if g.gen_bool(0.5) { a } else { -a };
        let z = RingScalar::new(a, b, sign);
        let w = RingScalar::new(a, g.gen_range(-2.0..2.0), sign);
        let miss = match sign {
            SpaceSign::Sphere => !matches!(z.invert(), Err(Error::ZeroDivisor { .. }) | Err(Error::NonInvertible)),
            SpaceSign::Hyperbolic => z.invert().is_err() && !z.is_zero() || w.invert().is_err() && !w.is_zero(),
        };
        Ok(f64::from(u8::from(miss)))
    });
    s.push("algebra", "zero divisors detected exactly", Check::AtMost(0.0), m);
}

fn geometry(s: &mut Suite) {
    let sign = s.space;
    let n = s.n;
    let mut g = s.rng(3);
    let points: Vec<ChartPoint<f64>> = (0..n).map(|_| random_point(sign, &mut g)).collect();
    let m = worst(&points, |p| {
        let x = p.embedding()?;
        Ok(rel_vec(&ChartPoint::from_embedding(&x)?.v, &p.v))
    });
    s.push("geometry", "chart round trip", Check::AtMost(1e-12), m);
    let m = worst(&points, |p| {
        let x = p.embedding()?;
        Ok((x.norm() - RingScalar::from_real(sign.sigma_as(), sign)).magnitude())
    });
    s.push("geometry", "embedded points on the quadric", Check::AtMost(1e-13), m);
    let m = worst(&points, |p| Ok(p.embedding()?.norm().im.abs()));
    s.push("geometry", "norm of a point is real", Check::AtMost(1e-14), m);

    let mut g = s.rng(4);
    let mut pairs = Vec::with_capacity(n);
    while pairs.len() < n {
        let a: PairVector<f64> = random_pair_vector(sign, &mut g);
        let b: PairVector<f64> = random_pair_vector(sign, &mut g);
        let den = RingScalar::one(sign) - a.q.dot(&b.q);
        if den.modulus_sq().abs() > 0.05 {
            pairs.push((a, b));
        }
    }
    let m = worst(&pairs, |(a, b)| {
        let direct = vector_add(a, b)?;
        let oracle = PairVector::from_biquaternion(&(a.lift_unnormalized() * b.lift_unnormalized()))?;
        Ok((direct.q - oracle.q).magnitude() / oracle.q.magnitude().max(1.0))
    });
    s.push("geometry", "vector addition = composition of lifts", Check::AtMost(1e-12), m);

    let mut g = s.rng(5);
    let m = worst(0..n, |_| {
        let a: f64 = g.gen_range(-0.7..0.7);
        let b: f64 = g.gen_range(-0.7..0.7);
        let pa = PairVector::from(ChartPoint::new(Vec3::new(sign.tan(a), 0.0, 0.0), sign)?);
        let pb = PairVector::from(ChartPoint::new(Vec3::new(sign.tan(b), 0.0, 0.0), sign)?);
        let sum = vector_add(&pa, &pb)?;
        let exact = sign.tan(a + b);
        Ok(rel(sum.q.im[0], exact).max(sum.q.magnitude() - sum.q.im[0].abs()))
    });
    s.push("geometry", "collinear addition = tan/tanh addition", Check::AtMost(1e-13), m);

    let mut g = s.rng(6);
    let m = worst(0..n, |_| {
        let (p1, p2, p3) = (random_point(sign, &mut g), random_point(sign, &mut g), random_point(sign, &mut g));
        let q12 = pair_transform(&p1, &p2)?;
        let q23 = pair_transform(&p2, &p3)?;
        let q13 = pair_transform(&p1, &p3)?;
        Ok((q23 * q12 - q13).magnitude())
    });
    s.push("geometry", "pair transforms compose", Check::AtMost(1e-12), m);

    let h = 1e-5;
    let few = n.min(200);
    let m = worst(&points[..few], |p| {
        let partial = |b: usize| -> Result<Biquaternion<f64>, Error> {
            let at = |k: f64| -> Result<Biquaternion<f64>, Error> {
                let mut v = p.v;
                v.0[b] += k;
                ChartPoint::new(v, sign)?.embedding()
            };
            let (p1, m1, p2, m2) = (at(h)?, at(-h)?, at(2.0 * h)?, at(-2.0 * h)?);
            Ok(((p1 - m1).scale(8.0) - (p2 - m2)).scale(1.0 / (12.0 * h)))
        };
        let d = [partial(0)?, partial(1)?, partial(2)?];
        let gm = p.metric_tensor()?;
        let mut worst = 0.0f64;
        for a in 0..3 {
            for b in 0..3 {
                let fd = (d[a] * d[b].bar()).s.re;
                worst = worst.max((fd - gm[a][b]).abs());
            }
        }
        Ok(worst)
    });
    s.push("geometry", "metric = pullback (finite differences)", Check::AtMost(1e-8), m);

    let m = worst(&points[..few], |p| {
        let metric_at = |b: usize, k: f64| -> Result<[[f64; 3]; 3], Error> {
            let mut v = p.v;
            v.0[b] += k;
            ChartPoint::new(v, sign)?.metric_tensor()
        };
        let mut dg = [[[0.0; 3]; 3]; 3];
        for c in 0..3 {
            let (p1, m1) = (metric_at(c, h)?, metric_at(c, -h)?);
            let (p2, m2) = (metric_at(c, 2.0 * h)?, metric_at(c, -2.0 * h)?);
            for a in 0..3 {
                for b in 0..3 {
                    dg[c][a][b] = (8.0 * (p1[a][b] - m1[a][b]) - (p2[a][b] - m2[a][b])) / (12.0 * h);
                }
            }
        }
        let ginv = p.inverse_metric()?;
        let gamma = p.christoffel()?;
        let mut worst = 0.0f64;
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    let fd: f64 = (0..3)
                        .map(|d| 0.5 * ginv[a][d] * (dg[b][d][c] + dg[c][d][b] - dg[d][b][c]))
                        .sum();
                    worst = worst.max((fd - gamma[a][b][c]).abs());
                }
            }
        }
        Ok(worst)
    });
    s.push("geometry", "Christoffel symbols (finite differences)", Check::AtMost(1e-8), m);

    let mut g = s.rng(7);
    let m = worst(0..n, |_| {
        let (p1, p2) = (random_point(sign, &mut g), random_point(sign, &mut g));
        let iso = random_motion(sign, &mut g);
        let (x1, x2) = (p1.embedding()?, p2.embedding()?);
        let before = embedded_distance(&x1, &x2)?;
        let after = embedded_distance(&iso.apply(&x1), &iso.apply(&x2))?;
        Ok((before - after).abs())
    });
    s.push("geometry", "distance invariant under motions", Check::AtMost(1e-10), m);
}

fn kinematics(s: &mut Suite, cases: &[(PhaseState<f64>, Masses<f64>)]) {
    let sign = s.space;
    let decomposed = |(st, m): &(PhaseState<f64>, Masses<f64>)| decompose(&TwoBodyConfig::new(*m, *st)?);

    let m = worst(cases, |c| {
        let d = decomposed(c)?;
        let one = RingScalar::one(sign);
        let norms = [
            (d.rel.y12.norm() - one).magnitude(),
            (d.rel.y1.norm() - one).magnitude(),
            (d.rel.y2.norm() - one).magnitude(),
            (d.cm.xc.norm() - RingScalar::from_real(sign.sigma_as(), sign)).magnitude(),
        ];
        Ok(norms.into_iter().fold(0.0, f64::max))
    });
    s.push("kinematics", "unit norms of Y12, Y1, Y2, Xc", Check::AtMost(1e-12), m);

    let m = worst(cases, |c| {
        let d = decomposed(c)?;
        Ok((d.rel.y12 - d.rel.y2 * d.rel.y1.bar()).magnitude())
    });
    s.push("kinematics", "Y12 = Y2 bar(Y1)", Check::AtMost(1e-12), m);

    let m = worst(cases, |c| {
        let d = decomposed(c)?;
        let (qy1, qy2) = per_particle_relative(&c.1, &d.rel)?;
        let back = vector_add(&qy2, &-qy1)?;
        Ok((back.q - d.rel.qy.q).magnitude() / d.rel.qy.q.magnitude().max(1.0))
    });
    s.push("kinematics", "qy = <qy2, -qy1>", Check::AtMost(1e-10), m);

    let m = worst(cases, |c| {
        let d = decomposed(c)?;
        let (qy1, qy2) = per_particle_relative(&c.1, &d.rel)?;
        let (r1, r2) = reconstruct_particles(&qy1, &qy2, &d.cm.qc)?;
        let e1 = (r1.q - PairVector::from(c.0.p1()).q).magnitude() / c.0.v1.norm().max(1.0);
        let e2 = (r2.q - PairVector::from(c.0.p2()).q).magnitude() / c.0.v2.norm().max(1.0);
        Ok(e1.max(e2))
    });
    s.push("kinematics", "particles rebuilt from qy1, qy2, qc", Check::AtMost(1e-10), m);

    let m = worst(cases, |(st, ms)| {
        let cfg = TwoBodyConfig::new(*ms, *st)?;
        Ok(rel_vec(&center_of_mass_chart(&cfg)?, &center_of_mass(&cfg)?.qc.v))
    });
    s.push("kinematics", "chart CM = embedding CM", Check::AtMost(1e-10), m);

    let mut g = s.rng(8);
    let m = worst(cases, |(st, ms)| {
        let (iso, moved_state) = moved(st, &mut g);
        let before = center_of_mass(&TwoBodyConfig::new(*ms, *st)?)?;
        let after = center_of_mass(&TwoBodyConfig::new(*ms, moved_state)?)?;
        let image = ChartPoint::from_embedding(&iso.apply(&before.xc))?;
        Ok(rel_vec(&image.v, &after.qc.v))
    });
    s.push("kinematics", "CM covariant under motions", Check::AtMost(1e-9), m);

    let mut g = s.rng(9);
    let m = worst(cases, |(st, ms)| {
        let (iso, moved_state) = moved(st, &mut g);
        let before = decompose(&TwoBodyConfig::new(*ms, *st)?)?;
        let after = decompose(&TwoBodyConfig::new(*ms, moved_state)?)?;
        let scalar = (before.rel.y12.s.re - after.rel.y12.s.re).abs();
        let law = (iso.conjugate(&before.rel.y12) - after.rel.y12).magnitude();
        Ok(scalar.max(law))
    });
    s.push("kinematics", "Y12 -> A Y12 bar(A) under motions", Check::AtMost(1e-10), m);

    let mut g = s.rng(10);
    let m = worst(0..s.n, |_| {
        let a = Vec3::new(g.gen_range(-1e-4..1e-4), g.gen_range(-1e-4..1e-4), g.gen_range(-1e-4..1e-4));
        let b = Vec3::new(g.gen_range(-1e-4..1e-4), g.gen_range(-1e-4..1e-4), g.gen_range(-1e-4..1e-4));
        let ms: Masses<f64> = random_masses(&mut g);
        let st = PhaseState::new(a, b, Vec3::zero(), Vec3::zero(), sign)?;
        let qc = center_of_mass(&TwoBodyConfig::new(ms, st)?)?.qc.v;
        let mean = (a.scale(ms.m1) + b.scale(ms.m2)).scale(1.0 / ms.total());
        Ok((qc - mean).norm())
    });
    s.push("kinematics", "flat limit of the CM", Check::AtMost(1e-7), m);
}

fn kinetic(s: &mut Suite, cases: &[(PhaseState<f64>, Masses<f64>)]) {
    let sign = s.space;
    let reports: Vec<_> = cases.iter().map(|(st, m)| kinetic_audit(st, m)).collect();
    let form = |pick: fn(&curvebody::dynamics::KineticReport<f64>) -> Option<curvebody::dynamics::FormPair<f64>>,
                corrected: bool| {
        worst(&reports, move |r| {
            let r = r.as_ref().map_err(Clone::clone)?;
            if let Some((_, e)) = r.skipped.first() {
                return Err(e.clone());
            }
            let p = pick(r).ok_or_else(|| Error::InvalidArgument("form not evaluated".into()))?;
            Ok(r.residual(if corrected { &p.corrected } else { &p.printed }))
        })
    };

    let m = worst(&reports, |r| {
        let r = r.as_ref().map_err(Clone::clone)?;
        Ok(rel(r.chart, r.embedding))
    });
    s.push("kinetic", "T embedding = T chart", Check::AtMost(1e-12), m);
    s.push("kinetic", "T embedding = CM/relative form", Check::AtMost(1e-10), form(|r| r.cm_rel, true));
    s.push("kinetic", "T embedding = Y12 form", Check::AtMost(1e-9), form(|r| r.y12, true));
    s.push("kinetic", "T embedding = polar form (corrected)", Check::AtMost(1e-9), form(|r| r.polar, true));

    let equal: Vec<_> = cases
        .iter()
        .map(|(st, m)| kinetic_audit(st, &Masses { m1: m.m1, m2: m.m1 }))
        .collect();
    let m = worst(&equal, |r| {
        let r = r.as_ref().map_err(Clone::clone)?;
        let e = r.equal_mass.ok_or_else(|| Error::InvalidArgument("equal-mass form skipped".into()))?;
        Ok(r.residual(&e.corrected))
    });
    s.push("kinetic", "T embedding = equal-mass form (corrected)", Check::AtMost(1e-9), m);
    let m = worst(&equal, |r| {
        let r = r.as_ref().map_err(Clone::clone)?;
        let (e, p) = r.equal_mass.zip(r.polar).ok_or_else(|| Error::InvalidArgument("form skipped".into()))?;
        Ok(rel(e.corrected.value, p.corrected.value))
    });
    s.push("kinetic", "equal-mass form = polar form (corrected)", Check::AtMost(1e-10), m);

    let mut g = s.rng(11);
    let m = worst(cases, |(st, ms)| {
        let (_, moved_state) = moved(st, &mut g);
        Ok(rel(
            curvebody::dynamics::kinetic_embedding(&moved_state, ms)?,
            curvebody::dynamics::kinetic_embedding(st, ms)?,
        ))
    });
    s.push("kinetic", "T invariant under motions", Check::AtMost(1e-9), m);

    let m = least(&reports, |r| {
        let r = r.as_ref().map_err(Clone::clone)?;
        r.cross_term.ok_or_else(|| Error::InvalidArgument("cross term not evaluated".into()))
    });
    s.push("kinetic", "generic states: cross terms present", Check::AtLeast(1e-8), m);

    let mut g = s.rng(12);
    let dumbbells: Vec<_> = (0..s.n)
        .map(|_| {
            let ms: Masses<f64> = random_masses(&mut g);
            (dumbbell_state(sign, &ms, &mut g), ms)
        })
        .collect();
    let m = worst(&dumbbells, |(st, ms)| {
        let r = kinetic_audit(st, ms)?;
        r.cross_term.ok_or_else(|| Error::InvalidArgument("cross term not evaluated".into()))
    });
    s.push("kinetic", "dumbbell: cross terms vanish", Check::AtMost(1e-12), m);
    let m = worst(&dumbbells, |(st, ms)| {
        let r = kinetic_audit(st, ms)?;
        let p = r.polar.ok_or_else(|| Error::InvalidArgument("polar form skipped".into()))?;
        Ok(r.residual(&p.corrected))
    });
    s.push("kinetic", "dumbbell: polar form (corrected)", Check::AtMost(1e-9), m);

    let mut g = s.rng(13);
    let radial: Vec<_> = (0..s.n.min(50))
        .map(|_| {
            let ms = loop {
                let ms: Masses<f64> = random_masses(&mut g);
                if (ms.m1 - ms.m2).abs() > 0.1 {
                    break ms;
                }
            };
            (ms, g.gen_range(0.3..1.5), g.gen_range(-0.5..0.5), g.gen_range(0.3..1.0))
        })
        .collect();
    let residual_at = |ms: &Masses<f64>, r: f64, rdot: f64, phi: f64, phidot: f64| -> Res {
        let st = collinear_state(sign, ms, r, rdot, phi, phidot)?;
        let report = kinetic_audit(&st, ms)?;
        let small = report.small_r.ok_or_else(|| Error::InvalidArgument("small-r form skipped".into()))?;
        Ok((small.corrected.value - report.embedding).abs())
    };
    let ratios: Vec<Res> = radial
        .iter()
        .map(|(ms, rdot, phi, phidot)| {
            Ok(residual_at(ms, 1e-2, *rdot, *phi, *phidot)? / residual_at(ms, 1e-3, *rdot, *phi, *phidot)?)
        })
        .collect();
    let m = worst(&ratios, |r| Ok((r.clone()? / 100.0 - 1.0).abs()));
    s.push("kinetic", "small-r order: |ratio/100 - 1| (r: 1e-2 -> 1e-3)", Check::AtMost(0.2), m);

    s.push("printed", "CM/relative form, printed Xc sign", Check::Reported, form(|r| r.cm_rel, false));
    s.push("printed", "Y12 form, printed Xc sign", Check::Reported, form(|r| r.y12, false));
    s.push("printed", "polar form as printed", Check::Reported, form(|r| r.polar, false));
    let m = worst(&equal, |r| {
        let r = r.as_ref().map_err(Clone::clone)?;
        let e = r.equal_mass.ok_or_else(|| Error::InvalidArgument("equal-mass form skipped".into()))?;
        Ok(r.residual(&e.printed))
    });
    s.push("printed", "equal-mass form as printed", Check::Reported, m);
    let m = worst(&reports, |r| {
        let r = r.as_ref().map_err(Clone::clone)?;
        let (_, printed) = r.per_particle.ok_or_else(|| Error::InvalidArgument("per-particle skipped".into()))?;
        Ok(printed)
    });
    s.push("printed", "first-particle vector, printed orientation", Check::Reported, m);
    let m = worst(&reports, |r| {
        let r = r.as_ref().map_err(Clone::clone)?;
        Ok(rel(r.chart_literal_metric, r.embedding))
    });
    s.push("printed", "chart metric with printed inner sign", Check::Reported, m);
    let m = worst(&radial[..radial.len().min(1)], |(ms, rdot, _, _)| {
        let st = collinear_state(sign, ms, 1e-4, *rdot, 0.0, 0.0)?;
        let report = kinetic_audit(&st, ms)?;
        let small = report.small_r.ok_or_else(|| Error::InvalidArgument("small-r form skipped".into()))?;
        // the printed expression is L' itself, i.e. twice the stored value
        Ok(2.0 * small.printed.value / report.embedding)
    });
    s.push("printed", "small-r L' / T at r = 1e-4 (ratio)", Check::Reported, m);
}

fn dynamics(s: &mut Suite) {
    let sign = s.space;
    let unit = Masses { m1: 1.0, m2: 1.0 };
    let far = Vec3::new(0.0, 0.0, 0.5);
    let run = |dt: f64, steps: usize| -> Result<PhaseState<f64>, Error> {
        let st = PhaseState::new(Vec3::zero(), far, Vec3::new(1.0, 0.0, 0.0), Vec3::zero(), sign)?;
        let tr = integrate(&st, &unit, &PotentialSpec::Free, &IntegratorSettings::new(dt, steps))?;
        if let Some(e) = tr.stop {
            return Err(e);
        }
        Ok(tr.samples.last().map(|x| x.state).unwrap_or(st))
    };
    let m = worst([()], |_| Ok((run(1e-3, 1000)?.v1[0] - sign.tan(1.0)).abs()));
    s.push("dynamics", "free geodesic = tan/tanh flow (t = 1)", Check::AtMost(1e-9), m);
    let m = worst([()], |_| {
        let e1 = (run(0.05, 20)?.v1[0] - sign.tan(1.0)).abs();
        let e2 = (run(0.025, 40)?.v1[0] - sign.tan(1.0)).abs();
        Ok(e1 / e2)
    });
    s.push("dynamics", "RK4 order: error ratio under dt halving", Check::Within(12.0, 20.0), m);

    let mut g = s.rng(14);
    let m = worst(0..4, |_| {
        let v1 = Vec3::new(g.gen_range(-0.3..0.3), g.gen_range(-0.3..0.3), g.gen_range(-0.3..0.3));
        let v2 = Vec3::new(g.gen_range(-0.3..0.3), g.gen_range(-0.3..0.3), g.gen_range(-0.3..0.3));
        let w1 = Vec3::new(g.gen_range(-0.5..0.5), g.gen_range(-0.5..0.5), g.gen_range(-0.5..0.5));
        let w2 = Vec3::new(g.gen_range(-0.5..0.5), g.gen_range(-0.5..0.5), g.gen_range(-0.5..0.5));
        let st = PhaseState::new(v1, v2, w1, w2, sign)?;
        let tr = integrate(&st, &unit, &PotentialSpec::Free, &IntegratorSettings::new(1e-3, 1000))?;
        if let Some(e) = tr.stop {
            return Err(e);
        }
        let off_line = |p: &Vec3<f64>, v0: &Vec3<f64>, w0: &Vec3<f64>| (*p - *v0).cross(w0).norm() / w0.norm();
        Ok(tr.samples.iter().fold(0.0f64, |acc, x| {
            acc.max(off_line(&x.state.v1, &v1, &w1)).max(off_line(&x.state.v2, &v2, &w2))
        }))
    });
    s.push("dynamics", "free chart trajectories are straight", Check::AtMost(1e-8), m);

    let coulomb = PotentialSpec::Coulomb { alpha: 1.0 };
    let m = worst([()], |_| {
        let (a, omega) = circular_orbit(sign, 0.3, &coulomb)?;
        let st = circular_state(sign, a, omega)?;
        let mut pert = st;
        pert.w1 = st.w1.scale(1.1);
        pert.w2 = st.w2.scale(1.1);
        let tr = integrate(&pert, &unit, &coulomb, &IntegratorSettings::new(1e-3, 10_000))?;
        if let Some(e) = tr.stop {
            return Err(e);
        }
        let e0 = tr.samples[0].energy();
        Ok(tr.samples.iter().fold(0.0f64, |acc, x| acc.max((x.energy() - e0).abs() / e0.abs())))
    });
    s.push("dynamics", "coulomb energy drift (1e4 steps)", Check::AtMost(1e-6), m);

    let m = worst([()], |_| {
        let (a, omega) = circular_orbit(sign, 0.3, &coulomb)?;
        let st = circular_state(sign, a, omega)?;
        let period = 2.0 * std::f64::consts::PI / omega;
        let dt = 1e-3;
        let steps = (period / dt).ceil() as usize;
        let tr = integrate(&st, &unit, &coulomb, &IntegratorSettings::new(dt, steps))?;
        if let Some(e) = tr.stop {
            return Err(e);
        }
        Ok(tr.samples.iter().fold(0.0f64, |acc, x| acc.max((x.r - 2.0 * a).abs())))
    });
    s.push("dynamics", "circular orbit keeps its separation", Check::AtMost(1e-6), m);
}

/// Angular rate of the equal-unit-mass circular orbit of radius `a`:
/// `sin a cos a omega^2 = V'(2a)` (`sinh a cosh a` in Lobachevsky space).
pub fn circular_orbit(sign: SpaceSign, a: f64, potential: &PotentialSpec<f64>) -> Result<(f64, f64), Error> {
    let (_, dv) = potential.eval(sign, 2.0 * a)?;
    let k = sign.sin(a) * sign.cos(a);
    if !(dv > 0.0) {
        return Err(Error::InvalidArgument("potential is not attractive at this separation".into()));
    }
    Ok((a, (dv / k).sqrt()))
}

fn calibration(seed: u64, space: SpaceSign) -> FlagsSummary {
    let mut g = stream(seed, space, 15);
    let cases: Vec<_> = (0..100)
        .map(|_| (random_state(space, &mut g), random_masses(&mut g)))
        .collect();
    match calibrate(space, &cases) {
        Ok(c) => FlagsSummary {
            space,
            frozen: CorrectionFlags::frozen(space),
            calibrated: Some(c.flags),
            residual: c.residual,
            printed_residual: c.printed_residual,
        },
        Err(_) => FlagsSummary {
            space,
            frozen: CorrectionFlags::frozen(space),
            calibrated: None,
            residual: f64::NAN,
            printed_residual: f64::NAN,
        },
    }
}

/// Runs the whole suite. Deterministic in `(cases, seed, spaces)`.
pub fn run_suite(cases: usize, seed: u64, spaces: &[SpaceSign]) -> VerifyReport {
    let mut rows = Vec::new();
    let mut flags = Vec::new();
    for &space in spaces {
        let mut suite = Suite { space, seed, n: cases, rows: Vec::new() };
        let mut g = suite.rng(0);
        let states: Vec<(PhaseState<f64>, Masses<f64>)> =
            (0..cases).map(|_| (random_state(space, &mut g), random_masses(&mut g))).collect();
        algebra(&mut suite);
        geometry(&mut suite);
        kinematics(&mut suite, &states);
        kinetic(&mut suite, &states);
        dynamics(&mut suite);
        let f = calibration(seed, space);
        suite.push(
            "kinetic",
            "calibration reproduces frozen flags",
            Check::AtMost(0.0),
            Measured {
                value: f64::from(u8::from(f.calibrated != Some(f.frozen))),
                cases: 100,
                error: None,
            },
        );
        flags.push(f);
        rows.extend(suite.rows);
    }
    VerifyReport { seed, cases, rows, flags }
}
