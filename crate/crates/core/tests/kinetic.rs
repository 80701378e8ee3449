use curvebody::dynamics::{
    calibrate, kinetic_audit, kinetic_chart, kinetic_embedding, kinetic_polar, CorrectionFlags,
};
use curvebody::sampling::{collinear_state, dumbbell_state, random_masses, random_state, rng};
use curvebody::{Masses, PhaseState, SpaceSign};

fn cases(sign: SpaceSign, n: usize, seed: u64) -> Vec<(PhaseState<f64>, Masses<f64>)> {
    let mut g = rng(seed);
    (0..n).map(|_| (random_state(sign, &mut g), random_masses(&mut g))).collect()
}

#[test]
fn every_corrected_form_matches_the_embedding_energy() {
    for s in SpaceSign::BOTH {
        for (st, m) in cases(s, 300, 31) {
            let r = kinetic_audit(&st, &m).unwrap();
            assert!(r.skipped.is_empty(), "{:?}", r.skipped);
            assert!((r.chart - r.embedding).abs() <= 1e-12 * r.embedding.max(1.0));
            for (name, _, corrected) in r.residuals() {
                if name == "small_r" {
                    continue;
                }
                assert!(corrected <= 1e-9, "{s} {name}: {corrected:e}");
            }
        }
    }
}

#[test]
fn equal_mass_form_agrees() {
    for s in SpaceSign::BOTH {
        for (st, m) in cases(s, 200, 32) {
            let m = Masses { m1: m.m1, m2: m.m1 };
            let r = kinetic_audit(&st, &m).unwrap();
            let e = r.equal_mass.expect("equal-mass form evaluated");
            assert!(r.residual(&e.corrected) <= 1e-9);
        }
    }
}

#[test]
fn printed_polar_form_is_off() {
    for s in SpaceSign::BOTH {
        let worst = cases(s, 100, 33)
            .iter()
            .map(|(st, m)| {
                let r = kinetic_audit(st, m).unwrap();
                r.residual(&r.polar.unwrap().printed)
            })
            .fold(0.0f64, f64::max);
        assert!(worst > 1e-2, "{s}: {worst:e}");
    }
}

#[test]
fn calibration_reproduces_frozen_flags() {
    for s in SpaceSign::BOTH {
        let c = calibrate(s, &cases(s, 100, 34)).unwrap();
        assert_eq!(c.flags, CorrectionFlags::frozen(s));
        assert!(c.residual < 1e-12);
        assert!(c.printed_residual > 1e-2);
    }
}

#[test]
fn dumbbell_separates() {
    let mut g = rng(35);
    for s in SpaceSign::BOTH {
        for _ in 0..200 {
            let m: Masses<f64> = random_masses(&mut g);
            let st = dumbbell_state(s, &m, &mut g);
            let r = kinetic_audit(&st, &m).unwrap();
            assert!(r.cross_term.unwrap() <= 1e-12);
            assert!((kinetic_polar(&st, &m).unwrap().value - r.embedding).abs() <= 1e-9 * r.embedding.max(1.0));
        }
    }
}

#[test]
fn generic_states_do_not_separate() {
    for s in SpaceSign::BOTH {
        let least = cases(s, 200, 36)
            .iter()
            .map(|(st, m)| kinetic_audit(st, m).unwrap().cross_term.unwrap())
            .fold(f64::INFINITY, f64::min);
        assert!(least > 1e-8, "{s}: {least:e}");
    }
}

#[test]
fn small_r_error_is_quadratic() {
    let m = Masses::new(0.7, 1.9).unwrap();
    for s in SpaceSign::BOTH {
        let err = |r: f64| {
            let st = collinear_state(s, &m, r, 0.4, 0.2, 0.6).unwrap();
            let rep = kinetic_audit(&st, &m).unwrap();
            (rep.small_r.unwrap().corrected.value - rep.embedding).abs()
        };
        let ratio = err(1e-2) / err(1e-3);
        assert!((80.0..=120.0).contains(&ratio), "{s}: {ratio}");
    }
}

#[test]
fn single_precision_energies() {
    let mut g = rng(37);
    for s in SpaceSign::BOTH {
        let st: PhaseState<f32> = random_state(s, &mut g);
        let m: Masses<f32> = random_masses(&mut g);
        let a = kinetic_embedding(&st, &m).unwrap();
        let b = kinetic_chart(&st, &m).unwrap();
        assert!((a - b).abs() <= 1e-4 * a.max(1.0));
    }
}
