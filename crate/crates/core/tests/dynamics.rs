use approx::assert_abs_diff_eq;
use curvebody::dynamics::{eom_rhs, integrate, IntegratorSettings, PotentialSpec};
use curvebody::sampling::{circular_state, random_masses, random_state, rng};
use curvebody::{Error, Masses, PhaseState, SpaceSign, Vec3};

const UNIT: Masses<f64> = Masses { m1: 1.0, m2: 1.0 };

fn launch(sign: SpaceSign) -> PhaseState<f64> {
    PhaseState::new(Vec3::zero(), Vec3::new(0.0, 0.0, 0.5), Vec3::new(1.0, 0.0, 0.0), Vec3::zero(), sign).unwrap()
}

fn final_x(sign: SpaceSign, dt: f64, steps: usize) -> f64 {
    let tr = integrate(&launch(sign), &UNIT, &PotentialSpec::Free, &IntegratorSettings::new(dt, steps)).unwrap();
    assert!(tr.completed());
    tr.samples.last().unwrap().state.v1[0]
}

#[test]
fn free_flow_on_the_sphere() {
    let x = final_x(SpaceSign::Sphere, 1e-3, 300);
    assert_abs_diff_eq!(x, 0.3_f64.tan(), epsilon = 1e-9);
    assert_abs_diff_eq!(x, 0.30934, epsilon = 1e-5);
}

#[test]
fn free_flow_in_lobachevsky_space() {
    let x = final_x(SpaceSign::Hyperbolic, 1e-3, 1000);
    assert_abs_diff_eq!(x, 1.0_f64.tanh(), epsilon = 1e-9);
    assert_abs_diff_eq!(x, 0.76159, epsilon = 1e-5);
}

#[test]
fn fourth_order_convergence() {
    for s in SpaceSign::BOTH {
        let e1 = (final_x(s, 0.05, 20) - s.tan(1.0)).abs();
        let e2 = (final_x(s, 0.025, 40) - s.tan(1.0)).abs();
        let ratio = e1 / e2;
        assert!((12.0..=20.0).contains(&ratio), "{s}: {ratio}");
    }
}

#[test]
fn free_paths_are_chart_lines() {
    let mut g = rng(41);
    for s in SpaceSign::BOTH {
        for _ in 0..3 {
            let st: PhaseState<f64> = random_state(s, &mut g);
            let st = PhaseState { w1: st.w1.scale(0.3), w2: st.w2.scale(0.3), ..st };
            let tr = integrate(&st, &UNIT, &PotentialSpec::Free, &IntegratorSettings::new(1e-3, 500)).unwrap();
            let off = |p: &Vec3<f64>, v: &Vec3<f64>, w: &Vec3<f64>| (*p - *v).cross(w).norm() / w.norm();
            for x in tr.samples.iter().filter(|_| tr.completed()) {
                assert!(off(&x.state.v1, &st.v1, &st.w1) < 1e-8);
                assert!(off(&x.state.v2, &st.v2, &st.w2) < 1e-8);
            }
        }
    }
}

#[test]
fn accelerations_vanish_at_rest_at_the_origin() {
    let mut g = rng(42);
    for s in SpaceSign::BOTH {
        let m: Masses<f64> = random_masses(&mut g);
        let st = PhaseState::new(Vec3::zero(), Vec3::new(0.3, 0.1, 0.0), Vec3::zero(), Vec3::zero(), s).unwrap();
        let (a1, _) = eom_rhs(&st, &m, &PotentialSpec::Free).unwrap();
        assert_eq!(a1, Vec3::zero());
    }
}

/// `sin a cos a omega^2 = V'(2a)` for unit masses.
fn circular_rate(sign: SpaceSign, a: f64, p: &PotentialSpec<f64>) -> f64 {
    let (_, dv) = p.eval(sign, 2.0 * a).unwrap();
    (dv / (sign.sin(a) * sign.cos(a))).sqrt()
}

#[test]
fn circular_orbits_hold_their_radius() {
    let coulomb = PotentialSpec::Coulomb { alpha: 1.0 };
    for s in SpaceSign::BOTH {
        let a = 0.3;
        let omega = circular_rate(s, a, &coulomb);
        let steps = (2.0 * std::f64::consts::PI / omega / 1e-3).ceil() as usize;
        let tr = integrate(&circular_state(s, a, omega).unwrap(), &UNIT, &coulomb, &IntegratorSettings::new(1e-3, steps))
            .unwrap();
        assert!(tr.completed());
        for x in &tr.samples {
            assert!((x.r - 2.0 * a).abs() < 1e-6, "{s}: {}", x.r);
        }
    }
}

#[test]
fn coulomb_energy_is_conserved() {
    let coulomb = PotentialSpec::Coulomb { alpha: 1.0 };
    for s in SpaceSign::BOTH {
        let omega = circular_rate(s, 0.3, &coulomb);
        let mut st = circular_state(s, 0.3, omega).unwrap();
        st.w1 = st.w1.scale(1.1);
        st.w2 = st.w2.scale(1.1);
        let mut settings = IntegratorSettings::new(1e-3, 10_000);
        settings.output_every = 10;
        let tr = integrate(&st, &UNIT, &coulomb, &settings).unwrap();
        assert!(tr.completed());
        let e0 = tr.samples[0].energy();
        let drift = tr.samples.iter().map(|x| (x.energy() - e0).abs() / e0.abs()).fold(0.0, f64::max);
        assert!(drift < 1e-6, "{s}: {drift:e}");
    }
}

#[test]
fn head_on_collision_stops_cleanly() {
    let coulomb = PotentialSpec::Coulomb { alpha: 0.5 };
    for s in SpaceSign::BOTH {
        let st = PhaseState::new(
            Vec3::new(-0.2, 0.0, 0.0),
            Vec3::new(0.2, 0.0, 0.0),
            Vec3::new(0.5, 0.0, 0.0),
            Vec3::new(-0.5, 0.0, 0.0),
            s,
        )
        .unwrap();
        let tr = integrate(&st, &UNIT, &coulomb, &IntegratorSettings::new(1e-3, 5000)).unwrap();
        assert!(matches!(tr.stop, Some(Error::PotentialSingularity { .. })), "{s}: {:?}", tr.stop);
        let last = tr.samples.last().unwrap();
        assert!(last.r < 0.1);
        let e0 = tr.samples[0].energy();
        assert!((last.energy() - e0).abs() < 5e-2 * e0.abs(), "{s}: {} {} {e0}", last.r, last.energy());
    }
}

#[test]
fn running_off_the_disc_is_a_chart_exit() {
    let st = PhaseState::new(
        Vec3::new(0.5, 0.0, 0.0),
        Vec3::new(-0.5, 0.0, 0.0),
        Vec3::new(1.0, 0.0, 0.0),
        Vec3::zero(),
        SpaceSign::Hyperbolic,
    )
    .unwrap();
    let tr = integrate(&st, &UNIT, &PotentialSpec::Free, &IntegratorSettings::new(1e-2, 10_000)).unwrap();
    match tr.stop {
        Some(Error::ChartExit { last_valid }) => assert_eq!(tr.samples.last().unwrap().step, last_valid),
        other => panic!("{other:?}"),
    }
}
