use approx::assert_abs_diff_eq;
use curvebody::kinematics::{
    center_of_mass, center_of_mass_chart, decompose, per_particle_relative, reconstruct_particles,
};
use curvebody::sampling::{random_masses, random_state, rng, transform_strict};
use curvebody::space::{geodesic_distance, vector_add, PairVector};
use curvebody::{Isometry, Masses, PhaseState, RingScalar, SpaceSign, TwoBodyConfig64, Vec3};

fn configs(sign: SpaceSign, n: usize, seed: u64) -> Vec<TwoBodyConfig64> {
    let mut g = rng(seed);
    (0..n)
        .map(|_| TwoBodyConfig64::new(random_masses(&mut g), random_state(sign, &mut g)).unwrap())
        .collect()
}

#[test]
fn relative_biquaternions_are_unit_and_chain() {
    for s in SpaceSign::BOTH {
        for cfg in configs(s, 300, 21) {
            let d = decompose(&cfg).unwrap();
            let one = RingScalar::one(s);
            assert!((d.rel.y12.norm() - one).magnitude() < 1e-12);
            assert!((d.rel.y1.norm() - one).magnitude() < 1e-12);
            assert!((d.rel.y2.norm() - one).magnitude() < 1e-12);
            assert!((d.rel.y12 - d.rel.y2 * d.rel.y1.bar()).magnitude() < 1e-12);
            let r = geodesic_distance(&cfg.state.p1(), &cfg.state.p2()).unwrap();
            assert_abs_diff_eq!(d.rel.y12.s.re, s.cos(r), epsilon = 1e-12);
        }
    }
}

#[test]
fn per_particle_vectors_rebuild_the_pair() {
    for s in SpaceSign::BOTH {
        for cfg in configs(s, 300, 22) {
            let d = decompose(&cfg).unwrap();
            let (qy1, qy2) = per_particle_relative(&cfg.masses, &d.rel).unwrap();
            let back = vector_add(&qy2, &-qy1).unwrap();
            assert!((back.q - d.rel.qy.q).magnitude() < 1e-10 * d.rel.qy.q.magnitude().max(1.0));
            let (r1, r2) = reconstruct_particles(&qy1, &qy2, &d.cm.qc).unwrap();
            assert!((r1.q - PairVector::from(cfg.state.p1()).q).magnitude() < 1e-10 * cfg.state.v1.norm().max(1.0));
            assert!((r2.q - PairVector::from(cfg.state.p2()).q).magnitude() < 1e-10 * cfg.state.v2.norm().max(1.0));
        }
    }
}

#[test]
fn both_center_of_mass_routes_agree() {
    for s in SpaceSign::BOTH {
        for cfg in configs(s, 300, 23) {
            let a = center_of_mass_chart(&cfg).unwrap();
            let b = center_of_mass(&cfg).unwrap().qc.v;
            assert!((a - b).norm() <= 1e-10 * b.norm().max(1.0));
        }
    }
}

#[test]
fn center_of_mass_follows_motions() {
    let mut g = rng(24);
    for s in SpaceSign::BOTH {
        for cfg in configs(s, 200, 25) {
            let (iso, moved) = loop {
                let iso = Isometry::sample(s, 1.0, &mut g);
                if let Ok(m) = transform_strict(&cfg.state, &iso, 0.2) {
                    break (iso, m);
                }
            };
            let before = center_of_mass(&cfg).unwrap();
            let after = center_of_mass(&TwoBodyConfig64::new(cfg.masses, moved).unwrap()).unwrap();
            let image = iso.apply(&before.xc);
            assert!((image - after.xc).magnitude() < 1e-9);
        }
    }
}

#[test]
fn equal_masses_put_the_center_midway() {
    for s in SpaceSign::BOTH {
        let st = PhaseState::new(
            Vec3::new(-0.4, 0.0, 0.0),
            Vec3::new(0.4, 0.0, 0.0),
            Vec3::zero(),
            Vec3::zero(),
            s,
        )
        .unwrap();
        let cfg = TwoBodyConfig64::new(Masses::new(2.0, 2.0).unwrap(), st).unwrap();
        assert!(center_of_mass(&cfg).unwrap().qc.v.norm() < 1e-15);
    }
}
