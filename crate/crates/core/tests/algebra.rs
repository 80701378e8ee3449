use curvebody::{Biquaternion, Error, RingScalar, SpaceSign};
use proptest::prelude::*;

fn sign() -> impl Strategy<Value = SpaceSign> {
    prop_oneof![Just(SpaceSign::Sphere), Just(SpaceSign::Hyperbolic)]
}

fn biq(s: SpaceSign) -> impl Strategy<Value = Biquaternion<f64>> {
    prop::array::uniform8(-1.0f64..1.0).prop_map(move |c| Biquaternion::from_components(c, s))
}

fn triple() -> impl Strategy<Value = (Biquaternion<f64>, Biquaternion<f64>, Biquaternion<f64>)> {
    sign().prop_flat_map(|s| (biq(s), biq(s), biq(s)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn product_is_associative((p, q, r) in triple()) {
        let scale = (p.magnitude() * q.magnitude() * r.magnitude()).max(1e-300);
        prop_assert!(((p * q) * r - p * (q * r)).magnitude() / scale <= 1e-13);
    }

    #[test]
    fn conjugations_are_involutive_and_commute((p, q, _) in triple()) {
        prop_assert_eq!(p.bar().bar(), p);
        prop_assert_eq!(p.star().star(), p);
        prop_assert_eq!(p.bar().star(), p.star().bar());
        prop_assert!(((p * q).bar() - q.bar() * p.bar()).magnitude() <= 1e-14);
        prop_assert!(((p * q).star() - p.star() * q.star()).magnitude() <= 1e-14);
    }

    #[test]
    fn norm_is_multiplicative((p, q, _) in triple()) {
        let scale = (p.magnitude() * q.magnitude()).powi(2).max(1e-300);
        prop_assert!(((p * q).norm() - p.norm() * q.norm()).magnitude() / scale <= 1e-12);
    }

    #[test]
    fn sphere_zero_divisors_are_caught(a in -10.0f64..10.0, flip in any::<bool>()) {
        let b = if flip { a } else { -a };
        let z = RingScalar::new(a, b, SpaceSign::Sphere);
        let caught = matches!(z.invert(), Err(Error::ZeroDivisor { .. }) | Err(Error::NonInvertible));
        prop_assert!(caught);
    }

    #[test]
    fn complex_scalars_invert(a in -10.0f64..10.0, b in -10.0f64..10.0) {
        let z = RingScalar::new(a, b, SpaceSign::Hyperbolic);
        prop_assume!(!z.is_zero());
        let inv = z.invert().unwrap();
        prop_assert!((z * inv - RingScalar::one(SpaceSign::Hyperbolic)).magnitude() <= 1e-14);
    }
}

#[test]
fn single_precision_products() {
    for s in SpaceSign::BOTH {
        let p = Biquaternion::<f32>::from_components([0.1, 0.2, -0.3, 0.4, 0.5, -0.6, 0.7, 0.8], s);
        let q = Biquaternion::<f32>::from_components([-0.5, 0.1, 0.2, 0.3, -0.4, 0.6, 0.1, -0.2], s);
        let d = ((p * q).norm() - p.norm() * q.norm()).magnitude();
        assert!(d < 1e-5, "{d}");
    }
}

#[test]
#[should_panic(expected = "space sign mismatch")]
fn mixing_spaces_panics() {
    let _ = Biquaternion::<f64>::one(SpaceSign::Sphere) * Biquaternion::one(SpaceSign::Hyperbolic);
}

#[test]
fn checked_product_reports_mismatch() {
    let a = Biquaternion::<f64>::one(SpaceSign::Sphere);
    let b = Biquaternion::<f64>::one(SpaceSign::Hyperbolic);
    assert!(matches!(a.try_mul(&b), Err(Error::SignMismatch { .. })));
}
