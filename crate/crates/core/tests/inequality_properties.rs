use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tscale_core::inequalities::{
    cauchy_schwarz_check, holder_check, jensen_check, minkowski_check, weighted_amgm, ConvexSpec,
    InequalityReport,
};
use tscale_core::suite::{property_suite, random_integrand, random_window};
use tscale_core::{Alpha, CalcConfig, DerivativeKind, FunctionHandle, TimeScale};

fn f(text: &str) -> FunctionHandle {
    FunctionHandle::parse(text).unwrap()
}

fn same_sides(x: &InequalityReport, y: &InequalityReport) -> bool {
    x.lhs.to_bits() == y.lhs.to_bits() && x.rhs.to_bits() == y.rhs.to_bits()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn holder_scales_with_abs_lambda(seed in any::<u64>(), lam in -20.0f64..20.0, p in 1.05f64..5.0) {
        prop_assume!(lam.abs() > 1e-3);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = random_window(&mut rng);
        let (ft, gt) = (random_integrand(&mut rng), random_integrand(&mut rng));
        let cfg = CalcConfig::default();
        let alpha = Alpha::new(0.5).unwrap();
        let base = holder_check(&w.scale, &f(&ft), &f(&gt), w.a, w.b, alpha, p, &cfg).unwrap();
        let scaled = holder_check(&w.scale, &f(&format!("({lam:?})*({ft})")), &f(&gt), w.a, w.b, alpha, p, &cfg).unwrap();
        let rel = |x: f64, y: f64| (x - y).abs() <= 1e-9 * y.abs().max(1e-300) + base.tolerance * lam.abs();
        prop_assert!(rel(scaled.lhs, lam.abs() * base.lhs), "{} vs {}", scaled.lhs, lam.abs() * base.lhs);
        prop_assert!(rel(scaled.rhs, lam.abs() * base.rhs), "{} vs {}", scaled.rhs, lam.abs() * base.rhs);
    }

    #[test]
    fn alpha_endpoints_reduce_to_one_sided_checks(seed in any::<u64>(), p in 1.05f64..5.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = random_window(&mut rng);
        let (fh, gh) = (f(&random_integrand(&mut rng)), f(&random_integrand(&mut rng)));
        let cfg = CalcConfig::default();
        let (ts, a, b) = (&w.scale, w.a, w.b);
        for (alpha, kind) in [(Alpha::DELTA, DerivativeKind::Delta), (Alpha::NABLA, DerivativeKind::Nabla)] {
            prop_assert!(same_sides(
                &holder_check(ts, &fh, &gh, a, b, alpha, p, &cfg).unwrap(),
                &holder_check(ts, &fh, &gh, a, b, kind, p, &cfg).unwrap()
            ));
            prop_assert!(same_sides(
                &cauchy_schwarz_check(ts, &fh, &gh, a, b, alpha, &cfg).unwrap(),
                &cauchy_schwarz_check(ts, &fh, &gh, a, b, kind, &cfg).unwrap()
            ));
            prop_assert!(same_sides(
                &minkowski_check(ts, &fh, &gh, a, b, alpha, p, &cfg).unwrap(),
                &minkowski_check(ts, &fh, &gh, a, b, kind, p, &cfg).unwrap()
            ));
            let sq = ConvexSpec::new(f("t^2"), f64::NEG_INFINITY, f64::INFINITY).unwrap();
            prop_assert!(same_sides(
                &jensen_check(ts, &fh, &sq, a, b, alpha, &cfg).unwrap(),
                &jensen_check(ts, &fh, &sq, a, b, kind, &cfg).unwrap()
            ));
        }
    }

    #[test]
    fn jensen_on_integer_window_is_weighted_amgm(seed in any::<u64>(), n in 1usize..30, a_idx in 0usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let values: Vec<f64> = (0..=n).map(|_| rng.gen_range(0.05..20.0)).collect();
        let alpha = Alpha::new([0.0, 0.25, 0.5, 0.75, 1.0][a_idx]).unwrap();
        let z = TimeScale::integers(1, n as i64 + 1).unwrap();
        let table = values.clone();
        let g = FunctionHandle::builtin("g", move |t| table[t as usize - 1]);
        let neg_log = ConvexSpec::new(f("-log(t)"), 0.0, f64::INFINITY).unwrap();
        let jensen = jensen_check(&z, &g, &neg_log, 1.0, n as f64 + 1.0, alpha, &CalcConfig::default()).unwrap();
        let amgm = weighted_amgm(&values, alpha).unwrap();
        let arithmetic = (-jensen.lhs).exp();
        let geometric = (-jensen.rhs).exp();
        prop_assert!((arithmetic - amgm.rhs).abs() <= 1e-9 * amgm.rhs);
        prop_assert!((geometric - amgm.lhs).abs() <= 1e-9 * amgm.lhs);
        prop_assert!(jensen.holds && amgm.holds);
    }
}

#[test]
fn suite_is_clean_across_seeds() {
    let cfg = CalcConfig::default();
    for seed in [1u64, 7, 2024] {
        let s = property_suite(150, seed, &cfg).unwrap();
        assert_eq!(s.violations(), 0, "seed {seed}: {:?}", s.witnesses);
        assert!(s.skipped.is_empty(), "seed {seed}: {:?}", s.skipped);
    }
}

#[test]
fn holder_equality_on_scattered_window() {
    // f >= 0 and g = f^(p-1) turn Hölder into an equality
    let z = TimeScale::integers(0, 5).unwrap();
    let p = 3.0;
    let r = holder_check(&z, &f("1 + t"), &f("(1 + t)^2"), 0.0, 5.0, Alpha::DELTA, p, &CalcConfig::default())
        .unwrap();
    // brute force: Σ_{t=0}^{4} (1+t)^3 = 225 for every side
    assert_eq!(r.lhs, 225.0);
    assert!((r.rhs - 225.0).abs() <= 1e-12 * 225.0);
}
