use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tscale_core::calculus::{
    delta_derivative, delta_integral, diamond_integral, integral, nabla_integral,
};
use tscale_core::suite::{random_integrand, random_window, RandomWindow};
use tscale_core::{Alpha, CalcConfig, DerivativeKind, FunctionHandle, IntegralResult, TimeScale};

fn window(seed: u64) -> (RandomWindow, ChaCha8Rng) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (random_window(&mut rng), rng)
}

fn f(text: &str) -> FunctionHandle {
    FunctionHandle::parse(text).unwrap()
}

fn kinds() -> impl Strategy<Value = DerivativeKind> {
    prop_oneof![
        Just(DerivativeKind::Delta),
        Just(DerivativeKind::Nabla),
        prop::sample::select(vec![0.0, 0.25, 0.5, 0.75, 1.0])
            .prop_map(|a| DerivativeKind::Diamond(Alpha::new(a).unwrap())),
    ]
}

fn slop(rs: &[&IntegralResult]) -> f64 {
    rs.iter()
        .map(|r| r.error_estimate + 1e-13 * r.value.abs())
        .sum::<f64>()
        + 1e-12
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn positivity(seed in any::<u64>(), kind in kinds()) {
        let (w, mut rng) = window(seed);
        let g = f(&format!("({})^2", random_integrand(&mut rng)));
        let r = integral(&w.scale, &g, w.a, w.b, kind, &CalcConfig::default()).unwrap();
        prop_assert!(r.value >= -r.error_estimate, "{r:?}");
    }

    #[test]
    fn monotonicity(seed in any::<u64>(), kind in kinds()) {
        let (w, mut rng) = window(seed);
        let lo_text = random_integrand(&mut rng);
        let bump = random_integrand(&mut rng);
        let lo = f(&lo_text);
        let hi = f(&format!("{lo_text} + ({bump})^2"));
        let cfg = CalcConfig::default();
        let rl = integral(&w.scale, &lo, w.a, w.b, kind, &cfg).unwrap();
        let rh = integral(&w.scale, &hi, w.a, w.b, kind, &cfg).unwrap();
        prop_assert!(rl.value <= rh.value + slop(&[&rl, &rh]));
    }

    #[test]
    fn strict_positivity_at_interior_member(seed in any::<u64>(), a_idx in 0usize..5) {
        let (w, _) = window(seed);
        let members: Vec<f64> = w.scale.scattered_members(w.a, w.b)
            .into_iter()
            .chain(w.scale.dense_segments(w.a, w.b).into_iter().map(|(l, h)| 0.5 * (l + h)))
            .filter(|&t| w.a < t && t < w.b)
            .collect();
        prop_assume!(!members.is_empty());
        let t0 = members[seed as usize % members.len()];
        let hat = f(&format!("max(0, 1 - 4*abs(t - ({t0:?})))"));
        let alpha = Alpha::new([0.0, 0.25, 0.5, 0.75, 1.0][a_idx]).unwrap();
        let r = diamond_integral(&w.scale, &hat, w.a, w.b, alpha, &CalcConfig::default()).unwrap();
        prop_assert!(r.value > 0.0, "{r:?} at t0 = {t0}");
    }

    #[test]
    fn linearity(seed in any::<u64>(), kind in kinds(), lam in -3.0f64..3.0, kap in -3.0f64..3.0) {
        let (w, mut rng) = window(seed);
        let (ft, gt) = (random_integrand(&mut rng), random_integrand(&mut rng));
        let combo = f(&format!("({lam:?})*({ft}) + ({kap:?})*({gt})"));
        let cfg = CalcConfig::default();
        let rf = integral(&w.scale, &f(&ft), w.a, w.b, kind, &cfg).unwrap();
        let rg = integral(&w.scale, &f(&gt), w.a, w.b, kind, &cfg).unwrap();
        let rc = integral(&w.scale, &combo, w.a, w.b, kind, &cfg).unwrap();
        let tol = lam.abs() * slop(&[&rf]) + kap.abs() * slop(&[&rg]) + slop(&[&rc]);
        prop_assert!((rc.value - (lam * rf.value + kap * rg.value)).abs() <= tol);
    }

    #[test]
    fn alpha_affinity(seed in any::<u64>(), a in 0.01f64..0.99) {
        let (w, mut rng) = window(seed);
        let g = f(&random_integrand(&mut rng));
        let cfg = CalcConfig::default();
        let d = delta_integral(&w.scale, &g, w.a, w.b, &cfg).unwrap();
        let n = nabla_integral(&w.scale, &g, w.a, w.b, &cfg).unwrap();
        let m = diamond_integral(&w.scale, &g, w.a, w.b, Alpha::new(a).unwrap(), &cfg).unwrap();
        prop_assert_eq!(m.value.to_bits(), (a * d.value + (1.0 - a) * n.value).to_bits());
        prop_assert_eq!(
            m.error_estimate.to_bits(),
            (a * d.error_estimate + (1.0 - a) * n.error_estimate).to_bits()
        );
        prop_assert!((m.value - (m.dense_part + m.scattered_part)).abs() <= 1e-12 * (1.0 + m.value.abs()));
    }

    #[test]
    fn additivity(seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let (w, mut rng) = window(seed);
        let mut members = w.scale.scattered_members(w.a, w.b);
        members.extend(w.scale.dense_segments(w.a, w.b).into_iter().map(|(l, h)| 0.5 * (l + h)));
        let c = *pick.get(&members);
        let g = f(&random_integrand(&mut rng));
        let cfg = CalcConfig::default();
        for kind in [DerivativeKind::Delta, DerivativeKind::Nabla] {
            let whole = integral(&w.scale, &g, w.a, w.b, kind, &cfg).unwrap();
            let left = integral(&w.scale, &g, w.a, c, kind, &cfg).unwrap();
            let right = integral(&w.scale, &g, c, w.b, kind, &cfg).unwrap();
            prop_assert!(
                (whole.value - left.value - right.value).abs() <= slop(&[&whole, &left, &right]),
                "{kind:?}: {} vs {} + {}", whole.value, left.value, right.value
            );
        }
    }

    #[test]
    fn dense_window_flavours_coincide(lo in -3.0f64..0.0, len in 0.1f64..4.0, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ts = TimeScale::interval(lo, lo + len).unwrap();
        let g = f(&random_integrand(&mut rng));
        let cfg = CalcConfig::default();
        let d = delta_integral(&ts, &g, lo, lo + len, &cfg).unwrap();
        let n = nabla_integral(&ts, &g, lo, lo + len, &cfg).unwrap();
        let m = diamond_integral(&ts, &g, lo, lo + len, Alpha::new(0.37).unwrap(), &cfg).unwrap();
        let e = 2.0 * (d.error_estimate + n.error_estimate) + 1e-13 * d.value.abs() + 1e-15;
        prop_assert!((d.value - n.value).abs() <= e);
        prop_assert!((d.value - m.value).abs() <= e);
    }

    #[test]
    fn dense_derivative_matches_central_difference(t in 0.0f64..=1.0, which in 0usize..4) {
        let text = ["t^3 - 2*t", "exp(t)", "sin(3*t)", "cos(t)*t^2"][which];
        let g = f(text);
        let unit = TimeScale::interval(-1.0, 2.0).unwrap();
        let got = delta_derivative(&unit, &g, t, &CalcConfig::default()).unwrap();
        // five-point central stencil, independent of the one-sided Richardson path
        let h = 1e-3;
        let e = |x: f64| g.eval(x).unwrap();
        let oracle = (e(t - 2.0 * h) - 8.0 * e(t - h) + 8.0 * e(t + h) - e(t + 2.0 * h)) / (12.0 * h);
        prop_assert!((got - oracle).abs() <= 1e-6, "{text} at {t}: {got} vs {oracle}");
    }
}
