use super::{base_params, check_window, conjugate, named, Bounded, InequalityReport};
use crate::calculus::{integral, CalcConfig, DerivativeKind};
use crate::error::Result;
use crate::function::FunctionHandle;
use crate::timescale::TimeScale;

/// `∫|fg| <= (∫|f|^p)^(1/p) (∫|g|^q)^(1/q)` with `q = p/(p-1)`.
#[allow(clippy::too_many_arguments)]
pub fn holder_check(
    ts: &TimeScale,
    f: &FunctionHandle,
    g: &FunctionHandle,
    a: f64,
    b: f64,
    kind: impl Into<DerivativeKind>,
    p: f64,
    cfg: &CalcConfig,
) -> Result<InequalityReport> {
    holder_named("holder", ts, f, g, a, b, kind.into(), p, cfg)
}

/// Hölder with `p = q = 2`.
pub fn cauchy_schwarz_check(
    ts: &TimeScale,
    f: &FunctionHandle,
    g: &FunctionHandle,
    a: f64,
    b: f64,
    kind: impl Into<DerivativeKind>,
    cfg: &CalcConfig,
) -> Result<InequalityReport> {
    holder_named("cauchy-schwarz", ts, f, g, a, b, kind.into(), 2.0, cfg)
}

#[allow(clippy::too_many_arguments)]
fn holder_named(
    name: &str,
    ts: &TimeScale,
    f: &FunctionHandle,
    g: &FunctionHandle,
    a: f64,
    b: f64,
    kind: DerivativeKind,
    p: f64,
    cfg: &CalcConfig,
) -> Result<InequalityReport> {
    let q = conjugate(p)?;
    check_window(ts, a, b)?;
    let fg = f.zip(g, format!("|({f}) * ({g})|"), |x, y| (x * y).abs());
    let fp = f.map(format!("|{f}|^{p}"), move |x| x.abs().powf(p));
    let gq = g.map(format!("|{g}|^{q}"), move |x| x.abs().powf(q));

    let i_fg = integral(ts, &fg, a, b, kind, cfg)?;
    let i_fp = integral(ts, &fp, a, b, kind, cfg)?;
    let i_gq = integral(ts, &gq, a, b, kind, cfg)?;

    let lhs = Bounded::from_integral(&i_fg);
    let rhs = Bounded::from_integral(&i_fp)
        .nonneg_pow(1.0 / p)
        .mul(Bounded::from_integral(&i_gq).nonneg_pow(1.0 / q));
    let mut params = base_params(kind, a, b);
    params.p = Some(p);
    params.q = Some(q);
    Ok(InequalityReport::new(
        name,
        lhs,
        rhs,
        params,
        vec![named("|f g|", i_fg), named("|f|^p", i_fp), named("|g|^q", i_gq)],
    ))
}

/// `(∫|f+g|^p)^(1/p) <= (∫|f|^p)^(1/p) + (∫|g|^p)^(1/p)`.
#[allow(clippy::too_many_arguments)]
pub fn minkowski_check(
    ts: &TimeScale,
    f: &FunctionHandle,
    g: &FunctionHandle,
    a: f64,
    b: f64,
    kind: impl Into<DerivativeKind>,
    p: f64,
    cfg: &CalcConfig,
) -> Result<InequalityReport> {
    let kind = kind.into();
    let q = conjugate(p)?;
    check_window(ts, a, b)?;
    let sum = f.zip(g, format!("|({f}) + ({g})|^{p}"), move |x, y| (x + y).abs().powf(p));
    let fp = f.map(format!("|{f}|^{p}"), move |x| x.abs().powf(p));
    let gp = g.map(format!("|{g}|^{p}"), move |x| x.abs().powf(p));

    let i_sum = integral(ts, &sum, a, b, kind, cfg)?;
    let i_fp = integral(ts, &fp, a, b, kind, cfg)?;
    let i_gp = integral(ts, &gp, a, b, kind, cfg)?;

    // a vanishing ∫|f+g|^p gives lhs = 0 through the power itself
    let lhs = Bounded::from_integral(&i_sum).nonneg_pow(1.0 / p);
    let rhs = Bounded::from_integral(&i_fp)
        .nonneg_pow(1.0 / p)
        .add(Bounded::from_integral(&i_gp).nonneg_pow(1.0 / p));
    let mut params = base_params(kind, a, b);
    params.p = Some(p);
    params.q = Some(q);
    Ok(InequalityReport::new(
        "minkowski",
        lhs,
        rhs,
        params,
        vec![named("|f+g|^p", i_sum), named("|f|^p", i_fp), named("|g|^p", i_gp)],
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::Alpha;
    use crate::error::Error;

    fn f(text: &str) -> FunctionHandle {
        FunctionHandle::parse(text).unwrap()
    }

    #[test]
    fn zero_factor_is_equality() {
        let unit = TimeScale::interval(0.0, 1.0).unwrap();
        let r = holder_check(&unit, &f("t"), &f("0"), 0.0, 1.0, Alpha::DELTA, 3.0, &Default::default())
            .unwrap();
        assert_eq!((r.lhs, r.rhs), (0.0, 0.0));
        assert!(r.holds);
    }

    #[test]
    fn integer_window_holder() {
        let z = TimeScale::integers(1, 5).unwrap();
        let r = holder_check(&z, &f("t"), &f("1"), 1.0, 5.0, Alpha::DELTA, 2.0, &Default::default())
            .unwrap();
        assert_eq!(r.lhs, 10.0);
        assert!((r.rhs - 30f64.sqrt() * 2.0).abs() < 1e-12);
        assert!(r.holds);
        assert_eq!(r.params.q, Some(2.0));
    }

    #[test]
    fn cauchy_schwarz_examples() {
        let cfg = CalcConfig::default();
        let unit = TimeScale::interval(0.0, 1.0).unwrap();
        let r = cauchy_schwarz_check(&unit, &f("1"), &f("1"), 0.0, 1.0, Alpha::DELTA, &cfg).unwrap();
        assert!((r.lhs - 1.0).abs() < 1e-12 && (r.rhs - 1.0).abs() < 1e-12);
        assert_eq!(r.name, "cauchy-schwarz");

        // f takes 1, 2 and g takes 2, 1 on {0, 1}; the value at 2 does not enter
        let z = TimeScale::integers(0, 2).unwrap();
        let r = cauchy_schwarz_check(&z, &f("1 + t"), &f("2 - t"), 0.0, 2.0, Alpha::DELTA, &cfg)
            .unwrap();
        assert_eq!(r.lhs, 4.0);
        assert!((r.rhs - 5.0).abs() < 1e-12);
    }

    #[test]
    fn minkowski_examples() {
        let cfg = CalcConfig::default();
        let z = TimeScale::integers(0, 3).unwrap();
        let r = minkowski_check(&z, &f("t"), &f("1"), 0.0, 3.0, Alpha::DELTA, 2.0, &cfg).unwrap();
        assert!((r.lhs - 14f64.sqrt()).abs() < 1e-12);
        assert!((r.rhs - (5f64.sqrt() + 3f64.sqrt())).abs() < 1e-12);
        assert!(r.holds);

        let r = minkowski_check(&z, &f("t"), &f("-t"), 0.0, 3.0, Alpha::NABLA, 2.5, &cfg).unwrap();
        assert_eq!(r.lhs, 0.0);
        assert!(r.rhs > 0.0 && r.holds);
    }

    #[test]
    fn bad_exponent() {
        let unit = TimeScale::interval(0.0, 1.0).unwrap();
        let cfg = CalcConfig::default();
        assert_eq!(
            holder_check(&unit, &f("t"), &f("t"), 0.0, 1.0, Alpha::DELTA, 1.0, &cfg).unwrap_err(),
            Error::BadExponent(1.0)
        );
        assert!(minkowski_check(&unit, &f("t"), &f("t"), 0.0, 1.0, Alpha::DELTA, 0.5, &cfg).is_err());
        assert!(holder_check(&unit, &f("t"), &f("t"), 1.0, 0.0, Alpha::DELTA, 2.0, &cfg).is_err());
    }
}
