use super::{Alpha, CalcConfig, DerivativeKind, IntegralResult};
use crate::error::{Error, Result};
use crate::function::FunctionHandle;
use crate::quadrature::{adaptive_simpson, QuadResult};
use crate::timescale::TimeScale;

#[derive(Clone, Copy)]
enum Side {
    Forward,
    Backward,
}

fn check_window(ts: &TimeScale, a: f64, b: f64) -> Result<()> {
    for x in [a, b] {
        if !ts.contains(x) {
            return Err(Error::NotMember(x));
        }
    }
    if a > b {
        return Err(Error::BadBounds { a, b });
    }
    Ok(())
}

fn one_sided(
    ts: &TimeScale,
    f: &FunctionHandle,
    a: f64,
    b: f64,
    cfg: &CalcConfig,
    side: Side,
) -> Result<IntegralResult> {
    check_window(ts, a, b)?;
    if a == b {
        return Ok(IntegralResult::default());
    }
    let mut opts = cfg.quad_options();
    let mut out = IntegralResult::default();
    for (lo, hi) in ts.dense_segments(a, b) {
        opts.max_evals = cfg.max_evals.saturating_sub(out.evals);
        let q = quadrature_dense(f, lo, hi, &opts)?;
        out.dense_part += q.value;
        out.error_estimate += q.error_estimate;
        out.evals += q.evals;
    }
    let jumps = match side {
        Side::Forward => ts.right_scattered_between(a, b),
        Side::Backward => ts.left_scattered_between(a, b),
    };
    for (t, gap) in jumps {
        if out.evals >= cfg.max_evals {
            return Err(Error::EvalBudget(cfg.max_evals));
        }
        out.scattered_part += f.eval(t)? * gap;
        out.evals += 1;
    }
    out.value = out.dense_part + out.scattered_part;
    Ok(out)
}

/// Delta integral over `[a, b]`, `a <= b`, both members of `ts`.
pub fn delta_integral(
    ts: &TimeScale,
    f: &FunctionHandle,
    a: f64,
    b: f64,
    cfg: &CalcConfig,
) -> Result<IntegralResult> {
    one_sided(ts, f, a, b, cfg, Side::Forward)
}

/// Nabla integral over `[a, b]`, `a <= b`, both members of `ts`.
pub fn nabla_integral(
    ts: &TimeScale,
    f: &FunctionHandle,
    a: f64,
    b: f64,
    cfg: &CalcConfig,
) -> Result<IntegralResult> {
    one_sided(ts, f, a, b, cfg, Side::Backward)
}

/// `alpha * delta + (1 - alpha) * nabla`. At the endpoints of the alpha
/// range only the surviving integral is computed and returned unchanged.
pub fn diamond_integral(
    ts: &TimeScale,
    f: &FunctionHandle,
    a: f64,
    b: f64,
    alpha: Alpha,
    cfg: &CalcConfig,
) -> Result<IntegralResult> {
    let w = alpha.value();
    if w == 1.0 {
        return delta_integral(ts, f, a, b, cfg);
    }
    if w == 0.0 {
        return nabla_integral(ts, f, a, b, cfg);
    }
    let d = delta_integral(ts, f, a, b, cfg)?;
    let n = nabla_integral(ts, f, a, b, cfg)?;
    Ok(IntegralResult::combine(w, &d, &n))
}

pub fn integral(
    ts: &TimeScale,
    f: &FunctionHandle,
    a: f64,
    b: f64,
    kind: DerivativeKind,
    cfg: &CalcConfig,
) -> Result<IntegralResult> {
    match kind {
        DerivativeKind::Delta => delta_integral(ts, f, a, b, cfg),
        DerivativeKind::Nabla => nabla_integral(ts, f, a, b, cfg),
        DerivativeKind::Diamond(alpha) => diamond_integral(ts, f, a, b, alpha, cfg),
    }
}

/// Oriented integral: for `a > b` returns the negated integral over `[b, a]`.
pub fn signed_integral(
    ts: &TimeScale,
    f: &FunctionHandle,
    a: f64,
    b: f64,
    kind: DerivativeKind,
    cfg: &CalcConfig,
) -> Result<IntegralResult> {
    if a > b {
        Ok(integral(ts, f, b, a, kind, cfg)?.negated())
    } else {
        integral(ts, f, a, b, kind, cfg)
    }
}

/// Riemann integral of `f` over a dense segment `[lo, hi]`.
pub fn quadrature_dense(
    f: &FunctionHandle,
    lo: f64,
    hi: f64,
    opts: &crate::quadrature::QuadOptions,
) -> Result<QuadResult> {
    adaptive_simpson(|t| f.eval(t), lo, hi, opts)
}
