use super::{Bounded, InequalityReport, ReportParams};
use crate::calculus::Alpha;
use crate::error::{Error, Result};

/// Weighted arithmetic/geometric mean inequality on the integer window
/// `{1, ..., n+1}`, with `values[k]` holding `g(k + 1)`.
///
/// The report's `lhs` is the geometric side
/// `(Π_{t=1..n} g)^(α/n) (Π_{t=2..n+1} g)^((1-α)/n)` and its `rhs` the
/// arithmetic side `(α Σ_{t=1..n} g + (1-α) Σ_{t=2..n+1} g) / n`, so a
/// non-negative slack means the inequality holds. Products are formed in
/// log space.
pub fn weighted_amgm(values: &[f64], alpha: Alpha) -> Result<InequalityReport> {
    if values.len() < 2 {
        return Err(Error::InvalidInput(format!(
            "need n + 1 >= 2 values, got {}",
            values.len()
        )));
    }
    if let Some(bad) = values.iter().find(|v| !(**v > 0.0 && v.is_finite())) {
        return Err(Error::InvalidInput(format!(
            "values must be positive and finite, got {bad}"
        )));
    }
    let n = values.len() - 1;
    let w = alpha.value();
    let nf = n as f64;
    let head = &values[..n];
    let tail = &values[1..];

    let sum = |xs: &[f64]| xs.iter().sum::<f64>();
    let log_sum = |xs: &[f64]| xs.iter().map(|v| v.ln()).sum::<f64>();

    let arithmetic = (w * sum(head) + (1.0 - w) * sum(tail)) / nf;
    let log_geometric = (w * log_sum(head) + (1.0 - w) * log_sum(tail)) / nf;
    let geometric = log_geometric.exp();

    let max_log = values.iter().map(|v| v.ln().abs()).fold(0.0, f64::max);
    let rounding = 1e-12 * (1.0 + max_log) * arithmetic.max(geometric);
    let lhs = Bounded {
        value: geometric,
        radius: rounding,
    };
    let rhs = Bounded::exact(arithmetic);
    Ok(InequalityReport::new(
        "weighted-amgm",
        lhs,
        rhs,
        ReportParams {
            alpha: Some(w),
            a: Some(1.0),
            b: Some(nf + 1.0),
            ..ReportParams::default()
        },
        Vec::new(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equal_values() {
        for alpha in [0.0, 0.4, 1.0] {
            let r = weighted_amgm(&[3.5; 6], Alpha::new(alpha).unwrap()).unwrap();
            assert!((r.lhs - 3.5).abs() < 1e-14 && (r.rhs - 3.5).abs() < 1e-14);
            assert!(r.holds);
        }
    }

    #[test]
    fn classical_case() {
        let r = weighted_amgm(&[1.0, 2.0, 4.0, 100.0], Alpha::DELTA).unwrap();
        assert!((r.rhs - 7.0 / 3.0).abs() < 1e-15);
        assert!((r.lhs - 2.0).abs() < 1e-14);
        assert!(r.holds);
        assert_eq!(r.params.b, Some(4.0));
    }

    #[test]
    fn nabla_end_uses_shifted_window() {
        let r = weighted_amgm(&[100.0, 1.0, 4.0], Alpha::NABLA).unwrap();
        assert_eq!(r.rhs, 2.5);
        assert!((r.lhs - 2.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(weighted_amgm(&[1.0], Alpha::DELTA).is_err());
        assert!(weighted_amgm(&[1.0, 0.0], Alpha::DELTA).is_err());
        assert!(weighted_amgm(&[1.0, -2.0], Alpha::DELTA).is_err());
    }
}
