use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::calculus::{delta_derivative, diamond_integral, Alpha, CalcConfig};
use crate::error::{Error, Result};
use crate::expr::{DomainKind, EvalError};
use crate::function::FunctionHandle;
use crate::timescale::TimeScale;

/// Allowed shortfall of `J` below the Schwarz lower bound before the flag drops.
pub const LOWER_BOUND_TOL: f64 = 1e-6;

const BOUNDARY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VariationalDemo {
    /// `J[x] = ∫_0^1 x'(t)^2`.
    pub j_value: f64,
    pub error_estimate: f64,
    /// `(x(1) - x(0))^2`, the Schwarz lower bound on `J`.
    pub lower_bound: f64,
    pub lower_bound_holds: bool,
}

/// Evaluates `J[x] = ∫_0^1 x'(t)^2` on the dense scale `[0, 1]` for an
/// admissible `x` (`x(0) = 0`, `x(1) = 1`) and checks `J >= 1`.
///
/// `x'` is the numeric delta derivative; the integral is split over
/// `grid_points - 1` equal panels and summed.
pub fn schwarz_variational_demo(
    x: &FunctionHandle,
    grid_points: usize,
    alpha: Alpha,
    cfg: &CalcConfig,
) -> Result<VariationalDemo> {
    if grid_points < 8 {
        return Err(Error::InvalidInput(format!(
            "grid_points must be at least 8, got {grid_points}"
        )));
    }
    let (x0, x1) = (x.eval(0.0)?, x.eval(1.0)?);
    if (x0 - 0.0).abs() > BOUNDARY_TOL || (x1 - 1.0).abs() > BOUNDARY_TOL {
        return Err(Error::InvalidInput(format!(
            "inadmissible boundary values x(0) = {x0}, x(1) = {x1}"
        )));
    }
    let ts = TimeScale::interval(0.0, 1.0)?;

    // Derivative failures that are not plain evaluation errors are parked
    // here and surfaced after the integral returns.
    let failure: Arc<Mutex<Option<Error>>> = Arc::new(Mutex::new(None));
    let speed_sq = {
        let (ts, x, cfg, failure) = (ts.clone(), x.clone(), *cfg, failure.clone());
        FunctionHandle::builtin_fallible(format!("(d/dt {x})^2"), move |t| {
            match delta_derivative(&ts, &x, t, &cfg) {
                Ok(v) => Ok(v * v),
                Err(Error::Eval(e)) => Err(e),
                Err(e) => {
                    failure.lock().unwrap().get_or_insert(e);
                    Err(EvalError {
                        kind: DomainKind::NonFinite,
                        expr: "x'".into(),
                        t,
                    })
                }
            }
        })
    };

    let panels = grid_points - 1;
    let mut j_value = 0.0;
    let mut error_estimate = 0.0;
    for i in 0..panels {
        let lo = i as f64 / panels as f64;
        let hi = if i + 1 == panels {
            1.0
        } else {
            (i + 1) as f64 / panels as f64
        };
        match diamond_integral(&ts, &speed_sq, lo, hi, alpha, cfg) {
            Ok(r) => {
                j_value += r.value;
                error_estimate += r.error_estimate;
            }
            Err(e) => return Err(failure.lock().unwrap().take().unwrap_or(e)),
        }
    }
    let lower_bound = (x1 - x0).powi(2);
    Ok(VariationalDemo {
        j_value,
        error_estimate,
        lower_bound,
        lower_bound_holds: j_value >= lower_bound - LOWER_BOUND_TOL,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn demo(text: &str) -> Result<VariationalDemo> {
        let x = FunctionHandle::parse(text).unwrap();
        schwarz_variational_demo(&x, 16, Alpha::new(0.5).unwrap(), &CalcConfig::default())
    }

    #[test]
    fn identity_attains_the_bound() {
        let d = demo("t").unwrap();
        assert!((d.j_value - 1.0).abs() < 1e-6, "{d:?}");
        assert!(d.lower_bound_holds);
    }

    #[test]
    fn parabola_and_sine() {
        let d = demo("t^2").unwrap();
        assert!((d.j_value - 4.0 / 3.0).abs() < 1e-6, "{d:?}");
        let d = demo("sin(3.141592653589793*t/2)").unwrap();
        let want = std::f64::consts::PI.powi(2) / 8.0;
        assert!((d.j_value - want).abs() < 1e-6, "{d:?}");
        assert!(d.lower_bound_holds);
    }

    #[test]
    fn inadmissible_inputs() {
        assert!(matches!(demo("t + 0.1"), Err(Error::InvalidInput(_))));
        assert!(matches!(demo("2*t"), Err(Error::InvalidInput(_))));
        let x = FunctionHandle::parse("t").unwrap();
        assert!(schwarz_variational_demo(&x, 7, Alpha::DELTA, &CalcConfig::default()).is_err());
    }
}
