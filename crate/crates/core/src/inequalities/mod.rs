//! Numeric checks of diamond-alpha integral inequalities.
//!
//! Every check evaluates both sides of one inequality instance and returns an
//! [`InequalityReport`]. Each side carries a worst-case uncertainty assembled
//! from the quadrature error estimates of the integrals it is built from
//! (propagated through powers and products by interval arithmetic), and the
//! verdict is `slack >= -tolerance` with the tolerance being the sum of both
//! side uncertainties plus an absolute floor.

mod amgm;
mod jensen;
mod lp;
mod variational;

use serde::{Deserialize, Serialize};

use crate::calculus::{DerivativeKind, IntegralResult};
use crate::error::{Error, Result};
use crate::timescale::TimeScale;

pub use amgm::weighted_amgm;
pub use jensen::{
    convexity_probe, jensen_check, jensen_support_gap, range_grid, ConvexSpec, ConvexityProbe,
    SupportGap,
};
pub use lp::{cauchy_schwarz_check, holder_check, minkowski_check};
pub use variational::{schwarz_variational_demo, VariationalDemo, LOWER_BOUND_TOL};

/// Absolute floor added to every propagated tolerance.
pub const TOLERANCE_FLOOR: f64 = 1e-12;

/// Relative allowance for floating-point summation in an integral, on top of
/// its quadrature error estimate.
const ROUNDING_REL: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ReportParams {
    pub alpha: Option<f64>,
    pub p: Option<f64>,
    pub q: Option<f64>,
    pub a: Option<f64>,
    pub b: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedIntegral {
    pub label: String,
    #[serde(flatten)]
    pub result: IntegralResult,
}

/// Both sides of one inequality instance and the verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub tolerance: f64,
    pub holds: bool,
    pub params: ReportParams,
    pub integrals: Vec<NamedIntegral>,
}

impl InequalityReport {
    pub(crate) fn new(
        name: &str,
        lhs: Bounded,
        rhs: Bounded,
        params: ReportParams,
        integrals: Vec<NamedIntegral>,
    ) -> Self {
        let slack = rhs.value - lhs.value;
        let tolerance = lhs.radius + rhs.radius + TOLERANCE_FLOOR;
        InequalityReport {
            name: name.to_string(),
            lhs: lhs.value,
            rhs: rhs.value,
            slack,
            tolerance,
            holds: slack >= -tolerance,
            params,
            integrals,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// A value together with a worst-case absolute uncertainty.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Bounded {
    pub value: f64,
    pub radius: f64,
}

impl Bounded {
    pub fn exact(value: f64) -> Self {
        Bounded { value, radius: 0.0 }
    }

    pub fn from_integral(r: &IntegralResult) -> Self {
        Bounded {
            value: r.value,
            radius: r.error_estimate + ROUNDING_REL * r.value.abs(),
        }
    }

    /// `value^e` for a quantity known to be non-negative; small negative
    /// quadrature noise is clamped to zero.
    pub fn nonneg_pow(self, e: f64) -> Self {
        let v = self.value.max(0.0);
        let value = v.powf(e);
        let hi = (v + self.radius).powf(e);
        let lo = (v - self.radius).max(0.0).powf(e);
        Bounded {
            value,
            radius: (hi - value).max(value - lo),
        }
    }

    pub fn mul(self, o: Self) -> Self {
        Bounded {
            value: self.value * o.value,
            radius: self.value.abs() * o.radius
                + o.value.abs() * self.radius
                + self.radius * o.radius,
        }
    }

    pub fn add(self, o: Self) -> Self {
        Bounded {
            value: self.value + o.value,
            radius: self.radius + o.radius,
        }
    }

    pub fn scale(self, k: f64) -> Self {
        Bounded {
            value: self.value * k,
            radius: self.radius * k.abs(),
        }
    }
}

/// Both sides of `x^(1/p) y^(1/q) <= x/p + y/q` with `q = p/(p-1)`.
pub fn young_scalar(x: f64, y: f64, p: f64) -> Result<(f64, f64)> {
    let q = conjugate(p)?;
    if !(x >= 0.0 && y >= 0.0) || !x.is_finite() || !y.is_finite() {
        return Err(Error::InvalidInput(format!(
            "young inequality needs finite x, y >= 0, got x = {x}, y = {y}"
        )));
    }
    Ok((x.powf(1.0 / p) * y.powf(1.0 / q), x / p + y / q))
}

/// Hölder conjugate `p / (p - 1)` of an exponent `p > 1`.
pub fn conjugate(p: f64) -> Result<f64> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(Error::BadExponent(p));
    }
    Ok(p / (p - 1.0))
}

pub(crate) fn check_window(ts: &TimeScale, a: f64, b: f64) -> Result<()> {
    for x in [a, b] {
        if !ts.contains(x) {
            return Err(Error::NotMember(x));
        }
    }
    if !(a < b) {
        return Err(Error::BadBounds { a, b });
    }
    Ok(())
}

pub(crate) fn base_params(kind: DerivativeKind, a: f64, b: f64) -> ReportParams {
    ReportParams {
        alpha: Some(kind.alpha()),
        a: Some(a),
        b: Some(b),
        ..ReportParams::default()
    }
}

pub(crate) fn named(label: impl Into<String>, result: IntegralResult) -> NamedIntegral {
    NamedIntegral {
        label: label.into(),
        result,
    }
}
