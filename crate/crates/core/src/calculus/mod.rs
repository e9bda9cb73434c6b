//! Delta, nabla and diamond-alpha derivatives and integrals on a [`TimeScale`].
//!
//! Integrals are computed by decomposition: the dense pieces of `[a,b] ∩ T`
//! are integrated with adaptive Simpson, and every scattered point adds a
//! jump term. The delta integral collects `f(t) * mu(t)` over right-scattered
//! `t` in `[a, b)`, the nabla integral collects `f(t) * nu(t)` over
//! left-scattered `t` in `(a, b]`. Jump terms are summed left to right.
//!
//! [`TimeScale`]: crate::timescale::TimeScale

mod derivative;
mod integral;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::QuadOptions;

pub use derivative::{delta_derivative, derivative, diamond_derivative, nabla_derivative};
pub use integral::{
    delta_integral, diamond_integral, integral, nabla_integral, quadrature_dense, signed_integral,
};

/// Weight of the delta part in a diamond-alpha combination, in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct Alpha(f64);

impl Alpha {
    pub const DELTA: Alpha = Alpha(1.0);
    pub const NABLA: Alpha = Alpha(0.0);

    pub fn new(value: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&value) {
            Ok(Alpha(value))
        } else {
            Err(Error::BadAlpha(value))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl<'de> Deserialize<'de> for Alpha {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = f64::deserialize(d)?;
        Alpha::new(v).map_err(serde::de::Error::custom)
    }
}

/// Selects the delta, nabla or diamond-alpha flavour of a derivative or integral.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum DerivativeKind {
    Delta,
    Nabla,
    Diamond(Alpha),
}

impl DerivativeKind {
    /// Delta weight of this kind: 1 for delta, 0 for nabla.
    pub fn alpha(self) -> f64 {
        match self {
            DerivativeKind::Delta => 1.0,
            DerivativeKind::Nabla => 0.0,
            DerivativeKind::Diamond(a) => a.value(),
        }
    }
}

impl From<Alpha> for DerivativeKind {
    fn from(a: Alpha) -> Self {
        DerivativeKind::Diamond(a)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CalcConfig {
    pub quad_abs_tol: f64,
    pub quad_rel_tol: f64,
    pub quad_max_depth: u32,
    /// First finite-difference step as a fraction of the dense segment length.
    pub fd_initial_step: f64,
    pub fd_richardson_levels: u32,
    /// Acceptance threshold for the Richardson error estimate, absolute and relative.
    pub fd_tol: f64,
    pub max_evals: u64,
}

impl Default for CalcConfig {
    fn default() -> Self {
        CalcConfig {
            quad_abs_tol: 1e-10,
            quad_rel_tol: 1e-10,
            quad_max_depth: 40,
            fd_initial_step: 1e-3,
            fd_richardson_levels: 4,
            fd_tol: 1e-6,
            max_evals: 10_000_000,
        }
    }
}

impl CalcConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("quad_abs_tol", self.quad_abs_tol),
            ("quad_rel_tol", self.quad_rel_tol),
            ("fd_initial_step", self.fd_initial_step),
            ("fd_tol", self.fd_tol),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::BadConfig(format!("{name} must be positive, got {v}")));
            }
        }
        if self.fd_initial_step >= 1.0 {
            return Err(Error::BadConfig("fd_initial_step must be below 1".into()));
        }
        if self.quad_max_depth < 1 || self.fd_richardson_levels < 1 || self.max_evals < 1 {
            return Err(Error::BadConfig(
                "depths, levels and evaluation caps must be at least 1".into(),
            ));
        }
        Ok(())
    }

    pub fn quad_options(&self) -> QuadOptions {
        QuadOptions {
            abs_tol: self.quad_abs_tol,
            rel_tol: self.quad_rel_tol,
            max_depth: self.quad_max_depth,
            max_evals: self.max_evals,
        }
    }
}

/// Value of a dynamic integral split into its dense and jump contributions.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct IntegralResult {
    pub value: f64,
    /// Bound on the dense quadrature error only; jump sums are exact up to rounding.
    pub error_estimate: f64,
    pub dense_part: f64,
    pub scattered_part: f64,
    pub evals: u64,
}

impl IntegralResult {
    fn combine(alpha: f64, delta: &Self, nabla: &Self) -> Self {
        let beta = 1.0 - alpha;
        IntegralResult {
            value: alpha * delta.value + beta * nabla.value,
            error_estimate: alpha * delta.error_estimate + beta * nabla.error_estimate,
            dense_part: alpha * delta.dense_part + beta * nabla.dense_part,
            scattered_part: alpha * delta.scattered_part + beta * nabla.scattered_part,
            evals: delta.evals + nabla.evals,
        }
    }

    fn negated(self) -> Self {
        IntegralResult {
            value: -self.value,
            dense_part: -self.dense_part,
            scattered_part: -self.scattered_part,
            ..self
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_range() {
        assert!(Alpha::new(0.0).is_ok());
        assert!(Alpha::new(1.0).is_ok());
        assert_eq!(Alpha::new(1.5), Err(Error::BadAlpha(1.5)));
        assert!(Alpha::new(f64::NAN).is_err());
        assert!(serde_json::from_str::<Alpha>("-0.1").is_err());
        assert_eq!(serde_json::from_str::<Alpha>("0.25").unwrap().value(), 0.25);
    }

    #[test]
    fn config_validation() {
        assert!(CalcConfig::default().validate().is_ok());
        let bad = CalcConfig {
            quad_abs_tol: 0.0,
            ..CalcConfig::default()
        };
        assert!(bad.validate().is_err());
        let bad = CalcConfig {
            fd_richardson_levels: 0,
            ..CalcConfig::default()
        };
        assert!(bad.validate().is_err());
    }
}
