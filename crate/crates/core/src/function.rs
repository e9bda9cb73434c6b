use std::fmt;
use std::sync::Arc;

use crate::expr::{DomainKind, EvalError, Expr, ParseError};

type Eval = dyn Fn(f64) -> Result<f64, EvalError> + Send + Sync;

/// Where a [`FunctionHandle`] came from.
#[derive(Debug, Clone, PartialEq)]
pub enum Origin {
    Expr(Expr),
    Builtin(String),
}

/// Cheaply clonable real function of one real variable.
#[derive(Clone)]
pub struct FunctionHandle {
    origin: Origin,
    inner: Arc<Eval>,
}

impl FunctionHandle {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        Ok(Self::from_expr(Expr::parse(text)?))
    }

    pub fn from_expr(expr: Expr) -> Self {
        let e = expr.clone();
        FunctionHandle {
            origin: Origin::Expr(expr),
            inner: Arc::new(move |t| e.eval(t)),
        }
    }

    /// Wraps an infallible closure; a non-finite output becomes an [`EvalError`].
    pub fn builtin<F>(name: impl Into<String>, f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let name = name.into();
        let label = name.clone();
        Self::builtin_fallible(name, move |t| {
            let v = f(t);
            if v.is_finite() {
                Ok(v)
            } else {
                Err(EvalError {
                    kind: DomainKind::NonFinite,
                    expr: label.clone(),
                    t,
                })
            }
        })
    }

    pub fn builtin_fallible<F>(name: impl Into<String>, f: F) -> Self
    where
        F: Fn(f64) -> Result<f64, EvalError> + Send + Sync + 'static,
    {
        FunctionHandle {
            origin: Origin::Builtin(name.into()),
            inner: Arc::new(f),
        }
    }

    pub fn constant(c: f64) -> Self {
        Self::from_expr(Expr::Num(c))
    }

    pub fn eval(&self, t: f64) -> Result<f64, EvalError> {
        (self.inner)(t)
    }

    pub fn origin(&self) -> &Origin {
        &self.origin
    }

    /// Pointwise `op(self(t))`, labelled `name`.
    pub fn map<F>(&self, name: impl Into<String>, op: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let f = self.clone();
        let name = name.into();
        let label = name.clone();
        Self::builtin_fallible(name, move |t| finite(op(f.eval(t)?), &label, t))
    }

    /// Pointwise `op(self(t), other(t))`, labelled `name`.
    pub fn zip<F>(&self, other: &Self, name: impl Into<String>, op: F) -> Self
    where
        F: Fn(f64, f64) -> f64 + Send + Sync + 'static,
    {
        let (f, g) = (self.clone(), other.clone());
        let name = name.into();
        let label = name.clone();
        Self::builtin_fallible(name, move |t| finite(op(f.eval(t)?, g.eval(t)?), &label, t))
    }

    /// `outer(self(t))` where `outer` may itself fail.
    pub fn compose(&self, outer: &Self) -> Self {
        let (inner, outer) = (self.clone(), outer.clone());
        let name = format!("{outer}({inner})");
        Self::builtin_fallible(name, move |t| outer.eval(inner.eval(t)?))
    }
}

fn finite(v: f64, label: &str, t: f64) -> Result<f64, EvalError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(EvalError {
            kind: DomainKind::NonFinite,
            expr: label.to_string(),
            t,
        })
    }
}

impl fmt::Display for FunctionHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.origin {
            Origin::Expr(e) => write!(f, "{e}"),
            Origin::Builtin(name) => f.write_str(name),
        }
    }
}

impl fmt::Debug for FunctionHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FunctionHandle")
            .field("origin", &self.origin)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn handles_are_pure_and_composable() {
        let f = FunctionHandle::parse("t^2").unwrap();
        let g = FunctionHandle::builtin("neg", |t| -t);
        assert_eq!(f.eval(3.0), f.eval(3.0));
        let h = f.zip(&g, "f+g", |x, y| x + y);
        assert_eq!(h.eval(2.0).unwrap(), 2.0);
        let abs = g.map("|g|", f64::abs);
        assert_eq!(abs.eval(2.0).unwrap(), 2.0);
        let log = FunctionHandle::parse("log(t)").unwrap();
        assert!(g.compose(&log).eval(1.0).is_err());
        assert_eq!(f.to_string(), "(t ^ 2.0)");
    }

    #[test]
    fn builtin_rejects_non_finite() {
        let f = FunctionHandle::builtin("recip", |t| 1.0 / t);
        assert_eq!(f.eval(0.0).unwrap_err().kind, DomainKind::NonFinite);
    }
}
