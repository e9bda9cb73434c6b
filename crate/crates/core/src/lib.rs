//! Dynamic calculus on finite time scales.
//!
//! The crate models a bounded time scale as a union of closed intervals and
//! isolated points, and provides the jump operators, delta/nabla/diamond-alpha
//! derivatives and integrals on it, together with numeric checks of the
//! Hölder, Cauchy–Schwarz, Minkowski and Jensen inequalities for
//! diamond-alpha integrals.

pub mod calculus;
pub mod error;
pub mod expr;
pub mod function;
pub mod inequalities;
pub mod quadrature;
pub mod suite;
pub mod timescale;

pub use calculus::{Alpha, CalcConfig, DerivativeKind, IntegralResult};
pub use error::{Error, Result};
pub use expr::{EvalError, Expr, ParseError};
pub use function::FunctionHandle;
pub use timescale::{Component, PointClass, RawComponent, ScaleSpec, TimeScale};
pub use inequalities::{ConvexSpec, InequalityReport};
