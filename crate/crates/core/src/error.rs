use thiserror::Error;

/// Errors raised by the time-scale, calculus and inequality layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("time scale needs at least one component")]
    EmptyScale,
    #[error("non-finite endpoint {0} in time scale")]
    NonFiniteEndpoint(f64),
    #[error("interval [{lo}, {hi}] has lo > hi")]
    InvertedInterval { lo: f64, hi: f64 },
    #[error("{0} is not a member of the time scale")]
    NotMember(f64),
    #[error("bounds must satisfy a < b, got a = {a}, b = {b}")]
    BadBounds { a: f64, b: f64 },
    #[error("point {t} lies outside the admissible range [{lo}, {hi}]")]
    OutsideRange { t: f64, lo: f64, hi: f64 },
    #[error("alpha must lie in [0, 1], got {0}")]
    BadAlpha(f64),
    #[error("invalid configuration: {0}")]
    BadConfig(String),
    #[error(transparent)]
    Eval(#[from] crate::expr::EvalError),
    #[error("finite-difference limit at t = {t} did not converge (estimate {estimate}, error {error})")]
    DerivativeNotConverged { t: f64, estimate: f64, error: f64 },
    #[error("no dense material on either side of t = {0}")]
    NoDenseNeighbourhood(f64),
    #[error(
        "quadrature hit the depth cap on [{lo}, {hi}] (local error {local_error:e})"
    )]
    QuadratureDepth { lo: f64, hi: f64, local_error: f64 },
    #[error("evaluation budget of {0} exhausted")]
    EvalBudget(u64),
    #[error("exponent p must exceed 1, got {0}")]
    BadExponent(f64),
    #[error("domain ({c}, {d}) is empty")]
    EmptyDomain { c: f64, d: f64 },
    #[error("g({t}) = {value} escapes the convexity domain ({c}, {d})")]
    RangeEscape { t: f64, value: f64, c: f64, d: f64 },
    #[error("{0}")]
    InvalidInput(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
