//! Shared inputs for the criterion benchmarks.

use tscale_core::{FunctionHandle, TimeScale};

/// Interval pieces separated by runs of isolated points, spanning [0, 12].
pub fn mixed_scale() -> TimeScale {
    let spec = r#"{"components":[
        {"interval":[0,2]},{"point":2.5},{"point":3},{"point":3.25},
        {"interval":[4,6.5]},{"point":7},{"point":8},{"point":9},
        {"interval":[9.5,12]}
    ]}"#;
    let spec = tscale_core::ScaleSpec::from_json(spec).expect("fixture spec");
    spec.build().expect("fixture scale")
}

/// `n` + 1 unit-spaced points starting at 0.
pub fn integer_scale(n: i64) -> TimeScale {
    TimeScale::integers(0, n).expect("fixture scale")
}

pub fn smooth() -> FunctionHandle {
    FunctionHandle::parse("sin(3*t) * exp(-t/4) + t^2/10").expect("fixture function")
}

pub fn weight() -> FunctionHandle {
    FunctionHandle::parse("1 + cos(t)^2").expect("fixture function")
}
