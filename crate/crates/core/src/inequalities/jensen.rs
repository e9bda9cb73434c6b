use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{base_params, check_window, named, Bounded, InequalityReport};
use crate::calculus::{integral, CalcConfig, DerivativeKind};
use crate::error::{Error, Result};
use crate::function::FunctionHandle;
use crate::timescale::TimeScale;

/// Samples per dense segment in the range check.
const RANGE_SAMPLES: usize = 64;

/// A caller-declared convex function on the open interval `(c, d)`.
///
/// `c` and `d` may be infinite. `subgradient`, when present, maps a point
/// `x0` to the slope of a supporting line at `x0`.
#[derive(Debug, Clone)]
pub struct ConvexSpec {
    pub function: FunctionHandle,
    pub c: f64,
    pub d: f64,
    pub subgradient: Option<FunctionHandle>,
    pub declared_convex: bool,
}

impl ConvexSpec {
    pub fn new(function: FunctionHandle, c: f64, d: f64) -> Result<Self> {
        if c.is_nan() || d.is_nan() || !(c < d) {
            return Err(Error::EmptyDomain { c, d });
        }
        Ok(ConvexSpec {
            function,
            c,
            d,
            subgradient: None,
            declared_convex: true,
        })
    }

    pub fn with_subgradient(mut self, slope: FunctionHandle) -> Self {
        self.subgradient = Some(slope);
        self
    }

    pub fn in_domain(&self, x: f64) -> bool {
        self.c < x && x < self.d
    }
}

/// Points at which `g` is sampled for the range check: every scattered member
/// of `[a, b]` plus 64 evenly spaced points on each dense segment.
pub fn range_grid(ts: &TimeScale, a: f64, b: f64) -> Vec<f64> {
    let mut pts = ts.scattered_members(a, b);
    for (lo, hi) in ts.dense_segments(a, b) {
        let step = (hi - lo) / (RANGE_SAMPLES - 1) as f64;
        pts.extend((0..RANGE_SAMPLES).map(|i| if i + 1 == RANGE_SAMPLES { hi } else { lo + step * i as f64 }));
    }
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

fn check_range(ts: &TimeScale, g: &FunctionHandle, spec: &ConvexSpec, a: f64, b: f64) -> Result<Vec<(f64, f64)>> {
    range_grid(ts, a, b)
        .into_iter()
        .map(|t| {
            let value = g.eval(t)?;
            if spec.in_domain(value) {
                Ok((t, value))
            } else {
                Err(Error::RangeEscape {
                    t,
                    value,
                    c: spec.c,
                    d: spec.d,
                })
            }
        })
        .collect()
}

/// `F(∫g / (b-a)) <= ∫F(g) / (b-a)`.
pub fn jensen_check(
    ts: &TimeScale,
    g: &FunctionHandle,
    spec: &ConvexSpec,
    a: f64,
    b: f64,
    kind: impl Into<DerivativeKind>,
    cfg: &CalcConfig,
) -> Result<InequalityReport> {
    let kind = kind.into();
    if !spec.declared_convex {
        return Err(Error::InvalidInput(
            "jensen check requires a function declared convex".into(),
        ));
    }
    check_window(ts, a, b)?;
    check_range(ts, g, spec, a, b)?;

    let fg = g.compose(&spec.function);
    let i_g = integral(ts, g, a, b, kind, cfg)?;
    let i_fg = integral(ts, &fg, a, b, kind, cfg)?;
    let len = b - a;

    let mean = Bounded::from_integral(&i_g).scale(1.0 / len);
    let x0 = mean.value;
    let f0 = spec.function.eval(x0)?;
    // a convex function moves at most as far as its values at the ends of
    // the uncertainty interval around x0
    let mut lhs_radius: f64 = 0.0;
    for x in [x0 - mean.radius, x0 + mean.radius] {
        if spec.in_domain(x) {
            if let Ok(v) = spec.function.eval(x) {
                lhs_radius = lhs_radius.max((v - f0).abs());
            }
        }
    }
    let lhs = Bounded {
        value: f0,
        radius: lhs_radius,
    };
    let rhs = Bounded::from_integral(&i_fg).scale(1.0 / len);
    Ok(InequalityReport::new(
        "jensen",
        lhs,
        rhs,
        base_params(kind, a, b),
        vec![named("g", i_g), named("F(g)", i_fg)],
    ))
}

/// Smallest gap `F(g(t)) - F(x0) - gamma (g(t) - x0)` over the range grid,
/// for the supporting line at the diamond mean `x0` of `g`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SupportGap {
    pub x0: f64,
    pub gamma: f64,
    pub min_gap: f64,
    pub at: f64,
}

pub fn jensen_support_gap(
    ts: &TimeScale,
    g: &FunctionHandle,
    spec: &ConvexSpec,
    a: f64,
    b: f64,
    kind: impl Into<DerivativeKind>,
    cfg: &CalcConfig,
) -> Result<SupportGap> {
    let slope = spec
        .subgradient
        .as_ref()
        .ok_or_else(|| Error::InvalidInput("no subgradient supplied".into()))?;
    check_window(ts, a, b)?;
    let samples = check_range(ts, g, spec, a, b)?;
    let x0 = integral(ts, g, a, b, kind.into(), cfg)?.value / (b - a);
    let gamma = slope.eval(x0)?;
    let f0 = spec.function.eval(x0)?;
    let mut best = SupportGap {
        x0,
        gamma,
        min_gap: f64::INFINITY,
        at: a,
    };
    for (t, x) in samples {
        let gap = spec.function.eval(x)? - f0 - gamma * (x - x0);
        if gap < best.min_gap {
            best.min_gap = gap;
            best.at = t;
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvexityProbe {
    pub convex: bool,
    /// First sampled pair `(u, v)` violating midpoint convexity.
    pub witness: Option<(f64, f64)>,
    pub pairs_checked: usize,
}

/// Samples pairs in `(c, d)` and tests `F((u+v)/2) <= (F(u) + F(v))/2 + 1e-12`.
///
/// Unbounded domains are probed on a window of width 2000. Passing the probe
/// is evidence, not proof, of convexity.
pub fn convexity_probe(spec: &ConvexSpec, samples: usize, seed: u64) -> Result<ConvexityProbe> {
    if samples < 3 {
        return Err(Error::InvalidInput(format!(
            "convexity probe needs at least 3 samples, got {samples}"
        )));
    }
    let (lo, hi) = match (spec.c.is_finite(), spec.d.is_finite()) {
        (true, true) => (spec.c, spec.d),
        (true, false) => (spec.c, spec.c + 2000.0),
        (false, true) => (spec.d - 2000.0, spec.d),
        (false, false) => (-1000.0, 1000.0),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = || loop {
        let x = rng.gen_range(lo..hi);
        if x > lo {
            return x;
        }
    };
    let f = &spec.function;
    for i in 0..samples {
        let (u, v) = (draw(), draw());
        let mid = f.eval(0.5 * (u + v))?;
        let chord = 0.5 * (f.eval(u)? + f.eval(v)?);
        if mid > chord + 1e-12 {
            return Ok(ConvexityProbe {
                convex: false,
                witness: Some((u, v)),
                pairs_checked: i + 1,
            });
        }
    }
    Ok(ConvexityProbe {
        convex: true,
        witness: None,
        pairs_checked: samples,
    })
}
