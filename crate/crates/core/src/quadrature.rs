//! Adaptive Simpson quadrature for the dense pieces of a time scale.

use crate::error::{Error, Result};
use crate::expr::EvalError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_depth: u32,
    pub max_evals: u64,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_depth: 40,
            max_evals: 10_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evals: u64,
    /// Deepest subdivision level that was needed; 0 means the first Simpson
    /// comparison already met the tolerance.
    pub depth: u32,
}

struct Sampler<'a, F> {
    f: &'a mut F,
    evals: u64,
    budget: u64,
    max_depth: u32,
    deepest: u32,
}

impl<F> Sampler<'_, F>
where
    F: FnMut(f64) -> std::result::Result<f64, EvalError>,
{
    fn eval(&mut self, t: f64) -> Result<f64> {
        if self.evals >= self.budget {
            return Err(Error::EvalBudget(self.budget));
        }
        self.evals += 1;
        Ok((self.f)(t)?)
    }

    #[allow(clippy::too_many_arguments)]
    fn refine(
        &mut self,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        eps: f64,
        depth: u32,
    ) -> Result<(f64, f64)> {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = self.eval(lm)?;
        let frm = self.eval(rm)?;
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let diff = left + right - whole;
        self.deepest = self.deepest.max(depth);
        // midpoints no longer representable: nothing left to refine
        let exhausted = !(a < lm && lm < m && m < rm && rm < b);
        if diff.abs() <= 15.0 * eps || exhausted {
            return Ok((left + right + diff / 15.0, diff.abs() / 15.0));
        }
        if depth >= self.max_depth {
            return Err(Error::QuadratureDepth {
                lo: a,
                hi: b,
                local_error: diff.abs() / 15.0,
            });
        }
        let (lv, le) = self.refine(a, m, fa, flm, fm, left, 0.5 * eps, depth + 1)?;
        let (rv, re) = self.refine(m, b, fm, frm, fb, right, 0.5 * eps, depth + 1)?;
        Ok((lv + rv, le + re))
    }
}

/// Integrates `f` over `[lo, hi]` until the estimated error is within
/// `max(abs_tol, rel_tol * |value|)`.
pub fn adaptive_simpson<F>(mut f: F, lo: f64, hi: f64, opts: &QuadOptions) -> Result<QuadResult>
where
    F: FnMut(f64) -> std::result::Result<f64, EvalError>,
{
    if !(lo <= hi) {
        return Err(Error::BadBounds { a: lo, b: hi });
    }
    if lo == hi {
        return Ok(QuadResult {
            value: 0.0,
            error_estimate: 0.0,
            evals: 0,
            depth: 0,
        });
    }
    let mut s = Sampler {
        f: &mut f,
        evals: 0,
        budget: opts.max_evals,
        max_depth: opts.max_depth,
        deepest: 0,
    };
    let m = 0.5 * (lo + hi);
    let fa = s.eval(lo)?;
    let fm = s.eval(m)?;
    let fb = s.eval(hi)?;
    let whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);

    // The relative target needs a magnitude; start from the coarse estimate
    // and tighten once if the converged value turns out smaller.
    let mut scale = whole.abs();
    let mut attempt = 0;
    loop {
        s.deepest = 0;
        let target = opts.abs_tol.max(opts.rel_tol * scale);
        let (value, err) = s.refine(lo, hi, fa, fm, fb, whole, target, 0)?;
        let achieved = opts.abs_tol.max(opts.rel_tol * value.abs());
        attempt += 1;
        if err <= achieved || attempt >= 2 {
            return Ok(QuadResult {
                value,
                error_estimate: err,
                evals: s.evals,
                depth: s.deepest,
            });
        }
        scale = value.abs();
    }
}
