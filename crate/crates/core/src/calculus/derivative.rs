use super::{Alpha, CalcConfig, DerivativeKind};
use crate::error::{Error, Result};
use crate::function::FunctionHandle;
use crate::timescale::{Component, TimeScale};

#[derive(Clone, Copy, PartialEq)]
enum Direction {
    Right,
    Left,
}

/// Delta derivative at `t` in `[min, max]^k`.
///
/// Right-scattered points use the exact quotient `(f(sigma(t)) - f(t)) / mu(t)`.
/// Right-dense points use one-sided differences inside the dense segment,
/// refined by Richardson extrapolation over halving steps.
pub fn delta_derivative(
    ts: &TimeScale,
    f: &FunctionHandle,
    t: f64,
    cfg: &CalcConfig,
) -> Result<f64> {
    let (_, upper) = admissible_range(ts, t)?;
    if t > upper {
        return Err(Error::OutsideRange {
            t,
            lo: ts.min(),
            hi: upper,
        });
    }
    let next = ts.sigma(t)?;
    if next > t {
        return Ok((f.eval(next)? - f.eval(t)?) / (next - t));
    }
    dense_limit(ts, f, t, cfg, Direction::Right)
}

/// Nabla derivative at `t` in `[min, max]_k`; mirror of [`delta_derivative`].
pub fn nabla_derivative(
    ts: &TimeScale,
    f: &FunctionHandle,
    t: f64,
    cfg: &CalcConfig,
) -> Result<f64> {
    let (lower, _) = admissible_range(ts, t)?;
    if t < lower {
        return Err(Error::OutsideRange {
            t,
            lo: lower,
            hi: ts.max(),
        });
    }
    let prev = ts.rho(t)?;
    if prev < t {
        return Ok((f.eval(t)? - f.eval(prev)?) / (t - prev));
    }
    dense_limit(ts, f, t, cfg, Direction::Left)
}

/// `alpha * f^delta(t) + (1 - alpha) * f^nabla(t)` for `t` in `[min, max]^k_k`.
pub fn diamond_derivative(
    ts: &TimeScale,
    f: &FunctionHandle,
    t: f64,
    alpha: Alpha,
    cfg: &CalcConfig,
) -> Result<f64> {
    let d = delta_derivative(ts, f, t, cfg)?;
    let n = nabla_derivative(ts, f, t, cfg)?;
    let w = alpha.value();
    Ok(if w == 1.0 {
        d
    } else if w == 0.0 {
        n
    } else {
        w * d + (1.0 - w) * n
    })
}

pub fn derivative(
    ts: &TimeScale,
    f: &FunctionHandle,
    t: f64,
    kind: DerivativeKind,
    cfg: &CalcConfig,
) -> Result<f64> {
    match kind {
        DerivativeKind::Delta => delta_derivative(ts, f, t, cfg),
        DerivativeKind::Nabla => nabla_derivative(ts, f, t, cfg),
        DerivativeKind::Diamond(alpha) => diamond_derivative(ts, f, t, alpha, cfg),
    }
}

/// `([min,max]_k lower end, [min,max]^k upper end)` after checking membership.
fn admissible_range(ts: &TimeScale, t: f64) -> Result<(f64, f64)> {
    if !ts.contains(t) {
        return Err(Error::NotMember(t));
    }
    if ts.min() == ts.max() {
        return Err(Error::NoDenseNeighbourhood(t));
    }
    ts.truncate_both(ts.min(), ts.max())
}

fn dense_limit(
    ts: &TimeScale,
    f: &FunctionHandle,
    t: f64,
    cfg: &CalcConfig,
    preferred: Direction,
) -> Result<f64> {
    let idx = ts.locate(t).ok_or(Error::NotMember(t))?;
    let (lo, hi) = match ts.components()[idx] {
        Component::Interval(lo, hi) => (lo, hi),
        Component::Point(_) => return Err(Error::NoDenseNeighbourhood(t)),
    };
    let step = cfg.fd_initial_step * (hi - lo);
    let room_right = hi - t;
    let room_left = t - lo;
    let (preferred_room, other_room) = match preferred {
        Direction::Right => (room_right, room_left),
        Direction::Left => (room_left, room_right),
    };
    // Interior points of a dense segment have a two-sided limit, so the other
    // side is used when the preferred one is too short for a full step.
    let (dir, h) = if preferred_room >= step || (preferred_room > 0.0 && preferred_room >= other_room)
    {
        (preferred, step.min(preferred_room))
    } else if other_room > 0.0 {
        let other = match preferred {
            Direction::Right => Direction::Left,
            Direction::Left => Direction::Right,
        };
        (other, step.min(other_room))
    } else {
        return Err(Error::NoDenseNeighbourhood(t));
    };
    let sign = if dir == Direction::Right { 1.0 } else { -1.0 };

    let f0 = f.eval(t)?;
    let levels = cfg.fd_richardson_levels.max(2) as usize;
    let mut prev_row: Vec<f64> = Vec::with_capacity(levels);
    let mut diag = Vec::with_capacity(levels);
    let mut hk = h;
    for k in 0..levels {
        let s = t + sign * hk;
        let mut row = Vec::with_capacity(k + 1);
        row.push((f.eval(s)? - f0) / (s - t));
        let mut factor = 1.0;
        for j in 1..=k {
            factor *= 2.0;
            let r = row[j - 1] + (row[j - 1] - prev_row[j - 1]) / (factor - 1.0);
            row.push(r);
        }
        diag.push(row[k]);
        prev_row = row;
        hk *= 0.5;
    }
    let estimate = diag[levels - 1];
    let error = (diag[levels - 1] - diag[levels - 2]).abs();
    if !(error <= cfg.fd_tol.max(cfg.fd_tol * estimate.abs())) {
        return Err(Error::DerivativeNotConverged { t, estimate, error });
    }
    Ok(estimate)
}
