//! Finite time scales: ordered unions of closed intervals and isolated points.
//!
//! A [`TimeScale`] is kept in a normal form (sorted, disjoint, strictly
//! separated components) so that equality, the jump operators and the point
//! classification are all well defined. Every query compares against the
//! stored endpoints exactly; no tolerance is applied, so callers should pass
//! endpoints obtained from the scale itself or interior points of intervals.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One building block of a time scale.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Component {
    /// Closed interval `[lo, hi]` with `lo < hi` once normalized.
    Interval(f64, f64),
    /// Isolated point.
    Point(f64),
}

impl Component {
    pub fn lo(&self) -> f64 {
        match *self {
            Component::Interval(lo, _) => lo,
            Component::Point(p) => p,
        }
    }

    pub fn hi(&self) -> f64 {
        match *self {
            Component::Interval(_, hi) => hi,
            Component::Point(p) => p,
        }
    }

    pub fn is_interval(&self) -> bool {
        matches!(self, Component::Interval(..))
    }

    fn contains(&self, t: f64) -> bool {
        self.lo() <= t && t <= self.hi()
    }
}

/// Raw component as it appears in a scale file, before normalization.
///
/// Serialized as `{"interval": [lo, hi]}` or `{"point": p}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RawComponent {
    Interval([f64; 2]),
    Point(f64),
}

/// Document form of a time scale: `{"components": [...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScaleSpec {
    pub components: Vec<RawComponent>,
}

impl ScaleSpec {
    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("scale spec serializes")
    }

    pub fn build(&self) -> Result<TimeScale> {
        TimeScale::build(&self.components)
    }
}

/// Point classification with respect to the jump operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointClass {
    pub right_dense: bool,
    pub right_scattered: bool,
    pub left_dense: bool,
    pub left_scattered: bool,
}

/// A nonempty, bounded, closed subset of the reals in normal form.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeScale {
    components: Vec<Component>,
}

impl TimeScale {
    /// Normalizes raw components: sorts them, collapses `[x, x]` to a point and
    /// merges anything that overlaps or touches.
    pub fn build(raw: &[RawComponent]) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::EmptyScale);
        }
        let mut parts = Vec::with_capacity(raw.len());
        for r in raw {
            let c = match *r {
                RawComponent::Point(p) => {
                    check_finite(p)?;
                    Component::Point(p)
                }
                RawComponent::Interval([lo, hi]) => {
                    check_finite(lo)?;
                    check_finite(hi)?;
                    if lo > hi {
                        return Err(Error::InvertedInterval { lo, hi });
                    }
                    if lo == hi {
                        Component::Point(lo)
                    } else {
                        Component::Interval(lo, hi)
                    }
                }
            };
            parts.push(c);
        }
        parts.sort_by(|x, y| x.lo().total_cmp(&y.lo()).then(x.hi().total_cmp(&y.hi())));

        let mut merged: Vec<Component> = Vec::with_capacity(parts.len());
        for c in parts {
            match merged.last_mut() {
                Some(last) if c.lo() <= last.hi() => {
                    let lo = last.lo();
                    let hi = last.hi().max(c.hi());
                    *last = if lo < hi {
                        Component::Interval(lo, hi)
                    } else {
                        Component::Point(lo)
                    };
                }
                _ => merged.push(c),
            }
        }
        Ok(TimeScale { components: merged })
    }

    /// Finite window of the integers, `{lo, lo+1, ..., hi}`.
    pub fn integers(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::BadBounds {
                a: lo as f64,
                b: hi as f64,
            });
        }
        Self::isolated((lo..=hi).map(|k| k as f64))
    }

    pub fn isolated<I: IntoIterator<Item = f64>>(points: I) -> Result<Self> {
        let raw: Vec<_> = points.into_iter().map(RawComponent::Point).collect();
        Self::build(&raw)
    }

    pub fn interval(lo: f64, hi: f64) -> Result<Self> {
        Self::build(&[RawComponent::Interval([lo, hi])])
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    /// Raw form of the normalized components; building from it yields `self`.
    pub fn to_spec(&self) -> ScaleSpec {
        ScaleSpec {
            components: self
                .components
                .iter()
                .map(|c| match *c {
                    Component::Interval(lo, hi) => RawComponent::Interval([lo, hi]),
                    Component::Point(p) => RawComponent::Point(p),
                })
                .collect(),
        }
    }

    pub fn min(&self) -> f64 {
        self.components[0].lo()
    }

    pub fn max(&self) -> f64 {
        self.components[self.components.len() - 1].hi()
    }

    /// Index of the component holding `t`, if any.
    pub fn locate(&self, t: f64) -> Option<usize> {
        if !t.is_finite() {
            return None;
        }
        let idx = self.components.partition_point(|c| c.lo() <= t);
        if idx == 0 {
            return None;
        }
        let i = idx - 1;
        self.components[i].contains(t).then_some(i)
    }

    pub fn contains(&self, t: f64) -> bool {
        self.locate(t).is_some()
    }

    fn require(&self, t: f64) -> Result<usize> {
        self.locate(t).ok_or(Error::NotMember(t))
    }

    /// Forward jump: least member strictly above `t`, or `t` at the maximum.
    pub fn sigma(&self, t: f64) -> Result<f64> {
        let i = self.require(t)?;
        let c = &self.components[i];
        if t < c.hi() {
            return Ok(t);
        }
        Ok(self.components.get(i + 1).map_or(t, Component::lo))
    }

    /// Backward jump: greatest member strictly below `t`, or `t` at the minimum.
    pub fn rho(&self, t: f64) -> Result<f64> {
        let i = self.require(t)?;
        let c = &self.components[i];
        if t > c.lo() {
            return Ok(t);
        }
        Ok(if i == 0 {
            t
        } else {
            self.components[i - 1].hi()
        })
    }

    /// Forward graininess `sigma(t) - t`.
    pub fn mu(&self, t: f64) -> Result<f64> {
        Ok(self.sigma(t)? - t)
    }

    /// Backward graininess `t - rho(t)`.
    pub fn nu(&self, t: f64) -> Result<f64> {
        Ok(t - self.rho(t)?)
    }

    pub fn classify(&self, t: f64) -> Result<PointClass> {
        let right_scattered = self.sigma(t)? > t;
        let left_scattered = self.rho(t)? < t;
        Ok(PointClass {
            right_dense: !right_scattered,
            right_scattered,
            left_dense: !left_scattered,
            left_scattered,
        })
    }

    fn check_bounds(&self, a: f64, b: f64) -> Result<()> {
        self.require(a)?;
        self.require(b)?;
        if a >= b {
            return Err(Error::BadBounds { a, b });
        }
        Ok(())
    }

    /// Upper end of `[a,b]^k`: `b` if left-dense, `rho(b)` otherwise.
    pub fn truncate_upper(&self, a: f64, b: f64) -> Result<f64> {
        self.check_bounds(a, b)?;
        self.rho(b)
    }

    /// Lower end of `[a,b]_k`: `a` if right-dense, `sigma(a)` otherwise.
    pub fn truncate_lower(&self, a: f64, b: f64) -> Result<f64> {
        self.check_bounds(a, b)?;
        self.sigma(a)
    }

    /// `(lower, upper)` bounds of `[a,b]^k_k`.
    pub fn truncate_both(&self, a: f64, b: f64) -> Result<(f64, f64)> {
        Ok((self.truncate_lower(a, b)?, self.truncate_upper(a, b)?))
    }

    /// Maximal dense pieces of `[a,b] ∩ T`, left to right, each with positive length.
    pub fn dense_segments(&self, a: f64, b: f64) -> Vec<(f64, f64)> {
        self.components
            .iter()
            .filter_map(|c| match *c {
                Component::Interval(lo, hi) => {
                    let (l, h) = (lo.max(a), hi.min(b));
                    (l < h).then_some((l, h))
                }
                Component::Point(_) => None,
            })
            .collect()
    }

    /// Right-scattered members `t` in `[a, b)` paired with `mu(t)`, left to right.
    pub fn right_scattered_between(&self, a: f64, b: f64) -> Vec<(f64, f64)> {
        self.components
            .windows(2)
            .filter_map(|w| {
                let t = w[0].hi();
                (a <= t && t < b).then(|| (t, w[1].lo() - t))
            })
            .collect()
    }

    /// Left-scattered members `t` in `(a, b]` paired with `nu(t)`, left to right.
    pub fn left_scattered_between(&self, a: f64, b: f64) -> Vec<(f64, f64)> {
        self.components
            .windows(2)
            .filter_map(|w| {
                let t = w[1].lo();
                (a < t && t <= b).then(|| (t, t - w[0].hi()))
            })
            .collect()
    }

    /// Every scattered member in `[a, b]` together with `a` and `b`, sorted and deduplicated.
    pub fn scattered_members(&self, a: f64, b: f64) -> Vec<f64> {
        let mut pts = vec![a, b];
        for w in self.components.windows(2) {
            for t in [w[0].hi(), w[1].lo()] {
                if a <= t && t <= b {
                    pts.push(t);
                }
            }
        }
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        pts
    }
}

fn check_finite(x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFiniteEndpoint(x))
    }
}
