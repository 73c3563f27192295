use serde::{Deserialize, Serialize};

/// An interval with independent open/closed ends.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    pub fn closed(lo: f64, hi: f64) -> Self {
        Self {
            lo,
            hi,
            lo_closed: true,
            hi_closed: true,
        }
    }

    /// `[lo, hi)`.
    pub fn half_open(lo: f64, hi: f64) -> Self {
        Self {
            lo,
            hi,
            lo_closed: true,
            hi_closed: false,
        }
    }

    pub fn open(lo: f64, hi: f64) -> Self {
        Self {
            lo,
            hi,
            lo_closed: false,
            hi_closed: false,
        }
    }

    pub fn contains(&self, v: f64) -> bool {
        let above = if self.lo_closed { v >= self.lo } else { v > self.lo };
        let below = if self.hi_closed { v <= self.hi } else { v < self.hi };
        above && below
    }
}

/// A box `∏ bounds[j]` in coordinates scaled by `scale`: `x` belongs to the
/// support iff `x[j] * scale ∈ bounds[j]` for every `j`.
///
/// Grid and tile families use `scale = n` so that membership is decided on
/// the same scaled coordinate `u = x·n` the bump itself is evaluated on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Support {
    pub scale: f64,
    pub bounds: Vec<Interval>,
}

impl Support {
    pub fn unscaled(bounds: Vec<Interval>) -> Self {
        Self { scale: 1.0, bounds }
    }

    pub fn scaled(scale: f64, bounds: Vec<Interval>) -> Self {
        Self { scale, bounds }
    }

    pub fn dim(&self) -> usize {
        self.bounds.len()
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.bounds.len()
            && x
                .iter()
                .zip(&self.bounds)
                .all(|(v, b)| b.contains(v * self.scale))
    }

    /// The same box in plain coordinates (endpoints divided by the scale).
    pub fn in_plain_coordinates(&self) -> Vec<Interval> {
        self.bounds
            .iter()
            .map(|b| Interval {
                lo: b.lo / self.scale,
                hi: b.hi / self.scale,
                ..*b
            })
            .collect()
    }
}
