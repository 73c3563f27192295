use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::eq_core::euclidean;
use crate::error::{Error, Result};
use crate::tolerance::{TAIL_EPS, TAIL_K};

/// Distance on approximant values.
pub trait Distance {
    fn distance(&self, other: &Self) -> f64;
}

impl Distance for f64 {
    fn distance(&self, other: &Self) -> f64 {
        if self == other {
            0.0
        } else {
            (self - other).abs()
        }
    }
}

impl Distance for Vec<f64> {
    fn distance(&self, other: &Self) -> f64 {
        if self == other {
            0.0
        } else {
            euclidean(self, other)
        }
    }
}

type Eval<Y, V> = Arc<dyn Fn(&Y) -> V + Send + Sync>;
type Levels<Y, V> = Arc<dyn Fn(usize) -> BaireTower<Y, V> + Send + Sync>;

/// A function together with an explicit witness of its Baire class.
///
/// Depth 0 is a continuous function. Depth `d ≥ 1` carries levels
/// `n ↦ tower(n)` of depth `d − 1` whose values converge pointwise to
/// `eval`. Depth is capped at 2.
pub struct BaireTower<Y, V> {
    depth: usize,
    limit: Eval<Y, V>,
    levels: Option<Levels<Y, V>>,
}

impl<Y, V> Clone for BaireTower<Y, V> {
    fn clone(&self) -> Self {
        Self {
            depth: self.depth,
            limit: Arc::clone(&self.limit),
            levels: self.levels.clone(),
        }
    }
}

impl<Y, V> fmt::Debug for BaireTower<Y, V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BaireTower").field("depth", &self.depth).finish()
    }
}

impl<Y: 'static, V: 'static> BaireTower<Y, V> {
    pub fn continuous(f: impl Fn(&Y) -> V + Send + Sync + 'static) -> Self {
        Self {
            depth: 0,
            limit: Arc::new(f),
            levels: None,
        }
    }

    /// `limit = lim_n levels(n)`; the depth is one more than that of `levels(1)`.
    pub fn limit_of(
        limit: impl Fn(&Y) -> V + Send + Sync + 'static,
        levels: impl Fn(usize) -> BaireTower<Y, V> + Send + Sync + 'static,
    ) -> Result<Self> {
        let depth = levels(1).depth + 1;
        if depth > 2 {
            return Err(Error::TowerDepth(depth));
        }
        Ok(Self {
            depth,
            limit: Arc::new(limit),
            levels: Some(Arc::new(levels)),
        })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn eval(&self, y: &Y) -> V {
        (self.limit)(y)
    }

    /// The `n`-th level, or `None` at depth 0.
    pub fn level(&self, n: usize) -> Option<BaireTower<Y, V>> {
        self.levels.as_ref().map(|l| l(n))
    }
}

/// Tail acceptance: the last `k` entries are within `eps` of the limit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailCriterion {
    pub eps: f64,
    pub k: usize,
}

impl Default for TailCriterion {
    fn default() -> Self {
        Self {
            eps: TAIL_EPS,
            k: TAIL_K,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TailReport<V> {
    pub terms: Vec<(usize, V)>,
    pub limit: V,
    pub gaps: Vec<f64>,
    pub final_gap: f64,
    pub pass: bool,
}

/// Applies `crit` to a finished term sequence. Fewer than `k` terms fail.
pub fn tail_check<V: Distance>(terms: Vec<(usize, V)>, limit: V, crit: TailCriterion) -> TailReport<V> {
    let gaps: Vec<f64> = terms.iter().map(|(_, v)| v.distance(&limit)).collect();
    let final_gap = gaps.last().copied().unwrap_or(f64::NAN);
    let pass = crit.k > 0
        && gaps.len() >= crit.k
        && gaps[gaps.len() - crit.k..].iter().all(|&g| g <= crit.eps);
    TailReport {
        terms,
        limit,
        gaps,
        final_gap,
        pass,
    }
}

/// Evaluates `tower(n)` at `y` along `schedule` and applies the tail
/// criterion against `tower.eval(y)`.
///
/// A depth-0 tower is treated as its own constant approximating sequence.
pub fn tower_tail<Y: 'static, V: Distance + Clone + 'static>(
    t: &BaireTower<Y, V>,
    y: &Y,
    schedule: &[usize],
    crit: TailCriterion,
) -> TailReport<V> {
    let limit = t.eval(y);
    let terms = schedule
        .iter()
        .map(|&n| {
            let v = match t.level(n) {
                Some(level) => level.eval(y),
                None => limit.clone(),
            };
            (n, v)
        })
        .collect();
    tail_check(terms, limit, crit)
}
