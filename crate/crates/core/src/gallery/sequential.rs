use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::approx::BaireTower;
use crate::error::{Error, Result};

use super::tagged::{rational_index, rationals, TaggedReal};

/// The Dirichlet function as a depth-2 tower.
///
/// * `g(y) = 1` iff `y` is tagged rational;
/// * `g_n = 1_{r_1, …, r_n}` (exact via the tag);
/// * `g_{n,m}(y) = min(1, Σ_{k ≤ n} max(0, 1 − m·|y − r_k|))`.
pub fn dirichlet_tower() -> BaireTower<TaggedReal, f64> {
    BaireTower::limit_of(
        |y: &TaggedReal| if y.is_rational() { 1.0 } else { 0.0 },
        |n| {
            let nodes: Arc<Vec<f64>> = Arc::new(rationals(n).iter().map(TaggedReal::value).collect());
            BaireTower::limit_of(
                move |y: &TaggedReal| match rational_index(y) {
                    Some(k) if k <= n => 1.0,
                    _ => 0.0,
                },
                move |m| {
                    let nodes = Arc::clone(&nodes);
                    BaireTower::continuous(move |y: &TaggedReal| {
                        let s: f64 = nodes
                            .iter()
                            .map(|r| (1.0 - m as f64 * (y.value() - r).abs()).max(0.0))
                            .sum();
                        s.min(1.0)
                    })
                },
            )
            .expect("depth 1")
        },
    )
    .expect("depth 2")
}

/// A point of `X = {0} ∪ ⋃_n X_n` with `X_n = {1/n} ∪ {1/n + 1/m : m ≥ n²}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SequentialPoint {
    Origin,
    /// `1/n`.
    Level { n: usize },
    /// `1/n + 1/m`, isolated.
    Leaf { n: usize, m: usize },
}

impl SequentialPoint {
    pub fn level(n: usize) -> Result<Self> {
        let p = Self::Level { n };
        p.validate()?;
        Ok(p)
    }

    pub fn leaf(n: usize, m: usize) -> Result<Self> {
        let p = Self::Leaf { n, m };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Self::Origin => Ok(()),
            Self::Level { n } if n >= 1 => Ok(()),
            Self::Leaf { n, m } if n >= 1 && m >= n * n => Ok(()),
            _ => Err(Error::SequentialPoint(self.to_string())),
        }
    }

    /// The real coordinate.
    pub fn coordinate(&self) -> f64 {
        match *self {
            Self::Origin => 0.0,
            Self::Level { n } => 1.0 / n as f64,
            Self::Leaf { n, m } => 1.0 / n as f64 + 1.0 / m as f64,
        }
    }

    fn level_index(&self) -> Option<usize> {
        match *self {
            Self::Origin => None,
            Self::Level { n } | Self::Leaf { n, .. } => Some(n),
        }
    }
}

impl fmt::Display for SequentialPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Origin => f.write_str("origin"),
            Self::Level { n } => write!(f, "level({n})"),
            Self::Leaf { n, m } => write!(f, "leaf({n},{m})"),
        }
    }
}

/// A basic open set, with every finite exclusion listed explicitly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BasicNeighborhood {
    Leaf { n: usize, m: usize },
    /// `X_n` minus the leaves `1/n + 1/m` with `m ≤ through`.
    Level { n: usize, through: usize },
    /// `X` minus the listed levels and the listed leaves.
    Origin {
        levels: BTreeSet<usize>,
        leaves: BTreeSet<(usize, usize)>,
    },
}

impl BasicNeighborhood {
    pub fn contains(&self, p: &SequentialPoint) -> bool {
        match (self, *p) {
            (Self::Leaf { n, m }, SequentialPoint::Leaf { n: a, m: b }) => (*n, *m) == (a, b),
            (Self::Leaf { .. }, _) => false,
            (Self::Level { n, .. }, SequentialPoint::Level { n: a }) => *n == a,
            (Self::Level { n, through }, SequentialPoint::Leaf { n: a, m }) => *n == a && m > *through,
            (Self::Level { .. }, SequentialPoint::Origin) => false,
            (Self::Origin { .. }, SequentialPoint::Origin) => true,
            (Self::Origin { levels, .. }, SequentialPoint::Level { n }) => !levels.contains(&n),
            (Self::Origin { levels, leaves }, SequentialPoint::Leaf { n, m }) => {
                !levels.contains(&n) && !leaves.contains(&(n, m))
            }
        }
    }
}

/// Decides convergence of a finite sequence to `target`.
///
/// The first half of `seq` is burn-in. From it (and, for the origin, from
/// the leaves of the whole sequence) the smallest admissible basic
/// neighborhood avoiding those terms is built; the sequence converges when
/// every term of the second half lies in it.
pub fn sequential_convergence_probe(target: &SequentialPoint, seq: &[SequentialPoint]) -> Result<bool> {
    target.validate()?;
    for p in seq {
        p.validate()?;
    }
    if seq.is_empty() {
        return Ok(false);
    }
    let (burn, tail) = seq.split_at(seq.len() / 2);
    let nbhd = match *target {
        SequentialPoint::Leaf { n, m } => BasicNeighborhood::Leaf { n, m },
        SequentialPoint::Level { n } => {
            let through = burn
                .iter()
                .filter_map(|p| match *p {
                    SequentialPoint::Leaf { n: a, m } if a == n => Some(m),
                    _ => None,
                })
                .max()
                .unwrap_or(n * n - 1);
            BasicNeighborhood::Level { n, through }
        }
        SequentialPoint::Origin => {
            let top = burn.iter().filter_map(SequentialPoint::level_index).max().unwrap_or(0);
            let leaves = seq
                .iter()
                .filter_map(|p| match *p {
                    SequentialPoint::Leaf { n, m } => Some((n, m)),
                    _ => None,
                })
                .collect();
            BasicNeighborhood::Origin {
                levels: (1..=top).collect(),
                leaves,
            }
        }
    };
    Ok(tail.iter().all(|p| nbhd.contains(p)))
}

/// `f(x_0, y) = g(y)`, `f(x_n, y) = g_n(y)`, `f(x_{nm}, y) = g_{nm}(y)` for
/// the tower `g`.
pub fn example1_eval_with(tower: &BaireTower<TaggedReal, f64>, x: &SequentialPoint, y: &TaggedReal) -> Result<f64> {
    x.validate()?;
    let need = |t: Option<BaireTower<TaggedReal, f64>>| t.ok_or(Error::TowerDepth(0));
    Ok(match *x {
        SequentialPoint::Origin => tower.eval(y),
        SequentialPoint::Level { n } => need(tower.level(n))?.eval(y),
        SequentialPoint::Leaf { n, m } => need(need(tower.level(n))?.level(m))?.eval(y),
    })
}

/// [`example1_eval_with`] on [`dirichlet_tower`].
pub fn example1_eval(x: &SequentialPoint, y: &TaggedReal) -> Result<f64> {
    example1_eval_with(&dirichlet_tower(), x, y)
}
