use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::eq_core::IndexKey;
use crate::error::{Error, Result};
use crate::Point;

use super::support::Support;

type Membership = dyn Fn(&[f64]) -> bool + Send + Sync;

/// A keyed set given by its membership predicate.
#[derive(Clone)]
pub struct CoverSet {
    pub key: IndexKey,
    contains: Arc<Membership>,
}

impl CoverSet {
    pub fn new(
        key: impl Into<IndexKey>,
        contains: impl Fn(&[f64]) -> bool + Send + Sync + 'static,
    ) -> Self {
        Self {
            key: key.into(),
            contains: Arc::new(contains),
        }
    }

    pub fn from_support(key: impl Into<IndexKey>, support: Support) -> Self {
        Self::new(key, move |x| support.contains(x))
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        (self.contains)(x)
    }
}

impl fmt::Debug for CoverSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoverSet").field("key", &self.key).finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Cells `A_k = G_k ∖ ⋃_{j<k} G_j` of an ordered cover.
    Disjointified,
    /// Cells given directly; they are trusted to be pairwise disjoint.
    Supplied,
}

/// An ordered family of pairwise disjoint cells.
#[derive(Debug, Clone)]
pub struct CoverCellPartition {
    sets: Vec<CoverSet>,
    provenance: Provenance,
}

impl CoverCellPartition {
    /// Cells supplied directly; [`validate`](Self::validate) checks disjointness
    /// on samples.
    pub fn supplied(cells: Vec<CoverSet>) -> Self {
        Self {
            sets: cells,
            provenance: Provenance::Supplied,
        }
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn keys(&self) -> impl Iterator<Item = &IndexKey> {
        self.sets.iter().map(|s| &s.key)
    }

    /// Whether `x` lies in the cell at position `pos`.
    pub fn cell_contains(&self, pos: usize, x: &[f64]) -> bool {
        match self.provenance {
            Provenance::Disjointified => {
                self.sets[pos].contains(x) && !self.sets[..pos].iter().any(|g| g.contains(x))
            }
            Provenance::Supplied => self.sets[pos].contains(x),
        }
    }

    /// Key of the cell containing `x`.
    pub fn cell_of(&self, x: &[f64]) -> Result<&IndexKey> {
        // For disjointified cells the first containing set is the cell.
        self.sets
            .iter()
            .find(|g| g.contains(x))
            .map(|g| &g.key)
            .ok_or_else(|| Error::Uncovered(x.to_vec()))
    }

    /// Every sample lies in exactly one cell.
    pub fn validate(&self, samples: &[Point]) -> Result<()> {
        for x in samples {
            let hits: Vec<usize> = (0..self.sets.len())
                .filter(|&p| self.cell_contains(p, x))
                .collect();
            match hits.as_slice() {
                [] => return Err(Error::Uncovered(x.clone())),
                [_] => {}
                [a, b, ..] => {
                    return Err(Error::NotDiscrete {
                        first: self.sets[*a].key.to_string(),
                        second: self.sets[*b].key.to_string(),
                        x: x.clone(),
                    })
                }
            }
        }
        Ok(())
    }
}

/// Turns an ordered cover `(G_k)` into the disjoint cells
/// `A_k = G_k ∖ ⋃_{j<k} G_j`. The cover condition is checked on `samples`.
pub fn disjointify(cover: Vec<CoverSet>, samples: &[Point]) -> Result<CoverCellPartition> {
    if let Some(x) = samples.iter().find(|x| !cover.iter().any(|g| g.contains(x))) {
        return Err(Error::Uncovered(x.clone()));
    }
    Ok(CoverCellPartition {
        sets: cover,
        provenance: Provenance::Disjointified,
    })
}
