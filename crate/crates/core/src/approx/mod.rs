//! Approximation operators and Baire towers.
//!
//! Each operator produces a sequence of approximants `f_n(x, y)` whose
//! pointwise limit is the target two-variable function:
//!
//! | operator                | construction                                          |
//! |-------------------------|-------------------------------------------------------|
//! | [`LambdaBlend`]         | `Σ^λ φ_{i,n}(x) f(x_{i,n}, y)` over an anchored scheme |
//! | [`PiecewiseAnchor`]     | `f(x_{i(s),n}, y)` on the disjoint cell `A_{s,n} ∋ x`   |
//! | [`contractible_glue`]   | `γ(g_i(y), 1 − φ_i(x))` on a discrete family of bumps   |
//! | [`AmbiguousLimit`]      | glue over exhaustions `F_{s,n} ⊆ U_{s,n}` of each cell  |
//!
//! Convergence is only ever sampled: [`TailCriterion`] accepts a sequence
//! when its last `k` schedule entries lie within `eps` of the limit.

mod blend;
mod glue;
mod piecewise;
mod sectioned;
mod tower;

pub use blend::{lambda_blend, lambda_blend_family, LambdaBlend};
pub use glue::{
    contractible_glue, two_cell_instance, AmbiguousLimit, AmbiguousPiece, GlueBump,
};
pub use piecewise::{piecewise_anchor, tile_cells, PiecewiseAnchor};
pub use sectioned::SectionedFunction;
pub use tower::{tail_check, tower_tail, BaireTower, Distance, TailCriterion, TailReport};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::Point;

/// Which construction produced an approximant sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ApproximantKind {
    LambdaBlend,
    PiecewiseAnchor,
    ContractibleGlue,
    AmbiguousLimit,
}

/// A sequence `n ↦ f_n` of two-variable maps into a coordinate space.
pub trait ApproximantSequence<Y>: Send + Sync {
    fn kind(&self) -> ApproximantKind;

    fn term(&self, n: usize, x: &[f64], y: &Y) -> Result<Point>;
}

/// Second-variable values that carry a real coordinate.
pub trait RealValued {
    fn real(&self) -> f64;
}

impl RealValued for f64 {
    fn real(&self) -> f64 {
        *self
    }
}
