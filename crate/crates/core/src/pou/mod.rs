//! Partitions of unity with exactly known supports, anchored schemes and
//! cover combinatorics.
//!
//! Supports are descriptors rather than predicates, and every bump is
//! evaluated with the same scaled arithmetic its support test uses, so
//! `x ∈ supp φ` and `φ(x) > 0` never disagree through rounding.

mod cover;
mod dense;
mod family;
mod quarter;
mod scheme;
mod support;

pub use cover::{disjointify, CoverCellPartition, CoverSet, Provenance};
pub use dense::DenseSet;
pub use family::{pointwise_finiteness, BumpFamily, ExplicitBump, SpaceKind};
pub use quarter::{quarter_strat_check, tail_oracle, QuarterProbe, QuarterReport};
pub use scheme::{grid_scheme, sorgenfrey_scheme, verify_anchoring, AnchoredScheme, SchemeSpec};
pub use support::{Interval, Support};
