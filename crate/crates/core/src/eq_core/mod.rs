//! The equiconnected calculus.
//!
//! A connector `λ(x, y, t)` joins any two points of a space by a path with
//! `λ(x, y, 0) = x`, `λ(x, y, 1) = y` and `λ(x, x, t) = x`. Everything else in
//! this module is built from that single map: the n-point convex combination
//! `λ_n`, λ-sums over ordered weight families, iterated hulls and the
//! contractions used by the gluing operators.

mod combination;
mod connector;
mod contraction;
mod hull;
mod weights;

pub use combination::{convex_combination, lambda_sum};
pub use connector::{euclidean, AffineBox, ConnectorSpace, WarpedLine};
pub use contraction::Contraction;
pub use hull::{iterated_hull_contains, HullSearch, HullWitness};
pub use weights::{IndexKey, OrderedWeightFamily, SimplexWeights, WeightedEntry};
