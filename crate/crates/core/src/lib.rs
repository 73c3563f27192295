//! Equiconnected convex combinations, anchored partitions of unity and
//! Baire-class approximation operators, checked numerically on small model
//! spaces.
//!
//! The crate is split the same way the constructions stack up:
//!
//! * [`eq_core`]: connectors `λ(x, y, t)`, the n-point convex combination
//!   `λ_n`, λ-sums over ordered weight families, iterated hulls, contractions.
//! * [`pou`]: exact-support partitions of unity, anchored schemes on the
//!   Euclidean grid and the Sorgenfrey line, cover disjointification.
//! * [`approx`]: the four approximation operators and depth-≤2 Baire towers.
//! * [`gallery`]: explicit counterexample functions and the spaces they live on.
//! * [`harness`]: JSON scenarios, convergence reports and the CLI driver.

// Negated comparisons reject NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod approx;
pub mod eq_core;
pub mod error;
pub mod gallery;
pub mod harness;
pub mod pou;
pub mod tolerance;

pub use error::{Error, Result};

/// A point of a coordinate model space.
pub type Point = Vec<f64>;
