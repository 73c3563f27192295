//! Numeric tolerances shared across modules.

/// Identities that hold exactly in real arithmetic and only pick up rounding
/// in f64 (partition sums, connector endpoint laws, affine oracle agreement).
pub const EXACT: f64 = 1e-12;

/// Weight vectors whose sum is within this distance of 1 are renormalized;
/// anything worse is rejected.
pub const RENORMALIZE: f64 = 1e-9;

/// Distance at which an iterated-hull search accepts a witness.
pub const HULL_HIT: f64 = 1e-9;

/// Default tail tolerance for convergence checks.
pub const TAIL_EPS: f64 = 1e-3;

/// Default number of trailing schedule entries the tail criterion inspects.
pub const TAIL_K: usize = 3;

/// Default schedule `1, 2, 4, ..., 256`.
pub fn default_schedule() -> Vec<usize> {
    (0..=8).map(|k| 1usize << k).collect()
}
