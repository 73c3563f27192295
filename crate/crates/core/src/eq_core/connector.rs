use std::fmt;

use crate::Point;

/// Euclidean distance between two coordinate vectors.
pub fn euclidean(x: &[f64], y: &[f64]) -> f64 {
    x.iter()
        .zip(y)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt()
}

/// A point universe together with an equiconnecting map `λ`.
///
/// Implementations must satisfy `connect(x, y, 0) = x`, `connect(x, y, 1) = y`
/// and `connect(x, x, t) = x`, and must map into the universe. `connect` is
/// only called with `t ∈ [0, 1]` and points for which `contains` holds.
pub trait ConnectorSpace: Send + Sync + fmt::Debug {
    fn name(&self) -> &str;

    /// Ambient coordinate count.
    fn dim(&self) -> usize;

    fn contains(&self, x: &[f64]) -> bool;

    fn connect(&self, x: &[f64], y: &[f64], t: f64) -> Point;

    fn metric(&self, x: &[f64], y: &[f64]) -> f64 {
        euclidean(x, y)
    }

    /// Declared, not checked: every neighborhood contains one whose
    /// iterated λ-hull stays inside it.
    fn locally_convex(&self) -> bool {
        false
    }
}

/// `λ(x, y, t) = (1 − t)x + ty` on a (possibly unbounded) box of `ℝ^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineBox {
    lo: Vec<f64>,
    hi: Vec<f64>,
}

impl AffineBox {
    /// Panics if `lo` and `hi` differ in length or some `lo[i] > hi[i]`.
    pub fn new(lo: Vec<f64>, hi: Vec<f64>) -> Self {
        assert_eq!(lo.len(), hi.len(), "box bounds differ in dimension");
        assert!(
            lo.iter().zip(&hi).all(|(a, b)| a <= b),
            "box lower bound exceeds upper bound"
        );
        Self { lo, hi }
    }

    pub fn unbounded(dim: usize) -> Self {
        Self::new(vec![f64::NEG_INFINITY; dim], vec![f64::INFINITY; dim])
    }

    pub fn cube(dim: usize, lo: f64, hi: f64) -> Self {
        Self::new(vec![lo; dim], vec![hi; dim])
    }

    pub fn lo(&self) -> &[f64] {
        &self.lo
    }

    pub fn hi(&self) -> &[f64] {
        &self.hi
    }
}

impl ConnectorSpace for AffineBox {
    fn name(&self) -> &str {
        "affine"
    }

    fn dim(&self) -> usize {
        self.lo.len()
    }

    fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && x
                .iter()
                .zip(self.lo.iter().zip(&self.hi))
                .all(|(v, (a, b))| v.is_finite() && *a <= *v && *v <= *b)
    }

    fn connect(&self, x: &[f64], y: &[f64], t: f64) -> Point {
        x.iter().zip(y).map(|(a, b)| (1.0 - t) * a + t * b).collect()
    }

    fn locally_convex(&self) -> bool {
        true
    }
}

/// A nonlinear equiconnection of the real line:
/// `λ(x, y, t) = h⁻¹((1 − t)h(x) + t·h(y))` with `h(u) = u³ + u`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct WarpedLine;

impl WarpedLine {
    pub fn warp(u: f64) -> f64 {
        u * u * u + u
    }

    /// Real root of `u³ + u = s`, Cardano followed by two Newton polishes.
    pub fn unwarp(s: f64) -> f64 {
        let half = 0.5 * s;
        let disc = (half * half + 1.0 / 27.0).sqrt();
        let mut u = (half + disc).cbrt() + (half - disc).cbrt();
        for _ in 0..2 {
            let residual = u * u * u + u - s;
            u -= residual / (3.0 * u * u + 1.0);
        }
        u
    }
}

impl ConnectorSpace for WarpedLine {
    fn name(&self) -> &str {
        "warped"
    }

    fn dim(&self) -> usize {
        1
    }

    fn contains(&self, x: &[f64]) -> bool {
        x.len() == 1 && x[0].is_finite()
    }

    fn connect(&self, x: &[f64], y: &[f64], t: f64) -> Point {
        // Endpoint and diagonal laws are exact; the round trip h⁻¹∘h is not.
        if t == 0.0 || x[0] == y[0] {
            return x.to_vec();
        }
        if t == 1.0 {
            return y.to_vec();
        }
        let s = (1.0 - t) * Self::warp(x[0]) + t * Self::warp(y[0]);
        vec![Self::unwarp(s)]
    }

    fn locally_convex(&self) -> bool {
        true
    }
}
