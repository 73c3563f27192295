//! Independent oracles and generators shared by the integration tests.
#![allow(dead_code)]

use eqbaire::eq_core::ConnectorSpace;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// `λ_n` by literal recursion on the first two entries.
pub fn recursive_lambda(space: &dyn ConnectorSpace, points: &[Vec<f64>], w: &[f64]) -> Vec<f64> {
    if points.len() == 1 {
        return points[0].clone();
    }
    let s = w[0] + w[1];
    let (head, hw) = if s > 0.0 {
        (space.connect(&points[0], &points[1], w[1] / s), s)
    } else {
        (points[1].clone(), w[1])
    };
    let mut rest = vec![head];
    rest.extend_from_slice(&points[2..]);
    let mut rw = vec![hw];
    rw.extend_from_slice(&w[2..]);
    recursive_lambda(space, &rest, &rw)
}

/// `Σ α_i x_i`.
pub fn affine_sum(points: &[Vec<f64>], w: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; points[0].len()];
    for (p, a) in points.iter().zip(w) {
        for (o, c) in out.iter_mut().zip(p) {
            *o += a * c;
        }
    }
    out
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

pub fn random_point(rng: &mut ChaCha8Rng, dim: usize, scale: f64) -> Vec<f64> {
    (0..dim).map(|_| rng.gen_range(-scale..scale)).collect()
}

/// Random simplex weights; with `zeros`, each coordinate is zeroed with
/// probability 1/3 (at least one stays positive).
pub fn random_weights(rng: &mut ChaCha8Rng, n: usize, zeros: bool) -> Vec<f64> {
    loop {
        let raw: Vec<f64> = (0..n)
            .map(|_| {
                if zeros && rng.gen_range(0..3) == 0 {
                    0.0
                } else {
                    rng.gen_range(0.0..1.0)
                }
            })
            .collect();
        let s: f64 = raw.iter().sum();
        if s > 1e-3 {
            return raw.iter().map(|v| v / s).collect();
        }
    }
}
