use crate::eq_core::euclidean;
use crate::error::{Error, Result};
use crate::Point;

/// A candidate `(x, (x_n))` with `x ∈ g(n, x_n)` for `n = 1, 2, …`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuarterProbe {
    pub x: Point,
    pub sequence: Vec<Point>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuarterReport {
    /// Whether the oracle accepted `x_n → x`, per probe.
    pub converges: Vec<bool>,
}

impl QuarterReport {
    pub fn all_converge(&self) -> bool {
        self.converges.iter().all(|&c| c)
    }
}

/// Witness check for a quarter-stratifying function: every probe satisfying
/// `x ∈ g(n, x_n)` should have `x_n → x` according to `converges`.
///
/// `g(n, center, x)` answers whether `x ∈ g(n, center)`. The sequence is
/// indexed from `n = 1`.
pub fn quarter_strat_check<G, C>(g: G, converges: C, probes: &[QuarterProbe]) -> Result<QuarterReport>
where
    G: Fn(usize, &[f64], &[f64]) -> bool,
    C: Fn(&[Point], &[f64]) -> bool,
{
    let mut out = Vec::with_capacity(probes.len());
    for (index, p) in probes.iter().enumerate() {
        for (k, xn) in p.sequence.iter().enumerate() {
            if !g(k + 1, xn, &p.x) {
                return Err(Error::ProbeHypothesis { index, n: k + 1 });
            }
        }
        out.push(converges(&p.sequence, &p.x));
    }
    Ok(QuarterReport { converges: out })
}

/// Euclidean tail oracle: the last `k` terms lie within `eps` of the limit.
pub fn tail_oracle(eps: f64, k: usize) -> impl Fn(&[Point], &[f64]) -> bool {
    move |seq, x| {
        seq.len() >= k && seq[seq.len() - k..].iter().all(|p| euclidean(p, x) <= eps)
    }
}
