use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::lemma81::{Lemma81, SupportData};
use super::tagged::{rational_enumeration, TaggedReal};

/// A finitely supported real sequence `(ξ_1, ξ_2, …)`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct FinSeq {
    entries: BTreeMap<usize, f64>,
}

impl FinSeq {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `(ξ_1, …, ξ_k, 0, 0, …)`.
    pub fn from_prefix(xs: &[f64]) -> Result<Self> {
        Self::from_entries(xs.iter().enumerate().map(|(i, v)| (i + 1, *v)))
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (usize, f64)>) -> Result<Self> {
        let mut out = Self::zero();
        for (i, v) in entries {
            out.set(i, v)?;
        }
        Ok(out)
    }

    pub fn set(&mut self, index: usize, value: f64) -> Result<()> {
        if index == 0 {
            return Err(Error::Parameter {
                name: "index",
                value: 0.0,
            });
        }
        if !value.is_finite() {
            return Err(Error::Parameter { name: "value", value });
        }
        if value == 0.0 {
            self.entries.remove(&index);
        } else {
            self.entries.insert(index, value);
        }
        Ok(())
    }

    pub fn get(&self, index: usize) -> f64 {
        self.entries.get(&index).copied().unwrap_or(0.0)
    }

    /// Largest index with a nonzero entry, 0 for the zero sequence.
    pub fn top(&self) -> usize {
        self.entries.keys().next_back().copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.entries.iter().map(|(i, v)| (*i, *v))
    }

    /// `M_m = max{|ξ_1|, …, |ξ_m|}`.
    pub fn prefix_max(&self, m: usize) -> f64 {
        self.entries.range(..=m).map(|(_, v)| v.abs()).fold(0.0, f64::max)
    }

    /// `max{|ξ_k| : k > m}`.
    pub fn tail_max(&self, m: usize) -> f64 {
        self.entries.range(m + 1..).map(|(_, v)| v.abs()).fold(0.0, f64::max)
    }

    pub fn sup_norm(&self) -> f64 {
        self.prefix_max(usize::MAX)
    }

    /// `(ξ_1, …, ξ_k)`.
    pub fn prefix(&self, k: usize) -> Vec<f64> {
        (1..=k).map(|i| self.get(i)).collect()
    }
}

/// The sets used to build the `ℝ^∞` example.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RinftySet {
    /// `F_n`: support in `1..=n` and `M_n ≤ 1/n`.
    F,
    /// `F̃_n`: `M_n ≤ 1/n`.
    FTilde,
    /// `G_n`: `M_n < 1/(n − 1/2)`.
    G,
    /// `H_n = ⋂_{m ≥ n} (⋃_{k=n}^m F_k ∪ F̃_m)`.
    H,
}

fn recip(m: usize) -> f64 {
    1.0 / m as f64
}

fn g_bound(n: usize) -> f64 {
    2.0 / (2 * n - 1) as f64
}

fn in_f(x: &FinSeq, n: usize) -> bool {
    x.top() <= n && x.prefix_max(n) <= recip(n)
}

fn in_f_tilde(x: &FinSeq, n: usize) -> bool {
    x.prefix_max(n) <= recip(n)
}

/// Smallest intersection depth that decides `x ∈ H_n`.
///
/// For `m ≥ max(n, top(x))` the `m`-th term of the intersection no longer
/// depends on `m`, so truncating there is exact.
pub fn h_cap(x: &FinSeq, n: usize) -> usize {
    n.max(x.top())
}

/// Membership in `F_n`, `F̃_n`, `G_n` or `H_n`.
///
/// For `H_n` the intersection is evaluated literally for `m ∈ [n, m_cap]`;
/// `m_cap` below [`h_cap`] is rejected. `m_cap` is ignored for other sets.
pub fn rinfty_membership(x: &FinSeq, n: usize, which: RinftySet, m_cap: usize) -> Result<bool> {
    if n == 0 {
        return Err(Error::Parameter {
            name: "n",
            value: 0.0,
        });
    }
    Ok(match which {
        RinftySet::F => in_f(x, n),
        RinftySet::FTilde => in_f_tilde(x, n),
        RinftySet::G => x.prefix_max(n) < g_bound(n),
        RinftySet::H => {
            let needed = h_cap(x, n);
            if m_cap < needed {
                return Err(Error::TruncationCap { needed, cap: m_cap });
            }
            let mut some_f = false;
            (n..=m_cap).all(|m| {
                some_f |= in_f(x, m);
                some_f || in_f_tilde(x, m)
            })
        }
    })
}

fn in_h(x: &FinSeq, n: usize) -> bool {
    rinfty_membership(x, n, RinftySet::H, h_cap(x, n)).expect("cap is sufficient")
}

/// A continuous defect `D_n ≥ 0` vanishing exactly on `H_n`.
///
/// `D_n = sup_{m ≥ n} min(d_m, (M_m − 1/m)⁺)` with
/// `d_m = min_{n ≤ k ≤ m} (tail_k + (M_k − 1/k)⁺)`; past `K = max(n, top)`
/// the supremum is `min(d_K, ‖x‖∞)`.
pub fn h_defect(x: &FinSeq, n: usize) -> f64 {
    let k_top = h_cap(x, n);
    let mut d_f = f64::INFINITY;
    let mut d: f64 = 0.0;
    for m in n..=k_top {
        let excess = (x.prefix_max(m) - recip(m)).max(0.0);
        d_f = d_f.min(x.tail_max(m) + excess);
        let term = if m < k_top {
            d_f.min(excess)
        } else {
            d_f.min(x.sup_norm())
        };
        d = d.max(term);
    }
    d
}

/// `φ_n = gap/(gap + D_n)` with `gap = (2/(2n − 1) − M_n)⁺`: equal to 1
/// exactly on `H_n` and to 0 exactly off `G_n`.
pub fn example2_phi(x: &FinSeq, n: usize) -> f64 {
    let gap = (g_bound(n) - x.prefix_max(n)).max(0.0);
    let defect = h_defect(x, n);
    if defect == 0.0 {
        return 1.0;
    }
    gap / (gap + defect)
}

/// `ψ = min(1, D_1)`, vanishing exactly on `F = H_1`.
pub fn example2_psi(x: &FinSeq) -> f64 {
    h_defect(x, 1).min(1.0)
}

/// `n₀(x)`: the first `n` with `x ∉ G_n`; then `x ∉ G_m` for all `m ≥ n`.
/// `None` for the zero sequence, which lies in every `G_n`.
pub fn truncation_index(x: &FinSeq) -> Option<usize> {
    if x.is_zero() {
        return None;
    }
    let out = |n: usize| x.prefix_max(n) >= g_bound(n);
    let top = x.top().max(1);
    if let Some(n) = (1..=top).find(|&n| out(n)) {
        return Some(n);
    }
    // Beyond the top index M_n is constant.
    let mut n = ((1.0 / x.sup_norm()) + 0.5).ceil().max(top as f64 + 1.0) as usize;
    while n > top + 1 && out(n - 1) {
        n -= 1;
    }
    while !out(n) {
        n += 1;
    }
    Some(n)
}

/// The `n`-th summand `f_n`: the two-variable function with
/// `a = r_n`, `F = H_1`, `H = H_n` and `G = G_n`.
pub fn example2_piece(n: usize) -> Result<Lemma81<FinSeq>> {
    let a = rational_enumeration(n)?;
    Ok(Lemma81::build(
        move |x: &FinSeq| example2_phi(x, n),
        example2_psi,
        a,
        SupportData::new(
            |x: &FinSeq| in_h(x, 1),
            move |x: &FinSeq| x.prefix_max(n) < g_bound(n),
            move |x: &FinSeq| in_h(x, n),
        ),
    ))
}

/// `f(x, y) = Σ_n f_n(x, y)`.
///
/// At `x = 0` this is the Dirichlet function of the tag of `y`. Otherwise
/// every `f_n` with `n ≥ n₀(x)` vanishes and the sum stops at `n₀`, which
/// must not exceed `cap`.
pub fn example2_eval(x: &FinSeq, y: &TaggedReal, cap: usize) -> Result<f64> {
    let Some(n0) = truncation_index(x) else {
        return Ok(if y.is_rational() { 1.0 } else { 0.0 });
    };
    if n0 > cap {
        return Err(Error::TruncationCap { needed: n0, cap });
    }
    let mut sum = 0.0;
    for n in 1..=n0 {
        sum += example2_piece(n)?.eval(x, y)?;
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(xs: &[f64]) -> FinSeq {
        FinSeq::from_prefix(xs).unwrap()
    }

    /// `x ∈ H_n` iff `M_m ≤ 1/m` for every `m ∈ [n, max(n, top)]`.
    fn h_closed_form(x: &FinSeq, n: usize) -> bool {
        (n..=n.max(x.top())).all(|m| x.prefix_max(m) <= 1.0 / m as f64)
    }

    #[test]
    fn finseq_drops_zeros() {
        let x = seq(&[0.0, 2.0, 0.0, -3.0, 0.0]);
        assert_eq!(x.top(), 4);
        assert_eq!(x.nonzero().count(), 2);
        assert_eq!(x.prefix_max(3), 2.0);
        assert_eq!(x.tail_max(2), 3.0);
        assert_eq!(x.prefix(5), vec![0.0, 2.0, 0.0, -3.0, 0.0]);
        assert!(FinSeq::from_entries([(0, 1.0)]).is_err());
    }

    #[test]
    fn membership_examples() {
        let zero = FinSeq::zero();
        for n in 1..20 {
            assert!(rinfty_membership(&zero, n, RinftySet::H, n).unwrap());
        }
        let e1 = seq(&[1.0]);
        assert!(rinfty_membership(&e1, 1, RinftySet::G, 0).unwrap());
        assert!(!rinfty_membership(&e1, 2, RinftySet::G, 0).unwrap());
        let near = seq(&[0.25 - 1e-9]);
        assert!(rinfty_membership(&near, 4, RinftySet::F, 0).unwrap());
        assert!(!rinfty_membership(&seq(&[0.1, 0.0, 0.1]), 2, RinftySet::F, 0).unwrap());
        assert!(matches!(
            rinfty_membership(&seq(&[0.0, 0.0, 0.1]), 1, RinftySet::H, 2),
            Err(Error::TruncationCap { needed: 3, cap: 2 })
        ));
    }

    #[test]
    fn h_matches_closed_form_and_larger_caps() {
        let cases = [
            seq(&[0.5, 0.3]),
            seq(&[0.5, 0.6]),
            seq(&[0.2, 0.0, 0.3]),
            seq(&[0.2, 0.0, 0.25, 0.25]),
            seq(&[1.0]),
            seq(&[0.0, 0.0, 0.0, 0.0, 0.2]),
        ];
        for x in &cases {
            for n in 1..8 {
                let cap = h_cap(x, n);
                let exact = rinfty_membership(x, n, RinftySet::H, cap).unwrap();
                assert_eq!(exact, h_closed_form(x, n), "{x:?} n={n}");
                let deep = rinfty_membership(x, n, RinftySet::H, cap + 25).unwrap();
                assert_eq!(exact, deep);
            }
        }
    }

    #[test]
    fn level_sets_of_phi_and_psi() {
        let samples = [
            FinSeq::zero(),
            seq(&[1.0]),
            seq(&[0.5]),
            seq(&[0.5, 0.5]),
            seq(&[0.3, 0.0, 1.0 / 3.0]),
            seq(&[0.6, 0.1]),
            seq(&[2.0 / 3.0]),
            seq(&[0.0, 0.0, 0.0, 0.1]),
            seq(&[-0.2, 0.2, -0.2, 0.2, 0.2]),
        ];
        for n in 1..6 {
            example2_piece(n).unwrap().validate(&samples).unwrap();
        }
    }

    #[test]
    fn truncation_index_examples() {
        assert_eq!(truncation_index(&FinSeq::zero()), None);
        assert_eq!(truncation_index(&seq(&[1.0])), Some(2));
        assert_eq!(truncation_index(&seq(&[3.0])), Some(1));
        let tiny = seq(&[0.0, 1e-6]);
        let n0 = truncation_index(&tiny).unwrap();
        assert!(tiny.prefix_max(n0) >= 2.0 / (2 * n0 - 1) as f64);
        assert!(tiny.prefix_max(n0 - 1) < 2.0 / (2 * n0 - 3) as f64);
    }

    #[test]
    fn dirichlet_section_at_zero() {
        let zero = FinSeq::zero();
        let r3 = rational_enumeration(3).unwrap();
        assert_eq!(example2_eval(&zero, &r3, 1).unwrap(), 1.0);
        assert_eq!(example2_eval(&zero, &TaggedReal::sqrt2(), 1).unwrap(), 0.0);
        assert_eq!(example2_eval(&zero, &TaggedReal::plain(0.5), 1).unwrap(), 0.0);
    }

    #[test]
    fn first_unit_vector() {
        let x = seq(&[1.0]);
        assert!(example2_eval(&x, &TaggedReal::sqrt2(), 1).is_err());
        for y in [TaggedReal::integer(0), TaggedReal::integer(1), TaggedReal::sqrt2()] {
            let direct = example2_piece(1).unwrap().eval(&x, &y).unwrap()
                + example2_piece(2).unwrap().eval(&x, &y).unwrap();
            assert_eq!(example2_eval(&x, &y, 2).unwrap(), direct);
        }
        // x ∈ H_1 = F, so f_1(x, ·) = χ_{r_1} and f_2(x, ·) = 0.
        assert_eq!(example2_eval(&x, &TaggedReal::integer(0), 2).unwrap(), 1.0);
        assert_eq!(example2_eval(&x, &TaggedReal::integer(1), 2).unwrap(), 0.0);
    }
}
