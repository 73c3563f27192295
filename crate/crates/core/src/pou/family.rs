use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::eq_core::IndexKey;

use super::support::{Interval, Support};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpaceKind {
    EuclideanGrid,
    Sorgenfrey,
    Abstract,
}

type BumpFn = dyn Fn(&[f64]) -> f64 + Send + Sync;

/// A user-supplied bump with a declared support.
#[derive(Clone)]
pub struct ExplicitBump {
    pub key: IndexKey,
    pub support: Support,
    eval: Arc<BumpFn>,
}

impl ExplicitBump {
    pub fn new(
        key: impl Into<IndexKey>,
        support: Support,
        eval: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            key: key.into(),
            support,
            eval: Arc::new(eval),
        }
    }
}

impl fmt::Debug for ExplicitBump {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ExplicitBump")
            .field("key", &self.key)
            .field("support", &self.support)
            .finish()
    }
}

#[derive(Debug, Clone)]
enum Shape {
    /// Products of hat functions `max(0, 1 − |x_j·n − k_j|)` with closed
    /// supports `|x_j·n − k_j| ≤ 1`; `ranges` bound the node indices per axis.
    Tent { n: usize, ranges: Vec<(i64, i64)> },
    /// Indicators of `[(i−1)/n, i/n)` for `i` in `range`.
    Tile { n: usize, range: (i64, i64) },
    Explicit(Vec<ExplicitBump>),
}

/// A finite, locally finite family of bumps `φ_i` indexed by ordered keys.
///
/// Grid and tile families store only their index ranges; keys and supports
/// are generated on demand.
#[derive(Debug, Clone)]
pub struct BumpFamily {
    shape: Shape,
    keep: Option<Arc<BTreeSet<IndexKey>>>,
}

impl BumpFamily {
    pub fn tent(n: usize, ranges: Vec<(i64, i64)>) -> Self {
        Self {
            shape: Shape::Tent { n, ranges },
            keep: None,
        }
    }

    pub fn tile(n: usize, range: (i64, i64)) -> Self {
        Self {
            shape: Shape::Tile { n, range },
            keep: None,
        }
    }

    /// Explicit bumps; they are reordered by key.
    pub fn explicit(mut bumps: Vec<ExplicitBump>) -> Self {
        bumps.sort_by(|a, b| a.key.cmp(&b.key));
        Self {
            shape: Shape::Explicit(bumps),
            keep: None,
        }
    }

    pub fn space_kind(&self) -> SpaceKind {
        match self.shape {
            Shape::Tent { .. } => SpaceKind::EuclideanGrid,
            Shape::Tile { .. } => SpaceKind::Sorgenfrey,
            Shape::Explicit(_) => SpaceKind::Abstract,
        }
    }

    /// Mesh parameter `n` of a grid or tile family.
    pub fn mesh(&self) -> Option<usize> {
        match self.shape {
            Shape::Tent { n, .. } | Shape::Tile { n, .. } => Some(n),
            Shape::Explicit(_) => None,
        }
    }

    /// The same family restricted to the keys accepted by `keep`.
    ///
    /// The result is generally no longer a partition of unity.
    pub fn subfamily(&self, keep: impl Fn(&IndexKey) -> bool) -> Self {
        let kept: BTreeSet<IndexKey> = self.keys().filter(|k| keep(k)).collect();
        Self {
            shape: self.shape.clone(),
            keep: Some(Arc::new(kept)),
        }
    }

    fn kept(&self, key: &IndexKey) -> bool {
        self.keep.as_ref().is_none_or(|s| s.contains(key))
    }

    fn in_shape(&self, key: &IndexKey) -> bool {
        match &self.shape {
            Shape::Tent { ranges, .. } => {
                key.0.len() == ranges.len()
                    && key.0.iter().zip(ranges).all(|(k, (a, b))| a <= k && k <= b)
            }
            Shape::Tile { range, .. } => key.0.len() == 1 && range.0 <= key.0[0] && key.0[0] <= range.1,
            Shape::Explicit(bumps) => bumps.binary_search_by(|b| b.key.cmp(key)).is_ok(),
        }
    }

    pub fn has_key(&self, key: &IndexKey) -> bool {
        self.in_shape(key) && self.kept(key)
    }

    /// All keys in increasing order.
    pub fn keys(&self) -> Box<dyn Iterator<Item = IndexKey> + '_> {
        let it: Box<dyn Iterator<Item = IndexKey> + '_> = match &self.shape {
            Shape::Tent { ranges, .. } => {
                let axes: Vec<Vec<i64>> = ranges.iter().map(|&(a, b)| (a..=b).collect()).collect();
                Box::new(cartesian(&axes).into_iter().map(IndexKey))
            }
            Shape::Tile { range, .. } => Box::new((range.0..=range.1).map(IndexKey::single)),
            Shape::Explicit(bumps) => Box::new(bumps.iter().map(|b| b.key.clone())),
        };
        Box::new(it.filter(move |k| self.kept(k)))
    }

    pub fn support(&self, key: &IndexKey) -> Option<Support> {
        if !self.has_key(key) {
            return None;
        }
        Some(match &self.shape {
            Shape::Tent { n, .. } => Support::scaled(
                *n as f64,
                key.0
                    .iter()
                    .map(|&k| Interval::closed((k - 1) as f64, (k + 1) as f64))
                    .collect(),
            ),
            Shape::Tile { n, .. } => {
                let i = key.0[0];
                Support::scaled(*n as f64, vec![Interval::half_open((i - 1) as f64, i as f64)])
            }
            Shape::Explicit(bumps) => bumps
                .iter()
                .find(|b| &b.key == key)
                .map(|b| b.support.clone())?,
        })
    }

    /// `φ_key(x)`; exactly zero outside the declared support and for keys
    /// not in the family.
    pub fn eval(&self, key: &IndexKey, x: &[f64]) -> f64 {
        if !self.has_key(key) {
            return 0.0;
        }
        match &self.shape {
            Shape::Tent { n, .. } => {
                if x.len() != key.0.len() {
                    return 0.0;
                }
                let scale = *n as f64;
                let mut v = 1.0;
                for (xj, &k) in x.iter().zip(&key.0) {
                    let u = xj * scale;
                    let k = k as f64;
                    if u < k - 1.0 || u > k + 1.0 {
                        return 0.0;
                    }
                    v *= (1.0 - (u - k).abs()).max(0.0);
                }
                v
            }
            Shape::Tile { n, .. } => {
                let i = key.0[0] as f64;
                match x {
                    [v] => {
                        let u = v * *n as f64;
                        if i - 1.0 <= u && u < i {
                            1.0
                        } else {
                            0.0
                        }
                    }
                    _ => 0.0,
                }
            }
            Shape::Explicit(bumps) => {
                let b = bumps.iter().find(|b| &b.key == key).expect("key checked");
                if b.support.contains(x) {
                    (b.eval)(x)
                } else {
                    0.0
                }
            }
        }
    }

    /// Keys whose support contains `x`, increasing.
    pub fn support_keys(&self, x: &[f64]) -> Vec<IndexKey> {
        let candidates: Vec<IndexKey> = match &self.shape {
            Shape::Tent { n, ranges } => {
                if x.len() != ranges.len() {
                    return Vec::new();
                }
                let scale = *n as f64;
                let axes: Vec<Vec<i64>> = x
                    .iter()
                    .zip(ranges)
                    .map(|(xj, &(a, b))| {
                        let u = xj * scale;
                        let lo = ((u - 1.0).ceil() as i64 - 1).max(a);
                        let hi = ((u + 1.0).floor() as i64 + 1).min(b);
                        (lo..=hi)
                            .filter(|&k| {
                                let k = k as f64;
                                k - 1.0 <= u && u <= k + 1.0
                            })
                            .collect()
                    })
                    .collect();
                cartesian(&axes).into_iter().map(IndexKey).collect()
            }
            Shape::Tile { n, range } => match x {
                [v] => {
                    let i = (v * *n as f64).floor() as i64 + 1;
                    if range.0 <= i && i <= range.1 {
                        vec![IndexKey::single(i)]
                    } else {
                        Vec::new()
                    }
                }
                _ => Vec::new(),
            },
            Shape::Explicit(bumps) => bumps
                .iter()
                .filter(|b| b.support.contains(x))
                .map(|b| b.key.clone())
                .collect(),
        };
        candidates.into_iter().filter(|k| self.kept(k)).collect()
    }

    /// `(key, φ_key(x))` for every key with `φ_key(x) > 0`, increasing.
    pub fn active(&self, x: &[f64]) -> Vec<(IndexKey, f64)> {
        self.support_keys(x)
            .into_iter()
            .filter_map(|k| {
                let v = self.eval(&k, x);
                (v > 0.0).then_some((k, v))
            })
            .collect()
    }

    /// `Σ_key φ_key(x)`.
    pub fn sum_at(&self, x: &[f64]) -> f64 {
        self.active(x).iter().map(|(_, v)| v).sum()
    }
}

fn cartesian(axes: &[Vec<i64>]) -> Vec<Vec<i64>> {
    axes.iter().fold(vec![Vec::new()], |acc, axis| {
        acc.iter()
            .flat_map(|prefix| {
                axis.iter().map(move |&k| {
                    let mut v = prefix.clone();
                    v.push(k);
                    v
                })
            })
            .collect()
    })
}

/// `k_x = max_n #{i : x ∈ supp φ_{i,n}}` over the given families.
pub fn pointwise_finiteness<'a>(
    families: impl IntoIterator<Item = &'a BumpFamily>,
    x: &[f64],
) -> usize {
    families
        .into_iter()
        .map(|f| f.support_keys(x).len())
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tent_apex_and_overlap() {
        let fam = BumpFamily::tent(2, vec![(0, 2)]);
        assert_eq!(fam.eval(&IndexKey::single(1), &[0.5]), 1.0);
        let sup = fam.support(&IndexKey::single(1)).unwrap();
        assert_eq!(sup.in_plain_coordinates()[0], Interval::closed(0.0, 1.0));
        assert_eq!(fam.active(&[0.3]).len(), 2);
        assert!((fam.sum_at(&[0.3]) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn tent_2d_has_at_most_four_active() {
        let fam = BumpFamily::tent(4, vec![(0, 4), (0, 4)]);
        let x = [0.37, 0.61];
        assert_eq!(fam.active(&x).len(), 4);
        assert_eq!(fam.support_keys(&x).len(), 4);
        assert!((fam.sum_at(&x) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn interior_node_touches_three_closed_supports() {
        let fam = BumpFamily::tent(4, vec![(0, 4)]);
        assert_eq!(fam.support_keys(&[0.5]).len(), 3);
        assert_eq!(fam.active(&[0.5]).len(), 1);
        // Box-boundary nodes only meet two.
        assert_eq!(fam.support_keys(&[0.0]).len(), 2);
        assert_eq!(fam.support_keys(&[1.0]).len(), 2);
    }

    #[test]
    fn tiles_are_exact() {
        let fam = BumpFamily::tile(2, (-1, 4));
        assert_eq!(fam.active(&[0.3]), vec![(IndexKey::single(1), 1.0)]);
        assert_eq!(fam.active(&[0.5]), vec![(IndexKey::single(2), 1.0)]);
        assert_eq!(fam.eval(&IndexKey::single(2), &[0.3]), 0.0);
    }

    #[test]
    fn explicit_bumps_are_cut_at_support() {
        let b = ExplicitBump::new(
            0i64,
            Support::unscaled(vec![Interval::closed(0.0, 1.0)]),
            |_| 0.5,
        );
        let fam = BumpFamily::explicit(vec![b]);
        assert_eq!(fam.eval(&IndexKey::single(0), &[2.0]), 0.0);
        assert_eq!(fam.eval(&IndexKey::single(0), &[0.2]), 0.5);
        assert_eq!(fam.space_kind(), SpaceKind::Abstract);
    }

    #[test]
    fn subfamily_restricts_keys() {
        let fam = BumpFamily::tent(4, vec![(0, 4)]);
        let odd = fam.subfamily(|k| k.0[0] % 2 == 1);
        assert_eq!(odd.keys().count(), 2);
        assert!(pointwise_finiteness([&odd], &[0.5]) <= pointwise_finiteness([&fam], &[0.5]));
    }
}
