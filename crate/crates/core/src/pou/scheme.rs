use serde::{Deserialize, Serialize};

use crate::eq_core::{euclidean, IndexKey};
use crate::error::{Error, Result};
use crate::Point;

use super::dense::DenseSet;
use super::family::{BumpFamily, SpaceKind};

/// Serializable description of an anchored scheme.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SchemeSpec {
    /// Hat functions on the mesh-`1/n` grid of the box `[lo, hi]`.
    Grid {
        lo: Vec<f64>,
        hi: Vec<f64>,
        n_max: usize,
        #[serde(default)]
        dense: DenseSet,
    },
    /// Indicators of `[(i−1)/n, i/n)` covering `[lo, hi]`.
    Sorgenfrey {
        lo: f64,
        hi: f64,
        n_max: usize,
        #[serde(default)]
        dense: DenseSet,
    },
}

/// A sequence of locally finite partitions of unity `(φ_{i,n})` with anchor
/// points `x_{i,n}` drawn from a dense set.
///
/// Partitions and anchors are generated on demand from the spec, so large
/// boxes and fine meshes cost nothing until they are probed.
#[derive(Debug, Clone, PartialEq)]
pub struct AnchoredScheme {
    spec: SchemeSpec,
}

/// Hat-function scheme on `[lo, hi] ⊂ ℝ^dim` with anchors within `1/(2n)`
/// of each node.
pub fn grid_scheme(
    dim: usize,
    lo: Vec<f64>,
    hi: Vec<f64>,
    dense: DenseSet,
    n_max: usize,
) -> Result<AnchoredScheme> {
    if lo.len() != dim || hi.len() != dim {
        return Err(Error::Dimension {
            expected: dim,
            got: lo.len().min(hi.len()),
        });
    }
    AnchoredScheme::new(SchemeSpec::Grid { lo, hi, n_max, dense })
}

/// Sorgenfrey-line scheme: `φ_{i,n}` the indicator of `[(i−1)/n, i/n)` and
/// the anchor `x_{i,n}` the leftmost dense point of `[i/n, (i+1)/n)`.
pub fn sorgenfrey_scheme(lo: f64, hi: f64, dense: DenseSet, n_max: usize) -> Result<AnchoredScheme> {
    AnchoredScheme::new(SchemeSpec::Sorgenfrey { lo, hi, n_max, dense })
}

impl AnchoredScheme {
    pub fn new(spec: SchemeSpec) -> Result<Self> {
        let n_max = match &spec {
            SchemeSpec::Grid { lo, hi, n_max, .. } => {
                if lo.is_empty() || lo.len() != hi.len() {
                    return Err(Error::Dimension {
                        expected: lo.len().max(1),
                        got: hi.len(),
                    });
                }
                if lo.iter().zip(hi).any(|(a, b)| !(a < b) || !a.is_finite() || !b.is_finite()) {
                    return Err(Error::Config("grid box bounds must satisfy lo < hi".into()));
                }
                *n_max
            }
            SchemeSpec::Sorgenfrey { lo, hi, n_max, .. } => {
                if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
                    return Err(Error::Config("sorgenfrey bounds must satisfy lo < hi".into()));
                }
                *n_max
            }
        };
        if n_max == 0 {
            return Err(Error::Parameter {
                name: "n_max",
                value: 0.0,
            });
        }
        let scheme = Self { spec: spec.clone() };
        // Anchors are generated lazily; sample a few keys of the finest
        // partition so an inadequate dense set fails here, not mid-run.
        let fam = scheme.partition(n_max)?;
        let count = fam.keys().count();
        if count == 0 {
            return Err(Error::Empty("scheme partition"));
        }
        for pos in [0, 1, count / 2, count - 1] {
            if let Some(key) = fam.keys().nth(pos.min(count - 1)) {
                scheme.anchor(n_max, &key)?;
            }
        }
        Ok(scheme)
    }

    pub fn spec(&self) -> &SchemeSpec {
        &self.spec
    }

    pub fn n_max(&self) -> usize {
        match self.spec {
            SchemeSpec::Grid { n_max, .. } | SchemeSpec::Sorgenfrey { n_max, .. } => n_max,
        }
    }

    pub fn dim(&self) -> usize {
        match &self.spec {
            SchemeSpec::Grid { lo, .. } => lo.len(),
            SchemeSpec::Sorgenfrey { .. } => 1,
        }
    }

    pub fn space_kind(&self) -> SpaceKind {
        match self.spec {
            SchemeSpec::Grid { .. } => SpaceKind::EuclideanGrid,
            SchemeSpec::Sorgenfrey { .. } => SpaceKind::Sorgenfrey,
        }
    }

    pub fn dense_set(&self) -> &DenseSet {
        match &self.spec {
            SchemeSpec::Grid { dense, .. } | SchemeSpec::Sorgenfrey { dense, .. } => dense,
        }
    }

    fn check_n(&self, n: usize) -> Result<()> {
        if n == 0 || n > self.n_max() {
            return Err(Error::SchemeRange {
                n,
                n_max: self.n_max(),
            });
        }
        Ok(())
    }

    /// `(φ_{i,n} : i ∈ I_n)`.
    pub fn partition(&self, n: usize) -> Result<BumpFamily> {
        self.check_n(n)?;
        let s = n as f64;
        Ok(match &self.spec {
            SchemeSpec::Grid { lo, hi, .. } => BumpFamily::tent(
                n,
                lo.iter()
                    .zip(hi)
                    .map(|(a, b)| ((a * s).floor() as i64, (b * s).ceil() as i64))
                    .collect(),
            ),
            SchemeSpec::Sorgenfrey { lo, hi, .. } => {
                BumpFamily::tile(n, ((lo * s).floor() as i64, (hi * s).floor() as i64 + 2))
            }
        })
    }

    /// `x_{i,n}`.
    pub fn anchor(&self, n: usize, key: &IndexKey) -> Result<Point> {
        self.check_n(n)?;
        let s = n as f64;
        match &self.spec {
            SchemeSpec::Grid { lo, dense, .. } => {
                if key.0.len() != lo.len() {
                    return Err(Error::Dimension {
                        expected: lo.len(),
                        got: key.0.len(),
                    });
                }
                let per_axis = 0.5 / (s * (lo.len() as f64).sqrt());
                key.0
                    .iter()
                    .map(|&k| {
                        let node = k as f64 / s;
                        dense
                            .nearest(node, per_axis, |_| true)
                            .ok_or_else(|| Error::DenseSetExhausted {
                                target: vec![node],
                                radius: per_axis,
                            })
                    })
                    .collect()
            }
            SchemeSpec::Sorgenfrey { dense, .. } => {
                let i = key.0.first().copied().ok_or(Error::Empty("scheme key"))? as f64;
                // Membership in [i/n, (i+1)/n) is decided on the scaled coordinate,
                // like the tiles themselves.
                let (lo, hi) = (i / s, (i + 1.0) / s);
                // Rounding in `v * s` admits only candidates within a few ulps below `lo`.
                let lo_probe = lo - (lo.abs() + 1.0 / s) * 1e-9;
                dense
                    .leftmost(lo_probe, hi + 1.0 / s, |v| {
                        let u = v * s;
                        i <= u && u < i + 1.0
                    })
                    .map(|v| vec![v])
                    .ok_or_else(|| Error::DenseSetExhausted {
                        target: vec![lo],
                        radius: hi - lo,
                    })
            }
        }
    }

    /// Whether `a` lies in the basic neighborhood of `x` of size `radius`:
    /// the open ball on the grid, `[x, x + radius)` on the Sorgenfrey line.
    pub fn in_neighborhood(&self, x: &[f64], radius: f64, a: &[f64]) -> bool {
        if radius == f64::INFINITY {
            return true;
        }
        match self.spec {
            SchemeSpec::Grid { .. } => euclidean(x, a) < radius,
            SchemeSpec::Sorgenfrey { .. } => x[0] <= a[0] && a[0] < x[0] + radius,
        }
    }
}

/// Least `n₀ ≤ n_max` such that for every `n ∈ [n₀, n_max]` and every key
/// with `x ∈ supp φ_{i,n}`, the anchor `x_{i,n}` lies in the neighborhood
/// of `x` of the given size.
pub fn verify_anchoring(s: &AnchoredScheme, x: &[f64], radius: f64) -> Result<usize> {
    if !(radius > 0.0) {
        return Err(Error::Parameter {
            name: "radius",
            value: radius,
        });
    }
    for n in (1..=s.n_max()).rev() {
        let fam = s.partition(n)?;
        for key in fam.support_keys(x) {
            let a = s.anchor(n, &key)?;
            if !s.in_neighborhood(x, radius, &a) {
                if n == s.n_max() {
                    return Err(Error::NotAnchored { n, x: x.to_vec() });
                }
                return Ok(n + 1);
            }
        }
    }
    Ok(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorg() -> AnchoredScheme {
        sorgenfrey_scheme(-1.0, 2.0, DenseSet::default(), 64).unwrap()
    }

    #[test]
    fn sorgenfrey_tile_and_anchor() {
        let s = sorg();
        let fam = s.partition(2).unwrap();
        assert_eq!(fam.active(&[0.3]), vec![(IndexKey::single(1), 1.0)]);
        let a = s.anchor(2, &IndexKey::single(1)).unwrap()[0];
        assert!((0.5..1.0).contains(&a));
        assert_eq!(a, 0.5);
    }

    #[test]
    fn sorgenfrey_anchoring_bound() {
        let n0 = verify_anchoring(&sorg(), &[0.3], 0.5).unwrap();
        assert!(n0 <= 5, "n0 = {n0}");
        assert_eq!(verify_anchoring(&sorg(), &[0.3], f64::INFINITY).unwrap(), 1);
    }

    #[test]
    fn grid_node_anchor_and_support() {
        let s = grid_scheme(1, vec![0.0], vec![1.0], DenseSet::default(), 16).unwrap();
        let fam = s.partition(2).unwrap();
        let key = IndexKey::single(1);
        assert_eq!(fam.eval(&key, &[0.5]), 1.0);
        let a = s.anchor(2, &key).unwrap();
        assert!((a[0] - 0.5).abs() <= 0.25);
        let n0 = verify_anchoring(&s, &[0.3], 0.4).unwrap();
        assert!(n0 <= (3.0f64 / 0.4).ceil() as usize);
    }

    #[test]
    fn weak_dense_set_is_rejected() {
        let weak = DenseSet::Rationals { max_denominator: 2 };
        assert!(matches!(
            grid_scheme(1, vec![0.0], vec![1.0], weak.clone(), 32),
            Err(Error::DenseSetExhausted { .. })
        ));
        assert!(sorgenfrey_scheme(0.0, 1.0, weak, 32).is_err());
    }

    #[test]
    fn out_of_range_n() {
        let s = sorg();
        assert!(matches!(s.partition(0), Err(Error::SchemeRange { .. })));
        assert!(s.partition(65).is_err());
    }

    #[test]
    fn spec_round_trips_through_json() {
        let s = sorg();
        let json = serde_json::to_string(s.spec()).unwrap();
        let back: SchemeSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(&back, s.spec());
        assert!(serde_json::from_str::<SchemeSpec>(r#"{"kind":"grid","lo":[0],"hi":[1],"n_max":4,"bogus":1}"#).is_err());
    }
}
