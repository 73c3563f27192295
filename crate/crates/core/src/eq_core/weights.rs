use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tolerance::{EXACT, RENORMALIZE};
use crate::Point;

/// A point of the standard simplex `S_n`: nonnegative weights summing to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexWeights(Vec<f64>);

impl SimplexWeights {
    /// Validates and, when the sum has drifted by at most
    /// [`RENORMALIZE`], rescales so the weights sum to 1.
    ///
    /// Tiny negative values (above `-EXACT`) are clamped to exact zeros so
    /// that the zero branch of the recursion sees them as zero.
    pub fn new(raw: Vec<f64>) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::Empty("simplex weights"));
        }
        let mut w = raw;
        for (index, v) in w.iter_mut().enumerate() {
            if !v.is_finite() || *v < -EXACT || *v > 1.0 + EXACT {
                return Err(Error::WeightRange { index, value: *v });
            }
            if *v < 0.0 {
                *v = 0.0;
            }
        }
        let sum: f64 = w.iter().sum();
        if (sum - 1.0).abs() > RENORMALIZE {
            return Err(Error::WeightSum { sum });
        }
        if sum != 1.0 {
            w.iter_mut().for_each(|v| *v /= sum);
        }
        Ok(Self(w))
    }

    /// Uniform weights `1/n`.
    pub fn uniform(n: usize) -> Result<Self> {
        Self::new(vec![1.0 / n as f64; n])
    }

    /// The vertex `e_i` of `S_n`.
    pub fn vertex(n: usize, i: usize) -> Self {
        let mut w = vec![0.0; n];
        w[i] = 1.0;
        Self(w)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

/// A totally ordered index: integer tuples compared lexicographically.
///
/// Single integers and `(i, n)` pairs are the common shapes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct IndexKey(pub Vec<i64>);

impl IndexKey {
    pub fn single(i: i64) -> Self {
        Self(vec![i])
    }
}

impl From<i64> for IndexKey {
    fn from(i: i64) -> Self {
        Self::single(i)
    }
}

impl From<Vec<i64>> for IndexKey {
    fn from(v: Vec<i64>) -> Self {
        Self(v)
    }
}

impl fmt::Display for IndexKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightedEntry {
    pub key: IndexKey,
    pub weight: f64,
    pub point: Point,
}

/// A finite family `(x_i, α_i)` indexed by strictly increasing keys.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderedWeightFamily {
    entries: Vec<WeightedEntry>,
}

impl OrderedWeightFamily {
    pub fn new(entries: Vec<WeightedEntry>) -> Result<Self> {
        for (pos, pair) in entries.windows(2).enumerate() {
            if pair[0].key >= pair[1].key {
                return Err(Error::KeyOrder(pos + 1));
            }
        }
        for (index, e) in entries.iter().enumerate() {
            if !e.weight.is_finite() || e.weight < 0.0 || e.weight > 1.0 + EXACT {
                return Err(Error::WeightRange {
                    index,
                    value: e.weight,
                });
            }
        }
        Ok(Self { entries })
    }

    /// Convenience constructor from `(key, weight, point)` triples.
    pub fn from_triples<K: Into<IndexKey>>(
        triples: impl IntoIterator<Item = (K, f64, Point)>,
    ) -> Result<Self> {
        Self::new(
            triples
                .into_iter()
                .map(|(key, weight, point)| WeightedEntry {
                    key: key.into(),
                    weight,
                    point,
                })
                .collect(),
        )
    }

    pub fn entries(&self) -> &[WeightedEntry] {
        &self.entries
    }

    /// Nonzero-weight entries in key order, with weights as a simplex vector.
    pub fn support(&self) -> Result<(Vec<&[f64]>, SimplexWeights)> {
        let (points, weights): (Vec<&[f64]>, Vec<f64>) = self
            .entries
            .iter()
            .filter(|e| e.weight != 0.0)
            .map(|e| (e.point.as_slice(), e.weight))
            .unzip();
        if weights.is_empty() {
            return Err(Error::Empty("nonzero weight support"));
        }
        Ok((points, SimplexWeights::new(weights)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renormalizes_small_drift() {
        let w = SimplexWeights::new(vec![0.5, 0.5 + 5e-10]).unwrap();
        let s: f64 = w.as_slice().iter().sum();
        assert!((s - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_weights() {
        assert!(matches!(
            SimplexWeights::new(vec![0.5, 0.6]),
            Err(Error::WeightSum { .. })
        ));
        assert!(matches!(
            SimplexWeights::new(vec![1.5, -0.5]),
            Err(Error::WeightRange { index: 0, .. })
        ));
        assert!(matches!(
            SimplexWeights::new(vec![f64::NAN, 1.0]),
            Err(Error::WeightRange { .. })
        ));
        assert!(SimplexWeights::new(vec![]).is_err());
    }

    #[test]
    fn clamps_roundoff_negatives_to_exact_zero() {
        let w = SimplexWeights::new(vec![-1e-14, 1.0]).unwrap();
        assert_eq!(w.as_slice()[0], 0.0);
    }

    #[test]
    fn family_requires_increasing_keys() {
        let bad = OrderedWeightFamily::from_triples(vec![
            (2i64, 0.5, vec![0.0]),
            (1i64, 0.5, vec![1.0]),
        ]);
        assert_eq!(bad.unwrap_err(), Error::KeyOrder(1));
        let dup = OrderedWeightFamily::from_triples(vec![
            (1i64, 0.5, vec![0.0]),
            (1i64, 0.5, vec![1.0]),
        ]);
        assert!(dup.is_err());
    }

    #[test]
    fn keys_order_lexicographically() {
        let a = IndexKey(vec![1, 9]);
        let b = IndexKey(vec![2, 0]);
        let c = IndexKey(vec![2, 0, 0]);
        assert!(a < b && b < c);
        assert_eq!(a.to_string(), "(1,9)");
    }

    #[test]
    fn all_zero_family_has_no_support() {
        let fam = OrderedWeightFamily::from_triples(vec![(1i64, 0.0, vec![0.0])]).unwrap();
        assert_eq!(fam.support().unwrap_err(), Error::Empty("nonzero weight support"));
    }
}
