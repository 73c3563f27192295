use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};

use crate::error::{Error, Result};
use crate::tolerance::HULL_HIT;
use crate::Point;

use super::combination::convex_combination;
use super::connector::ConnectorSpace;
use super::weights::SimplexWeights;

/// A tuple of seed points and simplex weights whose `λ_n` lands on the probe.
#[derive(Debug, Clone, PartialEq)]
pub struct HullWitness {
    pub points: Vec<Point>,
    pub weights: SimplexWeights,
    pub value: Point,
    pub distance: f64,
}

/// Outcome of [`iterated_hull_contains`].
///
/// `NotFound` is not a certificate of non-membership: the search is one-sided.
#[derive(Debug, Clone, PartialEq)]
pub enum HullSearch {
    Witness(HullWitness),
    NotFound { tuples_tried: usize, best_distance: f64 },
}

impl HullSearch {
    pub fn is_member(&self) -> bool {
        matches!(self, HullSearch::Witness(_))
    }
}

/// Searches `λ^n(seeds)` for a value within [`HULL_HIT`] of `probe`.
///
/// Point tuples are enumerated exhaustively when `|seeds|^n ≤ trials`,
/// otherwise `trials` tuples are drawn from a seeded generator. For each
/// tuple the weights start from the best of the barycenter, the vertices
/// and one random draw, then a compass search on the simplex (moving mass
/// between pairs of coordinates with a halving step) refines them.
pub fn iterated_hull_contains(
    space: &dyn ConnectorSpace,
    seeds: &[Point],
    n: usize,
    probe: &[f64],
    trials: usize,
    rng_seed: u64,
) -> Result<HullSearch> {
    if seeds.is_empty() {
        return Err(Error::Empty("hull seed points"));
    }
    if n == 0 {
        return Err(Error::Parameter {
            name: "n",
            value: 0.0,
        });
    }
    if trials == 0 {
        return Err(Error::Parameter {
            name: "trials",
            value: 0.0,
        });
    }
    for s in seeds {
        if !space.contains(s) {
            return Err(Error::OutsideSpace(s.clone()));
        }
    }
    if probe.len() != space.dim() {
        return Err(Error::Dimension {
            expected: space.dim(),
            got: probe.len(),
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let exhaustive = (seeds.len() as f64).powi(n as i32) <= trials as f64;
    let tuple_count = if exhaustive {
        seeds.len().pow(n as u32)
    } else {
        trials
    };

    let mut best_distance = f64::INFINITY;
    for t in 0..tuple_count {
        let idx: Vec<usize> = if exhaustive {
            let mut rem = t;
            let mut digits = vec![0; n];
            for d in digits.iter_mut().rev() {
                *d = rem % seeds.len();
                rem /= seeds.len();
            }
            digits
        } else {
            (0..n).map(|_| rng.gen_range(0..seeds.len())).collect()
        };
        let points: Vec<&[f64]> = idx.iter().map(|&i| seeds[i].as_slice()).collect();
        let start = random_simplex(&mut rng, n);
        let (weights, value, distance) = refine(space, &points, probe, start)?;
        best_distance = best_distance.min(distance);
        if distance <= HULL_HIT {
            return Ok(HullSearch::Witness(HullWitness {
                points: points.iter().map(|p| p.to_vec()).collect(),
                weights: SimplexWeights::new(weights)?,
                value,
                distance,
            }));
        }
    }
    Ok(HullSearch::NotFound {
        tuples_tried: tuple_count,
        best_distance,
    })
}

fn random_simplex(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| Exp1.sample(rng)).collect();
    let s: f64 = raw.iter().sum();
    raw.into_iter().map(|v| v / s).collect()
}

fn evaluate(
    space: &dyn ConnectorSpace,
    points: &[&[f64]],
    probe: &[f64],
    w: &[f64],
) -> Result<(Point, f64)> {
    let v = convex_combination(space, points, &SimplexWeights::new(w.to_vec())?)?;
    let d = space.metric(&v, probe);
    Ok((v, d))
}

fn refine(
    space: &dyn ConnectorSpace,
    points: &[&[f64]],
    probe: &[f64],
    random_start: Vec<f64>,
) -> Result<(Vec<f64>, Point, f64)> {
    let n = points.len();
    let mut starts = vec![vec![1.0 / n as f64; n]];
    starts.extend((0..n).map(|i| SimplexWeights::vertex(n, i).into_inner()));
    starts.push(random_start);

    let mut best: Option<(Vec<f64>, Point, f64)> = None;
    for s in starts {
        let (v, d) = evaluate(space, points, probe, &s)?;
        if best.as_ref().is_none_or(|b| d < b.2) {
            best = Some((s, v, d));
        }
    }
    let (mut w, mut value, mut dist) = best.expect("at least one start");

    let mut step: f64 = 0.25;
    while dist > HULL_HIT && step > 1e-17 {
        let mut improved = false;
        for i in 0..n {
            for j in 0..n {
                if i == j || w[i] == 0.0 {
                    continue;
                }
                let moved = step.min(w[i]);
                let mut cand = w.clone();
                cand[i] -= moved;
                cand[j] += moved;
                let (v, d) = evaluate(space, points, probe, &cand)?;
                if d < dist {
                    w = cand;
                    value = v;
                    dist = d;
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    Ok((w, value, dist))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eq_core::{AffineBox, WarpedLine};

    #[test]
    fn midpoint_of_unit_interval() {
        let sp = AffineBox::unbounded(1);
        let res = iterated_hull_contains(&sp, &[vec![0.0], vec![1.0]], 2, &[0.5], 64, 1).unwrap();
        let HullSearch::Witness(w) = res else {
            panic!("midpoint not found")
        };
        assert!(w.distance <= HULL_HIT);
        assert_eq!(w.weights.as_slice(), &[0.5, 0.5]);
    }

    #[test]
    fn outside_interval_is_not_found() {
        let sp = AffineBox::unbounded(1);
        let res = iterated_hull_contains(&sp, &[vec![0.0], vec![1.0]], 3, &[2.0], 64, 1).unwrap();
        match res {
            HullSearch::NotFound { best_distance, .. } => assert!(best_distance >= 1.0 - 1e-12),
            HullSearch::Witness(_) => panic!("2.0 is not in the hull of {{0, 1}}"),
        }
    }

    #[test]
    fn warped_hull_hits_interior_points() {
        let res =
            iterated_hull_contains(&WarpedLine, &[vec![-1.0], vec![2.0]], 3, &[0.3], 64, 7).unwrap();
        let HullSearch::Witness(w) = res else {
            panic!("interior point not found")
        };
        let v = convex_combination(&WarpedLine, &w.points, &w.weights).unwrap();
        assert!((v[0] - 0.3).abs() <= HULL_HIT);
    }

    #[test]
    fn rejects_foreign_seeds() {
        let sp = AffineBox::cube(1, 0.0, 1.0);
        assert!(iterated_hull_contains(&sp, &[vec![3.0]], 1, &[0.0], 4, 0).is_err());
    }
}
