use crate::error::{Error, Result};
use crate::Point;

use super::connector::ConnectorSpace;
use super::weights::{OrderedWeightFamily, SimplexWeights};

/// `λ_n(x_1, …, x_n, α_1, …, α_n)`.
///
/// The recursion folds the first two entries into one:
/// `λ_{n+1}(x, α) = λ_n(λ(x_1, x_2, α_2/(α_1+α_2)), x_3, …, α_1+α_2, α_3, …)`
/// when `α_1 + α_2 > 0`, and drops `x_1` otherwise. The loop below is that
/// recursion unrolled left to right, with the running first weight carried
/// in `acc_w`.
pub fn convex_combination<P: AsRef<[f64]>>(
    space: &dyn ConnectorSpace,
    points: &[P],
    w: &SimplexWeights,
) -> Result<Point> {
    if points.is_empty() {
        return Err(Error::Empty("convex combination points"));
    }
    if points.len() != w.len() {
        return Err(Error::Length {
            points: points.len(),
            weights: w.len(),
        });
    }
    for p in points {
        let p = p.as_ref();
        if p.len() != space.dim() {
            return Err(Error::Dimension {
                expected: space.dim(),
                got: p.len(),
            });
        }
        if !space.contains(p) {
            return Err(Error::OutsideSpace(p.to_vec()));
        }
    }

    let alpha = w.as_slice();
    let mut acc: Point = points[0].as_ref().to_vec();
    let mut acc_w = alpha[0];
    for (x, &a) in points.iter().zip(alpha).skip(1) {
        let merged = acc_w + a;
        // Weights are nonnegative, so the sum is zero iff both are exactly zero.
        if merged > 0.0 {
            acc = space.connect(&acc, x.as_ref(), a / merged);
            acc_w = merged;
        } else {
            acc = x.as_ref().to_vec();
            acc_w = a;
        }
    }
    Ok(acc)
}

/// λ-sum of a well-ordered family: `λ_n` over the nonzero-weight entries in
/// increasing key order.
pub fn lambda_sum(space: &dyn ConnectorSpace, fam: &OrderedWeightFamily) -> Result<Point> {
    let (points, weights) = fam.support()?;
    convex_combination(space, &points, &weights)
}
