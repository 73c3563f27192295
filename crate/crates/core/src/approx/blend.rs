use crate::eq_core::{lambda_sum, ConnectorSpace, IndexKey, OrderedWeightFamily, WeightedEntry};
use crate::error::{Error, Result};
use crate::pou::{AnchoredScheme, BumpFamily};
use crate::Point;

use super::sectioned::SectionedFunction;
use super::{ApproximantKind, ApproximantSequence};

/// `Σ^λ_i φ_i(x) f_i(y)`: the λ-sum over the bumps active at `x`, taken in
/// key order.
///
/// Only keys with `φ_i(x) > 0` are visited, so `f_i` is never evaluated for
/// bumps whose support misses `x`.
pub fn lambda_blend_family<Y>(
    z: &dyn ConnectorSpace,
    fam: &BumpFamily,
    mut value_of: impl FnMut(&IndexKey, &Y) -> Result<Point>,
    x: &[f64],
    y: &Y,
) -> Result<Point> {
    let active = fam.active(x);
    if active.is_empty() {
        return Err(Error::NoActiveKey(x.to_vec()));
    }
    let entries = active
        .into_iter()
        .map(|(key, weight)| {
            let point = value_of(&key, y)?;
            Ok(WeightedEntry { key, weight, point })
        })
        .collect::<Result<Vec<_>>>()?;
    lambda_sum(z, &OrderedWeightFamily::new(entries)?)
}

/// `f_n(x, y) = Σ^λ_i φ_{i,n}(x) f(x_{i,n}, y)` over an anchored scheme.
pub struct LambdaBlend<'a, Y> {
    f: &'a SectionedFunction<Y>,
    scheme: &'a AnchoredScheme,
    z: &'a dyn ConnectorSpace,
}

impl<'a, Y: 'static> LambdaBlend<'a, Y> {
    pub fn new(f: &'a SectionedFunction<Y>, scheme: &'a AnchoredScheme, z: &'a dyn ConnectorSpace) -> Self {
        Self { f, scheme, z }
    }

    pub fn eval(&self, n: usize, x: &[f64], y: &Y) -> Result<Point> {
        let fam = self.scheme.partition(n)?;
        lambda_blend_family(
            self.z,
            &fam,
            |key, y| {
                let a = self.scheme.anchor(n, key)?;
                Ok(self.f.eval(&a, y))
            },
            x,
            y,
        )
    }
}

impl<Y: Send + Sync + 'static> ApproximantSequence<Y> for LambdaBlend<'_, Y> {
    fn kind(&self) -> ApproximantKind {
        ApproximantKind::LambdaBlend
    }

    fn term(&self, n: usize, x: &[f64], y: &Y) -> Result<Point> {
        self.eval(n, x, y)
    }
}

/// The `n`-th blend as a plain two-variable map.
pub fn lambda_blend<'a, Y: 'static>(
    f: &'a SectionedFunction<Y>,
    s: &'a AnchoredScheme,
    z: &'a dyn ConnectorSpace,
    n: usize,
) -> impl Fn(&[f64], &Y) -> Result<Point> + 'a {
    let blend = LambdaBlend::new(f, s, z);
    move |x, y| blend.eval(n, x, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eq_core::{AffineBox, WarpedLine};
    use crate::pou::{grid_scheme, sorgenfrey_scheme, DenseSet};

    fn product() -> SectionedFunction<f64> {
        SectionedFunction::separately_continuous("xy", |x: &[f64], y: &f64| vec![x[0] * y])
    }

    #[test]
    fn sorgenfrey_blend_is_the_anchor_section() {
        let s = sorgenfrey_scheme(-2.0, 2.0, DenseSet::default(), 32).unwrap();
        let f = product();
        let z = WarpedLine;
        for n in [1, 3, 8, 32] {
            let fam = s.partition(n).unwrap();
            for x in [-1.3, 0.0, 0.45, 1.99] {
                let key = &fam.active(&[x])[0].0;
                let a = s.anchor(n, key).unwrap();
                let got = lambda_blend(&f, &s, &z, n)(&[x], &0.7).unwrap();
                assert_eq!(got, f.eval(&a, &0.7));
            }
        }
    }

    #[test]
    fn constant_function_blends_to_itself() {
        let s = grid_scheme(1, vec![0.0], vec![1.0], DenseSet::default(), 16).unwrap();
        let f = SectionedFunction::separately_continuous("c", |_: &[f64], _: &f64| vec![0.625]);
        for z in [&AffineBox::unbounded(1) as &dyn ConnectorSpace, &WarpedLine] {
            for n in [1, 5, 16] {
                let v = lambda_blend(&f, &s, z, n)(&[0.33], &1.0).unwrap();
                assert!((v[0] - 0.625).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn affine_blend_of_product() {
        let s = grid_scheme(1, vec![0.0], vec![1.0], DenseSet::default(), 16).unwrap();
        let f = product();
        let z = AffineBox::unbounded(1);
        let (x, y, n) = (0.41, -2.5, 7);
        let fam = s.partition(n).unwrap();
        let direct: f64 = fam
            .active(&[x])
            .iter()
            .map(|(k, w)| w * s.anchor(n, k).unwrap()[0])
            .sum::<f64>()
            * y;
        let got = lambda_blend(&f, &s, &z, n)(&[x], &y).unwrap()[0];
        assert!((got - direct).abs() < 1e-12);
    }

    #[test]
    fn outside_the_box_has_no_active_key() {
        let s = grid_scheme(1, vec![0.0], vec![1.0], DenseSet::default(), 4).unwrap();
        let f = product();
        let res = lambda_blend(&f, &s, &WarpedLine, 2)(&[5.0], &1.0);
        assert!(matches!(res, Err(Error::NoActiveKey(_))));
    }
}
