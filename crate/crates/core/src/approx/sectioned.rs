use std::fmt;
use std::sync::Arc;

use crate::Point;

use super::tower::BaireTower;

type TwoVar<Y> = dyn Fn(&[f64], &Y) -> Point + Send + Sync;
type Regularity<Y> = dyn Fn(&[f64]) -> BaireTower<Y, Point> + Send + Sync;

/// A two-variable map `f(x, y)` with access to its sections `f^x = f(x, ·)`
/// and a declared Baire-class witness for the sections at anchor points.
pub struct SectionedFunction<Y> {
    label: String,
    eval: Arc<TwoVar<Y>>,
    regularity: Arc<Regularity<Y>>,
    x_continuity_declared: bool,
}

impl<Y> Clone for SectionedFunction<Y> {
    fn clone(&self) -> Self {
        Self {
            label: self.label.clone(),
            eval: Arc::clone(&self.eval),
            regularity: Arc::clone(&self.regularity),
            x_continuity_declared: self.x_continuity_declared,
        }
    }
}

impl<Y> fmt::Debug for SectionedFunction<Y> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SectionedFunction")
            .field("label", &self.label)
            .field("x_continuity_declared", &self.x_continuity_declared)
            .finish()
    }
}

impl<Y: 'static> SectionedFunction<Y> {
    /// A function continuous in `x` whose sections are declared continuous:
    /// every anchor gets the depth-0 tower of its own section.
    pub fn separately_continuous(
        label: impl Into<String>,
        eval: impl Fn(&[f64], &Y) -> Point + Send + Sync + 'static,
    ) -> Self {
        let eval: Arc<TwoVar<Y>> = Arc::new(eval);
        let e = Arc::clone(&eval);
        Self {
            label: label.into(),
            eval,
            regularity: Arc::new(move |a: &[f64]| {
                let e = Arc::clone(&e);
                let a = a.to_vec();
                BaireTower::continuous(move |y: &Y| e(&a, y))
            }),
            x_continuity_declared: true,
        }
    }

    /// Replaces the anchor regularity witness.
    pub fn with_regularity(
        mut self,
        regularity: impl Fn(&[f64]) -> BaireTower<Y, Point> + Send + Sync + 'static,
    ) -> Self {
        self.regularity = Arc::new(regularity);
        self
    }

    pub fn with_x_continuity(mut self, declared: bool) -> Self {
        self.x_continuity_declared = declared;
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn x_continuity_declared(&self) -> bool {
        self.x_continuity_declared
    }

    pub fn eval(&self, x: &[f64], y: &Y) -> Point {
        (self.eval)(x, y)
    }

    /// `f^x = f(x, ·)`.
    pub fn x_section(&self, x: &[f64]) -> impl Fn(&Y) -> Point + '_ {
        let x = x.to_vec();
        move |y| (self.eval)(&x, y)
    }

    /// Declared Baire witness for `f^a`.
    pub fn anchor_tower(&self, a: &[f64]) -> BaireTower<Y, Point> {
        (self.regularity)(a)
    }

    /// The witness agrees with the section exactly at every sample.
    pub fn check_anchor_regularity(&self, a: &[f64], ys: &[Y]) -> bool {
        let t = self.anchor_tower(a);
        ys.iter().all(|y| t.eval(y) == self.eval(a, y))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sections_and_default_regularity() {
        let f = SectionedFunction::separately_continuous("xy", |x: &[f64], y: &f64| vec![x[0] * y]);
        let sec = f.x_section(&[2.0]);
        assert_eq!(sec(&3.0), vec![6.0]);
        assert_eq!(f.anchor_tower(&[2.0]).depth(), 0);
        assert!(f.check_anchor_regularity(&[2.0], &[0.0, 1.5, -4.0]));
    }

    #[test]
    fn mismatched_witness_is_detected() {
        let f = SectionedFunction::separately_continuous("xy", |x: &[f64], y: &f64| vec![x[0] * y])
            .with_regularity(|_| BaireTower::continuous(|_: &f64| vec![0.0]));
        assert!(!f.check_anchor_regularity(&[2.0], &[1.0]));
        assert!(f.check_anchor_regularity(&[2.0], &[0.0]));
    }
}
