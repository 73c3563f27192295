use std::f64::consts::FRAC_PI_2;
use std::sync::Arc;

use crate::error::{Error, Result};

use super::tagged::TaggedReal;

/// `cos(π(u − a)/(2v))` on `|u − a| < v`, and 0 otherwise.
///
/// The boundary `|u − a| = v` is sent to 0 by the case split rather than by
/// the cosine, so the boundary value is exact.
pub fn bump_g(u: f64, v: f64, a: f64) -> Result<f64> {
    if !(v > 0.0) {
        return Err(Error::Parameter { name: "v", value: v });
    }
    let d = (u - a).abs();
    if d >= v {
        return Ok(0.0);
    }
    Ok((FRAC_PI_2 * d / v).cos())
}

type Level<X> = Arc<dyn Fn(&X) -> f64 + Send + Sync>;
type Member<X> = Arc<dyn Fn(&X) -> bool + Send + Sync>;

/// Exact descriptors of `F`, `G` and `H`.
pub struct SupportData<X> {
    pub in_f: Member<X>,
    pub in_g: Member<X>,
    pub in_h: Member<X>,
}

impl<X> Clone for SupportData<X> {
    fn clone(&self) -> Self {
        Self {
            in_f: Arc::clone(&self.in_f),
            in_g: Arc::clone(&self.in_g),
            in_h: Arc::clone(&self.in_h),
        }
    }
}

impl<X> SupportData<X> {
    pub fn new(
        in_f: impl Fn(&X) -> bool + Send + Sync + 'static,
        in_g: impl Fn(&X) -> bool + Send + Sync + 'static,
        in_h: impl Fn(&X) -> bool + Send + Sync + 'static,
    ) -> Self {
        Self {
            in_f: Arc::new(in_f),
            in_g: Arc::new(in_g),
            in_h: Arc::new(in_h),
        }
    }
}

/// `f(x, y) = φ(x)·g(y, ψ(x))` off `F` and `φ(x)·χ_{a}(y)` on `F`.
///
/// Requires `H = φ⁻¹(1)`, `X ∖ G = φ⁻¹(0)`, `F = ψ⁻¹(0)` and
/// `H ⊆ F ∩ G`; [`Lemma81::validate`] checks these on samples.
pub struct Lemma81<X> {
    phi: Level<X>,
    psi: Level<X>,
    a: TaggedReal,
    sets: SupportData<X>,
}

impl<X> Clone for Lemma81<X> {
    fn clone(&self) -> Self {
        Self {
            phi: Arc::clone(&self.phi),
            psi: Arc::clone(&self.psi),
            a: self.a.clone(),
            sets: self.sets.clone(),
        }
    }
}

impl<X> Lemma81<X> {
    pub fn build(
        phi: impl Fn(&X) -> f64 + Send + Sync + 'static,
        psi: impl Fn(&X) -> f64 + Send + Sync + 'static,
        a: TaggedReal,
        sets: SupportData<X>,
    ) -> Self {
        Self {
            phi: Arc::new(phi),
            psi: Arc::new(psi),
            a,
            sets,
        }
    }

    pub fn a(&self) -> &TaggedReal {
        &self.a
    }

    pub fn phi(&self, x: &X) -> f64 {
        (self.phi)(x)
    }

    pub fn psi(&self, x: &X) -> f64 {
        (self.psi)(x)
    }

    pub fn in_f(&self, x: &X) -> bool {
        (self.sets.in_f)(x)
    }

    pub fn in_g(&self, x: &X) -> bool {
        (self.sets.in_g)(x)
    }

    pub fn in_h(&self, x: &X) -> bool {
        (self.sets.in_h)(x)
    }

    /// Checks the level-set descriptions and `H ⊆ F ∩ G` at each sample;
    /// the error carries the first offending index.
    pub fn validate(&self, samples: &[X]) -> Result<()> {
        for (i, x) in samples.iter().enumerate() {
            let (phi, psi) = (self.phi(x), self.psi(x));
            let (f, g, h) = (self.in_f(x), self.in_g(x), self.in_h(x));
            let ok = (0.0..=1.0).contains(&phi)
                && (0.0..=1.0).contains(&psi)
                && (phi == 1.0) == h
                && (phi == 0.0) == !g
                && (psi == 0.0) == f
                && (!h || (f && g));
            if !ok {
                return Err(Error::Inclusion(i));
            }
        }
        Ok(())
    }

    pub fn eval(&self, x: &X, y: &TaggedReal) -> Result<f64> {
        let phi = self.phi(x);
        if self.in_f(x) {
            let chi = if y.same_point(&self.a) { 1.0 } else { 0.0 };
            Ok(phi * chi)
        } else {
            Ok(phi * bump_g(y.value(), self.psi(x), self.a.value())?)
        }
    }
}

/// An instance on the real line with `H = F = [−1, 1]` and `G = (−2, 2)`:
/// `φ(x) = clamp(2 − |x|, 0, 1)` and `ψ(x) = clamp(|x| − 1, 0, 1)`.
pub fn lemma81_interval(a: TaggedReal) -> Lemma81<f64> {
    Lemma81::build(
        |x: &f64| (2.0 - x.abs()).clamp(0.0, 1.0),
        |x: &f64| (x.abs() - 1.0).clamp(0.0, 1.0),
        a,
        SupportData::new(
            |x: &f64| x.abs() <= 1.0,
            |x: &f64| x.abs() < 2.0,
            |x: &f64| x.abs() <= 1.0,
        ),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bump_values() {
        assert_eq!(bump_g(0.3, 0.5, 0.3).unwrap(), 1.0);
        assert_eq!(bump_g(0.8, 0.5, 0.3).unwrap(), 0.0);
        assert_eq!(bump_g(1.3, 0.5, 0.3).unwrap(), 0.0);
        let mid = bump_g(0.55, 0.5, 0.3).unwrap();
        assert!((mid - (std::f64::consts::PI / 4.0).cos()).abs() < 1e-15);
        assert!(bump_g(0.0, 0.0, 0.0).is_err());
        assert!(bump_g(0.0, -1.0, 0.0).is_err());
        assert!(bump_g(0.0, f64::NAN, 0.0).is_err());
    }

    #[test]
    fn clauses_hold() {
        let a = TaggedReal::rational(1, 3).unwrap();
        let f = lemma81_interval(a.clone());
        let xs: Vec<f64> = (-30..=30).map(|i| i as f64 / 10.0).collect();
        f.validate(&xs).unwrap();
        for x in &xs {
            if x.abs() <= 1.0 {
                assert_eq!(f.eval(x, &a).unwrap(), 1.0);
                assert_eq!(f.eval(x, &TaggedReal::plain(1.0 / 3.0)).unwrap(), 0.0);
            }
            if x.abs() >= 2.0 {
                assert_eq!(f.eval(x, &a).unwrap(), 0.0);
            }
        }
        // Off F the cosine bump of width ψ(x) = 0.5 is used.
        let v = f.eval(&1.5, &TaggedReal::plain(1.0 / 3.0 + 0.25)).unwrap();
        assert!((v - 0.5 * (std::f64::consts::PI / 4.0).cos()).abs() < 1e-15);
    }

    #[test]
    fn bad_inclusion_is_reported() {
        let f = Lemma81::build(
            |_: &f64| 1.0,
            |_: &f64| 1.0,
            TaggedReal::integer(0),
            SupportData::new(|_: &f64| false, |_: &f64| true, |x: &f64| *x > 0.0),
        );
        assert_eq!(f.validate(&[-1.0, 1.0]), Err(Error::Inclusion(0)));
    }
}
