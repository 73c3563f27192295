use std::fmt;
use std::sync::Arc;

use crate::eq_core::{Contraction, IndexKey};
use crate::error::{Error, Result};
use crate::pou::Support;
use crate::Point;

use super::tower::BaireTower;
use super::{ApproximantKind, ApproximantSequence, RealValued};

type Bump = dyn Fn(&[f64]) -> f64 + Send + Sync;
type Section<Y> = dyn Fn(&Y) -> Point + Send + Sync;

/// One member `(φ_i, g_i)` of a discrete family, with the declared support
/// of `φ_i`.
pub struct GlueBump<Y> {
    pub key: IndexKey,
    pub support: Support,
    phi: Arc<Bump>,
    g: Arc<Section<Y>>,
}

impl<Y> Clone for GlueBump<Y> {
    fn clone(&self) -> Self {
        Self {
            key: self.key.clone(),
            support: self.support.clone(),
            phi: Arc::clone(&self.phi),
            g: Arc::clone(&self.g),
        }
    }
}

impl<Y> fmt::Debug for GlueBump<Y> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GlueBump")
            .field("key", &self.key)
            .field("support", &self.support)
            .finish()
    }
}

impl<Y> GlueBump<Y> {
    pub fn new(
        key: impl Into<IndexKey>,
        support: Support,
        phi: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
        g: impl Fn(&Y) -> Point + Send + Sync + 'static,
    ) -> Self {
        Self {
            key: key.into(),
            support,
            phi: Arc::new(phi),
            g: Arc::new(g),
        }
    }

    pub fn phi(&self, x: &[f64]) -> f64 {
        (self.phi)(x)
    }

    pub fn g(&self, y: &Y) -> Point {
        (self.g)(y)
    }
}

/// `γ(g_i(y), 1 − φ_i(x))` if `x ∈ supp φ_i`, otherwise `z*`.
///
/// The case split uses the declared supports; `φ_i(x) > 0` off its support
/// is reported as an error, as is `x` lying in two supports.
pub fn contractible_glue<Y>(c: &Contraction, bumps: &[GlueBump<Y>], x: &[f64], y: &Y) -> Result<Point> {
    let mut hit: Option<(&GlueBump<Y>, f64)> = None;
    for b in bumps {
        let phi = b.phi(x);
        if !b.support.contains(x) {
            if phi > 0.0 {
                return Err(Error::SupportMismatch {
                    key: b.key.to_string(),
                    x: x.to_vec(),
                });
            }
            continue;
        }
        if let Some((prev, _)) = hit {
            return Err(Error::NotDiscrete {
                first: prev.key.to_string(),
                second: b.key.to_string(),
                x: x.to_vec(),
            });
        }
        hit = Some((b, phi));
    }
    match hit {
        Some((b, phi)) => c.contract_eval(&b.g(y), 1.0 - phi),
        None => Ok(c.star().to_vec()),
    }
}

type Exhaustion = dyn Fn(usize, &[f64]) -> f64 + Send + Sync;
type Membership = dyn Fn(&[f64]) -> bool + Send + Sync;

/// One cell `X_s` of a disjoint cover by ambiguous sets.
///
/// `phi(n, ·)` equals 1 exactly on `F_{s,n}` and is positive exactly on
/// `U_{s,n}`; `tower` witnesses `g_s` with levels `g_{s,n}`.
pub struct AmbiguousPiece<Y> {
    pub key: IndexKey,
    cell: Arc<Membership>,
    phi: Arc<Exhaustion>,
    tower: BaireTower<Y, Point>,
}

impl<Y> Clone for AmbiguousPiece<Y> {
    fn clone(&self) -> Self {
        Self {
            key: self.key.clone(),
            cell: Arc::clone(&self.cell),
            phi: Arc::clone(&self.phi),
            tower: self.tower.clone(),
        }
    }
}

impl<Y: 'static> AmbiguousPiece<Y> {
    pub fn new(
        key: impl Into<IndexKey>,
        cell: impl Fn(&[f64]) -> bool + Send + Sync + 'static,
        phi: impl Fn(usize, &[f64]) -> f64 + Send + Sync + 'static,
        tower: BaireTower<Y, Point>,
    ) -> Result<Self> {
        if tower.depth() == 0 {
            return Err(Error::TowerDepth(0));
        }
        Ok(Self {
            key: key.into(),
            cell: Arc::new(cell),
            phi: Arc::new(phi),
            tower,
        })
    }

    pub fn in_cell(&self, x: &[f64]) -> bool {
        (self.cell)(x)
    }

    pub fn phi(&self, n: usize, x: &[f64]) -> f64 {
        (self.phi)(n, x)
    }

    pub fn tower(&self) -> &BaireTower<Y, Point> {
        &self.tower
    }
}

/// `f_n(x, y) = γ(g_{s,n}(y), 1 − φ_{s,n}(x))` on `U_{s,n}`, `z₀` elsewhere;
/// the target is `f(x, y) = g_s(y)` on `X_s × Y`.
pub struct AmbiguousLimit<Y> {
    contraction: Contraction,
    pieces: Vec<AmbiguousPiece<Y>>,
}

impl<Y: 'static> AmbiguousLimit<Y> {
    pub fn new(contraction: Contraction, pieces: Vec<AmbiguousPiece<Y>>) -> Self {
        Self { contraction, pieces }
    }

    pub fn pieces(&self) -> &[AmbiguousPiece<Y>] {
        &self.pieces
    }

    pub fn eval(&self, n: usize, x: &[f64], y: &Y) -> Result<Point> {
        let mut hit: Option<(&AmbiguousPiece<Y>, f64)> = None;
        for p in &self.pieces {
            let phi = p.phi(n, x);
            if phi > 0.0 {
                if let Some((prev, _)) = hit {
                    return Err(Error::NotDiscrete {
                        first: prev.key.to_string(),
                        second: p.key.to_string(),
                        x: x.to_vec(),
                    });
                }
                hit = Some((p, phi));
            }
        }
        match hit {
            Some((p, phi)) => {
                let level = p.tower.level(n).expect("depth checked at construction");
                self.contraction.contract_eval(&level.eval(y), 1.0 - phi)
            }
            None => Ok(self.contraction.star().to_vec()),
        }
    }

    /// `g_s(y)` for the cell `X_s ∋ x`.
    pub fn target(&self, x: &[f64], y: &Y) -> Result<Point> {
        self.pieces
            .iter()
            .find(|p| p.in_cell(x))
            .map(|p| p.tower.eval(y))
            .ok_or_else(|| Error::Uncovered(x.to_vec()))
    }
}

impl<Y: Send + Sync + 'static> ApproximantSequence<Y> for AmbiguousLimit<Y> {
    fn kind(&self) -> ApproximantKind {
        ApproximantKind::AmbiguousLimit
    }

    fn term(&self, n: usize, x: &[f64], y: &Y) -> Result<Point> {
        self.eval(n, x, y)
    }
}

/// Two-cell instance on the real line, contracting `ℝ` straight to 0.
///
/// * `X_left = (−∞, 0)`: `F_n = (−∞, −1/n]`, `U_n = (−∞, −2/(3n))`,
///   `g = 1_{0}` with levels `max(0, 1 − n|y|)`.
/// * `X_right = [0, ∞)`: `F_n = [0, ∞)`, `U_n = (−1/(3n), ∞)`,
///   `g = 1_{(0,∞)}` with levels `clamp(n·y, 0, 1)`.
pub fn two_cell_instance<Y: RealValued + 'static>() -> AmbiguousLimit<Y> {
    let left_tower = BaireTower::limit_of(
        |y: &Y| vec![if y.real() == 0.0 { 1.0 } else { 0.0 }],
        |n| BaireTower::continuous(move |y: &Y| vec![(1.0 - n as f64 * y.real().abs()).max(0.0)]),
    )
    .expect("depth 1");
    let right_tower = BaireTower::limit_of(
        |y: &Y| vec![if y.real() > 0.0 { 1.0 } else { 0.0 }],
        |n| BaireTower::continuous(move |y: &Y| vec![(n as f64 * y.real()).clamp(0.0, 1.0)]),
    )
    .expect("depth 1");
    let left = AmbiguousPiece::new(
        0i64,
        |x: &[f64]| x[0] < 0.0,
        |n, x: &[f64]| (-3.0 * n as f64 * x[0] - 2.0).clamp(0.0, 1.0),
        left_tower,
    )
    .expect("depth 1");
    let right = AmbiguousPiece::new(
        1i64,
        |x: &[f64]| x[0] >= 0.0,
        |n, x: &[f64]| (1.0 + 3.0 * n as f64 * x[0]).clamp(0.0, 1.0),
        right_tower,
    )
    .expect("depth 1");
    AmbiguousLimit::new(Contraction::straight_line(vec![0.0]), vec![left, right])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pou::Interval;

    fn plateau(center: f64) -> impl Fn(&[f64]) -> f64 {
        move |x: &[f64]| (2.0 - 2.0 * (x[0] - center).abs()).clamp(0.0, 1.0)
    }

    fn bumps() -> Vec<GlueBump<f64>> {
        (0..3)
            .map(|i| {
                let c = 3.0 * i as f64;
                GlueBump::new(
                    i as i64,
                    Support::unscaled(vec![Interval::closed(c - 1.0, c + 1.0)]),
                    plateau(c),
                    move |y: &f64| vec![y + i as f64],
                )
            })
            .collect()
    }

    #[test]
    fn glue_cases() {
        let c = Contraction::straight_line(vec![0.0]);
        let b = bumps();
        // φ = 1 on the plateau.
        assert_eq!(contractible_glue(&c, &b, &[3.2], &0.5).unwrap(), vec![1.5]);
        // Off every support.
        assert_eq!(contractible_glue(&c, &b, &[1.5], &0.5).unwrap(), vec![0.0]);
        // φ = 1/2 halves the value.
        assert_eq!(contractible_glue(&c, &b, &[6.75], &0.5).unwrap(), vec![1.25]);
    }

    #[test]
    fn overlapping_supports_are_rejected() {
        let c = Contraction::straight_line(vec![0.0]);
        let mut b = bumps();
        b.push(GlueBump::new(
            9i64,
            Support::unscaled(vec![Interval::closed(0.5, 1.5)]),
            |_| 0.0,
            |_: &f64| vec![0.0],
        ));
        assert!(matches!(
            contractible_glue(&c, &b, &[0.75], &0.0),
            Err(Error::NotDiscrete { .. })
        ));
    }

    #[test]
    fn positive_bump_outside_support_is_rejected() {
        let c = Contraction::straight_line(vec![0.0]);
        let b = vec![GlueBump::new(
            0i64,
            Support::unscaled(vec![Interval::closed(0.0, 1.0)]),
            |_| 0.5,
            |_: &f64| vec![1.0],
        )];
        assert!(matches!(
            contractible_glue(&c, &b, &[2.0], &0.0),
            Err(Error::SupportMismatch { .. })
        ));
    }

    #[test]
    fn two_cell_branches() {
        let inst = two_cell_instance::<f64>();
        // x ∈ F_{right,n}: value is g_{right,n}(y).
        assert_eq!(inst.eval(4, &[0.0], &0.1).unwrap(), vec![0.4]);
        // x in the gap between U_{left,n} and U_{right,n}.
        assert_eq!(inst.eval(4, &[-0.125], &0.1).unwrap(), vec![0.0]);
        // x ∈ F_{left,n}.
        assert_eq!(inst.eval(4, &[-0.5], &0.0).unwrap(), vec![1.0]);
        assert_eq!(inst.target(&[-0.5], &0.0).unwrap(), vec![1.0]);
        assert_eq!(inst.target(&[0.0], &0.0).unwrap(), vec![0.0]);
    }
}
