use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::Point;

use super::connector::ConnectorSpace;

type Homotopy = dyn Fn(&[f64], f64) -> Point + Send + Sync;

/// A contraction `γ: Z × [0, 1] → Z` onto a point `z*`:
/// `γ(z, 0) = z` and `γ(z, 1) = z*`.
#[derive(Clone)]
pub struct Contraction {
    gamma: Arc<Homotopy>,
    star: Point,
    label: String,
}

impl fmt::Debug for Contraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Contraction")
            .field("label", &self.label)
            .field("star", &self.star)
            .finish()
    }
}

impl Contraction {
    pub fn new(
        label: impl Into<String>,
        star: Point,
        gamma: impl Fn(&[f64], f64) -> Point + Send + Sync + 'static,
    ) -> Self {
        Self {
            gamma: Arc::new(gamma),
            star,
            label: label.into(),
        }
    }

    /// `γ(z, t) = (1 − t)z + t·z*`.
    pub fn straight_line(star: Point) -> Self {
        let s = star.clone();
        Self::new("straight_line", star, move |z, t| {
            z.iter().zip(&s).map(|(a, b)| (1.0 - t) * a + t * b).collect()
        })
    }

    /// Every equiconnected space contracts along its connector:
    /// `γ(z, t) = λ(z, z*, t)`.
    pub fn from_connector(space: Arc<dyn ConnectorSpace>, star: Point) -> Self {
        let s = star.clone();
        let label = format!("connector:{}", space.name());
        Self::new(label, star, move |z, t| space.connect(z, &s, t))
    }

    pub fn star(&self) -> &[f64] {
        &self.star
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// `γ(z, t)`; `t` must lie in `[0, 1]`.
    pub fn contract_eval(&self, z: &[f64], t: f64) -> Result<Point> {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::Parameter { name: "t", value: t });
        }
        Ok((self.gamma)(z, t))
    }
}
