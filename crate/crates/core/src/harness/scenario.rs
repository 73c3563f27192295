use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::approx::SectionedFunction;
use crate::eq_core::{AffineBox, ConnectorSpace, WarpedLine};
use crate::error::{Error, Result};
use crate::gallery::{example2_eval, lemma81_interval, FinSeq, TaggedReal};
use crate::pou::SchemeSpec;
use crate::tolerance::{default_schedule, TAIL_EPS, TAIL_K};

/// A second-variable value: a bare number is a plain real.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum YSpec {
    Plain(f64),
    Tagged(TaggedReal),
}

impl YSpec {
    pub fn resolve(&self) -> TaggedReal {
        match self {
            Self::Plain(v) => TaggedReal::plain(*v),
            Self::Tagged(t) => t.clone(),
        }
    }
}

/// The coordinate model of `Z`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConnectorSpec {
    /// `ℝ` with `λ(x, y, t) = (1 − t)x + ty`.
    #[default]
    Affine,
    /// `ℝ` with the connector transported through `u ↦ u³ + u`.
    Warped,
}

impl ConnectorSpec {
    pub fn build(&self) -> Box<dyn ConnectorSpace> {
        match self {
            Self::Affine => Box::new(AffineBox::unbounded(1)),
            Self::Warped => Box::new(WarpedLine),
        }
    }
}

/// Functions addressable from a scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case", deny_unknown_fields)]
pub enum FunctionSpec {
    /// `2xy/(x² + y²)`, 0 at the origin.
    Ratio {},
    /// `sin(x_1 + … + x_d + y)`.
    SinSum {},
    /// `x_1·y`.
    Product {},
    Constant { value: f64 },
    /// The cosine-bump construction on the line with `H = F = [−1, 1]`,
    /// `G = (−2, 2)`.
    Lemma81 { a: YSpec },
    /// The `ℝ^∞` example restricted to the slice of the probe dimension.
    Example2 {},
    /// The two-cell ambiguous-set instance; only with `ambiguous_limit`.
    TwoCell {},
    /// The Dirichlet tower: with `level`, `m ↦ g_{level,m}` against
    /// `g_level`; otherwise `n ↦ g_n` against `g`. Only with `tower_tail`.
    Dirichlet {
        #[serde(default)]
        level: Option<usize>,
    },
    /// The sequential-space example: with `level`, `m ↦ f(x_{level,m}, y)`
    /// against `f(x_level, y)`; otherwise `n ↦ f(x_n, y)` against
    /// `f(0, y)`. Only with `tower_tail`.
    Example1 {
        #[serde(default)]
        level: Option<usize>,
    },
}

impl FunctionSpec {
    pub const NAMES: [&'static str; 9] = [
        "ratio", "sin_sum", "product", "constant", "lemma81", "example2", "two_cell", "dirichlet", "example1",
    ];

    /// The function as a separately continuous map on `ℝ^d × ℝ`, for the
    /// operators that sample `f` at anchors.
    pub fn sectioned(&self) -> Result<SectionedFunction<TaggedReal>> {
        let sc = |label: &str, f: fn(&[f64], f64) -> f64| {
            SectionedFunction::separately_continuous(label, move |x: &[f64], y: &TaggedReal| {
                vec![f(x, y.value())]
            })
        };
        Ok(match self {
            Self::Ratio {} => sc("ratio", |x, y| {
                let x = x[0];
                if x == 0.0 && y == 0.0 {
                    0.0
                } else {
                    2.0 * x * y / (x * x + y * y)
                }
            }),
            Self::SinSum {} => sc("sin_sum", |x, y| (x.iter().sum::<f64>() + y).sin()),
            Self::Product {} => sc("product", |x, y| x[0] * y),
            Self::Constant { value } => {
                let c = *value;
                SectionedFunction::separately_continuous("constant", move |_: &[f64], _: &TaggedReal| vec![c])
            }
            Self::Lemma81 { a } => {
                let f = lemma81_interval(a.resolve());
                SectionedFunction::separately_continuous("lemma81", move |x: &[f64], y: &TaggedReal| {
                    vec![f.eval(&x[0], y).expect("ψ > 0 off F")]
                })
            }
            Self::Example2 {} => {
                SectionedFunction::separately_continuous("example2", |x: &[f64], y: &TaggedReal| {
                    let x = FinSeq::from_prefix(x).expect("finite coordinates");
                    vec![example2_eval(&x, y, usize::MAX).expect("cap is unbounded")]
                })
            }
            Self::TwoCell {} | Self::Dirichlet { .. } | Self::Example1 { .. } => {
                return Err(Error::Config(format!(
                    "function {self:?} has no anchor-sampled form"
                )))
            }
        })
    }
}

/// Which approximation to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OperatorKind {
    LambdaBlend,
    PiecewiseAnchor,
    AmbiguousLimit,
    TowerTail,
}

impl OperatorKind {
    pub const NAMES: [&'static str; 4] = ["lambda_blend", "piecewise_anchor", "ambiguous_limit", "tower_tail"];
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbePoint {
    pub x: Vec<f64>,
    pub y: YSpec,
    /// Require every gap to be exactly 0, not just the tail.
    #[serde(default)]
    pub exact: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ProbeSpec {
    Explicit {
        points: Vec<ProbePoint>,
    },
    /// `include` followed by `count` uniform draws from the box
    /// `[x_lo, x_hi] × [y_lo, y_hi]`, seeded by the scenario seed.
    Random {
        x_lo: Vec<f64>,
        x_hi: Vec<f64>,
        y_lo: f64,
        y_hi: f64,
        count: usize,
        /// Draws whose `(x, y)` lies closer than this to the origin are
        /// redrawn.
        #[serde(default)]
        min_radius: f64,
        #[serde(default)]
        include: Vec<ProbePoint>,
    },
}

impl ProbeSpec {
    pub fn resolve(&self, seed: u64) -> Result<Vec<ProbePoint>> {
        match self {
            Self::Explicit { points } => Ok(points.clone()),
            Self::Random {
                x_lo,
                x_hi,
                y_lo,
                y_hi,
                count,
                min_radius,
                include,
            } => {
                if x_lo.len() != x_hi.len() {
                    return Err(Error::Config("x_lo and x_hi differ in length".into()));
                }
                let ok = |a: &f64, b: &f64| a.is_finite() && b.is_finite() && a <= b;
                if !x_lo.iter().zip(x_hi).all(|(a, b)| ok(a, b)) || !ok(y_lo, y_hi) {
                    return Err(Error::Config("probe box bounds must satisfy lo ≤ hi".into()));
                }
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut out = include.clone();
                let mut draws = 0usize;
                while out.len() < include.len() + count {
                    draws += 1;
                    if draws > 1000 * (count + 1) {
                        return Err(Error::Config("min_radius excludes the probe box".into()));
                    }
                    let x: Vec<f64> = x_lo.iter().zip(x_hi).map(|(a, b)| rng.gen_range(*a..=*b)).collect();
                    let y = rng.gen_range(*y_lo..=*y_hi);
                    let r2 = x.iter().map(|v| v * v).sum::<f64>() + y * y;
                    if r2.sqrt() < *min_radius {
                        continue;
                    }
                    out.push(ProbePoint {
                        x,
                        y: YSpec::Plain(y),
                        exact: false,
                    });
                }
                Ok(out)
            }
        }
    }
}

fn default_eps() -> f64 {
    TAIL_EPS
}

fn default_k() -> usize {
    TAIL_K
}

/// A convergence experiment: which approximants, where, and how judged.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    /// The model of `X` and its anchored partitions; required by
    /// `lambda_blend` and `piecewise_anchor`.
    #[serde(default)]
    pub scheme: Option<SchemeSpec>,
    #[serde(default)]
    pub connector: ConnectorSpec,
    pub function: FunctionSpec,
    pub operator: OperatorKind,
    pub probes: ProbeSpec,
    #[serde(default = "default_schedule")]
    pub schedule: Vec<usize>,
    #[serde(default = "default_eps")]
    pub eps: f64,
    #[serde(default = "default_k")]
    pub tail_k: usize,
    #[serde(default)]
    pub rng_seed: u64,
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_scenario_parses_with_defaults() {
        let s = Scenario::from_json(
            r#"{"name": "t", "function": {"name": "constant", "value": 2},
                "operator": "tower_tail", "probes": {"kind": "explicit", "points": []}}"#,
        )
        .unwrap();
        assert_eq!(s.schedule, default_schedule());
        assert_eq!((s.eps, s.tail_k, s.rng_seed), (1e-3, 3, 0));
        assert_eq!(s.connector, ConnectorSpec::Affine);
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let bad = r#"{"name": "t", "function": {"name": "ratio"}, "operator": "lambda_blend",
                      "probes": {"kind": "explicit", "points": []}, "colour": 1}"#;
        assert!(matches!(Scenario::from_json(bad), Err(Error::Config(_))));
        let bad_fn = r#"{"name": "t", "function": {"name": "ratio", "k": 1}, "operator": "lambda_blend",
                         "probes": {"kind": "explicit", "points": []}}"#;
        assert!(Scenario::from_json(bad_fn).is_err());
    }

    #[test]
    fn tagged_and_plain_y() {
        let p: ProbePoint = serde_json::from_str(r#"{"x": [0], "y": 0.5}"#).unwrap();
        assert_eq!(p.y.resolve(), TaggedReal::plain(0.5));
        let p: ProbePoint =
            serde_json::from_str(r#"{"x": [0], "y": {"value": 0.5, "exactness": {"tag": "rational", "num": 1, "den": 2}}}"#)
                .unwrap();
        assert!(p.y.resolve().same_point(&TaggedReal::rational(1, 2).unwrap()));
    }

    #[test]
    fn random_probes_are_seeded() {
        let spec = ProbeSpec::Random {
            x_lo: vec![-1.0],
            x_hi: vec![1.0],
            y_lo: -1.0,
            y_hi: 1.0,
            count: 5,
            min_radius: 0.5,
            include: vec![],
        };
        let a = spec.resolve(7).unwrap();
        assert_eq!(a, spec.resolve(7).unwrap());
        assert_ne!(a, spec.resolve(8).unwrap());
        assert!(a.iter().all(|p| p.x[0].hypot(p.y.resolve().value()) >= 0.5));
    }
}
