use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("length mismatch: {points} points but {weights} weights")]
    Length { points: usize, weights: usize },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("weight {index} = {value} outside [0, 1]")]
    WeightRange { index: usize, value: f64 },

    #[error("weights sum to {sum}, not 1")]
    WeightSum { sum: f64 },

    #[error("point {0:?} is outside the space")]
    OutsideSpace(Vec<f64>),

    #[error("parameter {name} = {value} out of range")]
    Parameter { name: &'static str, value: f64 },

    #[error("family keys are not strictly increasing at position {0}")]
    KeyOrder(usize),

    #[error("dense set produced no point within {radius} of {target:?}")]
    DenseSetExhausted { target: Vec<f64>, radius: f64 },

    #[error("anchoring fails at n = {n} for probe {x:?}")]
    NotAnchored { n: usize, x: Vec<f64> },

    #[error("no active partition key at {0:?}")]
    NoActiveKey(Vec<f64>),

    #[error("point {0:?} lies in no cover set")]
    Uncovered(Vec<f64>),

    #[error("supports {first} and {second} overlap at {x:?}")]
    NotDiscrete { first: String, second: String, x: Vec<f64> },

    #[error("bump is positive at {x:?} outside its declared support {key}")]
    SupportMismatch { key: String, x: Vec<f64> },

    #[error("probe {index} violates the membership hypothesis at n = {n}")]
    ProbeHypothesis { index: usize, n: usize },

    #[error("tower depth {0} is not supported (maximum 2)")]
    TowerDepth(usize),

    #[error("set inclusion H ⊆ F ∩ G fails at sample {0}")]
    Inclusion(usize),

    #[error("truncation needs {needed} terms but cap is {cap}")]
    TruncationCap { needed: usize, cap: usize },

    #[error("invalid sequential point: {0}")]
    SequentialPoint(String),

    #[error("scheme has n_max = {n_max}, requested n = {n}")]
    SchemeRange { n: usize, n_max: usize },

    #[error("config error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
