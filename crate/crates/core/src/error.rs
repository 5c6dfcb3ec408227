use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("node {node} out of range (graph has {n} nodes, indices are 1-based)")]
    NodeOutOfRange { node: usize, n: usize },

    #[error("feature {feature} has not been introduced before node {node}")]
    FeatureNotIntroduced { feature: usize, node: usize },

    #[error("feature matrix invariant violated at node {node}: {reason}")]
    NotLeftOrdered { node: usize, reason: String },

    #[error("invalid edge ({i}, {j}): {reason}")]
    InvalidEdge { i: usize, j: usize, reason: &'static str },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("degenerate regression: all regressor values are equal")]
    DegenerateRegression,

    #[error("parameter not identifiable: {0}")]
    NotIdentifiable(String),

    #[error("link count {ell} is outside the achievable range ({low}, {high})")]
    LinkCountOutOfRange { ell: f64, low: f64, high: f64 },

    #[error("root finder did not converge: {0}")]
    NoConvergence(String),

    #[error("graph has edges without phase labels; the first-phase subgraph cannot be recovered")]
    MissingPhaseLabels,

    #[error("inconsistent graph: {0}")]
    InconsistentGraph(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("document {id}: {reason}")]
    InvalidRecord { id: String, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
