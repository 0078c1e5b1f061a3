use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid catalog: {0}")]
    Catalog(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("header mismatch: {0}")]
    Header(String),

    #[error("validation failed: {}", .0.join("; "))]
    Validation(Vec<String>),

    #[error("series length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("series too short: need at least {needed} values, got {got}")]
    TooShort { needed: usize, got: usize },

    #[error("threshold must lie in (0, 1], got {0}")]
    InvalidThreshold(f64),

    #[error("margin must be finite and >= 0, got {0}")]
    InvalidMargin(f64),

    #[error("unknown variable id {0}")]
    UnknownVariable(usize),

    #[error("conditioning requires two distinct variables, got {0} twice")]
    SameVariable(usize),

    #[error("invalid edge list at line {line}: {message}")]
    EdgeList { line: usize, message: String },

    #[error("edge {0} -> {1} references a node outside the catalog")]
    EdgeEndpoint(usize, usize),

    #[error("duplicate edge {0} -> {1}")]
    DuplicateEdge(usize, usize),

    #[error("set {0:?} is not an attractor of the graph")]
    NotAnAttractor(Vec<usize>),

    #[error("orbit intersection of an empty set is undefined")]
    EmptySet,

    #[error("matrix must be {expected}x{expected}, got {rows}x{cols}")]
    DimensionMismatch {
        expected: usize,
        rows: usize,
        cols: usize,
    },

    #[error("graph has {got} nodes; this brute-force routine is capped at {cap}")]
    SizeCap { cap: usize, got: usize },

    #[error("invalid planted model: {0}")]
    InvalidModel(String),
}
