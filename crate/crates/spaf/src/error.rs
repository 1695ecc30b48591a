//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpafError {
    /// Malformed graph file. `line` is 1-based and refers to the input as
    /// read, comments included.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// A vertex id outside 1..=n was handed to a solver or query.
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    /// Capacity literal that is not a positive plain decimal.
    #[error("invalid capacity literal {literal:?}: {msg}")]
    InvalidCapacity { literal: String, msg: String },

    /// Operands whose dimensions do not line up.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A parameter outside its documented domain (e.g. horizon r).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Requested more edges than distinct ordered pairs exist.
    #[error("cannot place {m} edges in a graph with {n} vertices (max {max})")]
    TooManyEdges { n: usize, m: usize, max: usize },

    /// Solver output failed an internal consistency check. Indicates a bug,
    /// not bad input.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),

    #[error("result JSON: {0}")]
    ResultFormat(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, SpafError>;
