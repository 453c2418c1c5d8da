use thiserror::Error;

/// Errors produced by graph construction, enumeration and the oracles.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("parse error at `{token}`: {reason}")]
    Parse { token: String, reason: String },

    #[error("bipartite graph is disconnected")]
    Disconnected,

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("vertex index {index} out of range for part of size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("not a hypertree: {0:?}")]
    NotAHypertree(Vec<u32>),

    #[error("guard exceeded: {guard} (instance: {instance})")]
    GuardExceeded { guard: String, instance: String },

    #[error("negative entry in lattice vector at position {0}")]
    NegativeEntry(usize),

    #[error("inapplicable: {0}")]
    Inapplicable(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
