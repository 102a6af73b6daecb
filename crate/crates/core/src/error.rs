use thiserror::Error;

/// Errors raised by graph construction, analyses and file parsing.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),

    #[error("mapping is not a permutation of 0..{0}")]
    NotAPermutation(usize),

    #[error("permutation has length {got}, graph has {expected} vertices")]
    PermutationLength { expected: usize, got: usize },

    #[error("hop radius must be at least 1")]
    InvalidRadius,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("graph has {found} partitions but only {slots} slots are configured")]
    TooManyPartitions { found: usize, slots: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("suite: {0}")]
    Suite(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
