use thiserror::Error;

/// Errors produced by pattern, matrix, learner, and harness operations.
#[derive(Debug, Error)]
pub enum Error {
    /// A size argument (neuron count, memory count, fragment length) is out of range.
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    /// Two objects that must agree on network size do not.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// A pattern element was neither -1 nor +1.
    #[error("invalid pattern element {value} at index {index} (must be -1 or +1)")]
    InvalidElement { index: usize, value: i64 },

    /// A weight matrix that must be symmetric is not.
    #[error("matrix not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    /// A weight matrix that must have a zero diagonal does not.
    #[error("nonzero diagonal entry at index {0}")]
    NonzeroDiagonal(usize),

    /// A neuron ordering is not a permutation of 0..n.
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    /// A configuration value (learning rate, grid, levels) is out of range.
    #[error("invalid config: {0}")]
    InvalidConfig(String),

    /// Text input (pattern file, matrix file, threshold file) failed to parse.
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// Asked to emit an empty row set.
    #[error("no rows to emit")]
    EmptyRows,

    /// An I/O failure, tagged with the destination it occurred on.
    #[error("i/o error on {dest}: {source}")]
    Io {
        dest: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
