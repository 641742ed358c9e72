use thiserror::Error;

/// Errors raised while building or analysing a resistive network.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{context}: edge length must be positive and finite, got {length}")]
    InvalidLength { context: String, length: f64 },

    #[error("graph has no vertices")]
    Empty,

    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },

    #[error("graph is not optimal (self-loops or parallel edges present); call optimalize first")]
    NotOptimal,

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("vertex index {index} out of range for {n} vertices")]
    VertexOutOfRange { index: usize, n: usize },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    Dimension { expected: usize, found: usize },

    #[error("inconsistent singular system: right-hand side sums to {sum:e} (must be centered)")]
    Inconsistent { sum: f64 },

    #[error("numerically singular system (condition estimate {condition:e})")]
    Numerical { condition: f64 },

    #[error("{0}")]
    Domain(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
