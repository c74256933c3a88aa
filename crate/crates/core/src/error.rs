use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// A diagram line that could not be tokenized or parsed as two numbers.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A diagram line that parsed but violates the point invariants.
    #[error("invalid point at line {line}: {message}")]
    Validation { line: usize, message: String },

    /// A point constructed directly with death <= birth or non-finite coordinates.
    #[error("invalid diagram point ({birth}, {death}): death must be finite and strictly greater than birth")]
    InvalidPoint { birth: f64, death: f64 },

    /// Inner norm exponent outside [1, inf].
    #[error("invalid norm q = {q}: expected q >= 1 or infinity")]
    InvalidNorm { q: f64 },

    /// Penalty weight that cannot be used to build a QUBO.
    #[error("invalid penalty: {message}")]
    InvalidPenalty { message: String },

    /// A bit assignment whose length does not match the variable count.
    #[error("assignment length mismatch: expected {expected} bits, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    /// An operation that needs at least one edge was given an empty graph.
    #[error("graph has no edges")]
    EmptyGraph,

    /// Exhaustive search refused: the state space 2^{num_vars} is too large.
    #[error("brute force refused: {num_vars} variables exceeds the limit of {limit} (2^{num_vars} states)")]
    TooManyVariables { num_vars: usize, limit: usize },

    /// Malformed QUBO file or sample-set document.
    #[error("format error: {message}")]
    Format { message: String },
}

impl Error {
    pub(crate) fn format(message: impl Into<String>) -> Self {
        Error::Format {
            message: message.into(),
        }
    }
}
