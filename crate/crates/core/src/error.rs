use thiserror::Error;

pub type Result<T> = std::result::Result<T, OmError>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum OmError {
    #[error("ground-set mismatch: lengths {left} and {right}")]
    GroundMismatch { left: usize, right: usize },

    #[error("{what} {size} exceeds the configured cap of {cap}; build the oriented matroid from a chirotope or matrix, or raise the cap")]
    CapExceeded { what: &'static str, size: usize, cap: usize },

    #[error("matrix has rank {actual}, expected {expected}")]
    MatrixRank { expected: usize, actual: usize },

    #[error("empty cocircuit set")]
    EmptyCocircuits,

    #[error("unknown element {0:?}")]
    UnknownElement(String),

    #[error("{0} is not a base")]
    NotABase(String),

    #[error("invalid localization: {0}")]
    InvalidLocalization(String),

    #[error("element {0} is not in general position")]
    NotGeneralPosition(String),

    #[error("invalid program: {0}")]
    InvalidProgram(String),

    #[error("degenerate objective: {0}; perturb the objective lexicographically (for example `--ext lex:<e>+,...`) and retry")]
    Degenerate(String),

    #[error("source/sink structure broken: {0}")]
    SourceSink(String),

    #[error("sink {to} is unreachable from source {from}")]
    Unreachable { from: String, to: String },

    #[error("search budget of {0} localizations exhausted without a certificate")]
    BudgetExhausted(usize),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("{0} is a digraph-only catalog entry and carries no oriented matroid")]
    DigraphOnly(String),

    #[error("{0}")]
    InvalidInput(String),

    #[error("internal assertion failed: {0}")]
    Internal(String),
}

impl OmError {
    /// Place a parse error found in a substring starting at `offset` (0-based)
    /// on the given line.
    pub(crate) fn at(self, line: usize, offset: usize) -> OmError {
        match self {
            OmError::Parse { column, message, .. } => OmError::Parse { line, column: column.max(1) + offset, message },
            other => other,
        }
    }
}
