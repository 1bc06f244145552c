use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{source_name}:{line}:{column}: {kind}")]
    Parse {
        source_name: String,
        line: usize,
        column: usize,
        kind: ParseErrorKind,
    },

    #[error("presentation {name} is inconsistent ({count} violated consistency tests)")]
    Inconsistent { name: String, count: usize },

    #[error("resource guard exceeded: {what} needs {needed}, cap is {cap}")]
    GuardExceeded {
        what: &'static str,
        needed: u128,
        cap: u128,
    },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("duplicate group id {0}")]
    DuplicateId(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

/// What went wrong while reading corpus text.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("generator index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("right-hand side not in normal form: {0}")]
    NotNormal(String),
    #[error("RHS index not > i: relation for generator {rel} mentions g{found}")]
    RhsIndexNotGreater { rel: usize, found: usize },
    #[error("declared order {declared} does not match product of relative orders {actual}")]
    OrderMismatch { declared: u64, actual: u64 },
    #[error("relative order of g{0} must be at least 2")]
    DegenerateGenerator(usize),
    #[error("duplicate relation: {0}")]
    DuplicateRelation(String),
    #[error("missing `{0}` line")]
    Missing(&'static str),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn guard(what: &'static str, needed: u128, cap: u128) -> Self {
        Error::GuardExceeded { what, needed, cap }
    }
}
