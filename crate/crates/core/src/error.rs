use thiserror::Error;

use crate::algebra::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input: wrong table shapes, out-of-range indices and the like.
    #[error("structural error: {0}")]
    Structural(String),

    /// The tables are well formed but fail one or more axioms.
    #[error("invalid residuated lattice: {0}")]
    Invalid(Box<ValidationReport>),

    /// A precondition of an operation does not hold (with a witness).
    #[error("{0}")]
    Precondition(String),

    /// A mathematical statement the workbench checks turned out false.
    #[error("violation of {statement}: {witness}")]
    Violation { statement: String, witness: String },

    #[error("search bound exceeded: {needed} candidates, bound is {bound}")]
    BoundExceeded { needed: u128, bound: u128 },

    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
}

impl Error {
    pub(crate) fn violation(statement: impl Into<String>, witness: impl Into<String>) -> Self {
        Error::Violation {
            statement: statement.into(),
            witness: witness.into(),
        }
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    /// True when the error reports a mathematical violation rather than bad input.
    pub fn is_violation(&self) -> bool {
        matches!(self, Error::Violation { .. })
    }
}
