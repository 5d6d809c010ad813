use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or inconsistent arguments: foreign alternatives, empty
    /// subsets, mismatched alternative sets, cyclic partial orders.
    #[error("invalid input: {0}")]
    Input(String),

    /// An enumeration was requested beyond its configured size cap.
    #[error("{what} is {got}, which exceeds the configured cap of {cap}")]
    Capacity { what: &'static str, cap: usize, got: usize },

    /// The exact solver hit its node budget before reaching a verdict.
    #[error("solver budget of {budget} nodes exhausted")]
    BudgetExhausted { budget: u64 },

    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A self-check failed. Always a bug.
    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn capacity(what: &'static str, cap: usize, got: usize) -> Self {
        Error::Capacity { what, cap, got }
    }
}
