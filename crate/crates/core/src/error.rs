use thiserror::Error;

/// Errors raised by the library.
///
/// Every variant maps onto one of the four machine-readable codes printed by
/// the command-line tool (see [`Error::code`]).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("the form has no {} root", if *.nonzero { "nonzero" } else { "" })]
    NoRoot { nonzero: bool },

    #[error("basis is not self-dual")]
    NotSelfDual,

    #[error("retry budget of {budget} exhausted during {stage}{}", .rng_state.as_ref().map(|s| format!(" (rng {s})")).unwrap_or_default())]
    BudgetExhausted {
        stage: String,
        budget: u64,
        rng_state: Option<String>,
    },

    #[error("search space too large: {what} has size {size}, limit {limit}")]
    TooLarge {
        what: String,
        size: String,
        limit: String,
    },

    #[error("malformed input: {0}")]
    Format(String),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn format(msg: impl Into<String>) -> Self {
        Error::Format(msg.into())
    }

    pub(crate) fn too_large(
        what: impl Into<String>,
        size: impl ToString,
        limit: impl ToString,
    ) -> Self {
        Error::TooLarge {
            what: what.into(),
            size: size.to_string(),
            limit: limit.to_string(),
        }
    }

    /// Stable error code used on the CLI error stream.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidParameter(_)
            | Error::DimensionMismatch { .. }
            | Error::NoRoot { .. }
            | Error::NotSelfDual => "E_PARAM",
            Error::BudgetExhausted { .. } => "E_BUDGET",
            Error::TooLarge { .. } => "E_SIZE",
            Error::Format(_) => "E_FORMAT",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_len(expected: usize, actual: usize) -> Result<()> {
    if expected == actual {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, actual })
    }
}
