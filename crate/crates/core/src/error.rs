use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed arguments: non-finite coordinates, bad indices, unbalanced colours.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The input violates general position; `witness` holds the offending point indices.
    #[error("degenerate configuration {witness:?}: {reason}")]
    Degenerate { witness: Vec<usize>, reason: String },

    /// A guarantee that should hold on valid input did not.
    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn degenerate(witness: Vec<usize>, reason: impl Into<String>) -> Self {
        Error::Degenerate {
            witness,
            reason: reason.into(),
        }
    }
}
