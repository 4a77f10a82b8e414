use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("size bound exceeded: {what} = {size} > {bound}")]
    Bound { what: String, size: usize, bound: usize },
    #[error("category mismatch: {0}")]
    Mismatch(String),
    #[error("scalar field lacks {0}")]
    MissingScalar(String),
    #[error("{check} failed at {at}: {detail}")]
    Verification {
        check: String,
        at: String,
        detail: String,
    },
    #[error("unexpected solution space dimension {found} (expected {expected}) in {context}")]
    SolutionDim {
        context: String,
        found: usize,
        expected: usize,
    },
    #[error("could not decide: {0}")]
    Undetermined(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Invalid(msg.into()))
}

pub(crate) fn verification(check: &str, at: impl Into<String>, detail: impl Into<String>) -> Error {
    Error::Verification {
        check: check.to_string(),
        at: at.into(),
        detail: detail.into(),
    }
}
