use thiserror::Error;

/// Errors raised by the algebra engine.
///
/// Mathematical negative answers (a failed axiom, a non-exact class, two
/// inequivalent extensions) are reported through result values, never
/// through this type.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Inconsistent session configuration: arity mismatch, bad prime, mixed fields.
    #[error("configuration error: {0}")]
    Config(String),

    /// Malformed or inconsistent input data.
    #[error("input error: {0}")]
    Input(String),

    /// An operation was called outside its domain of definition.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A computation would exceed the configured truncation degree.
    #[error("truncation: {0}")]
    Truncation(String),

    /// Graded slicing was requested but the data is not homogeneous.
    #[error("not graded: {0}")]
    NotGraded(String),

    /// A feature outside the supported computational window.
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
