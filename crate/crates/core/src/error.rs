use thiserror::Error;

/// Errors raised by the library.
///
/// Property failures (a lattice that is not completely normal, a witness that
/// does not separate, ...) are not errors: they are reported as values. This
/// type is reserved for malformed input, violated preconditions and resource
/// ceilings.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("precondition violated: {0}")]
    Contract(String),
    #[error("{what} exceeded the ceiling of {limit}")]
    ResourceLimit { what: &'static str, limit: usize },
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    /// True for errors caused by the caller's data rather than by a ceiling.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::ResourceLimit { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
