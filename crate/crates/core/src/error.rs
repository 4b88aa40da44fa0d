use thiserror::Error;

/// Errors produced by the library.
///
/// The variants line up with the CLI exit codes: input-shaped problems exit
/// with 2, exhausted search budgets with 3.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid 2-factor: {0}")]
    Contract(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("resource guard tripped: {0}")]
    Resource(String),

    /// A constructive procedure produced an object that failed verification.
    /// These should be impossible; they are surfaced instead of panicking so
    /// that batch runs can report them.
    #[error("verification discrepancy: {0}")]
    Discrepancy(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn parse(offset: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: msg.into(),
        }
    }

    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Resource(_))
    }
}
