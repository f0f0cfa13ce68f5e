//! Error type shared by every module of the library.

use thiserror::Error;

/// Failures reported by library operations.
///
/// The CLI maps [`MilnorError::exit_code`] onto process exit codes: input
/// problems exit with 2, budget or applicability problems with 3.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MilnorError {
    #[error("malformed document: {0}")]
    Malformed(String),
    #[error("duplicate hyperplane: forms {0} and {1} define the same plane")]
    DuplicateHyperplane(usize, usize),
    #[error("form {0} is the zero vector")]
    ZeroForm(usize),
    #[error("unsupported field tag: {0}")]
    UnsupportedField(String),
    #[error("unknown catalog name: {0}")]
    UnknownName(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("search budget exceeded: {0}")]
    Budget(String),
    #[error("not applicable: {0}")]
    Inapplicable(String),
    #[error("missing certificate: {0}")]
    MissingCertificate(String),
}

impl MilnorError {
    /// Process exit code for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            MilnorError::Budget(_) | MilnorError::Inapplicable(_) | MilnorError::MissingCertificate(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, MilnorError>;
