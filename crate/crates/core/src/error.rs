use thiserror::Error;

/// Error taxonomy shared by the whole workspace.
///
/// `Input` and `Validation` are the caller's fault (CLI exit code 2);
/// `Internal` means an invariant the mathematics guarantees was violated,
/// which signals a bug (CLI exit code 3).
#[derive(Debug, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("internal consistency error: {0}")]
    Internal(String),
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Input(_) | Error::Validation(_) => 2,
            Error::Internal(_) => 3,
        }
    }
}
