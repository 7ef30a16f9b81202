use std::fmt;

use thg_core::{Error, ErrorKind};

/// Everything the front end can fail with.
#[derive(Debug)]
pub enum ThgError {
    /// A model file failed to load; the first field names the file.
    Model(String, Error),
    /// A computation on a loaded model failed.
    Compute(Error),
    Parse(String),
    Io(String),
    Usage(String),
}

impl ThgError {
    /// Process exit code: 1 for computation errors, 2 for anything about the input.
    pub fn exit_code(&self) -> i32 {
        match self {
            ThgError::Compute(e) => match e.kind {
                ErrorKind::InvalidInput | ErrorKind::NotFound => 2,
                _ => 1,
            },
            _ => 2,
        }
    }
}

impl fmt::Display for ThgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThgError::Model(file, e) => write!(f, "{file}: {e}"),
            ThgError::Compute(e) => write!(f, "{e}"),
            ThgError::Parse(m) => write!(f, "parse error: {m}"),
            ThgError::Io(m) => write!(f, "io error: {m}"),
            ThgError::Usage(m) => write!(f, "usage: {m}"),
        }
    }
}

impl std::error::Error for ThgError {}

impl From<Error> for ThgError {
    fn from(e: Error) -> Self {
        ThgError::Compute(e)
    }
}
