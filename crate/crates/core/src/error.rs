use thiserror::Error;

#[derive(Debug, Error)]
pub enum FswError {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("{what} cap exceeded (limit {limit})")]
    CapExceeded { what: &'static str, limit: u64 },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("unknown atlas name: {0}")]
    UnknownName(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, FswError>;

impl FswError {
    pub fn cap(what: &'static str, limit: u64) -> FswError {
        FswError::CapExceeded { what, limit }
    }

    pub fn is_cap(&self) -> bool {
        matches!(self, FswError::CapExceeded { .. })
    }
}
