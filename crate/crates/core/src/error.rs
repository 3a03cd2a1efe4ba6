use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is singular (condition estimate {condition:e})")]
    Singular { condition: f64 },

    #[error("eigenvalue iteration did not converge: {iterations} iterations on row {row}")]
    Convergence { iterations: usize, row: usize },

    #[error("index error: {0}")]
    Index(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("truncation error: {0}")]
    Truncation(String),

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl Error {
    pub(crate) fn truncation(needed: usize, available: usize, what: &str) -> Self {
        Error::Truncation(format!(
            "{what} needs order {needed}, only {available} available; increase the order"
        ))
    }
}
