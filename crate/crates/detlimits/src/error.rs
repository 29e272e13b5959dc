use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("pole: {0}")]
    Pole(String),

    #[error("branch cut: {0}")]
    Cut(String),

    #[error("quadrature did not converge: error estimate {estimate:e} >= tol {tol:e} at {nodes} nodes")]
    NonConvergence { estimate: f64, tol: f64, nodes: usize },

    #[error("contours overlap: {0}")]
    Overlap(String),

    #[error("({tau}, {chi}) lies outside the liquid region")]
    Region { tau: f64, chi: f64 },

    #[error("parity: {0}")]
    Parity(String),

    #[error("window does not cover the required range: {0}")]
    Coverage(String),

    #[error("oracle tail bound {tail:e} exceeds {limit:e}")]
    TailTooLarge { tail: f64, limit: f64 },

    #[error("numerical degeneracy: {0}")]
    Degenerate(String),

    #[error("invalid parameter `{0}`: {1}")]
    Parameter(String, String),

    #[error("config parse error at line {line}: {msg}")]
    ConfigParse { line: usize, msg: String },

    #[error("config validation error at `{key}`: {msg}")]
    ConfigValidation { key: String, msg: String },

    #[error("usage: {0}")]
    Usage(String),

    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
