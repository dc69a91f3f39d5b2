use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed rational {0:?}")]
    MalformedRational(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("site {site} out of range 1..={len}")]
    SiteOutOfRange { site: usize, len: usize },
    #[error("invalid lattice spec: {0}")]
    InvalidSpec(String),
    #[error("invalid external configuration: {0}")]
    InvalidConfig(String),
    #[error("spec is not the initial configuration G0")]
    NotInitial,
    #[error("degenerate parameters: {0}")]
    Degenerate(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
