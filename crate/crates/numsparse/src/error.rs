use thiserror::Error;

/// Errors surfaced by the estimation pipeline and its supporting modules.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("signal has no nonzero entries")]
    ZeroSignal,

    #[error("signals have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),

    #[error("absolute totals differ beyond tolerance ({0} vs {1})")]
    TotalMismatch(f64, f64),

    #[error("stability index q = {0} is outside (0, 2]")]
    InvalidQ(f64),

    #[error("unsupported noise family: {0}")]
    UnsupportedFamily(String),

    #[error("empty measurement batch")]
    EmptyBatch,

    #[error("all measurements are zero; median absolute deviation undefined")]
    AllZero,

    #[error("characteristic function does not exceed 1/2 near the origin")]
    NoEta0,

    #[error("pilot estimate nu_hat(t_pilot) = {0} is not positive; rho and t_opt are undefined")]
    PilotFailure(f64),

    #[error("q = {0} is too close to 1 for sparsity estimation (|q - 1| must be >= 0.05)")]
    QTooCloseToOne(f64),

    #[error("norm estimate must be positive, got {0}")]
    NonPositiveNormEstimate(f64),

    #[error("alpha levels must lie in [0, 1/2] and not both be 0")]
    InvalidAlpha,

    #[error("reference sparsity kappa must exceed 1, got {0}")]
    InvalidKappa(f64),

    #[error("invalid dimensions: {0}")]
    InvalidDims(String),

    #[error("expected a batch with q = {expected}, got q = {got}")]
    WrongQ { expected: f64, got: f64 },

    #[error("invalid configuration field `{field}`: {reason}")]
    InvalidConfig { field: String, reason: String },

    #[error("i/o error: {0}")]
    Io(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
