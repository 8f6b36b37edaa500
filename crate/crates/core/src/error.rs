use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("field exponent must be at least 1")]
    ZeroExponent,
    #[error("field order {order} exceeds the supported maximum {max}")]
    FieldTooLarge { order: u64, max: u32 },
    #[error("element code {code} out of range for GF({q})")]
    ElementOutOfRange { code: u32, q: u32 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("the rows span the zero subspace")]
    EmptySpan,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("code {0} is degenerate")]
    Degenerate(String),
    #[error("{what}: size {size} exceeds cap {cap}")]
    CapExceeded { what: &'static str, size: u128, cap: u128 },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("certificate rejected: {0}")]
    CertificateRejected(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn params(msg: impl Into<String>) -> Self {
        Error::InvalidParams(msg.into())
    }
}
