use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty gcd")]
    EmptyGcd,

    #[error("invalid exponent vector: {0}")]
    InvalidExponents(String),

    #[error("index {index} outside 0..{len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("support needs at least 2 indices, got {0}")]
    SupportTooSmall(usize),

    #[error("iterate leaves orbit type (m = {m}, N = {multiplier})")]
    IterateLeavesOrbitType { m: String, multiplier: u64 },

    #[error("rotation angle must be positive")]
    NonPositiveAngle,

    #[error("homology index j = {j} exceeds orbit space dimension {dim}")]
    HomologyIndexOutOfRange { j: usize, dim: usize },

    #[error("degree-0 orbits unavoidable: sum of 1/a_j equals 1")]
    Degenerate,

    #[error("empty degree window [{lo}, {hi}]")]
    EmptyWindow { lo: i64, hi: i64 },

    #[error("dimension mismatch: n = {left} vs n = {right}")]
    DimensionMismatch { left: u64, right: u64 },

    #[error("number of copies must be at least 1")]
    InvalidCopies,

    #[error("invalid prime tuple: {0}")]
    InvalidPrimes(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
