use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cyclotomic order mismatch: Q(z_{0}) vs Q(z_{1})")]
    OrderMismatch(u32, u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("parity violation: {0}")]
    Parity(String),
    #[error("not idempotent: {0}")]
    NotIdempotent(String),
    #[error("degenerate pairing: {0}")]
    Degenerate(String),
    #[error("invalid algebra data: {0}")]
    InvalidAlgebra(String),
    #[error("r mismatch: algebra has r={algebra}, surface has r={surface}")]
    RMismatch { algebra: u32, surface: u32 },
    #[error("inadmissible surface: {0}")]
    Inadmissible(String),
    #[error("infinite-dimensional quotient: variable `{0}` is unbounded in the staircase")]
    InfiniteQuotient(String),
    #[error("cohomology computation inconclusive: {0}")]
    Inconclusive(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("matrix factorization check failed: {0}")]
    Factorization(String),
    #[error("cross-check mismatch: {0}")]
    CrossCheck(String),
}

pub type Result<T> = std::result::Result<T, Error>;
