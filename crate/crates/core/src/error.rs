use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("variable count mismatch: {left} vs {right}")]
    VarMismatch { left: usize, right: usize },

    #[error("truncation degree mismatch: {left} vs {right}")]
    TruncMismatch { left: u32, right: u32 },

    #[error("arity mismatch: expected {expected} substitutions, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("substituted series {index} has nonzero constant term")]
    NonzeroConstant { index: usize },

    #[error("variable index {index} out of range for {num_vars} variables")]
    VarIndex { index: usize, num_vars: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid formal group law: {0}")]
    InvalidLaw(String),

    #[error("Jacobi identity fails for (e{0}, e{1}, e{2})")]
    Jacobi(usize, usize, usize),

    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("mixed primes {0} and {1}")]
    MixedPrimes(u32, u32),

    #[error("{0} is not prime")]
    NotPrime(u32),

    #[error("point is not in the standard group of level {level}")]
    NotInGroup { level: u32 },

    #[error("precision certificate failed: {0}")]
    Certification(String),

    #[error("coefficient is not p-integral for p = {p}: {detail}")]
    NonIntegral { p: u32, detail: String },

    #[error("series is not in the modified ring up to degree {degree}")]
    NotModified { degree: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;
