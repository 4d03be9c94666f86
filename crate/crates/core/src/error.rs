use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("hyperbolic phase {theta} is outside the representable range")]
    PhaseOverflow { theta: f64 },

    #[error("element is not in G+* (norm_sq = {norm_sq})")]
    NotInGPlusStar { norm_sq: f64 },

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("prime mismatch: {left} vs {right}")]
    PrimeMismatch { left: u64, right: u64 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("{name} = {value} is not a probability in [0, 1]")]
    InvalidProbability { name: &'static str, value: f64 },

    #[error("degenerate context: p1 * p2 = 0 (p1 = {p1}, p2 = {p2}), lambda is undefined")]
    DegenerateContext { p1: f64, p2: f64 },

    #[error("result {value} is not a probability")]
    NotAProbability { value: f64 },

    #[error("invalid context: {0}")]
    InvalidContext(String),

    #[error("operation requires {expected} mode")]
    ModeMismatch { expected: &'static str },

    #[error("invalid profile: {0}")]
    InvalidProfile(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid amplitude pair: {0}")]
    InvalidAmplitude(String),

    #[error("value is not representable exactly: {0}")]
    Inexact(String),

    #[error("parse error: {0}")]
    Parse(String),
}
