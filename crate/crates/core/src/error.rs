use thiserror::Error;

/// Errors raised by the arithmetic kernels and the verification drivers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("{value} is not invertible modulo {modulus}")]
    NotInvertible { value: i64, modulus: u64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u64, right: u64 },

    /// The operation refuses to run because the input does not satisfy the
    /// hypothesis its result is supposed to certify.
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),

    /// Two independent computations of the same quantity disagreed. Always a bug.
    #[error("internal consistency failure: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
