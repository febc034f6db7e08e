use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[non_exhaustive]
pub enum Error {
    #[error("real dimension {0} is not one of 1, 2, 4, 8")]
    InvalidAlgebra(u32),

    #[error("octonion matrices are not supported; beta = 8 is accepted only by scalar formulas")]
    OctonionMatrix,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("matrix is not Hermitian (residual {residual:.3e})")]
    NotHermitian { residual: f64 },

    #[error("quaternion embedding violates the symplectic symmetry (residual {residual:.3e})")]
    NotSymplectic { residual: f64 },

    #[error("matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("matrix is singular")]
    Singular,

    #[error("eigenvalues {index} and {} collide (relative gap {gap:.3e})", index + 1)]
    EigenvalueCollision { index: usize, gap: f64 },

    #[error("spectrum must be strictly decreasing and positive: {0}")]
    InvalidSpectrum(String),

    #[error("{parameter} = {value} must exceed {rule} = {bound}")]
    Domain {
        parameter: &'static str,
        value: f64,
        bound: f64,
        rule: &'static str,
    },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error(
        "series not converged at degree {degree}: relative tail {tail:.3e}, partial log-sum {partial_log}"
    )]
    Truncation {
        partial_log: f64,
        degree: usize,
        tail: f64,
    },

    #[error("a leading minor vanished while evaluating a complex weighted power")]
    VanishingMinor,

    #[error("unsupported: {0}")]
    Unsupported(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
