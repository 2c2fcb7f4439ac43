use thiserror::Error;

/// Errors raised by the exact-arithmetic and classification routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("factorization unavailable: {0}")]
    FactorizationUnavailable(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("linear system has no solution")]
    NoSolution,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("newton iteration did not converge for {0}")]
    IterationDiverged(String),
    #[error("no T-invariant E-structure: {0}")]
    NoEStructure(String),
    #[error("inconsistent invariant: {0}")]
    InconsistentInvariant(String),
    #[error("affine map is not invertible")]
    NotInvertible,
    #[error("enumeration too large: {0}")]
    TooLarge(String),
}

pub type Result<T> = std::result::Result<T, Error>;
