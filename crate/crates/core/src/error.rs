use alloc::string::String;
use alloc::vec::Vec;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("matrix entries must be finite")]
    NonFinite,
    #[error("shape mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: String, found: String },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not Hermitian (relative residual {residual:e})")]
    NotHermitian { residual: f64 },
    #[error("Jacobi eigensolver did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("matrix is not positive definite (eigenvalue ratio {ratio:e})")]
    NotPositiveDefinite { ratio: f64 },
    #[error("matrix square root inaccurate (relative residual {residual:e})")]
    IllConditioned { residual: f64 },
    #[error("matrix is singular to working precision")]
    Singular,
    #[error("no positive-definite metric found (Hermitian solution space of dimension {nullspace_dim}, exhaustive: {exhaustive})")]
    MetricNotFound { nullspace_dim: usize, exhaustive: bool },
    #[error("dimension {dim} exceeds the supported maximum {max}")]
    DimensionTooLarge { dim: usize, max: usize },
    #[error("operator is not quasi-Hermitian for this metric (relative residual {residual:e})")]
    NotQuasiHermitian { residual: f64 },
    #[error("similarity transform rho A rho^-1 is not Hermitian (relative residual {residual:e})")]
    SimilarityNotHermitian { residual: f64 },
    #[error("size {value} outside the allowed range {min}..={max}")]
    SizeOutOfRange { value: usize, min: usize, max: usize },
    #[error("polynomial degree {degree} exceeds the maximum {max}")]
    DegreeOutOfRange { degree: usize, max: usize },
    #[error("invalid parameters: {}", .failed.join("; "))]
    InvalidParameters { failed: Vec<String> },
    #[error("quadrature grid under-resolves the basis (residual {residual:e})")]
    QuadratureUnderresolved { residual: f64 },
}

impl Error {
    pub(crate) fn shape(expected: impl core::fmt::Display, found: impl core::fmt::Display) -> Self {
        use alloc::string::ToString;
        Error::DimensionMismatch { expected: expected.to_string(), found: found.to_string() }
    }
}
