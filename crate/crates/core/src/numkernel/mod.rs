//! Dense complex linear algebra shared by every other module.
//!
//! The main factorization is a cyclic Jacobi eigensolver for Hermitian
//! matrices; square roots and null spaces are built on it. Quadrature
//! nodes use a separate implicit-QL solver for symmetric tridiagonal
//! matrices, which needs no eigenvectors. Reductions run in a fixed order so results do not depend on the
//! caller.

mod eigen;
mod matrix;
mod nullspace;
mod tridiagonal;

pub use eigen::{hermitian_eigen, pd_sqrt_pair, EigenDecomposition, JACOBI_MAX_SWEEPS};
pub use matrix::{c64, dot, norm, ComplexMatrix};
pub use nullspace::{nullspace_gram, solve};
pub use tridiagonal::symmetric_tridiagonal_eigenvalues;

/// Relative Hermiticity tolerance accepted by [`hermitian_eigen`].
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Smallest accepted ratio `λ_min / λ_max` for positive-definite input.
pub const PD_RATIO: f64 = 1e-12;
