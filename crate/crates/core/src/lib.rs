//! Numerical toolkit for quasi-Hermitian quantum systems with a
//! positive-definite metric.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is a pure
//! function of its inputs: dense complex kernels, metric operators and
//! η-inner products, metric discovery from the intertwining relation
//! `A†η = ηA`, bi-orthogonal eigensystems with their spectral expansions,
//! representation changes against a Hermitian reference observable,
//! Gauss–Hermite quadrature, and the PT-symmetric Swanson oscillator.
//!
//! ```
//! use metriq_core::{biorth, intertwiner, ComplexMatrix};
//!
//! let a = ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[0.0, 2.0]]).unwrap();
//! let found = intertwiner::solve_metric(&a, 1000, 7).unwrap();
//! let system = biorth::QuasiHermitianSystem::new(a, found.metric).unwrap();
//! let basis = biorth::diagonalize(&system).unwrap();
//! assert!((basis.eigenvalues[0] - 1.0).abs() < 1e-10);
//! assert!((basis.eigenvalues[1] - 2.0).abs() < 1e-10);
//! ```
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod biorth;
mod error;
pub mod intertwiner;
pub mod metric;
pub mod numkernel;
pub mod quadrature;
pub mod swanson;
#[cfg(test)]
mod test_support;
pub mod transform;

pub use error::{Error, Result};
pub use metric::MetricOperator;
pub use numkernel::{c64, ComplexMatrix, EigenDecomposition};
