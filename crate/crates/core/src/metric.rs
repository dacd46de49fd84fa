//! Positive-definite metric operators and the η-inner product.
//!
//! A metric `η` is stored with its square root `ρ = η^{1/2}`, `ρ⁻¹` and
//! `η⁻¹`. Kets are plain coordinate vectors; the η-side ket of `φ` is `ηφ`
//! and bras are conjugate transposes, so no separate bra type exists.

use alloc::vec::Vec;

use crate::numkernel::{c64, dot, pd_sqrt_pair, ComplexMatrix, HERMITIAN_TOL};
use crate::{Error, Result};

/// Hermitian positive-definite `η` with precomputed `ρ`, `ρ⁻¹` and `η⁻¹`.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricOperator {
    eta: ComplexMatrix,
    rho: ComplexMatrix,
    rho_inv: ComplexMatrix,
    eta_inv: ComplexMatrix,
}

/// Which way [`MetricOperator::apply`] maps a ket.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// H-ket to η-ket: `k ↦ ηk`.
    Forward,
    /// η-ket to H-ket: `k ↦ η⁻¹k`.
    Inverse,
}

/// A ket in both pictures: `eta_ket = η · h_ket`.
#[derive(Debug, Clone, PartialEq)]
pub struct KetPair {
    pub h_ket: Vec<c64>,
    pub eta_ket: Vec<c64>,
}

impl MetricOperator {
    /// Factorizes `eta`; fails unless it is Hermitian and positive definite
    /// (smallest eigenvalue above `1e-12` times the largest).
    pub fn new(eta: ComplexMatrix) -> Result<Self> {
        if !eta.is_square() {
            return Err(Error::NotSquare { rows: eta.rows(), cols: eta.cols() });
        }
        let residual = eta.hermiticity_residual();
        if residual > HERMITIAN_TOL {
            return Err(Error::NotHermitian { residual });
        }
        let eta = eta.hermitian_part();
        let (rho, rho_inv) = pd_sqrt_pair(&eta)?;
        let eta_inv = &rho_inv * &rho_inv;
        Ok(Self { eta, rho, rho_inv, eta_inv })
    }

    /// The trivial metric `η = I`.
    pub fn identity(n: usize) -> Self {
        let i = ComplexMatrix::identity(n);
        Self { eta: i.clone(), rho: i.clone(), rho_inv: i.clone(), eta_inv: i }
    }

    pub fn dim(&self) -> usize {
        self.eta.rows()
    }

    pub fn eta(&self) -> &ComplexMatrix {
        &self.eta
    }

    pub fn rho(&self) -> &ComplexMatrix {
        &self.rho
    }

    pub fn rho_inv(&self) -> &ComplexMatrix {
        &self.rho_inv
    }

    pub fn eta_inv(&self) -> &ComplexMatrix {
        &self.eta_inv
    }

    fn check_len(&self, v: &[c64]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::shape(format_args!("vector of length {}", self.dim()), v.len()));
        }
        Ok(())
    }

    /// `⟨φ, ψ⟩_η = φ† η ψ`.
    pub fn inner(&self, phi: &[c64], psi: &[c64]) -> Result<c64> {
        self.check_len(phi)?;
        let eta_psi = self.eta.mul_vec(psi)?;
        Ok(dot(phi, &eta_psi))
    }

    pub fn apply(&self, k: &[c64], direction: Direction) -> Result<Vec<c64>> {
        match direction {
            Direction::Forward => self.eta.mul_vec(k),
            Direction::Inverse => self.eta_inv.mul_vec(k),
        }
    }

    pub fn ket_pair(&self, h_ket: Vec<c64>) -> Result<KetPair> {
        let eta_ket = self.apply(&h_ket, Direction::Forward)?;
        Ok(KetPair { h_ket, eta_ket })
    }

    /// η-adjoint `η⁻¹ A† η`; equals `A` exactly when `A` is η-quasi-Hermitian.
    pub fn adjoint_of(&self, a: &ComplexMatrix) -> Result<ComplexMatrix> {
        a.expect_square(self.dim())?;
        Ok(&(&self.eta_inv * &a.adjoint()) * &self.eta)
    }

    /// `‖A†η − ηA‖_F / (‖A‖_F ‖η‖_F)`; zero for the zero operator.
    pub fn quasi_hermiticity_residual(&self, a: &ComplexMatrix) -> Result<f64> {
        a.expect_square(self.dim())?;
        let scale = a.frobenius_norm() * self.eta.frobenius_norm();
        if scale == 0.0 {
            return Ok(0.0);
        }
        let lhs = &a.adjoint() * &self.eta;
        let rhs = &self.eta * a;
        Ok((&lhs - &rhs).frobenius_norm() / scale)
    }
}
