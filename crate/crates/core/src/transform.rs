//! Representation changes between the eigenbasis of a Hermitian reference
//! observable `B` and a bi-orthogonal basis.
//!
//! Tables are indexed `ω` ascending (rows) by `λ` ascending (columns):
//! `factors_eta[m][n] = wₘ†ηvₙ` and `factors_h[m][n] = wₘ†vₙ`. Going
//! forward consumes H-side coefficients `vₙ†φ` and yields plain projections
//! `wₘ†φ`; going back uses the H table.

use alloc::vec::Vec;

use crate::biorth::BiorthogonalBasis;
use crate::metric::MetricOperator;
use crate::numkernel::{c64, hermitian_eigen, ComplexMatrix};
use crate::{Error, Result};

/// Orthonormal eigenvectors `wₘ` of a Hermitian `B`, eigenvalues ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianBasis {
    pub eigenvalues: Vec<f64>,
    pub kets: ComplexMatrix,
}

impl HermitianBasis {
    pub fn from_hermitian(b: &ComplexMatrix) -> Result<Self> {
        let eig = hermitian_eigen(b)?;
        Ok(Self { eigenvalues: eig.eigenvalues, kets: eig.eigenvectors })
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `‖W†W − I‖_F`.
    pub fn orthonormality_residual(&self) -> f64 {
        (&(&self.kets.adjoint() * &self.kets) - &ComplexMatrix::identity(self.dim())).frobenius_norm()
    }

    /// `‖Σwₘwₘ† − I‖_F`.
    pub fn completeness_residual(&self) -> f64 {
        (&(&self.kets * &self.kets.adjoint()) - &ComplexMatrix::identity(self.dim())).frobenius_norm()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransformTable {
    /// `⟨ωₘ|λₙ⟩_η = wₘ†ηvₙ`.
    pub factors_eta: ComplexMatrix,
    /// `⟨ωₘ|λₙ⟩_H = wₘ†vₙ`.
    pub factors_h: ComplexMatrix,
    pub b_eigenvalues: Vec<f64>,
    pub a_eigenvalues: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    LambdaToOmega,
    OmegaToLambda,
}

fn check_dims(hb: &HermitianBasis, bb: &BiorthogonalBasis, m: &MetricOperator) -> Result<usize> {
    let n = bb.dim();
    if hb.dim() != n || m.dim() != n {
        return Err(Error::shape(
            format_args!("bases and metric of dimension {n}"),
            format_args!("reference basis {}, metric {}", hb.dim(), m.dim()),
        ));
    }
    Ok(n)
}

pub fn build_table(hb: &HermitianBasis, bb: &BiorthogonalBasis, m: &MetricOperator) -> Result<TransformTable> {
    check_dims(hb, bb, m)?;
    let w_dag = hb.kets.adjoint();
    Ok(TransformTable {
        factors_eta: &(&w_dag * m.eta()) * &bb.h_kets,
        factors_h: &w_dag * &bb.h_kets,
        b_eigenvalues: hb.eigenvalues.clone(),
        a_eigenvalues: bb.eigenvalues.clone(),
    })
}

/// Reverse-direction tables computed from the bases:
/// `(⟨λₙ|ωₘ⟩_η, ⟨λₙ|ωₘ⟩_H) = ((ηvₙ)†wₘ, vₙ†wₘ)`, indexed `[n][m]`.
pub fn reverse_tables(
    hb: &HermitianBasis,
    bb: &BiorthogonalBasis,
    m: &MetricOperator,
) -> Result<(ComplexMatrix, ComplexMatrix)> {
    check_dims(hb, bb, m)?;
    let eta_v = m.eta() * &bb.h_kets;
    Ok((&eta_v.adjoint() * &hb.kets, &bb.h_kets.adjoint() * &hb.kets))
}

impl TransformTable {
    pub fn dim(&self) -> usize {
        self.a_eigenvalues.len()
    }

    /// `LambdaToOmega`: `bₘ = Σₙ ⟨ωₘ|λₙ⟩_η cₙ` with `cₙ = vₙ†φ`.
    /// `OmegaToLambda`: `cₙ = Σₘ conj(⟨ωₘ|λₙ⟩_H) bₘ`.
    pub fn change_representation(&self, coeffs: &[c64], direction: Direction) -> Result<Vec<c64>> {
        if coeffs.len() != self.dim() {
            return Err(Error::shape(format_args!("{} coefficients", self.dim()), coeffs.len()));
        }
        match direction {
            Direction::LambdaToOmega => self.factors_eta.mul_vec(coeffs),
            Direction::OmegaToLambda => self.factors_h.adjoint().mul_vec(coeffs),
        }
    }

    /// `‖factors_h† · factors_eta − I‖_F`: the ω-sum of `⟨λ|ωₘ⟩_H⟨ωₘ|λ′⟩_η`
    /// must be the Kronecker delta.
    pub fn roundtrip_residual(&self) -> f64 {
        let c = &self.factors_h.adjoint() * &self.factors_eta;
        (&c - &ComplexMatrix::identity(self.dim())).frobenius_norm()
    }
}
