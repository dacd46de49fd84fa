//! Bi-orthogonal eigensystems of quasi-Hermitian operators.
//!
//! Diagonalization goes through the Hermitian counterpart `h = ρAρ⁻¹`:
//! its orthonormal eigenvectors `wₙ` give the H-kets `vₙ = ρ⁻¹wₙ` and the
//! η-kets `ηvₙ = ρwₙ`. The two families satisfy `(ηvₘ)†vₙ = δₘₙ` and
//! `Σₙ vₙ(ηvₙ)† = I`.

use alloc::vec::Vec;

#[allow(unused_imports)] // float math for targets whose core lacks it
use num_traits::Float;

use crate::metric::MetricOperator;
use crate::numkernel::{c64, dot, hermitian_eigen, ComplexMatrix, HERMITIAN_TOL};
use crate::{Error, Result};

/// Largest accepted `‖A†η − ηA‖_F / (‖A‖_F‖η‖_F)` for a system.
pub const SYSTEM_TOL: f64 = 1e-9;
/// Largest accepted relative anti-Hermitian part of `ρAρ⁻¹`.
pub const SIMILARITY_TOL: f64 = 1e-9;

/// An operator paired with a metric it is quasi-Hermitian for.
#[derive(Debug, Clone, PartialEq)]
pub struct QuasiHermitianSystem {
    a: ComplexMatrix,
    metric: MetricOperator,
    residual: f64,
}

impl QuasiHermitianSystem {
    pub fn new(a: ComplexMatrix, metric: MetricOperator) -> Result<Self> {
        let residual = metric.quasi_hermiticity_residual(&a)?;
        if !(residual <= SYSTEM_TOL) {
            return Err(Error::NotQuasiHermitian { residual });
        }
        Ok(Self { a, metric, residual })
    }

    pub fn operator(&self) -> &ComplexMatrix {
        &self.a
    }

    pub fn metric(&self) -> &MetricOperator {
        &self.metric
    }

    pub fn residual(&self) -> f64 {
        self.residual
    }

    pub fn dim(&self) -> usize {
        self.a.rows()
    }
}

/// Selects the operator in [`BiorthogonalBasis::apply_spectral`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    A,
    ADagger,
}

/// Eigenvalues ascending; column `n` of `h_kets` is `vₙ`, of `eta_kets` is `ηvₙ`.
#[derive(Debug, Clone, PartialEq)]
pub struct BiorthogonalBasis {
    pub eigenvalues: Vec<f64>,
    pub h_kets: ComplexMatrix,
    pub eta_kets: ComplexMatrix,
    /// `h = ρAρ⁻¹`, Hermitianized.
    pub hermitian_counterpart: ComplexMatrix,
}

pub fn diagonalize(sys: &QuasiHermitianSystem) -> Result<BiorthogonalBasis> {
    let m = sys.metric();
    let h = &(m.rho() * sys.operator()) * m.rho_inv();
    let residual = h.hermiticity_residual();
    if !(residual <= SIMILARITY_TOL) {
        return Err(Error::SimilarityNotHermitian { residual });
    }
    let h = h.hermitian_part();
    let eig = hermitian_eigen(&h)?;
    let n = sys.dim();
    let mut h_kets = m.rho_inv() * &eig.eigenvectors;
    let mut eta_kets = m.rho() * &eig.eigenvectors;
    // Same phase rule as the eigensolver, applied to vₙ; ηvₙ follows.
    for j in 0..n {
        let v = h_kets.column(j);
        if let Some(lead) = v.iter().find(|z| z.norm() > 1e-8) {
            let phase = lead.conj() / lead.norm();
            let scaled: Vec<c64> = v.iter().map(|z| z * phase).collect();
            h_kets.set_column(j, &scaled);
            let e: Vec<c64> = eta_kets.column(j).iter().map(|z| z * phase).collect();
            eta_kets.set_column(j, &e);
        }
    }
    Ok(BiorthogonalBasis { eigenvalues: eig.eigenvalues, h_kets, eta_kets, hermitian_counterpart: h })
}

impl BiorthogonalBasis {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    fn check_len(&self, v: &[c64]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::shape(format_args!("vector of length {}", self.dim()), v.len()));
        }
        Ok(())
    }

    /// `cₙ = (ηvₙ)†φ`.
    pub fn expand_coefficients(&self, phi: &[c64]) -> Result<Vec<c64>> {
        self.check_len(phi)?;
        Ok((0..self.dim()).map(|n| dot(&self.eta_kets.column(n), phi)).collect())
    }

    /// `Σₙ cₙvₙ`.
    pub fn reconstruct(&self, coeffs: &[c64]) -> Result<Vec<c64>> {
        self.check_len(coeffs)?;
        self.h_kets.mul_vec(coeffs)
    }

    /// `Aφ = Σₙ λₙ((ηvₙ)†φ)vₙ` or `A†φ = Σₙ λₙ(vₙ†φ)ηvₙ`.
    pub fn apply_spectral(&self, phi: &[c64], which: Which) -> Result<Vec<c64>> {
        self.check_len(phi)?;
        let (bra, ket) = match which {
            Which::A => (&self.eta_kets, &self.h_kets),
            Which::ADagger => (&self.h_kets, &self.eta_kets),
        };
        let scaled: Vec<c64> =
            (0..self.dim()).map(|n| dot(&bra.column(n), phi) * self.eigenvalues[n]).collect();
        ket.mul_vec(&scaled)
    }

    /// `Σₙ λₙ vₙ(ηvₙ)†` (equal to `A`) or `Σₙ λₙ (ηvₙ)vₙ†` (equal to `A†`).
    pub fn spectral_resolution(&self, which: Which) -> ComplexMatrix {
        let lambda = ComplexMatrix::from_diagonal(&self.eigenvalues);
        match which {
            Which::A => &(&self.h_kets * &lambda) * &self.eta_kets.adjoint(),
            Which::ADagger => &(&self.eta_kets * &lambda) * &self.h_kets.adjoint(),
        }
    }

    /// Largest of `‖Σvₙ(ηvₙ)† − I‖_F` and `‖Σ(ηvₙ)vₙ† − I‖_F`.
    pub fn completeness_residual(&self) -> f64 {
        let i = ComplexMatrix::identity(self.dim());
        let right = &(&self.h_kets * &self.eta_kets.adjoint()) - &i;
        let left = &(&self.eta_kets * &self.h_kets.adjoint()) - &i;
        right.frobenius_norm().max(left.frobenius_norm())
    }

    /// `‖[(ηvₘ)†vₙ] − I‖_F`.
    pub fn orthonormality_residual(&self) -> f64 {
        let gram = &self.eta_kets.adjoint() * &self.h_kets;
        (&gram - &ComplexMatrix::identity(self.dim())).frobenius_norm()
    }

    /// Largest `‖Avₙ − λₙvₙ‖ / ‖vₙ‖` relative to `‖A‖_F`.
    pub fn eigen_residual(&self, a: &ComplexMatrix) -> Result<f64> {
        a.expect_square(self.dim())?;
        let scale = a.frobenius_norm().max(f64::MIN_POSITIVE);
        let av = a * &self.h_kets;
        let mut worst = 0.0f64;
        for n in 0..self.dim() {
            let v = self.h_kets.column(n);
            let r: f64 = (0..self.dim())
                .map(|i| (av[(i, n)] - v[i] * self.eigenvalues[n]).norm_sqr())
                .sum();
            let vn: f64 = v.iter().map(|z| z.norm_sqr()).sum();
            worst = worst.max((r / vn).sqrt() / scale);
        }
        Ok(worst)
    }
}

/// The quasi-Hermitian observable `O = ρ⁻¹oρ` for a Hermitian `o`.
pub fn observable_from_hermitian(m: &MetricOperator, o: &ComplexMatrix) -> Result<ComplexMatrix> {
    o.expect_square(m.dim())?;
    let residual = o.hermiticity_residual();
    if residual > HERMITIAN_TOL {
        return Err(Error::NotHermitian { residual });
    }
    Ok(&(m.rho_inv() * o) * m.rho())
}
