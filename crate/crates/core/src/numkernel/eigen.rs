use alloc::vec::Vec;

#[allow(unused_imports)] // float math for targets whose core lacks it
use num_traits::Float;

use super::matrix::{c64, ComplexMatrix};
use super::{HERMITIAN_TOL, PD_RATIO};
use crate::{Error, Result};

/// Sweep limit for the cyclic Jacobi iteration.
pub const JACOBI_MAX_SWEEPS: usize = 64;

/// Stop when the off-diagonal Frobenius norm falls below this times `‖M‖_F`.
const JACOBI_OFF_TOL: f64 = 1e-13;

/// Components below this magnitude are skipped when fixing eigenvector phases.
const PHASE_FLOOR: f64 = 1e-8;

/// Real spectrum and orthonormal eigenvectors of a Hermitian matrix.
///
/// Eigenvalues ascend; column `k` of `eigenvectors` belongs to
/// `eigenvalues[k]` and has its first component above `1e-8` in magnitude
/// real and positive.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl EigenDecomposition {
    /// `Σₖ f(λₖ) vₖ vₖ†`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let v = &self.eigenvectors;
        let n = v.rows();
        let fl: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        ComplexMatrix::from_fn(n, n, |i, j| {
            (0..fl.len()).map(|k| v[(i, k)] * v[(j, k)].conj() * fl[k]).sum()
        })
    }

    /// `Σₖ λₖ vₖ vₖ†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map_spectrum(|l| l)
    }
}

fn off_diagonal_norm(a: &[c64], n: usize) -> f64 {
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[i * n + j].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Full eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations.
pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<EigenDecomposition> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let residual = m.hermiticity_residual();
    if residual > HERMITIAN_TOL {
        return Err(Error::NotHermitian { residual });
    }
    let n = m.rows();
    let mut a: Vec<c64> = m.hermitian_part().as_slice().to_vec();
    let mut qt: Vec<c64> = ComplexMatrix::identity(n).as_slice().to_vec();
    let target = JACOBI_OFF_TOL * m.frobenius_norm();

    let mut converged = false;
    for _ in 0..=JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a, n) <= target {
            converged = true;
            break;
        }
        for p in 0..n {
            for r in p + 1..n {
                rotate(&mut a, &mut qt, n, p, r);
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence { sweeps: JACOBI_MAX_SWEEPS });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].re.total_cmp(&a[j * n + j].re));
    let eigenvalues = order.iter().map(|&k| a[k * n + k].re).collect();
    let mut eigenvectors = ComplexMatrix::zeros(n, n);
    for (col, &k) in order.iter().enumerate() {
        let mut v = qt[k * n..k * n + n].to_vec();
        fix_phase(&mut v);
        eigenvectors.set_column(col, &v);
    }
    Ok(EigenDecomposition { eigenvalues, eigenvectors })
}

/// Rotates the first component above the phase floor onto the positive real axis.
pub(crate) fn fix_phase(v: &mut [c64]) {
    if let Some(lead) = v.iter().find(|z| z.norm() > PHASE_FLOOR).copied() {
        let phase = lead.conj() / lead.norm();
        for z in v.iter_mut() {
            *z *= phase;
        }
    }
}

/// One Jacobi step annihilating `a[p][r]`, accumulated into `qt` (which
/// holds the eigenvector matrix transposed so updates run along rows).
///
/// The unitary is `diag(1, ū)` followed by the real rotation `[[c, s], [−s, c]]`
/// in the `(p, r)` plane, where `a[p][r] = |a[p][r]|·u`. Only rows `p`, `r`
/// are computed; columns follow by Hermitian symmetry.
fn rotate(a: &mut [c64], qt: &mut [c64], n: usize, p: usize, r: usize) {
    let apr = a[p * n + r];
    let mag = apr.norm();
    if mag == 0.0 {
        return;
    }
    let u = apr / mag;
    let app = a[p * n + p].re;
    let arr = a[r * n + r].re;
    let theta = (arr - app) / (2.0 * mag);
    let t = if theta == 0.0 {
        1.0
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    // Column combination coefficients: new_p = c·col_p − s·ū·col_r, new_r = s·col_p + c·ū·col_r.
    let v_rp = -u.conj() * s;
    let v_rr = u.conj() * c;

    let (lo, hi) = a.split_at_mut(r * n);
    let row_p = &mut lo[p * n..p * n + n];
    let row_r = &mut hi[..n];
    for (x, y) in row_p.iter_mut().zip(row_r.iter_mut()) {
        let (apk, ark) = (*x, *y);
        *x = apk * c + ark * v_rp.conj();
        *y = apk * s + ark * v_rr.conj();
    }
    a[p * n + r] = c64::new(0.0, 0.0);
    a[r * n + p] = c64::new(0.0, 0.0);
    a[p * n + p] = c64::new(app - t * mag, 0.0);
    a[r * n + r] = c64::new(arr + t * mag, 0.0);
    for k in 0..n {
        if k != p && k != r {
            a[k * n + p] = a[p * n + k].conj();
            a[k * n + r] = a[r * n + k].conj();
        }
    }

    let (lo, hi) = qt.split_at_mut(r * n);
    let q_p = &mut lo[p * n..p * n + n];
    let q_r = &mut hi[..n];
    for (x, y) in q_p.iter_mut().zip(q_r.iter_mut()) {
        let (qkp, qkr) = (*x, *y);
        *x = qkp * c + qkr * v_rp;
        *y = qkp * s + qkr * v_rr;
    }
}

/// Hermitian square root of a positive-definite matrix and its inverse.
pub fn pd_sqrt_pair(m: &ComplexMatrix) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let eig = hermitian_eigen(m)?;
    let n = eig.eigenvalues.len();
    if n == 0 {
        return Ok((ComplexMatrix::zeros(0, 0), ComplexMatrix::zeros(0, 0)));
    }
    let lo = eig.eigenvalues[0];
    let hi = eig.eigenvalues[n - 1];
    if hi <= 0.0 || lo <= PD_RATIO * hi {
        let ratio = if hi > 0.0 { lo / hi } else { f64::NEG_INFINITY };
        return Err(Error::NotPositiveDefinite { ratio });
    }
    let sqrt = eig.map_spectrum(|l| l.sqrt());
    let inv_sqrt = eig.map_spectrum(|l| 1.0 / l.sqrt());

    let square_err = (&(&sqrt * &sqrt) - m).frobenius_norm() / m.frobenius_norm();
    let inverse_err =
        (&(&sqrt * &inv_sqrt) - &ComplexMatrix::identity(n)).frobenius_norm() / (n as f64).sqrt();
    let residual = square_err.max(inverse_err);
    if residual > 1e-10 {
        return Err(Error::IllConditioned { residual });
    }
    Ok((sqrt, inv_sqrt))
}
