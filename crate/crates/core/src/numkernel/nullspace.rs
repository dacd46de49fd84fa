use alloc::vec::Vec;

#[allow(unused_imports)] // float math for targets whose core lacks it
use num_traits::Float;

use super::eigen::hermitian_eigen;
use super::matrix::{c64, norm, ComplexMatrix};
use crate::{Error, Result};

/// Orthonormal basis of the numerical null space of `k`, from the
/// eigenvectors of the Gram matrix `K†K`.
///
/// An eigenvector `b` is kept when `‖K b‖ ≤ threshold · ‖K‖₂`, with `‖K‖₂`
/// the square root of the largest Gram eigenvalue. The residual is evaluated
/// through `K` itself because rounding in `K†K` leaves zero eigenvalues at
/// roughly `ε · ‖K‖₂²`, far above `threshold²` for small thresholds.
pub fn nullspace_gram(k: &ComplexMatrix, threshold: f64) -> Result<Vec<Vec<c64>>> {
    assert!(threshold > 0.0, "null-space threshold must be positive");
    let gram = &k.adjoint() * k;
    let eig = hermitian_eigen(&gram)?;
    let sigma_max = eig.eigenvalues.last().map_or(0.0, |&l| l.max(0.0).sqrt());
    let cutoff = threshold * sigma_max;
    let mut basis = Vec::new();
    for j in 0..eig.eigenvalues.len() {
        let b = eig.eigenvectors.column(j);
        if norm(&k.mul_vec(&b)?) <= cutoff {
            basis.push(b);
        }
    }
    Ok(basis)
}

/// Solves `A X = B` by Gaussian elimination with partial pivoting.
pub fn solve(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let n = a.rows();
    if b.rows() != n {
        return Err(Error::shape(format_args!("{n} right-hand-side rows"), b.rows()));
    }
    let m = b.cols();
    let mut lu = a.clone();
    let mut x = b.clone();
    let scale = a.max_abs();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| lu[(i, col)].norm().total_cmp(&lu[(j, col)].norm()))
            .expect("non-empty pivot range");
        if lu[(pivot, col)].norm() <= f64::EPSILON * scale * n as f64 {
            return Err(Error::Singular);
        }
        if pivot != col {
            for j in 0..n {
                let t = lu[(col, j)];
                lu[(col, j)] = lu[(pivot, j)];
                lu[(pivot, j)] = t;
            }
            for j in 0..m {
                let t = x[(col, j)];
                x[(col, j)] = x[(pivot, j)];
                x[(pivot, j)] = t;
            }
        }
        let d = lu[(col, col)];
        for i in col + 1..n {
            let f = lu[(i, col)] / d;
            if f == c64::new(0.0, 0.0) {
                continue;
            }
            for j in col..n {
                let t = lu[(col, j)];
                lu[(i, j)] -= f * t;
            }
            for j in 0..m {
                let t = x[(col, j)];
                x[(i, j)] -= f * t;
            }
        }
    }
    for col in (0..n).rev() {
        let d = lu[(col, col)];
        for j in 0..m {
            let mut acc = x[(col, j)];
            for k in col + 1..n {
                acc -= lu[(col, k)] * x[(k, j)];
            }
            x[(col, j)] = acc / d;
        }
    }
    Ok(x)
}
