//! Metric discovery: find a Hermitian positive-definite `η` with `A†η = ηA`.
//!
//! The map `L(X) = A†X − XA` is vectorized (column-major) into a
//! `dim² × dim²` matrix whose null space holds every intertwiner. That null
//! space is turned into a real basis of Hermitian solutions, and candidates
//! are tried in a fixed order until one is positive definite:
//!
//! 1. the identity projected onto `ker L` along `range L`, which averages
//!    out the off-diagonal part of `I` in the eigenbasis of `A` and is
//!    positive definite whenever `A` is diagonalizable with real spectrum;
//! 2. each basis element `±Bₖ`;
//! 3. `trials` seeded random combinations `Σ cₖ(±Bₖ)`, `cₖ ∈ (0, 1]`.
//!
//! The first accepted candidate is scaled to trace `dim`. Failure means "not
//! found" unless the Hermitian solution space has dimension at most one, in
//! which case the search was exhaustive.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::metric::MetricOperator;
use crate::numkernel::{c64, hermitian_eigen, nullspace_gram, solve, ComplexMatrix, PD_RATIO};
use crate::{Error, Result};

pub const DEFAULT_TRIALS: usize = 1000;
/// Largest supported dimension; the vectorized operator is `dim² × dim²`.
pub const MAX_DIM: usize = 32;
/// Relative singular-value threshold for the null space of the vectorized map.
pub const NULL_THRESHOLD: f64 = 1e-10;
/// Largest accepted quasi-Hermiticity residual for a returned metric.
pub const RESIDUAL_TOL: f64 = 1e-9;

/// Projections of a null vector below this norm are dropped.
const HERMITIAN_FLOOR: f64 = 1e-10;

/// Which candidate produced the accepted metric.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Candidate {
    Dephased,
    BasisElement { index: usize, negated: bool },
    RandomTrial { index: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntertwinerSolution {
    pub metric: MetricOperator,
    /// `‖A†η − ηA‖_F / (‖A‖_F ‖η‖_F)` for the returned `η`.
    pub residual: f64,
    /// Real dimension of the Hermitian solution space.
    pub nullspace_dim: usize,
    pub seed: u64,
    pub candidate: Candidate,
}

/// Column-major vectorization of `X ↦ A†X − XA`, i.e. `I⊗A† − Aᵀ⊗I`.
pub fn intertwining_operator(a: &ComplexMatrix) -> ComplexMatrix {
    let n = a.rows();
    let ad = a.adjoint();
    ComplexMatrix::from_fn(n * n, n * n, |row, col| {
        let (i, j) = (row % n, row / n);
        let (k, l) = (col % n, col / n);
        let mut z = c64::new(0.0, 0.0);
        if j == l {
            z += ad[(i, k)];
        }
        if i == k {
            z -= a[(l, j)];
        }
        z
    })
}

fn unvec(v: &[c64], n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |i, j| v[i + j * n])
}

fn vec_of(m: &ComplexMatrix) -> Vec<c64> {
    let n = m.rows();
    (0..n * n).map(|idx| m[(idx % n, idx / n)]).collect()
}

/// Real inner product `Re tr(X†Y)` on Hermitian matrices.
fn real_inner(x: &ComplexMatrix, y: &ComplexMatrix) -> f64 {
    x.as_slice().iter().zip(y.as_slice()).map(|(a, b)| (a.conj() * b).re).sum()
}

/// Orthonormal (under `Re tr(X†Y)`) basis of the Hermitian solutions of
/// `A†X = XA`.
pub fn hermitian_solution_basis(a: &ComplexMatrix) -> Result<Vec<ComplexMatrix>> {
    let n = check_input(a)?;
    let null = nullspace_gram(&intertwining_operator(a), NULL_THRESHOLD)?;
    Ok(hermitian_basis_from(&null, n))
}

fn hermitian_basis_from(null: &[Vec<c64>], n: usize) -> Vec<ComplexMatrix> {
    let half = c64::new(0.5, 0.0);
    let minus_half_i = c64::new(0.0, -0.5);
    let mut basis: Vec<ComplexMatrix> = Vec::new();
    for v in null {
        let b = unvec(v, n);
        let bd = b.adjoint();
        // Both Hermitian pieces of B: (B + B†)/2 and (B − B†)/(2i).
        for mut h in [(&b + &bd).scale(half), (&b - &bd).scale(minus_half_i)] {
            let before = h.frobenius_norm();
            if before < HERMITIAN_FLOOR {
                continue;
            }
            for e in &basis {
                let p = real_inner(e, &h);
                h = &h - &e.scale_real(p);
            }
            let after = h.frobenius_norm();
            if after > 1e-6 * before && basis.len() < null.len() {
                basis.push(h.scale_real(1.0 / after));
            }
        }
    }
    basis
}

fn check_input(a: &ComplexMatrix) -> Result<usize> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    if a.rows() > MAX_DIM {
        return Err(Error::DimensionTooLarge { dim: a.rows(), max: MAX_DIM });
    }
    Ok(a.rows())
}

fn is_positive_definite(x: &ComplexMatrix) -> bool {
    match hermitian_eigen(&x.hermitian_part()) {
        Ok(e) => {
            let (lo, hi) = (e.eigenvalues[0], e.eigenvalues[e.eigenvalues.len() - 1]);
            hi > 0.0 && lo > PD_RATIO * hi
        }
        Err(_) => false,
    }
}

/// Rescales a Hermitian positive-definite matrix to trace equal to its dimension.
pub fn canonicalize_metric(eta: &ComplexMatrix) -> Result<ComplexMatrix> {
    let e = hermitian_eigen(eta)?;
    let n = e.eigenvalues.len();
    if n == 0 {
        return Ok(eta.clone());
    }
    let (lo, hi) = (e.eigenvalues[0], e.eigenvalues[n - 1]);
    if hi <= 0.0 || lo <= PD_RATIO * hi {
        let ratio = if hi > 0.0 { lo / hi } else { f64::NEG_INFINITY };
        return Err(Error::NotPositiveDefinite { ratio });
    }
    let trace = eta.trace().re;
    Ok(eta.hermitian_part().scale_real(n as f64 / trace))
}

/// Projection of the identity onto `ker L` along `range L`, using the left
/// and right null spaces of the vectorized map.
fn dephased_identity(k: &ComplexMatrix, right: &[Vec<c64>], n: usize) -> Option<ComplexMatrix> {
    let left = nullspace_gram(&k.adjoint(), NULL_THRESHOLD).ok()?;
    if left.is_empty() || left.len() != right.len() {
        return None;
    }
    let r = ComplexMatrix::from_columns(right).ok()?;
    let l = ComplexMatrix::from_columns(&left).ok()?;
    let identity = vec_of(&ComplexMatrix::identity(n));
    let rhs_vec = l.adjoint().mul_vec(&identity).ok()?;
    let rhs = ComplexMatrix::from_columns(&[rhs_vec]).ok()?;
    let coeffs = solve(&(&l.adjoint() * &r), &rhs).ok()?;
    let x = r.mul_vec(&coeffs.column(0)).ok()?;
    Some(unvec(&x, n).hermitian_part())
}

fn accept(a: &ComplexMatrix, x: &ComplexMatrix) -> Option<(MetricOperator, f64)> {
    if !is_positive_definite(x) {
        return None;
    }
    let eta = canonicalize_metric(x).ok()?;
    let metric = MetricOperator::new(eta).ok()?;
    let residual = metric.quasi_hermiticity_residual(a).ok()?;
    (residual <= RESIDUAL_TOL).then_some((metric, residual))
}

/// Searches for a positive-definite intertwiner of `a`; deterministic in
/// `(a, trials, seed)`.
pub fn solve_metric(a: &ComplexMatrix, trials: usize, seed: u64) -> Result<IntertwinerSolution> {
    let n = check_input(a)?;
    let k = intertwining_operator(a);
    let null = nullspace_gram(&k, NULL_THRESHOLD)?;
    let basis = hermitian_basis_from(&null, n);
    let nullspace_dim = basis.len();
    let found = |metric: MetricOperator, residual: f64, candidate| IntertwinerSolution {
        metric,
        residual,
        nullspace_dim,
        seed,
        candidate,
    };

    if let Some(x) = dephased_identity(&k, &null, n) {
        if let Some((metric, residual)) = accept(a, &x) {
            return Ok(found(metric, residual, Candidate::Dephased));
        }
    }

    for (index, b) in basis.iter().enumerate() {
        for negated in [false, true] {
            let x = if negated { b.scale_real(-1.0) } else { b.clone() };
            if let Some((metric, residual)) = accept(a, &x) {
                return Ok(found(metric, residual, Candidate::BasisElement { index, negated }));
            }
        }
    }

    if nullspace_dim > 1 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for index in 0..trials {
            let mut x = ComplexMatrix::zeros(n, n);
            for b in &basis {
                let c = 1.0 - rng.gen::<f64>();
                let sign = if rng.gen::<bool>() { 1.0 } else { -1.0 };
                x = &x + &b.scale_real(sign * c);
            }
            if let Some((metric, residual)) = accept(a, &x) {
                return Ok(found(metric, residual, Candidate::RandomTrial { index }));
            }
        }
    }

    Err(Error::MetricNotFound { nullspace_dim, exhaustive: nullspace_dim <= 1 })
}
