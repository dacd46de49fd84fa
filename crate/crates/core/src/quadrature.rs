//! Gauss–Hermite quadrature and Hermite functions.
//!
//! Nodes are the eigenvalues of the Hermite Jacobi matrix (Golub–Welsch),
//! polished by Newton steps on the normalized Hermite function.
//! Weights use the Christoffel form `wₖe^{tₖ²} = 1 / Σ_{j<n} ψⱼ(tₖ)²`, which
//! stays accurate in the tails where `e^{−t²}` alone would underflow.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)] // float math for targets whose core lacks it
use num_traits::Float;

use crate::numkernel::{c64, symmetric_tridiagonal_eigenvalues};
use crate::{Error, Result};

pub const MAX_NODES: usize = 512;
/// Largest Hermite degree accepted by the public evaluators.
pub const MAX_DEGREE: usize = 200;

/// Nodes and weights for `∫ f(t) e^{−t²} dt`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureGrid {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    scaled_weights: Vec<f64>,
}

impl QuadratureGrid {
    /// Strictly increasing, symmetric about zero.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `wₖ e^{tₖ²}`, the weights for integrands that carry their own decay.
    pub fn scaled_weights(&self) -> &[f64] {
        &self.scaled_weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `∫ f(x) dx ≈ scale · Σₖ wₖ e^{tₖ²} f(scale·tₖ)`. The integrand must
    /// decay at least like a Gaussian of width `scale`.
    pub fn integrate(&self, f: impl Fn(f64) -> c64, scale: f64) -> c64 {
        let mut acc = c64::new(0.0, 0.0);
        for (&t, &w) in self.nodes.iter().zip(&self.scaled_weights) {
            acc += f(scale * t) * w;
        }
        acc * scale
    }

    pub fn integrate_real(&self, f: impl Fn(f64) -> f64, scale: f64) -> f64 {
        let mut acc = 0.0;
        for (&t, &w) in self.nodes.iter().zip(&self.scaled_weights) {
            acc += f(scale * t) * w;
        }
        acc * scale
    }
}

/// `ψ₀(t) … ψ_{count−1}(t)`, orthonormal on the real line.
pub(crate) fn psi_table(count: usize, t: f64) -> Vec<f64> {
    let mut out = vec![0.0; count];
    if count == 0 {
        return out;
    }
    out[0] = PI.powf(-0.25) * (-0.5 * t * t).exp();
    if count > 1 {
        out[1] = 2.0.sqrt() * t * out[0];
    }
    for k in 1..count.saturating_sub(1) {
        let kf = k as f64;
        out[k + 1] = (2.0 / (kf + 1.0)).sqrt() * t * out[k] - (kf / (kf + 1.0)).sqrt() * out[k - 1];
    }
    out
}

fn check_degree(n: usize) -> Result<()> {
    if n > MAX_DEGREE {
        return Err(Error::DegreeOutOfRange { degree: n, max: MAX_DEGREE });
    }
    Ok(())
}

/// Normalized Hermite functions `ψ₀(t) … ψ_{max_degree}(t)`.
pub fn hermite_functions(max_degree: usize, t: f64) -> Result<Vec<f64>> {
    check_degree(max_degree)?;
    Ok(psi_table(max_degree + 1, t))
}

/// Physicists' Hermite polynomial `Hₙ(x)`.
pub fn hermite_polynomial(n: usize, x: f64) -> Result<f64> {
    check_degree(n)?;
    let (mut prev, mut cur) = (1.0, 2.0 * x);
    if n == 0 {
        return Ok(prev);
    }
    for k in 1..n {
        let next = 2.0 * x * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Oscillator eigenfunction `uₙ(x) = ψₙ(x/L)/√L` of length scale `L`.
pub fn hermite_function(n: usize, x: f64, length: f64) -> Result<f64> {
    check_degree(n)?;
    if !(length > 0.0) {
        return Err(Error::InvalidParameters { failed: vec!["length scale must be positive".into()] });
    }
    Ok(psi_table(n + 1, x / length)[n] / length.sqrt())
}

/// `(ψₙ(t), ψₙ′(t))`.
fn psi_and_derivative(n: usize, t: f64) -> (f64, f64) {
    let table = psi_table(n + 1, t);
    let d = -t * table[n] + (2.0 * n as f64).sqrt() * table[n - 1];
    (table[n], d)
}

pub fn gauss_hermite(n: usize) -> Result<QuadratureGrid> {
    if !(1..=MAX_NODES).contains(&n) {
        return Err(Error::SizeOutOfRange { value: n, min: 1, max: MAX_NODES });
    }
    let off: Vec<f64> = (1..n).map(|k| (k as f64 / 2.0).sqrt()).collect();
    let mut nodes = symmetric_tridiagonal_eigenvalues(&vec![0.0; n], &off)?;
    for t in nodes.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = psi_and_derivative(n, *t);
            if dp == 0.0 {
                break;
            }
            *t -= p / dp;
        }
    }
    let mirrored: Vec<f64> = (0..n).map(|k| 0.5 * (nodes[k] - nodes[n - 1 - k])).collect();
    nodes = mirrored;
    let scaled_weights: Vec<f64> = nodes
        .iter()
        .map(|&t| 1.0 / psi_table(n, t).iter().map(|p| p * p).sum::<f64>())
        .collect();
    let weights = nodes.iter().zip(&scaled_weights).map(|(&t, &w)| w * (-t * t).exp()).collect();
    Ok(QuadratureGrid { nodes, weights, scaled_weights })
}
