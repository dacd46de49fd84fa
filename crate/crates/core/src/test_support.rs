//! Random quasi-Hermitian systems for property tests.

use alloc::vec::Vec;

use proptest::prelude::*;

use crate::numkernel::{c64, hermitian_eigen, ComplexMatrix};
use crate::MetricOperator;

/// `A = ρ⁻¹hρ` together with `η = ρ²`.
#[derive(Debug, Clone)]
pub struct Constructed {
    pub a: ComplexMatrix,
    pub h: ComplexMatrix,
    pub metric: MetricOperator,
}

fn hermitian_from(raw: &[(f64, f64)], n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |i, j| c64::new(raw[i * n + j].0, raw[i * n + j].1)).hermitian_part()
}

/// `h` has an integer ladder spectrum perturbed by `spread`; `ρ = exp(s·G/‖G‖₂)`.
pub fn construct(raw_h: &[(f64, f64)], raw_g: &[(f64, f64)], n: usize, spread: f64, s: f64) -> Constructed {
    let ladder: Vec<f64> = (0..n).map(|k| k as f64).collect();
    let h = &ComplexMatrix::from_diagonal(&ladder) + &hermitian_from(raw_h, n).scale_real(spread);
    let g = hermitian_eigen(&hermitian_from(raw_g, n)).unwrap();
    let top = g.eigenvalues.iter().fold(1e-3f64, |m, l| m.max(l.abs()));
    let rho = g.map_spectrum(|l| (s * l / top).exp());
    let rho_inv = g.map_spectrum(|l| (-s * l / top).exp());
    let a = &(&rho_inv * &h) * &rho;
    let metric = MetricOperator::new(&rho * &rho).unwrap();
    Constructed { a, h, metric }
}

pub fn system(max_dim: usize) -> impl Strategy<Value = Constructed> {
    let cells = max_dim * max_dim;
    (
        1..=max_dim,
        proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), cells),
        proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), cells),
    )
        .prop_map(|(n, raw_h, raw_g)| construct(&raw_h, &raw_g, n, 0.3, 1.0))
}

pub fn vector(n: usize) -> impl Strategy<Value = Vec<c64>> {
    proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n)
        .prop_map(|v| v.into_iter().map(|(re, im)| c64::new(re, im)).collect())
}
