//! The non-Hermitian Swanson oscillator
//! `H = ħω(a†a + ½) + ħαa² + ħβa†²` with its Gaussian metric at `z = 1`.
//!
//! Operators are represented in the coefficient space of the Hermitian
//! counterpart's eigenfunctions `uₙ(x)` (length scale `L = √(ħ/MΩ)`). There
//! `x̂` and `p̂` are exact tridiagonal matrices, `X_ρ = x̂`,
//! `P_ρ = p̂ + iγx̂` and `H = P_ρ²/2M + MΩ²X_ρ²/2`. Truncation only corrupts
//! the last rows and columns of products, so identities are checked on the
//! leading `(N−2) × (N−2)` block.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)] // float math for targets whose core lacks it
use num_traits::Float;

use crate::numkernel::{c64, ComplexMatrix};
use crate::quadrature::{self, gauss_hermite, psi_table, QuadratureGrid};
use crate::{Error, Result};

pub const MIN_TRUNCATION: usize = 4;
/// Extra basis functions carried by the `ρ`, `ρ⁻¹` matrices behind [`SwansonModel::spectral_apply`].
pub const SPECTRAL_PADDING: usize = 16;
pub const MAX_TRUNCATION: usize = quadrature::MAX_DEGREE - SPECTRAL_PADDING;

/// Relative tolerance for the quasi-Hermiticity, commutator and Gram checks.
pub const IDENTITY_TOL: f64 = 1e-8;
/// Relative tolerance for interior eigenvalues against `ħΩ(n + ½)`.
pub const SPECTRUM_TOL: f64 = 1e-6;
/// Relative tolerance for the spectral expansion against direct matrix action.
pub const EXPANSION_TOL: f64 = 1e-6;
/// Largest accepted deviation of the quadrature Gram matrix of `uₙ` from `I`.
pub const QUADRATURE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SwansonParams {
    pub omega: f64,
    pub alpha: f64,
    pub beta: f64,
    pub mass: f64,
    pub hbar: f64,
    pub z: f64,
}

impl SwansonParams {
    /// `m = ħ = 1`, `z = 1`.
    pub fn new(omega: f64, alpha: f64, beta: f64) -> Self {
        Self { omega, alpha, beta, mass: 1.0, hbar: 1.0, z: 1.0 }
    }

    /// `ℓ² = ħ/(mω)`.
    pub fn ell_squared(&self) -> f64 {
        self.hbar / (self.mass * self.omega)
    }

    /// `Ω² = ω² − 4αβ`.
    pub fn omega_cap_squared(&self) -> f64 {
        self.omega * self.omega - 4.0 * self.alpha * self.beta
    }

    /// `M⁻¹(z)`; `None` where the closed form is undefined.
    pub fn inverse_mass(&self) -> Option<f64> {
        let (a, b, w, z) = (self.alpha, self.beta, self.omega, self.z);
        let denom = (1.0 + z) * self.hbar / self.ell_squared();
        if !(denom > 0.0) {
            return None;
        }
        // (α+β−zω)·√(1 − (1−z²)(α−β)²/(α+β−zω)²) = sgn(α+β−zω)·√((α+β−zω)² − (1−z²)(α−β)²)
        let s = a + b - z * w;
        let disc = s * s - (1.0 - z * z) * (a - b) * (a - b);
        if disc < 0.0 {
            return None;
        }
        let root = if s == 0.0 { 0.0 } else { s.signum() * disc.sqrt() };
        Some((w - z * (a + b) - root) / denom)
    }

    /// `(α−β)/((ω−α−β)ℓ²)`, the exponent rate of `η(x) = exp(−γ′x²)` at `z = 1`.
    pub fn metric_rate(&self) -> f64 {
        (self.alpha - self.beta) / ((self.omega - self.alpha - self.beta) * self.ell_squared())
    }

    fn spectral_failures(&self) -> Vec<String> {
        let mut failed = Vec::new();
        for (name, v) in [("omega", self.omega), ("alpha", self.alpha), ("beta", self.beta), ("mass", self.mass), ("hbar", self.hbar), ("z", self.z)] {
            if !v.is_finite() {
                failed.push(format!("{name} must be finite"));
            }
        }
        if !failed.is_empty() {
            return failed;
        }
        if !(self.omega > 0.0) {
            failed.push(format!("omega must be positive (got {})", self.omega));
        }
        if !(self.mass > 0.0) {
            failed.push(format!("mass must be positive (got {})", self.mass));
        }
        if !(self.hbar > 0.0) {
            failed.push(format!("hbar must be positive (got {})", self.hbar));
        }
        if !(self.z > -1.0 && self.z <= 1.0) {
            failed.push(format!("z must lie in (-1, 1] (got {})", self.z));
        }
        if !(self.omega_cap_squared() > 0.0) {
            failed.push(format!(
                "Omega^2 = omega^2 - 4 alpha beta must be positive (got {})",
                self.omega_cap_squared()
            ));
        }
        if failed.is_empty() && !self.inverse_mass().is_some_and(|m| m > 0.0 && m.is_finite()) {
            failed.push(format!("effective mass M(z) must be positive at z = {}", self.z));
        }
        failed
    }

    /// Conditions for `ħΩ(n + ½)` to be the spectrum: finite inputs, `ω > 0`,
    /// `m, ħ > 0`, `z ∈ (−1, 1]`, `Ω² > 0`, `M(z) > 0`.
    pub fn validate_spectrum(&self) -> Result<()> {
        let failed = self.spectral_failures();
        if failed.is_empty() { Ok(()) } else { Err(Error::InvalidParameters { failed }) }
    }

    /// Everything [`build_model`] needs: the spectral conditions, `z = 1`,
    /// a bounded `ρ` and normalizable eigenfunctions (`1/L² > γ′`).
    pub fn validate(&self) -> Result<()> {
        let mut failed = self.spectral_failures();
        if failed.is_empty() {
            if self.z != 1.0 {
                failed.push(format!("the metric is only available at z = 1 (got z = {})", self.z));
            } else {
                let ratio = (self.alpha - self.beta) / (self.omega - self.alpha - self.beta);
                if !(ratio >= 0.0) {
                    failed.push(format!(
                        "(alpha - beta)/(omega - alpha - beta) must be non-negative for a bounded rho (got {ratio})"
                    ));
                } else {
                    let l2 = self.length_squared();
                    if !(1.0 / l2 > self.metric_rate()) {
                        failed.push(format!(
                            "eigenfunctions are not normalizable: need 1/L^2 = {} > gamma' = {}",
                            1.0 / l2,
                            self.metric_rate()
                        ));
                    }
                }
            }
        }
        if failed.is_empty() { Ok(()) } else { Err(Error::InvalidParameters { failed }) }
    }

    /// `L² = ħ/(MΩ)`.
    fn length_squared(&self) -> f64 {
        let m = 1.0 / self.inverse_mass().unwrap_or(f64::NAN);
        self.hbar / (m * self.omega_cap_squared().sqrt())
    }
}

/// `Eₙ = ħΩ(n + ½)`; depends on `(ω, α, β)` only, so any valid `z` works.
pub fn energy(p: &SwansonParams, n: usize) -> Result<f64> {
    p.validate_spectrum()?;
    Ok(p.hbar * p.omega_cap_squared().sqrt() * (n as f64 + 0.5))
}

/// Pass/fail record for one identity.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub value: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    fn new(name: &'static str, value: f64, tolerance: f64) -> Self {
        Self { name, value, tolerance, passed: value <= tolerance }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SwansonReport {
    pub checks: Vec<Check>,
    /// Interior eigenvalues of `Hmat` that were compared against `ħΩ(n + ½)`.
    pub interior_eigenvalues: Vec<f64>,
}

impl SwansonReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    H,
    HDagger,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SwansonModel {
    pub params: SwansonParams,
    /// `ℓ = √(ħ/mω)`.
    pub ell: f64,
    /// `Ω = √(ω² − 4αβ)`.
    pub omega_cap: f64,
    /// `M(1) = ħ/((ω−α−β)ℓ²)`.
    pub mass_eff: f64,
    /// `L = √(ħ/MΩ)`.
    pub length: f64,
    /// `γ = ħ(α−β)/((ω−α−β)ℓ²)`.
    pub gamma: f64,
    pub truncation: usize,
    /// Set when `α = β`: the model is the Hermitian oscillator.
    pub hermitian_limit: bool,
    pub x_mat: ComplexMatrix,
    pub p_mat: ComplexMatrix,
    pub h_mat: ComplexMatrix,
    pub h_dag_mat: ComplexMatrix,
    pub eta_mat: ComplexMatrix,
    rho_mat: ComplexMatrix,
    rho_inv_mat: ComplexMatrix,
    grid: QuadratureGrid,
}

/// Ladder-operator matrices `(x̂, p̂)` of size `n` in the `uₙ` basis of length `l`.
fn position_momentum(n: usize, l: f64, hbar: f64) -> (ComplexMatrix, ComplexMatrix) {
    let x = ComplexMatrix::from_fn(n, n, |i, j| {
        if i + 1 == j || j + 1 == i {
            c64::new(l * (i.max(j) as f64 / 2.0).sqrt(), 0.0)
        } else {
            c64::new(0.0, 0.0)
        }
    });
    // p̂ = iħ/(√2 L)·(b† − b)
    let p = ComplexMatrix::from_fn(n, n, |i, j| {
        let s = hbar * (i.max(j) as f64 / 2.0).sqrt() / l;
        if i == j + 1 {
            c64::new(0.0, s)
        } else if j == i + 1 {
            c64::new(0.0, -s)
        } else {
            c64::new(0.0, 0.0)
        }
    });
    (x, p)
}

/// `⟨uₙ|f|uₘ⟩` for `n, m < size`, where `f(x)` multiplies.
fn multiplication_matrix(grid: &QuadratureGrid, size: usize, length: f64, f: impl Fn(f64) -> f64) -> ComplexMatrix {
    let tables: Vec<Vec<f64>> = grid.nodes().iter().map(|&t| psi_table(size, t)).collect();
    let factors: Vec<f64> = grid
        .nodes()
        .iter()
        .zip(grid.scaled_weights())
        .map(|(&t, &w)| w * f(length * t))
        .collect();
    let mut m = ComplexMatrix::zeros(size, size);
    for i in 0..size {
        for j in 0..=i {
            let v: f64 = tables.iter().zip(&factors).map(|(row, &w)| w * row[i] * row[j]).sum();
            m[(i, j)] = c64::new(v, 0.0);
            m[(j, i)] = c64::new(v, 0.0);
        }
    }
    m
}

pub fn build_model(p: SwansonParams, truncation: usize, quad_nodes: usize) -> Result<SwansonModel> {
    p.validate()?;
    if !(MIN_TRUNCATION..=MAX_TRUNCATION).contains(&truncation) {
        return Err(Error::SizeOutOfRange { value: truncation, min: MIN_TRUNCATION, max: MAX_TRUNCATION });
    }
    let min_nodes = 2 * truncation + 32;
    if !(min_nodes..=quadrature::MAX_NODES).contains(&quad_nodes) {
        return Err(Error::SizeOutOfRange { value: quad_nodes, min: min_nodes, max: quadrature::MAX_NODES });
    }

    let n = truncation;
    let ell = p.ell_squared().sqrt();
    let omega_cap = p.omega_cap_squared().sqrt();
    let mass_eff = p.hbar / ((p.omega - p.alpha - p.beta) * p.ell_squared());
    let length = (p.hbar / (mass_eff * omega_cap)).sqrt();
    let gamma = p.hbar * p.metric_rate();
    let rate = p.metric_rate();

    let (x, mom) = position_momentum(n + 2, length, p.hbar);
    let p_rho = &mom + &x.scale(c64::new(0.0, gamma));
    let h = &(&p_rho * &p_rho).scale_real(0.5 / mass_eff)
        + &(&x * &x).scale_real(0.5 * mass_eff * omega_cap * omega_cap);
    let h_mat = h.leading_block(n);

    let grid = gauss_hermite(quad_nodes)?;
    let gram = multiplication_matrix(&grid, n, length, |_| 1.0);
    let gram_err = (&gram - &ComplexMatrix::identity(n)).max_abs();
    if !(gram_err <= QUADRATURE_TOL) {
        return Err(Error::QuadratureUnderresolved { residual: gram_err });
    }
    let eta_mat = multiplication_matrix(&grid, n, length, |x| (-rate * x * x).exp());
    let residual = eta_mat.hermiticity_residual();
    if !(residual <= QUADRATURE_TOL) {
        return Err(Error::QuadratureUnderresolved { residual });
    }

    // The padded ρ matrices need exactness up to degree 2(N + padding).
    let padded = n + SPECTRAL_PADDING;
    let pad_grid = gauss_hermite((2 * padded + 32).max(quad_nodes).min(quadrature::MAX_NODES))?;
    let rho_mat = multiplication_matrix(&pad_grid, padded, length, |x| (-0.5 * rate * x * x).exp());
    let rho_inv_mat = multiplication_matrix(&pad_grid, padded, length, |x| (0.5 * rate * x * x).exp());

    Ok(SwansonModel {
        params: p,
        ell,
        omega_cap,
        mass_eff,
        length,
        gamma,
        truncation: n,
        hermitian_limit: p.alpha == p.beta,
        x_mat: x.leading_block(n),
        p_mat: p_rho.leading_block(n),
        h_dag_mat: h_mat.adjoint(),
        h_mat,
        eta_mat,
        rho_mat,
        rho_inv_mat,
        grid,
    })
}

impl SwansonModel {
    pub fn energy(&self, n: usize) -> f64 {
        self.params.hbar * self.omega_cap * (n as f64 + 0.5)
    }

    /// `γ′ = γ/ħ`.
    pub fn metric_rate(&self) -> f64 {
        self.gamma / self.params.hbar
    }

    /// `η(x) = exp(−γ′x²)`.
    pub fn metric_at(&self, x: f64) -> f64 {
        (-self.metric_rate() * x * x).exp()
    }

    /// `uₙ(x)` on length `L`.
    pub fn basis_function(&self, n: usize, x: f64) -> Result<f64> {
        quadrature::hermite_function(n, x, self.length)
    }

    /// `𝒰ₙ(x) = η(x)^{−1/2} uₙ(x)`, the eigenfunction of `H`.
    pub fn eigenfunction(&self, n: usize, x: f64) -> Result<f64> {
        Ok((0.5 * self.metric_rate() * x * x).exp() * self.basis_function(n, x)?)
    }

    pub fn grid(&self) -> &QuadratureGrid {
        &self.grid
    }

    /// `cₙ = ⟨uₙ, f⟩` for `n < N`.
    pub fn project(&self, f: impl Fn(f64) -> f64) -> Vec<c64> {
        let rows: Vec<(f64, Vec<f64>)> =
            self.grid.nodes().iter().map(|&t| (f(self.length * t), psi_table(self.truncation, t))).collect();
        (0..self.truncation)
            .map(|k| {
                let v: f64 = rows
                    .iter()
                    .zip(self.grid.scaled_weights())
                    .map(|((fx, psi), &w)| w * fx * psi[k])
                    .sum();
                c64::new(v * self.length.sqrt(), 0.0)
            })
            .collect()
    }

    /// Expansion coefficients `cₙ = ∫η f 𝒰ₙ dx` for `n < N`.
    pub fn eta_coefficients(&self, f: impl Fn(f64) -> f64) -> Vec<f64> {
        let rate = self.metric_rate();
        self.project(|x| (-0.5 * rate * x * x).exp() * f(x)).iter().map(|c| c.re).collect()
    }

    /// `Σₙ cₙ 𝒰ₙ(x)`.
    pub fn evaluate_expansion(&self, coeffs: &[f64], x: f64) -> f64 {
        let psi = psi_table(coeffs.len(), x / self.length);
        let s: f64 = coeffs.iter().zip(&psi).map(|(c, p)| c * p).sum();
        (0.5 * self.metric_rate() * x * x).exp() * s / self.length.sqrt()
    }

    /// `H f = ρ⁻¹ E ρ f` or `H† f = ρ E ρ⁻¹ f` with `E = diag(Eₙ)`, evaluated
    /// with padded `ρ` matrices and truncated back to `N`.
    pub fn spectral_apply(&self, coeffs: &[c64], which: Which) -> Result<Vec<c64>> {
        let n = self.truncation;
        if coeffs.len() != n {
            return Err(Error::shape(format_args!("{n} coefficients"), coeffs.len()));
        }
        let padded = self.rho_mat.rows();
        let mut f = coeffs.to_vec();
        f.resize(padded, c64::new(0.0, 0.0));
        let (first, last) = match which {
            Which::H => (&self.rho_mat, &self.rho_inv_mat),
            Which::HDagger => (&self.rho_inv_mat, &self.rho_mat),
        };
        let mut g = first.mul_vec(&f)?;
        for (k, v) in g.iter_mut().enumerate() {
            *v *= self.energy(k);
        }
        let mut out = last.mul_vec(&g)?;
        out.truncate(n);
        Ok(out)
    }

    /// `𝒰ₙ` as coefficients in the `uₙ` basis (column `n` of `ρ⁻¹`, truncated).
    pub fn eigenfunction_coefficients(&self, n: usize) -> Vec<c64> {
        (0..self.truncation).map(|i| self.rho_inv_mat[(i, n)]).collect()
    }

    /// Real eigenvalues of `Hmat`, ascending, found sector by sector.
    ///
    /// `Hmat` couples `n` only to `n` and `n ± 2`, so it splits into two
    /// tridiagonal blocks by parity. Their off-diagonal products are
    /// negative when `α ≠ β`, so the blocks are not symmetrizable; roots of
    /// each characteristic polynomial are bracketed on a grid of step `ħΩ/16`
    /// and bisected.
    pub fn interior_spectrum(&self) -> Vec<f64> {
        let step = self.params.hbar * self.omega_cap / 16.0;
        let mut roots = Vec::new();
        for parity in 0..2 {
            let idx: Vec<usize> = (parity..self.truncation).step_by(2).collect();
            let d: Vec<f64> = idx.iter().map(|&i| self.h_mat[(i, i)].re).collect();
            let prods: Vec<f64> = idx
                .windows(2)
                .map(|w| (self.h_mat[(w[0], w[1])] * self.h_mat[(w[1], w[0])]).re)
                .collect();
            let radius: Vec<f64> = (0..d.len())
                .map(|k| {
                    let up = idx.get(k + 1).map_or(0.0, |&j| self.h_mat[(idx[k], j)].norm());
                    let down = if k > 0 { self.h_mat[(idx[k], idx[k - 1])].norm() } else { 0.0 };
                    up + down
                })
                .collect();
            let lo = d.iter().zip(&radius).map(|(a, r)| a - r).fold(f64::INFINITY, f64::min);
            let hi = d.iter().zip(&radius).map(|(a, r)| a + r).fold(f64::NEG_INFINITY, f64::max);
            roots.extend(continuant_roots(&d, &prods, lo - step, hi + step, step));
        }
        roots.sort_by(f64::total_cmp);
        roots
    }

    pub fn verify(&self) -> SwansonReport {
        verify_model(self)
    }
}

/// Sign of `det(T − λ)` for the tridiagonal `T` with diagonal `d` and
/// off-diagonal products `prods`, via the rescaled three-term recurrence.
fn continuant_sign(d: &[f64], prods: &[f64], lambda: f64) -> f64 {
    let (mut prev, mut cur) = (1.0f64, d[0] - lambda);
    for k in 1..d.len() {
        let next = (d[k] - lambda) * cur - prods[k - 1] * prev;
        prev = cur;
        cur = next;
        let big = cur.abs().max(prev.abs());
        if big > 1e100 {
            prev /= big;
            cur /= big;
        }
    }
    if cur > 0.0 {
        1.0
    } else if cur < 0.0 {
        -1.0
    } else {
        0.0
    }
}

fn continuant_roots(d: &[f64], prods: &[f64], lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let mut roots = Vec::new();
    if d.is_empty() {
        return roots;
    }
    let steps = ((hi - lo) / step).ceil() as usize;
    let mut a = lo;
    let mut sa = continuant_sign(d, prods, a);
    for k in 1..=steps {
        let b = if k == steps { hi } else { lo + k as f64 * step };
        let sb = continuant_sign(d, prods, b);
        if sa == 0.0 {
            roots.push(a);
        } else if sb != 0.0 && sa != sb {
            let (mut x0, mut x1, s0) = (a, b, sa);
            for _ in 0..200 {
                let mid = 0.5 * (x0 + x1);
                if mid <= x0 || mid >= x1 {
                    break;
                }
                let sm = continuant_sign(d, prods, mid);
                if sm == 0.0 {
                    x0 = mid;
                    x1 = mid;
                    break;
                }
                if sm == s0 {
                    x0 = mid;
                } else {
                    x1 = mid;
                }
            }
            roots.push(0.5 * (x0 + x1));
        }
        a = b;
        sa = sb;
    }
    roots
}

fn block_qh_residual(a: &ComplexMatrix, eta: &ComplexMatrix, k: usize) -> f64 {
    let diff = (&(&a.adjoint() * eta) - &(eta * a)).leading_block(k);
    let scale = a.leading_block(k).frobenius_norm() * eta.leading_block(k).frobenius_norm();
    if scale == 0.0 { 0.0 } else { diff.frobenius_norm() / scale }
}

/// Runs every model identity on the interior block and records each result.
pub fn verify_model(model: &SwansonModel) -> SwansonReport {
    let n = model.truncation;
    let k = n - 2;
    let eta = &model.eta_mat;
    let mut checks = vec![
        Check::new("quasi-Hermiticity of X_rho", block_qh_residual(&model.x_mat, eta, k), IDENTITY_TOL),
        Check::new("quasi-Hermiticity of P_rho", block_qh_residual(&model.p_mat, eta, k), IDENTITY_TOL),
        Check::new("quasi-Hermiticity of H", block_qh_residual(&model.h_mat, eta, k), IDENTITY_TOL),
    ];

    let hbar = model.params.hbar;
    let comm = (&(&model.x_mat * &model.p_mat) - &(&model.p_mat * &model.x_mat)).leading_block(k);
    let target = ComplexMatrix::identity(k).scale(c64::new(0.0, hbar));
    checks.push(Check::new("canonical commutator [X_rho, P_rho] = i hbar", (&comm - &target).max_abs() / hbar, IDENTITY_TOL));

    let m = 20.min(n - 4) + 1;
    let rate = model.metric_rate();
    let (len, grid) = (model.length, &model.grid);
    let mut gram_err = 0.0f64;
    let tables: Vec<(f64, Vec<f64>)> = grid
        .nodes()
        .iter()
        .map(|&t| {
            let x = len * t;
            // η(x)·𝒰ₙ(x)𝒰ₘ(x) with 𝒰ₙ = η^{−1/2}uₙ, kept literal.
            let lift = (0.5 * rate * x * x).exp();
            let weight = (-rate * x * x).exp() * lift * lift / len;
            (weight, psi_table(m, t))
        })
        .collect();
    for i in 0..m {
        for j in 0..m {
            let v: f64 =
                tables.iter().zip(grid.scaled_weights()).map(|((w, psi), &sw)| sw * w * psi[i] * psi[j]).sum::<f64>() * len;
            let expect = if i == j { 1.0 } else { 0.0 };
            gram_err = gram_err.max((v - expect).abs());
        }
    }
    checks.push(Check::new("eta-orthonormality of the eigenfunctions U_n", gram_err, IDENTITY_TOL));

    let spectrum = model.interior_spectrum();
    let interior = n.div_ceil(2);
    let mut spec_err = if spectrum.len() < interior { f64::INFINITY } else { 0.0 };
    for (idx, e) in spectrum.iter().take(interior).enumerate() {
        let exact = model.energy(idx);
        spec_err = spec_err.max((e - exact).abs() / exact);
    }
    checks.push(Check::new("interior eigenvalues vs hbar Omega (n + 1/2)", spec_err, SPECTRUM_TOL));

    let phi = model.project(|x| (-0.5 * x * x).exp());
    let mut exp_err = 0.0f64;
    for (which, mat) in [(Which::H, &model.h_mat), (Which::HDagger, &model.h_dag_mat)] {
        let spectral = model.spectral_apply(&phi, which).expect("length matches truncation");
        let direct = mat.mul_vec(&phi).expect("square model matrix");
        let scale = direct[..k].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt().max(f64::MIN_POSITIVE);
        let diff = spectral[..k].iter().zip(&direct[..k]).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt();
        exp_err = exp_err.max(diff / scale);
    }
    checks.push(Check::new("spectral expansion of H and H^dagger vs matrix action", exp_err, EXPANSION_TOL));

    SwansonReport { checks, interior_eigenvalues: spectrum.into_iter().take(interior).collect() }
}
