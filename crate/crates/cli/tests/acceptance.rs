//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.
//!
//! Run with `cargo test -p metriq --test acceptance`.

use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::Instant;

use metriq_core::biorth::{diagonalize, BiorthogonalBasis, QuasiHermitianSystem, Which};
use metriq_core::intertwiner::{solve_metric, DEFAULT_TRIALS};
use metriq_core::numkernel::{dot, hermitian_eigen, norm};
use metriq_core::quadrature::gauss_hermite;
use metriq_core::swanson::{self, build_model, SwansonParams, SwansonReport};
use metriq_core::transform::{build_table, reverse_tables, Direction, HermitianBasis};
use metriq_core::{c64, ComplexMatrix, Error, MetricOperator};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    worst: f64,
    tolerance: f64,
    detail: String,
    passed: bool,
}

impl Outcome {
    fn bound(worst: f64, tolerance: f64, detail: impl Into<String>) -> Self {
        let detail = format!("{} {worst:.1e} <= {tolerance:.0e}", detail.into());
        Self { worst, tolerance, detail, passed: worst <= tolerance }
    }

    fn and(self, other: Outcome) -> Outcome {
        let (first, second) = if self.passed && !other.passed { (other, self) } else { (self, other) };
        Outcome {
            worst: first.worst,
            tolerance: first.tolerance,
            detail: format!("{}; {}", first.detail, second.detail),
            passed: first.passed && second.passed,
        }
    }
}

fn real(rows: &[&[f64]]) -> ComplexMatrix {
    ComplexMatrix::from_real_rows(rows).unwrap()
}

fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |_, _| c64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).hermitian_part()
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<c64> {
    (0..n).map(|_| c64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect()
}

struct Constructed {
    a: ComplexMatrix,
    metric: MetricOperator,
}

/// `A = ρ⁻¹hρ`, `η = ρ²` with `ρ = exp(G/‖G‖₂)`. With `spread` small the
/// spectrum of `h` stays near the ladder `0, 1, …, n−1`.
fn construct(rng: &mut ChaCha8Rng, n: usize, spread: f64) -> Constructed {
    let ladder: Vec<f64> = (0..n).map(|k| k as f64).collect();
    let h = &ComplexMatrix::from_diagonal(&ladder) + &random_hermitian(rng, n).scale_real(spread);
    let g = hermitian_eigen(&random_hermitian(rng, n)).unwrap();
    let top = g.eigenvalues.iter().fold(1e-3f64, |m, l| m.max(l.abs()));
    let rho = g.map_spectrum(|l| (l / top).exp());
    let rho_inv = g.map_spectrum(|l| (-l / top).exp());
    let a = &(&rho_inv * &h) * &rho;
    let metric = MetricOperator::new(&rho * &rho).unwrap();
    Constructed { a, metric }
}

/// `‖A†η − ηA‖_F / (‖A‖_F ‖η‖_F)`, written out independently of the library.
fn qh_residual(a: &ComplexMatrix, eta: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut diff = 0.0;
    for i in 0..n {
        for j in 0..n {
            let mut z = c64::new(0.0, 0.0);
            for k in 0..n {
                z += a[(k, i)].conj() * eta[(k, j)] - eta[(i, k)] * a[(k, j)];
            }
            diff += z.norm_sqr();
        }
    }
    diff.sqrt() / (a.frobenius_norm() * eta.frobenius_norm())
}

fn swanson_check(report: &SwansonReport, name: &str) -> f64 {
    report.checks.iter().find(|c| c.name.starts_with(name)).map_or(f64::INFINITY, |c| c.value)
}

fn criterion_1() -> Outcome {
    let p = SwansonParams { hbar: 1.0, mass: 1.0, z: 1.0, ..SwansonParams::new(2.0, 0.5, 0.3) };
    let model = build_model(p, 64, 160).unwrap();
    let spectrum = model.interior_spectrum();
    if spectrum.len() < 11 {
        return Outcome::bound(f64::INFINITY, 1e-6, format!("only {} eigenvalues found", spectrum.len()));
    }
    let worst = (0..=10)
        .map(|n| {
            let exact = 3.4f64.sqrt() * (n as f64 + 0.5);
            (spectrum[n] - exact).abs() / exact
        })
        .fold(0.0, f64::max);
    Outcome::bound(worst, 1e-6, "E_n vs sqrt(3.4)(n + 1/2), n <= 10, N = 64")
}

fn criterion_2() -> Outcome {
    let model = build_model(SwansonParams::new(2.0, 0.5, 0.3), 48, 128).unwrap();
    let grid = gauss_hermite(128).unwrap();
    let mut worst = 0.0f64;
    for n in 0..=20 {
        for m in 0..=20 {
            let g = grid.integrate_real(
                |x| model.metric_at(x) * model.eigenfunction(n, x).unwrap() * model.eigenfunction(m, x).unwrap(),
                model.length,
            );
            let expect = if n == m { 1.0 } else { 0.0 };
            worst = worst.max((g - expect).abs());
        }
    }
    Outcome::bound(worst, 1e-8, "max |<U_n, U_m>_eta - delta_nm|, n, m <= 20, 128 nodes")
}

fn criterion_3() -> Outcome {
    let a = real(&[&[1.0, 1.0], &[0.0, 2.0]]);
    let eta = real(&[&[1.0, -1.0], &[-1.0, 2.0]]);
    let hand = Outcome::bound(qh_residual(&a, &eta), 1e-10, "hand pair");

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let n = rng.gen_range(1..=8);
        let c = construct(&mut rng, n, 0.3);
        worst = worst.max(qh_residual(&c.a, c.metric.eta()));
    }
    let random = Outcome::bound(worst, 1e-10, "50 random systems, dim <= 8");

    let model = build_model(SwansonParams::new(2.0, 0.5, 0.3), 64, 160).unwrap();
    let report = model.verify();
    let blocks = ["quasi-Hermiticity of X_rho", "quasi-Hermiticity of P_rho", "quasi-Hermiticity of H"]
        .iter()
        .map(|name| swanson_check(&report, name))
        .fold(0.0, f64::max);
    hand.and(random).and(Outcome::bound(blocks, 1e-8, "Swanson X_rho, P_rho, H interior blocks"))
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst = 0.0f64;
    let mut count = 0;
    for n in 1..=16 {
        for _ in 0..4 {
            let c = construct(&mut rng, n, 0.3);
            let bb = diagonalize(&QuasiHermitianSystem::new(c.a, c.metric).unwrap()).unwrap();
            worst = worst.max(bb.completeness_residual()).max(bb.orthonormality_residual());
            count += 1;
        }
    }
    Outcome::bound(worst, 1e-10, format!("completeness and orthonormality over {count} systems, dim 1..=16"))
}

fn spectral_error(bb: &BiorthogonalBasis, a: &ComplexMatrix, phi: &[c64], which: Which) -> f64 {
    let op = match which {
        Which::A => a.clone(),
        Which::ADagger => a.adjoint(),
    };
    let direct = op.mul_vec(phi).unwrap();
    let spectral = bb.apply_spectral(phi, which).unwrap();
    let diff: Vec<c64> = spectral.iter().zip(&direct).map(|(x, y)| x - y).collect();
    norm(&diff) / (op.frobenius_norm() * norm(phi))
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let n = rng.gen_range(1..=8);
        let c = construct(&mut rng, n, 0.3);
        let bb = diagonalize(&QuasiHermitianSystem::new(c.a.clone(), c.metric).unwrap()).unwrap();
        let phi = random_vector(&mut rng, n);
        worst = worst
            .max(spectral_error(&bb, &c.a, &phi, Which::A))
            .max(spectral_error(&bb, &c.a, &phi, Which::ADagger));
    }
    let matrices = Outcome::bound(worst, 1e-10, "100 random vectors, relative to |A| |phi|");

    let model = build_model(SwansonParams::new(2.0, 0.5, 0.3), 40, 112).unwrap();
    let phi = model.project(|x| (-0.5 * x * x).exp());
    let k = model.truncation - 2;
    let mut swanson_worst = 0.0f64;
    for (which, mat) in [(swanson::Which::H, &model.h_mat), (swanson::Which::HDagger, &model.h_dag_mat)] {
        let spectral = model.spectral_apply(&phi, which).unwrap();
        let direct = mat.mul_vec(&phi).unwrap();
        let diff: Vec<c64> = spectral[..k].iter().zip(&direct[..k]).map(|(x, y)| x - y).collect();
        swanson_worst = swanson_worst.max(norm(&diff) / norm(&direct[..k]));
    }
    matrices.and(Outcome::bound(swanson_worst, 1e-6, "Swanson projected Gaussian, N = 40"))
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst = 0.0f64;
    let mut not_pd = 0;
    for seed in 0..20 {
        let n = rng.gen_range(1..=8);
        let c = construct(&mut rng, n, 0.05);
        match solve_metric(&c.a, DEFAULT_TRIALS, seed) {
            Ok(sol) => {
                let eta = sol.metric.eta();
                worst = worst.max(sol.residual).max(qh_residual(&c.a, eta));
                let eig = hermitian_eigen(eta).unwrap();
                if eta.hermiticity_residual() > 1e-12 || eig.eigenvalues[0] <= 0.0 {
                    not_pd += 1;
                }
            }
            Err(_) => worst = f64::INFINITY,
        }
    }
    let recovered = Outcome {
        worst,
        tolerance: 1e-9,
        detail: format!("20 constructed systems {worst:.1e} <= 1e-9, {not_pd} not positive definite"),
        passed: worst <= 1e-9 && not_pd == 0,
    };
    let rotation = real(&[&[0.0, 1.0], &[-1.0, 0.0]]);
    let refused = matches!(solve_metric(&rotation, DEFAULT_TRIALS, 0), Err(Error::MetricNotFound { .. }));
    let rejected = Outcome {
        worst: 0.0,
        tolerance: 0.0,
        detail: format!("rotation reports MetricNotFound: {refused}"),
        passed: refused,
    };
    recovered.and(rejected)
}

fn transform_errors(b: &ComplexMatrix, a: ComplexMatrix, m: MetricOperator) -> (f64, f64) {
    let hb = HermitianBasis::from_hermitian(b).unwrap();
    let bb = diagonalize(&QuasiHermitianSystem::new(a, m.clone()).unwrap()).unwrap();
    let t = build_table(&hb, &bb, &m).unwrap();
    let (rev_eta, rev_h) = reverse_tables(&hb, &bb, &m).unwrap();
    let conj = (&rev_eta - &t.factors_eta.adjoint()).max_abs().max((&rev_h - &t.factors_h.adjoint()).max_abs());
    (conj, t.roundtrip_residual())
}

fn criterion_7() -> Outcome {
    let m = MetricOperator::new(real(&[&[1.0, -1.0], &[-1.0, 2.0]])).unwrap();
    let (mut conj, mut round) =
        transform_errors(&real(&[&[0.0, 1.0], &[1.0, 0.0]]), real(&[&[1.0, 1.0], &[0.0, 2.0]]), m);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let n = rng.gen_range(1..=8);
        let b = random_hermitian(&mut rng, n);
        let c = construct(&mut rng, n, 0.3);
        let (cj, rt) = transform_errors(&b, c.a, c.metric);
        conj = conj.max(cj);
        round = round.max(rt);
    }
    Outcome::bound(conj, 1e-12, "conjugation relation entrywise, hand example + 20 pairs")
        .and(Outcome::bound(round, 1e-10, "round-trip contraction"))
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let n = rng.gen_range(1..=8);
        let a = random_hermitian(&mut rng, n);
        let m = MetricOperator::identity(n);
        let bb = diagonalize(&QuasiHermitianSystem::new(a.clone(), m.clone()).unwrap()).unwrap();
        worst = worst.max((&bb.h_kets - &bb.eta_kets).max_abs());
        worst = worst.max((&bb.spectral_resolution(Which::A) - &bb.spectral_resolution(Which::ADagger)).max_abs());

        let phi = random_vector(&mut rng, n);
        let coeffs = bb.expand_coefficients(&phi).unwrap();
        for (k, c) in coeffs.iter().enumerate() {
            worst = worst.max((c - dot(&bb.h_kets.column(k), &phi)).norm());
        }
        let ket = m.ket_pair(phi.clone()).unwrap();
        worst = worst.max(ket.h_ket.iter().zip(&ket.eta_ket).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max));

        let b = random_hermitian(&mut rng, n);
        let hb = HermitianBasis::from_hermitian(&b).unwrap();
        let t = build_table(&hb, &bb, &m).unwrap();
        worst = worst.max((&t.factors_eta - &t.factors_h).max_abs());
        let forward = t.change_representation(&coeffs, Direction::LambdaToOmega).unwrap();
        for (k, z) in forward.iter().enumerate() {
            worst = worst.max((z - dot(&hb.kets.column(k), &phi)).norm());
        }
    }
    Outcome::bound(worst, 1e-14, "eta = I: kets, resolutions, coefficients and tables coincide")
}

fn run_cli(dir: &Path, args: &[&str], seed_env: Option<&str>) -> (Option<i32>, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_metriq"));
    cmd.current_dir(dir).args(args).env_remove("METRIQ_SEED");
    if let Some(s) = seed_env {
        cmd.env("METRIQ_SEED", s);
    }
    let out = cmd.output().expect("spawn metriq");
    let text = String::from_utf8(out.stdout).expect("utf-8 report");
    let kept: Vec<&str> = text.lines().filter(|l| !l.trim_start().starts_with("\"timing_ms\"")).collect();
    (out.status.code(), kept.join("\n"))
}

fn criterion_9() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let files = [
        ("a.json", r#"{"rows": 2, "cols": 2, "entries": [[1, 0], [1, 0], [0, 0], [2, 0]]}"#),
        ("eta.json", r#"{"rows": 2, "cols": 2, "kind": "metric", "entries": [[1, 0], [-1, 0], [-1, 0], [2, 0]]}"#),
        ("b.json", r#"{"rows": 2, "cols": 2, "kind": "hermitian", "entries": [[0, 0], [1, 0], [1, 0], [0, 0]]}"#),
        (
            "d.json",
            r#"{"rows": 3, "cols": 3, "entries": [[1, 0], [0, 0], [0, 0], [0, 0], [2, 0], [0, 0], [0, 0], [0, 0], [3, 0]]}"#,
        ),
    ];
    for (name, text) in files {
        std::fs::write(dir.path().join(name), text).unwrap();
    }
    let invocations: &[&[&str]] = &[
        &["--seed", "7", "solve-metric", "--input", "a.json"],
        &["--seed", "7", "solve-metric", "--input", "d.json"],
        &["--seed", "7", "--format", "csv", "solve-metric", "--input", "d.json"],
        &["diag", "--input", "a.json", "--metric", "eta.json"],
        &["verify", "--input", "a.json", "--metric", "eta.json"],
        &["transform", "--input", "a.json", "--metric", "eta.json", "--reference", "b.json"],
        &["swanson", "spectrum", "--omega", "2", "--alpha", "0.5", "--beta", "0.3", "-n", "8"],
        &["--trunc", "24", "swanson", "verify", "--omega", "2", "--alpha", "0.5", "--beta", "0.3"],
        &["--trunc", "24", "swanson", "expand", "--omega", "2", "--alpha", "0.5", "--beta", "0.3"],
        &["swanson", "wavefunctions", "--omega", "2", "--alpha", "0.5", "--beta", "0.3", "--index", "3"],
    ];
    let mut mismatches = Vec::new();
    for args in invocations {
        let first = run_cli(dir.path(), args, None);
        let second = run_cli(dir.path(), args, None);
        if first != second || first.0.is_none() {
            mismatches.push(args.join(" "));
        }
    }
    let env_a = run_cli(dir.path(), &["solve-metric", "--input", "d.json"], Some("7"));
    let env_b = run_cli(dir.path(), &["solve-metric", "--input", "d.json"], Some("7"));
    if env_a != env_b {
        mismatches.push("METRIQ_SEED=7 solve-metric --input d.json".into());
    }
    let total = invocations.len() + 1;
    Outcome {
        worst: mismatches.len() as f64,
        tolerance: 0.0,
        detail: if mismatches.is_empty() {
            format!("{total} invocations byte-identical across repeats")
        } else {
            format!("differing reports: {}", mismatches.join(", "))
        },
        passed: mismatches.is_empty(),
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("Swanson spectrum", criterion_1),
        ("eta-orthonormality", criterion_2),
        ("quasi-Hermiticity", criterion_3),
        ("bi-orthogonal completeness and orthonormality", criterion_4),
        ("spectral-expansion equivalence", criterion_5),
        ("metric recovery", criterion_6),
        ("transformation theory", criterion_7),
        ("trivial-limit collapse", criterion_8),
        ("CLI determinism", criterion_9),
    ];
    let mut failures = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = check();
        let verdict = if o.passed { "PASS" } else { "FAIL" };
        println!(
            "{verdict} {:>2} {name}: [{}] {:.2}s",
            k + 1,
            o.detail,
            start.elapsed().as_secs_f64()
        );
        if !o.passed {
            failures += 1;
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
