//! `solve-metric`, `diag`, `verify` and `transform`.

use std::path::Path;

use metriq_core::biorth::{self, BiorthogonalBasis, QuasiHermitianSystem, Which};
use metriq_core::intertwiner::{self, Candidate};
use metriq_core::transform::{self, HermitianBasis};
use metriq_core::{ComplexMatrix, Error, MetricOperator};
use serde_json::Value;

use crate::matrix_file::{load_matrix, save_matrix, MatrixKind};
use crate::report::{matrix_value, num, InputDigest, Report, Table};
use crate::{Context, InputError, Outcome, SolveMetricArgs, SystemArgs, TransformArgs};

const QH_IDENTITY: &str = "quasi-Hermiticity A^dagger eta = eta A (relative)";

fn load(path: &Path, field: &str, report: &mut Report) -> Result<ComplexMatrix, InputError> {
    let (m, _) = load_matrix(path).map_err(|e| InputError::new(field, e))?;
    report.inputs.push(InputDigest::of_file(path).map_err(|e| InputError::new(field, e))?);
    Ok(m)
}

fn candidate_name(c: Candidate) -> String {
    match c {
        Candidate::Dephased => "dephased identity".into(),
        Candidate::BasisElement { index, negated } => format!("{}basis element {index}", if negated { "-" } else { "" }),
        Candidate::RandomTrial { index } => format!("random trial {index}"),
    }
}

fn core_input(field: &str, e: Error) -> InputError {
    InputError::new(field, e)
}

pub(crate) fn solve_metric(args: &SolveMetricArgs, ctx: &Context, mut report: Report) -> Result<Outcome, InputError> {
    let a = load(&args.input, "--input", &mut report)?;
    report.scalar("dim", a.rows());
    report.scalar("seed", ctx.seed);
    report.scalar("trials", args.trials);
    match intertwiner::solve_metric(&a, args.trials, ctx.seed) {
        Ok(sol) => {
            report.scalar("metric_found", true);
            report.scalar("nullspace_dim", sol.nullspace_dim);
            report.scalar("candidate", candidate_name(sol.candidate));
            report.scalar("trace", sol.metric.eta().trace().re);
            report.residual(
                "intertwining relation A^dagger eta = eta A (relative)",
                sol.residual,
                ctx.tol(intertwiner::RESIDUAL_TOL),
            );
            let eta = sol.metric.eta();
            if let Some(out) = &args.out {
                save_matrix(out, eta, MatrixKind::Metric).map_err(|e| InputError::new("--out", e))?;
                report.scalar("out", out.display().to_string());
            }
            report.data("eta", matrix_value(eta));
            let mut t = Table::new(&["row", "col", "re", "im"]);
            for i in 0..eta.rows() {
                for j in 0..eta.cols() {
                    t.push(vec![i.to_string(), j.to_string(), num(eta[(i, j)].re), num(eta[(i, j)].im)]);
                }
            }
            Ok(Outcome { report, table: Some(t) })
        }
        Err(Error::MetricNotFound { nullspace_dim, exhaustive }) => {
            report.scalar("metric_found", false);
            report.scalar("nullspace_dim", nullspace_dim);
            report.scalar("search_exhaustive", exhaustive);
            report.failed("positive-definite solution of A^dagger eta = eta A", ctx.tol(intertwiner::RESIDUAL_TOL));
            Ok(Outcome { report, table: None })
        }
        Err(e) => Err(core_input("--input", e)),
    }
}

/// Loads A and its metric (or searches for one). `Ok(None)` means the
/// system failed quasi-Hermiticity, which is already recorded in `report`.
fn system(args: &SystemArgs, ctx: &Context, report: &mut Report) -> Result<Option<QuasiHermitianSystem>, InputError> {
    let a = load(&args.input, "--input", report)?;
    if !a.is_square() {
        return Err(InputError::new("--input", format!("A must be square, got {}x{}", a.rows(), a.cols())));
    }
    report.scalar("dim", a.rows());
    let metric = match &args.metric {
        Some(path) => {
            let eta = load(path, "--metric", report)?;
            if eta.rows() != a.rows() || eta.cols() != a.cols() {
                return Err(InputError::new(
                    "--metric",
                    format!("expected {}x{} to match A, got {}x{}", a.rows(), a.cols(), eta.rows(), eta.cols()),
                ));
            }
            MetricOperator::new(eta).map_err(|e| core_input("--metric", e))?
        }
        None => {
            report.scalar("seed", ctx.seed);
            match intertwiner::solve_metric(&a, intertwiner::DEFAULT_TRIALS, ctx.seed) {
                Ok(sol) => {
                    report.scalar("metric_candidate", candidate_name(sol.candidate));
                    sol.metric
                }
                Err(Error::MetricNotFound { nullspace_dim, exhaustive }) => {
                    report.scalar("nullspace_dim", nullspace_dim);
                    report.scalar("search_exhaustive", exhaustive);
                    report.failed("positive-definite solution of A^dagger eta = eta A", ctx.tol(intertwiner::RESIDUAL_TOL));
                    return Ok(None);
                }
                Err(e) => return Err(core_input("--input", e)),
            }
        }
    };
    let qh = metric.quasi_hermiticity_residual(&a).map_err(|e| core_input("--metric", e))?;
    report.residual(QH_IDENTITY, qh, ctx.tol(biorth::SYSTEM_TOL));
    if !(qh <= biorth::SYSTEM_TOL) {
        return Ok(None);
    }
    Ok(Some(QuasiHermitianSystem::new(a, metric).map_err(|e| core_input("--metric", e))?))
}

fn diagonalized(sys: &QuasiHermitianSystem, ctx: &Context, report: &mut Report) -> Option<BiorthogonalBasis> {
    match biorth::diagonalize(sys) {
        Ok(b) => {
            let r = b.hermitian_counterpart.hermiticity_residual();
            report.residual("similarity h = rho A rho^-1 is Hermitian", r, ctx.tol(biorth::SIMILARITY_TOL));
            Some(b)
        }
        Err(Error::SimilarityNotHermitian { residual }) => {
            report.residual("similarity h = rho A rho^-1 is Hermitian", residual, ctx.tol(biorth::SIMILARITY_TOL));
            None
        }
        Err(_) => {
            report.failed("Hermitian eigensolver on h = rho A rho^-1", ctx.tol(biorth::SIMILARITY_TOL));
            None
        }
    }
}

fn basis_residuals(b: &BiorthogonalBasis, a: &ComplexMatrix, ctx: &Context, report: &mut Report) {
    report.residual("eta-orthonormality (eta v_m)^dagger v_n = delta_mn", b.orthonormality_residual(), ctx.tol(1e-10));
    report.residual(
        "completeness sum_n v_n (eta v_n)^dagger = sum_n (eta v_n) v_n^dagger = I",
        b.completeness_residual(),
        ctx.tol(1e-10),
    );
    report.residual("eigen equation A v_n = lambda_n v_n (relative)", b.eigen_residual(a).unwrap_or(f64::NAN), ctx.tol(1e-9));
}

fn eigen_table(b: &BiorthogonalBasis) -> Table {
    let mut t = Table::new(&["n", "lambda"]);
    for (n, l) in b.eigenvalues.iter().enumerate() {
        t.push(vec![n.to_string(), num(*l)]);
    }
    t
}

pub(crate) fn diag(args: &SystemArgs, ctx: &Context, mut report: Report) -> Result<Outcome, InputError> {
    let Some(sys) = system(args, ctx, &mut report)? else {
        return Ok(Outcome { report, table: None });
    };
    let Some(b) = diagonalized(&sys, ctx, &mut report) else {
        return Ok(Outcome { report, table: None });
    };
    basis_residuals(&b, sys.operator(), ctx, &mut report);
    report.data("eigenvalues", b.eigenvalues.clone());
    report.data("h_kets", matrix_value(&b.h_kets));
    report.data("eta_kets", matrix_value(&b.eta_kets));
    report.data("eta", matrix_value(sys.metric().eta()));
    let table = eigen_table(&b);
    Ok(Outcome { report, table: Some(table) })
}

fn relative(diff: &ComplexMatrix, scale: f64) -> f64 {
    if scale == 0.0 { diff.frobenius_norm() } else { diff.frobenius_norm() / scale }
}

pub(crate) fn verify(args: &SystemArgs, ctx: &Context, mut report: Report) -> Result<Outcome, InputError> {
    let Some(sys) = system(args, ctx, &mut report)? else {
        return Ok(Outcome { report, table: None });
    };
    let Some(b) = diagonalized(&sys, ctx, &mut report) else {
        return Ok(Outcome { report, table: None });
    };
    let a = sys.operator();
    let m = sys.metric();
    let scale = a.frobenius_norm();
    basis_residuals(&b, a, ctx, &mut report);
    report.residual(
        "spectral resolution A = sum_n lambda_n v_n (eta v_n)^dagger (relative)",
        relative(&(&b.spectral_resolution(Which::A) - a), scale),
        ctx.tol(1e-10),
    );
    report.residual(
        "spectral resolution A^dagger = sum_n lambda_n (eta v_n) v_n^dagger (relative)",
        relative(&(&b.spectral_resolution(Which::ADagger) - &a.adjoint()), scale),
        ctx.tol(1e-10),
    );
    let left = &(&b.eta_kets.adjoint() * a) - &(&ComplexMatrix::from_diagonal(&b.eigenvalues) * &b.eta_kets.adjoint());
    report.residual(
        "left eigenvectors (eta v_n)^dagger A = lambda_n (eta v_n)^dagger (relative)",
        relative(&left, scale),
        ctx.tol(1e-10),
    );
    let conj = &(m.eta() * a) * m.eta_inv();
    report.residual("adjoint A^dagger = eta A eta^-1 (relative)", relative(&(&a.adjoint() - &conj), scale), ctx.tol(1e-10));

    // Spectral expansions applied to every unit vector reproduce A and A^dagger column by column.
    let n = a.rows();
    let (mut worst_a, mut worst_ad) = (0.0f64, 0.0f64);
    let ad = a.adjoint();
    for k in 0..n {
        let mut e = vec![metriq_core::c64::new(0.0, 0.0); n];
        e[k] = metriq_core::c64::new(1.0, 0.0);
        let sa = b.apply_spectral(&e, Which::A).expect("dimension matches");
        let sd = b.apply_spectral(&e, Which::ADagger).expect("dimension matches");
        for i in 0..n {
            worst_a = worst_a.max((sa[i] - a[(i, k)]).norm());
            worst_ad = worst_ad.max((sd[i] - ad[(i, k)]).norm());
        }
    }
    let s = scale.max(f64::MIN_POSITIVE);
    report.residual("spectral expansion of A phi vs direct action (relative)", worst_a / s, ctx.tol(1e-10));
    report.residual("spectral expansion of A^dagger phi vs direct action (relative)", worst_ad / s, ctx.tol(1e-10));

    report.data("eigenvalues", b.eigenvalues.clone());
    let table = Table::from_residuals(&report.residuals);
    Ok(Outcome { report, table: Some(table) })
}

pub(crate) fn transform(args: &TransformArgs, ctx: &Context, mut report: Report) -> Result<Outcome, InputError> {
    let Some(sys) = system(&args.system, ctx, &mut report)? else {
        return Ok(Outcome { report, table: None });
    };
    let b_mat = load(&args.reference, "--reference", &mut report)?;
    if b_mat.rows() != sys.dim() || b_mat.cols() != sys.dim() {
        return Err(InputError::new(
            "--reference",
            format!("expected {0}x{0} to match A, got {1}x{2}", sys.dim(), b_mat.rows(), b_mat.cols()),
        ));
    }
    let hb = HermitianBasis::from_hermitian(&b_mat).map_err(|e| core_input("--reference", e))?;
    let Some(bb) = diagonalized(&sys, ctx, &mut report) else {
        return Ok(Outcome { report, table: None });
    };
    let m = sys.metric();
    let t = transform::build_table(&hb, &bb, m).map_err(|e| core_input("--reference", e))?;
    let (rev_eta, rev_h) = transform::reverse_tables(&hb, &bb, m).map_err(|e| core_input("--reference", e))?;
    report.residual("reference basis orthonormality w_m^dagger w_n = delta_mn", hb.orthonormality_residual(), ctx.tol(1e-12));
    report.residual("reference basis completeness sum_m w_m w_m^dagger = I", hb.completeness_residual(), ctx.tol(1e-10));
    report.residual(
        "conjugation <lambda|omega>_eta = conj <omega|lambda>_eta (max entry)",
        (&rev_eta - &t.factors_eta.adjoint()).max_abs(),
        ctx.tol(1e-12),
    );
    report.residual(
        "conjugation <lambda|omega>_H = conj <omega|lambda>_H (max entry)",
        (&rev_h - &t.factors_h.adjoint()).max_abs(),
        ctx.tol(1e-12),
    );
    report.residual(
        "bi-orthogonal contraction sum_m <lambda|omega_m>_H <omega_m|lambda'>_eta = delta",
        t.roundtrip_residual(),
        ctx.tol(1e-10),
    );
    report.data("omega", t.b_eigenvalues.clone());
    report.data("lambda", t.a_eigenvalues.clone());
    report.data("factors_eta", matrix_value(&t.factors_eta));
    report.data("factors_h", matrix_value(&t.factors_h));
    let mut table = Table::new(&["m", "n", "eta_re", "eta_im", "h_re", "h_im"]);
    for i in 0..t.dim() {
        for j in 0..t.dim() {
            let (e, h) = (t.factors_eta[(i, j)], t.factors_h[(i, j)]);
            table.push(vec![i.to_string(), j.to_string(), num(e.re), num(e.im), num(h.re), num(h.im)]);
        }
    }
    report.scalar("dim", Value::from(t.dim()));
    Ok(Outcome { report, table: Some(table) })
}
