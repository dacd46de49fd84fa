use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use metriq::matrix_file::{format_matrix, load_matrix, parse_matrix, MatrixFileError, MatrixKind};
use metriq_core::ComplexMatrix;
use serde_json::Value;

fn metriq(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_metriq"))
        .current_dir(dir)
        .args(args)
        .env_remove("METRIQ_SEED")
        .output()
        .expect("spawn metriq")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) {
    fs::write(dir.join(name), text).unwrap();
}

const A: &str = r#"{"rows": 2, "cols": 2, "entries": [[1, 0], [1, 0], [0, 0], [2, 0]]}"#;
const ETA: &str = r#"{"rows": 2, "cols": 2, "kind": "metric", "entries": [[1, 0], [-1, 0], [-1, 0], [2, 0]]}"#;
const B: &str = r#"{"rows": 2, "cols": 2, "kind": "hermitian", "entries": [[0, 0], [1, 0], [1, 0], [0, 0]]}"#;

#[test]
fn matrix_file_round_trip_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let text = format_matrix(&ComplexMatrix::identity(3), MatrixKind::Metric);
    let path = dir.path().join("id.json");
    fs::write(&path, &text).unwrap();
    let (m, kind) = load_matrix(&path).unwrap();
    assert_eq!(kind, MatrixKind::Metric);
    assert_eq!(m, ComplexMatrix::identity(3));
    assert_eq!(format_matrix(&m, kind), text);
}

#[test]
fn entry_count_mismatch_is_a_parse_error() {
    let text = r#"{"rows": 2, "cols": 2, "entries": [[1, 0], [0, 0], [0, 0]]}"#;
    match parse_matrix(text, "short.json") {
        Err(MatrixFileError::Parse { field, .. }) => assert_eq!(field, "entries"),
        other => panic!("expected a parse error, got {other:?}"),
    }
}

#[test]
fn indefinite_metric_is_a_kind_violation() {
    let text = r#"{"rows": 2, "cols": 2, "kind": "metric", "entries": [[1, 0], [0, 0], [0, 0], [-1, 0]]}"#;
    assert!(matches!(parse_matrix(text, "bad.json"), Err(MatrixFileError::KindViolation { .. })));
}

#[test]
fn solve_metric_writes_a_loadable_metric() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "a.json", A);
    let out = metriq(dir.path(), &["solve-metric", "--input", "a.json", "--out", "eta.json"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let report = json(&out);
    assert_eq!(report["passed"], true);
    assert!(report["residuals"][0]["value"].as_f64().unwrap() <= 1e-12);

    let (eta, kind) = load_matrix(&dir.path().join("eta.json")).unwrap();
    assert_eq!(kind, MatrixKind::Metric);
    assert!((eta.trace().re - 2.0).abs() < 1e-12);
    let a = parse_matrix(A, "a.json").unwrap().0;
    let diff = &(&a.adjoint() * &eta) - &(&eta * &a);
    assert!(diff.max_abs() <= 1e-12);

    let verify = metriq(dir.path(), &["verify", "--input", "a.json", "--metric", "eta.json"]);
    assert_eq!(verify.status.code(), Some(0), "{}", stderr(&verify));
}

#[test]
fn diag_reports_the_spectrum() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "a.json", A);
    write(dir.path(), "eta.json", ETA);
    let out = metriq(dir.path(), &["diag", "--input", "a.json", "--metric", "eta.json"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let report = json(&out);
    let text = report.to_string();
    assert!(text.contains("eigenvalues"), "{text}");
    assert!(report["residuals"].as_array().unwrap().iter().all(|r| r["passed"] == true));
}

#[test]
fn transform_passes_on_the_hand_example() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "a.json", A);
    write(dir.path(), "eta.json", ETA);
    write(dir.path(), "b.json", B);
    let args = ["transform", "--input", "a.json", "--metric", "eta.json", "--reference", "b.json"];
    let out = metriq(dir.path(), &args);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(json(&out)["passed"], true);

    let csv = metriq(dir.path(), &[&["--format", "csv"], &args[..]].concat());
    assert_eq!(csv.status.code(), Some(0));
    assert!(!csv.stdout.is_empty());
}

#[test]
fn swanson_spectrum_matches_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    let out = metriq(dir.path(), &["swanson", "spectrum", "--omega", "2", "--alpha", "0.5", "--beta", "0.3", "-n", "4"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let report = json(&out);
    let energies = report["data"]["energies"].as_array().unwrap();
    assert_eq!(energies.len(), 4);
    for (n, e) in energies.iter().enumerate() {
        let exact = 3.4f64.sqrt() * (n as f64 + 0.5);
        assert!((e.as_f64().unwrap() - exact).abs() < 1e-12);
    }
}

#[test]
fn swanson_hermitian_limit_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let out = metriq(dir.path(), &["--trunc", "16", "swanson", "verify", "--omega", "1", "--alpha", "0", "--beta", "0"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let report = json(&out);
    assert_eq!(report["scalars"]["hermitian_limit"], true);
    assert_eq!(report["passed"], true);
}

#[test]
fn swanson_verify_and_expand_pass_for_non_hermitian_parameters() {
    let dir = tempfile::tempdir().unwrap();
    for action in ["verify", "expand"] {
        let out = metriq(dir.path(), &["--trunc", "32", "swanson", action, "--omega", "2", "--alpha", "0.5", "--beta", "0.3"]);
        assert_eq!(out.status.code(), Some(0), "{action}: {}", stderr(&out));
    }
}

#[test]
fn missing_metric_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "r.json", r#"{"rows": 2, "cols": 2, "entries": [[0, 0], [1, 0], [-1, 0], [0, 0]]}"#);
    let out = metriq(dir.path(), &["solve-metric", "--input", "r.json"]);
    assert_eq!(out.status.code(), Some(1));
    let report = json(&out);
    assert_eq!(report["passed"], false);
    assert!(report["residuals"][0]["value"].is_null());
}

#[test]
fn tightened_tolerance_fails_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = metriq(dir.path(), &["--tol", "0", "--trunc", "16", "swanson", "verify", "--omega", "2", "--alpha", "0.5", "--beta", "0.3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("FAILED"));
}

#[test]
fn input_errors_exit_with_two_and_name_the_field() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "short.json", r#"{"rows": 2, "cols": 2, "entries": [[1, 0]]}"#);
    write(dir.path(), "a.json", A);

    let cases: &[(&[&str], &str)] = &[
        (&["solve-metric", "--input", "short.json"], "entries"),
        (&["solve-metric", "--input", "missing.json"], "missing.json"),
        (&["verify", "--input", "a.json", "--metric", "a.json"], "--metric"),
        (&["--tol", "1e-3", "--tol-scale", "2", "solve-metric", "--input", "a.json"], "--tol"),
        (&["swanson", "spectrum", "--omega", "1", "--alpha", "2", "--beta", "0.2"], "--omega"),
        (&["--trunc", "2", "swanson", "verify", "--omega", "1"], "--trunc"),
        (&["swanson", "spectrum"], "--omega"),
    ];
    for (args, field) in cases {
        let out = metriq(dir.path(), args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let msg = stderr(&out);
        assert!(msg.contains(field), "{args:?}: {msg}");
    }
}

#[test]
fn seed_flag_overrides_environment() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "a.json", A);
    let with_env = Command::new(env!("CARGO_BIN_EXE_metriq"))
        .current_dir(dir.path())
        .args(["--seed", "3", "solve-metric", "--input", "a.json"])
        .env("METRIQ_SEED", "11")
        .output()
        .unwrap();
    assert_eq!(json(&with_env)["scalars"]["seed"], 3);

    let env_only = Command::new(env!("CARGO_BIN_EXE_metriq"))
        .current_dir(dir.path())
        .args(["solve-metric", "--input", "a.json"])
        .env("METRIQ_SEED", "11")
        .output()
        .unwrap();
    assert_eq!(json(&env_only)["scalars"]["seed"], 11);
    assert_eq!(json(&metriq(dir.path(), &["solve-metric", "--input", "a.json"]))["scalars"]["seed"], 0);
}

#[test]
fn in_process_run_matches_binary_apart_from_timing() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["metriq", "swanson", "spectrum", "--omega", "2", "--alpha", "0.5", "--beta", "0.3"];
    let (mut out, mut err) = (Vec::new(), Vec::new());
    assert_eq!(metriq::run(args, &mut out, &mut err), 0);
    let mut in_process: Value = serde_json::from_slice(&out).unwrap();
    let mut spawned = json(&metriq(dir.path(), &args[1..]));
    for v in [&mut in_process, &mut spawned] {
        let obj = v.as_object_mut().unwrap();
        obj.remove("timing_ms");
        obj.remove("command");
    }
    assert_eq!(in_process, spawned);
}
