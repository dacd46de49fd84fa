//! `metriq` command-line front end: matrix files, subcommands and reports.
//!
//! [`run`] takes the full argument vector and writes the report to `out`.
//! Exit status is 0 when every residual passes, 1 when any fails and 2 on
//! input errors, with a diagnostic on `err` naming the offending input.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod linalg;
pub mod matrix_file;
pub mod report;
mod swanson;

use report::{Report, Table};

#[derive(Parser, Debug)]
#[command(name = "metriq", version, about = "Quasi-Hermitian operators with positive-definite metric")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Seed for metric search (overrides METRIQ_SEED; default 0)
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Replace every tolerance with this value
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Multiply every default tolerance by this factor
    #[arg(long, global = true)]
    tol_scale: Option<f64>,

    /// Truncation N of the Swanson coefficient basis
    #[arg(long, global = true, default_value_t = 64)]
    trunc: usize,

    /// Quadrature nodes for the Swanson model (default 2N + 32)
    #[arg(long, global = true)]
    quad: Option<usize>,

    /// Number of eigenvalues to list
    #[arg(short = 'n', global = true, default_value_t = 5)]
    count: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Find a positive-definite metric eta with A^dagger eta = eta A
    SolveMetric(SolveMetricArgs),
    /// Bi-orthogonal eigensystem of a quasi-Hermitian matrix
    Diag(SystemArgs),
    /// Check every bi-orthogonal identity of a quasi-Hermitian system
    Verify(SystemArgs),
    /// Transformation tables against a Hermitian reference observable
    Transform(TransformArgs),
    /// The PT-symmetric Swanson oscillator
    Swanson {
        #[command(subcommand)]
        action: swanson::Action,
    },
}

#[derive(Args, Debug)]
struct SolveMetricArgs {
    /// Matrix file holding A
    #[arg(long)]
    input: PathBuf,
    /// Where to write eta (kind "metric")
    #[arg(long)]
    out: Option<PathBuf>,
    /// Random combinations tried after the deterministic candidates
    #[arg(long, default_value_t = metriq_core::intertwiner::DEFAULT_TRIALS)]
    trials: usize,
}

#[derive(Args, Debug)]
struct SystemArgs {
    /// Matrix file holding A
    #[arg(long)]
    input: PathBuf,
    /// Metric file; searched for with the given seed when absent
    #[arg(long)]
    metric: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct TransformArgs {
    #[command(flatten)]
    system: SystemArgs,
    /// Hermitian reference observable B
    #[arg(long)]
    reference: PathBuf,
}

/// Input problem reported with exit status 2.
#[derive(Debug, thiserror::Error)]
#[error("invalid input `{field}`: {message}")]
pub struct InputError {
    pub field: String,
    pub message: String,
}

impl InputError {
    fn new(field: &str, message: impl ToString) -> Self {
        Self { field: field.into(), message: message.to_string() }
    }
}

/// Settings shared by every command.
struct Context {
    seed: u64,
    tol: Option<f64>,
    tol_scale: f64,
    trunc: usize,
    quad: Option<usize>,
    count: usize,
}

impl Context {
    fn tol(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default * self.tol_scale)
    }
}

struct Outcome {
    report: Report,
    table: Option<Table>,
}

fn context(cli: &Cli) -> Result<Context, InputError> {
    let seed = match cli.seed {
        Some(s) => s,
        None => match std::env::var("METRIQ_SEED") {
            Ok(v) => v.trim().parse().map_err(|_| InputError::new("METRIQ_SEED", format!("not an unsigned integer: {v:?}")))?,
            Err(_) => 0,
        },
    };
    if cli.tol.is_some() && cli.tol_scale.is_some() {
        return Err(InputError::new("--tol", "cannot be combined with --tol-scale"));
    }
    if let Some(t) = cli.tol {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(InputError::new("--tol", "must be a finite non-negative number"));
        }
    }
    let tol_scale = cli.tol_scale.unwrap_or(1.0);
    if !(tol_scale > 0.0 && tol_scale.is_finite()) {
        return Err(InputError::new("--tol-scale", "must be a finite positive number"));
    }
    Ok(Context { seed, tol: cli.tol, tol_scale, trunc: cli.trunc, quad: cli.quad, count: cli.count })
}

/// Parses `argv` (including the program name), runs the command and writes
/// the report to `out`. Returns the process exit status.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let echo: Vec<String> = argv.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    2
                }
            };
        }
    };

    let start = Instant::now();
    let result = context(&cli).and_then(|ctx| {
        let report = Report::new(echo);
        match &cli.command {
            Command::SolveMetric(a) => linalg::solve_metric(a, &ctx, report),
            Command::Diag(a) => linalg::diag(a, &ctx, report),
            Command::Verify(a) => linalg::verify(a, &ctx, report),
            Command::Transform(a) => linalg::transform(a, &ctx, report),
            Command::Swanson { action } => swanson::run(action, &ctx, report),
        }
    });
    let Outcome { mut report, table } = match result {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    report.timing_ms = start.elapsed().as_secs_f64() * 1e3;

    let text = match cli.format {
        Format::Json => report.to_json(),
        Format::Csv => table.unwrap_or_else(|| Table::from_residuals(&report.residuals)).to_csv(),
    };
    if out.write_all(text.as_bytes()).is_err() {
        return 2;
    }
    for r in report.residuals.iter().filter(|r| !r.passed) {
        let _ = match r.value {
            Some(v) => writeln!(err, "FAILED {}: {:e} > {:e}", r.identity, v, r.tolerance),
            None => writeln!(err, "FAILED {}", r.identity),
        };
    }
    if report.passed { 0 } else { 1 }
}
