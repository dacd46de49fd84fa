//! `swanson spectrum | wavefunctions | verify | expand`.

use clap::{Args, Subcommand};
use metriq_core::swanson::{self, build_model, SwansonModel, SwansonParams, Which};
use metriq_core::Error;

use crate::report::{num, Report, Table};
use crate::{Context, InputError, Outcome};

#[derive(Subcommand, Debug)]
pub(crate) enum Action {
    /// Energies E_n = hbar Omega (n + 1/2) for the first -n levels
    Spectrum(ParamArgs),
    /// Eigenfunction U_k(x) on a uniform grid
    Wavefunctions(WaveArgs),
    /// Check the model identities on the truncated basis
    Verify(ParamArgs),
    /// Expand a Gaussian in the eigenfunctions and apply H spectrally
    Expand(ExpandArgs),
}

#[derive(Args, Debug)]
pub(crate) struct ParamArgs {
    #[arg(long)]
    omega: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    alpha: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    beta: f64,
    #[arg(long, default_value_t = 1.0)]
    mass: f64,
    #[arg(long, default_value_t = 1.0)]
    hbar: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    z: f64,
}

impl ParamArgs {
    fn params(&self) -> SwansonParams {
        SwansonParams { omega: self.omega, alpha: self.alpha, beta: self.beta, mass: self.mass, hbar: self.hbar, z: self.z }
    }
}

#[derive(Args, Debug)]
pub(crate) struct WaveArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Eigenfunction index k
    #[arg(long, default_value_t = 0)]
    index: usize,
    #[arg(long, default_value_t = -5.0, allow_hyphen_values = true)]
    xmin: f64,
    #[arg(long, default_value_t = 5.0, allow_hyphen_values = true)]
    xmax: f64,
    #[arg(long, default_value_t = 201)]
    points: usize,
}

#[derive(Args, Debug)]
pub(crate) struct ExpandArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Centre of the Gaussian exp(-(x - c)^2 / 2w^2)
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    center: f64,
    /// Width w of the Gaussian
    #[arg(long, default_value_t = 1.0)]
    width: f64,
}

const PARAMS_FIELD: &str = "--omega/--alpha/--beta/--mass/--hbar/--z";

fn param_error(e: Error) -> InputError {
    match e {
        Error::InvalidParameters { failed } => InputError::new(PARAMS_FIELD, failed.join("; ")),
        other => InputError::new(PARAMS_FIELD, other),
    }
}

fn echo_params(report: &mut Report, p: &SwansonParams) {
    for (k, v) in [("omega", p.omega), ("alpha", p.alpha), ("beta", p.beta), ("mass", p.mass), ("hbar", p.hbar), ("z", p.z)] {
        report.scalar(k, v);
    }
}

fn model(args: &ParamArgs, ctx: &Context, report: &mut Report) -> Result<SwansonModel, InputError> {
    let p = args.params();
    echo_params(report, &p);
    let quad = ctx.quad.unwrap_or(2 * ctx.trunc + 32);
    let m = build_model(p, ctx.trunc, quad).map_err(|e| match e {
        Error::SizeOutOfRange { value, .. } if value == ctx.trunc => InputError::new("--trunc", e),
        Error::SizeOutOfRange { .. } | Error::QuadratureUnderresolved { .. } => InputError::new("--quad", e),
        other => param_error(other),
    })?;
    report.scalar("trunc", ctx.trunc);
    report.scalar("quad", quad);
    report.scalar("Omega", m.omega_cap);
    report.scalar("ell", m.ell);
    report.scalar("M", m.mass_eff);
    report.scalar("L", m.length);
    report.scalar("gamma", m.gamma);
    report.scalar("hermitian_limit", m.hermitian_limit);
    if m.hermitian_limit {
        report.data("warnings", vec!["alpha = beta: Hermitian limit, eta = 1"]);
    }
    Ok(m)
}

pub(crate) fn run(action: &Action, ctx: &Context, mut report: Report) -> Result<Outcome, InputError> {
    match action {
        Action::Spectrum(args) => {
            let p = args.params();
            echo_params(&mut report, &p);
            let mut energies = Vec::with_capacity(ctx.count);
            for n in 0..ctx.count {
                energies.push(swanson::energy(&p, n).map_err(param_error)?);
            }
            report.scalar("Omega", p.omega_cap_squared().sqrt());
            let mut t = Table::new(&["n", "E_n"]);
            for (n, e) in energies.iter().enumerate() {
                t.push(vec![n.to_string(), num(*e)]);
            }
            report.data("energies", energies);
            Ok(Outcome { report, table: Some(t) })
        }
        Action::Wavefunctions(args) => {
            if args.points < 2 {
                return Err(InputError::new("--points", "need at least 2 points"));
            }
            if !(args.xmin < args.xmax) {
                return Err(InputError::new("--xmin", "must be below --xmax"));
            }
            let m = model(&args.params, ctx, &mut report)?;
            let k = args.index;
            m.eigenfunction(k, 0.0).map_err(|e| InputError::new("--index", e))?;
            let u = |x: f64| m.eigenfunction(k, x).expect("index checked");
            let norm = m.grid().integrate_real(|x| m.metric_at(x) * u(x) * u(x), m.length);
            report.residual("eta-normalization <U_k, U_k>_eta = 1", (norm - 1.0).abs(), ctx.tol(swanson::IDENTITY_TOL));
            report.scalar("index", k);
            let header = format!("U_{k}");
            let mut t = Table::new(&["x", &header]);
            let (mut xs, mut ys) = (Vec::new(), Vec::new());
            for i in 0..args.points {
                let x = args.xmin + (args.xmax - args.xmin) * i as f64 / (args.points - 1) as f64;
                let y = u(x);
                t.push(vec![num(x), num(y)]);
                xs.push(x);
                ys.push(y);
            }
            report.data("x", xs);
            report.data("U", ys);
            Ok(Outcome { report, table: Some(t) })
        }
        Action::Verify(args) => {
            let m = model(args, ctx, &mut report)?;
            let r = m.verify();
            for c in &r.checks {
                report.residual(c.name, c.value, ctx.tol(c.tolerance));
            }
            report.data("interior_eigenvalues", r.interior_eigenvalues.clone());
            Ok(Outcome { report, table: None })
        }
        Action::Expand(args) => {
            if !(args.width > 0.0 && args.width.is_finite()) {
                return Err(InputError::new("--width", "must be a finite positive number"));
            }
            let m = model(&args.params, ctx, &mut report)?;
            let (c0, w) = (args.center, args.width);
            let g = move |x: f64| (-0.5 * (x - c0) * (x - c0) / (w * w)).exp();
            let coeffs = m.eta_coefficients(g);
            let recon = (0..=120)
                .map(|i| {
                    let x = c0 - 3.0 * w + 6.0 * w * i as f64 / 120.0;
                    (m.evaluate_expansion(&coeffs, x) - g(x)).abs()
                })
                .fold(0.0f64, f64::max);
            report.scalar("reconstruction_max_error", recon);

            let phi = m.project(g);
            let k = m.truncation - 2;
            let mut worst = 0.0f64;
            for (which, mat) in [(Which::H, &m.h_mat), (Which::HDagger, &m.h_dag_mat)] {
                let s = m.spectral_apply(&phi, which).expect("length matches");
                let d = mat.mul_vec(&phi).expect("square");
                let scale = d[..k].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt().max(f64::MIN_POSITIVE);
                let diff = s[..k].iter().zip(&d[..k]).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt();
                worst = worst.max(diff / scale);
            }
            report.residual(
                "spectral expansion of H and H^dagger vs matrix action",
                worst,
                ctx.tol(swanson::EXPANSION_TOL),
            );
            let mut t = Table::new(&["n", "c_n"]);
            for (n, c) in coeffs.iter().enumerate() {
                t.push(vec![n.to_string(), num(*c)]);
            }
            report.data("coefficients", coeffs);
            Ok(Outcome { report, table: Some(t) })
        }
    }
}
