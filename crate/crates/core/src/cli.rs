//! The `extk` command-line front end.
//!
//! Every subcommand writes JSON (or CSV for `grid`) to stdout and a JSON error
//! object `{"error": code, "message": text}` to stderr. Exit codes: `0` on
//! success, `1` for usage and parse errors, `2` for validation, domain and
//! verification failures.
//!
//! `EXTK_CONFIG` may name a JSON file with [`CliConfig`] overrides.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cubic::CubicParams;
use crate::error::Error;
use crate::germ::{
    make_exceptional, make_generic, EvalOptions, GermEvaluator, GermSpec, SpecInputError,
};
use crate::moduli::{chart, component_of, hcmu_class};
use crate::numcheck::{self, Tolerances, DEFAULT_GRID_POINTS, DEFAULT_H_FRAC, MIN_GRID_POINTS};
use crate::sampling::{sample_specs, ChartBox, SampleKind};

pub const CONFIG_ENV: &str = "EXTK_CONFIG";

/// Grid radius used for germs whose guaranteed disk is all of ℂ.
pub const REFERENCE_RADIUS: f64 = 1.0;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAILURE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

/// Overrides read from the file named by `EXTK_CONFIG`. Missing fields keep
/// their defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CliConfig {
    pub quadrature_tol: f64,
    pub root_tol: f64,
    pub verification: Tolerances,
    pub grid_n: usize,
    pub seed: u64,
    pub format: OutputFormat,
}

impl Default for CliConfig {
    fn default() -> Self {
        let eval = EvalOptions::default();
        CliConfig {
            quadrature_tol: eval.quadrature_tol,
            root_tol: eval.root_tol,
            verification: Tolerances::default(),
            grid_n: DEFAULT_GRID_POINTS,
            seed: 0,
            format: OutputFormat::Json,
        }
    }
}

impl CliConfig {
    pub fn validate(&self) -> Result<(), String> {
        let tol = [
            self.quadrature_tol,
            self.root_tol,
            self.verification.curvature,
            self.verification.holomorphy,
            self.verification.model,
        ];
        if tol.iter().any(|t| !(t.is_finite() && *t > 0.0)) {
            return Err("tolerances must be positive and finite".into());
        }
        if self.grid_n < MIN_GRID_POINTS {
            return Err(format!("grid_n must be at least {MIN_GRID_POINTS}"));
        }
        Ok(())
    }

    pub fn from_json(s: &str) -> Result<Self, String> {
        let config: CliConfig = serde_json::from_str(s).map_err(|e| e.to_string())?;
        config.validate()?;
        Ok(config)
    }

    fn eval_options(&self) -> EvalOptions {
        EvalOptions {
            quadrature_tol: self.quadrature_tol,
            root_tol: self.root_tol,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "extk", version, about = "Extremal Kähler germs: classify, evaluate, verify, sample")]
pub struct Cli {
    /// Indented output for reading.
    #[arg(long, global = true)]
    pub pretty: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate (C, C', K0[, λ]) and report component, roots, HCMU status and chart.
    Classify(ClassifyArgs),
    /// Curvature and density at one point.
    Eval(EvalArgs),
    /// Finite-difference check of the extremal condition.
    Verify(VerifyArgs),
    /// Random valid germs, one JSON object per line.
    Sample(SampleArgs),
    /// Curvature and density on a square grid, as CSV.
    Grid(GridArgs),
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct ClassifyArgs {
    #[arg(long = "C", value_parser = finite)]
    pub c: f64,
    #[arg(long = "Cprime", value_parser = finite)]
    pub c_prime: f64,
    #[arg(long = "K0", value_parser = finite)]
    pub k0: f64,
    /// Fifth invariant; selects the exceptional family.
    #[arg(long, value_parser = finite)]
    pub lambda: Option<f64>,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct EvalArgs {
    /// Germ JSON, inline or as a file path.
    #[arg(long)]
    pub germ: String,
    /// Point as "re,im".
    #[arg(long, value_parser = point)]
    pub z: Complex64,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct VerifyArgs {
    #[arg(long)]
    pub germ: String,
    #[arg(long)]
    pub grid_n: Option<usize>,
    /// Grid radius as a fraction of the domain radius, in (0, 1).
    #[arg(long, default_value_t = 0.5, value_parser = finite)]
    pub radius_frac: f64,
    /// Stencil step as a fraction of the grid radius.
    #[arg(long, default_value_t = DEFAULT_H_FRAC, value_parser = finite)]
    pub h_frac: f64,
    /// Multiplies the density by 1 + ε Re z before checking.
    #[cfg(feature = "test-hooks")]
    #[arg(long, value_parser = finite)]
    pub inject_perturbation: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[arg(long, value_enum)]
    pub kind: KindArg,
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum KindArg {
    Generic,
    Exceptional,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct GridArgs {
    #[arg(long)]
    pub germ: String,
    /// Points per side.
    #[arg(long, default_value_t = 16)]
    pub n: usize,
    #[arg(long, default_value_t = 0.5, value_parser = finite)]
    pub radius_frac: f64,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn finite(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|e| format!("{e}"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("{s} is not a finite number"))
    }
}

fn point(s: &str) -> Result<Complex64, String> {
    let (re, im) = s
        .split_once(',')
        .ok_or_else(|| format!("expected \"re,im\", got {s:?}"))?;
    Ok(Complex64::new(finite(re)?, finite(im)?))
}

/// A failed command: exit code plus the error object for stderr.
#[derive(Debug)]
struct Failure {
    code: i32,
    error: String,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            error: "usage".into(),
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidArgument(_) | Error::NonFinite { .. } => EXIT_USAGE,
            _ => EXIT_FAILURE,
        };
        Failure {
            code,
            error: e.code().into(),
            message: e.to_string(),
        }
    }
}

impl From<SpecInputError> for Failure {
    fn from(e: SpecInputError) -> Self {
        match e {
            SpecInputError::Malformed(inner) => Failure {
                code: EXIT_USAGE,
                error: "malformed_germ".into(),
                message: inner.to_string(),
            },
            SpecInputError::Invalid(inner) => inner.into(),
        }
    }
}

struct Output {
    text: String,
    code: i32,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: EXIT_OK }
    }
}

/// Runs `extk` with `args` (program name first) and the config from
/// `EXTK_CONFIG`, writing to the given streams. Returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match load_config() {
        Ok(c) => c,
        Err(message) => {
            return report(stderr, &Failure {
                code: EXIT_USAGE,
                error: "invalid_config".into(),
                message,
            })
        }
    };
    run_with_config(args, &config, stdout, stderr)
}

fn load_config() -> Result<CliConfig, String> {
    match std::env::var_os(CONFIG_ENV) {
        None => Ok(CliConfig::default()),
        Some(path) => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| format!("{}: {e}", PathBuf::from(&path).display()))?;
            CliConfig::from_json(&text)
        }
    }
}

pub fn run_with_config<I, T>(
    args: I,
    config: &CliConfig,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return EXIT_OK;
            }
            return report(stderr, &Failure::usage(e.to_string().trim_end()));
        }
    };
    match dispatch(&cli, config) {
        Ok(out) => {
            if stdout.write_all(out.text.as_bytes()).is_err() {
                return EXIT_USAGE;
            }
            out.code
        }
        Err(f) => report(stderr, &f),
    }
}

fn report(stderr: &mut dyn Write, failure: &Failure) -> i32 {
    let obj = json!({ "error": failure.error, "message": failure.message });
    let _ = writeln!(stderr, "{obj}");
    failure.code
}

fn dispatch(cli: &Cli, config: &CliConfig) -> Result<Output, Failure> {
    match &cli.command {
        Command::Classify(a) => classify(a).map(|v| Output::ok(render(&v, cli.pretty))),
        Command::Eval(a) => eval(a, config, cli.pretty),
        Command::Verify(a) => verify(a, config, cli.pretty),
        Command::Sample(a) => sample(a, config),
        Command::Grid(a) => grid(a, config),
    }
}

fn render(value: &Value, pretty: bool) -> String {
    let mut s = if pretty {
        serde_json::to_string_pretty(value)
    } else {
        serde_json::to_string(value)
    }
    .expect("JSON values serialize");
    s.push('\n');
    s
}

fn load_germ(arg: &str) -> Result<GermSpec, Failure> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| Failure {
            code: EXIT_USAGE,
            error: "io".into(),
            message: format!("{arg}: {e}"),
        })?
    };
    Ok(GermSpec::parse(&text)?)
}

pub fn classify_value(c: f64, c_prime: f64, k0: f64, lambda: Option<f64>) -> crate::Result<Value> {
    let cubic = CubicParams::new(c, c_prime)?;
    let spec = match lambda {
        None => make_generic(cubic, k0)?,
        Some(l) => make_exceptional(cubic, k0, l)?,
    };
    let mut out = json!({
        "spec": spec,
        "component": component_of(&spec)?.name(),
        "discriminant": cubic.discriminant(),
        "root_structure": cubic.root_structure(),
        "hcmu": hcmu_class(&spec)?,
        "chart": chart(&spec)?,
    });
    if let Some(sigma) = spec.sigma() {
        out["sigma"] = json!(sigma);
    }
    Ok(out)
}

fn classify(a: &ClassifyArgs) -> Result<Value, Failure> {
    Ok(classify_value(a.c, a.c_prime, a.k0, a.lambda)?)
}

fn evaluator(spec: GermSpec, config: &CliConfig) -> Result<GermEvaluator, Failure> {
    Ok(GermEvaluator::with_options(spec, config.eval_options())?)
}

fn working_radius(eval: &GermEvaluator) -> f64 {
    let r = eval.domain_radius();
    if r.is_finite() {
        r
    } else {
        REFERENCE_RADIUS
    }
}

fn check_radius_frac(frac: f64) -> Result<(), Failure> {
    if frac > 0.0 && frac < 1.0 {
        Ok(())
    } else {
        Err(Failure::usage(format!("--radius-frac must lie in (0, 1), got {frac}")))
    }
}

fn eval(a: &EvalArgs, config: &CliConfig, pretty: bool) -> Result<Output, Failure> {
    let ev = evaluator(load_germ(&a.germ)?, config)?;
    let value = ev.evaluate(a.z)?;
    let text = match config.format {
        OutputFormat::Json => render(
            &json!({
                "K": value.curvature,
                "density": value.density,
                "domain_radius": ev.domain_radius(),
            }),
            pretty,
        ),
        OutputFormat::Csv => format!(
            "re,im,K,density\n{:?},{:?},{:?},{:?}\n",
            a.z.re, a.z.im, value.curvature, value.density
        ),
    };
    Ok(Output::ok(text))
}

fn verify(a: &VerifyArgs, config: &CliConfig, pretty: bool) -> Result<Output, Failure> {
    check_radius_frac(a.radius_frac)?;
    if !(a.h_frac > 0.0) {
        return Err(Failure::usage("--h-frac must be positive"));
    }
    let ev = evaluator(load_germ(&a.germ)?, config)?;
    let radius = a.radius_frac * working_radius(&ev);
    let n = a.grid_n.unwrap_or(config.grid_n);
    let h = Some(a.h_frac * radius);

    #[cfg(feature = "test-hooks")]
    let report = match a.inject_perturbation {
        Some(epsilon) => {
            let perturbed = numcheck::Perturbed { inner: &ev, epsilon };
            numcheck::verify_metric(&perturbed, radius, n, h, config.verification)?
        }
        None => numcheck::verify_metric(&ev, radius, n, h, config.verification)?,
    };
    #[cfg(not(feature = "test-hooks"))]
    let report = numcheck::verify_metric(&ev, radius, n, h, config.verification)?;

    let text = render(&serde_json::to_value(report).expect("report serializes"), pretty);
    Ok(Output {
        text,
        code: if report.pass { EXIT_OK } else { EXIT_FAILURE },
    })
}

fn sample(a: &SampleArgs, config: &CliConfig) -> Result<Output, Failure> {
    if a.count == 0 {
        return Err(Failure::usage("--count must be at least 1"));
    }
    let kind = match a.kind {
        KindArg::Generic => SampleKind::Generic,
        KindArg::Exceptional => SampleKind::Exceptional,
    };
    let specs = sample_specs(kind, a.count, a.seed.unwrap_or(config.seed), &ChartBox::default())?;
    let mut text = String::new();
    match config.format {
        OutputFormat::Json => {
            for s in &specs {
                text.push_str(&s.to_json());
                text.push('\n');
            }
        }
        OutputFormat::Csv => {
            text.push_str("kind,C,Cprime,K0,lambda\n");
            for s in &specs {
                let cubic = s.cubic().expect("sampled germs are not Einstein");
                let lambda = match s {
                    GermSpec::Exceptional(x) => format!("{:?}", x.lambda()),
                    _ => String::new(),
                };
                let _ = writeln!(
                    text,
                    "{},{:?},{:?},{:?},{lambda}",
                    s.kind(),
                    cubic.c(),
                    cubic.c_prime(),
                    s.k0()
                );
            }
        }
    }
    Ok(Output::ok(text))
}

/// `n × n` points on the square inscribed in the disk of radius `radius`,
/// row-major by `im` then `re`, both increasing.
pub fn square_grid(radius: f64, n: usize) -> Vec<Complex64> {
    let half = radius / std::f64::consts::SQRT_2;
    let coord = |i: usize| {
        if n == 1 {
            0.0
        } else {
            -half + 2.0 * half * i as f64 / (n - 1) as f64
        }
    };
    (0..n)
        .flat_map(|j| (0..n).map(move |i| Complex64::new(coord(i), coord(j))))
        .collect()
}

/// The grid CSV for `spec`, LF line endings and shortest round-trip floats.
pub fn grid_csv(ev: &GermEvaluator, n: usize, radius_frac: f64) -> crate::Result<String> {
    let points = square_grid(radius_frac * working_radius(ev), n);
    let values = points
        .par_iter()
        .map(|&z| ev.evaluate(z))
        .collect::<crate::Result<Vec<_>>>()?;
    let mut csv = String::from("re,im,K,density\n");
    for (z, v) in points.iter().zip(values) {
        let _ = writeln!(csv, "{:?},{:?},{:?},{:?}", z.re, z.im, v.curvature, v.density);
    }
    Ok(csv)
}

fn grid(a: &GridArgs, config: &CliConfig) -> Result<Output, Failure> {
    check_radius_frac(a.radius_frac)?;
    if a.n == 0 {
        return Err(Failure::usage("--n must be at least 1"));
    }
    let ev = evaluator(load_germ(&a.germ)?, config)?;
    let csv = grid_csv(&ev, a.n, a.radius_frac)?;
    match &a.out {
        None => Ok(Output::ok(csv)),
        Some(path) => {
            std::fs::write(path, csv).map_err(|e| Failure {
                code: EXIT_USAGE,
                error: "io".into(),
                message: format!("{}: {e}", path.display()),
            })?;
            Ok(Output::ok(String::new()))
        }
    }
}
