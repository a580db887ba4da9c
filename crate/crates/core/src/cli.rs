//! Command-line front end.
//!
//! Every numeric command emits records with the fixed CSV header
//! [`CSV_HEADER`] (or one JSON object per line). Exit codes: 0 success,
//! 2 invalid or non-quantized parameters, 3 numerical failure.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::contour::{hard_contour_e0, torus_e0_finite_n, torus_e0_hard, ContourSpec};
use crate::error::{Error, Result};
use crate::gap::{
    asymptotic_en, exact_e0_finite_n, exact_e0_hard, exact_e_hard, large_deviation_e0, large_deviation_e0_printed,
    E0Variant,
};
use crate::jack;
use crate::mc::{estimate_gap, EnsembleSpec};
use crate::suite;

pub const CSV_HEADER: &str = "s,beta,a,n,N,method,value,log_value,stderr,trunc_weight,tail_bound,seed";

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARAMETER: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

pub fn exit_code(e: &Error) -> i32 {
    if e.is_numerical() {
        EXIT_NUMERICAL
    } else {
        EXIT_PARAMETER
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
pub enum Method {
    Exact,
    Asympt,
    Largedev,
    Contour,
    Mc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
pub enum AsymptVariant {
    Pu,
    Mg,
    Limit,
}

impl From<AsymptVariant> for E0Variant {
    fn from(v: AsymptVariant) -> Self {
        match v {
            AsymptVariant::Pu => E0Variant::PU,
            AsymptVariant::Mg => E0Variant::MG,
            AsymptVariant::Limit => E0Variant::Limit,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
pub enum LargedevVariant {
    Corrected,
    Printed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
pub enum ContourRoute {
    /// Branch-cut contour (any β with βa/2 ∈ {1,2}).
    Contour,
    /// Unit circle; needs 2/β to be a positive integer.
    Torus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
pub enum GridKind {
    Linear,
    Log,
}

/// Parameters shared by all numeric commands.
#[derive(Debug, Clone, Args, Serialize)]
pub struct Params {
    #[arg(long)]
    pub beta: f64,
    #[arg(long)]
    pub a: f64,
    /// Number of eigenvalues in the interval.
    #[arg(long, default_value_t = 0)]
    pub n: usize,
    /// Finite matrix size; for `exact`, `contour` and `mc` the interval is
    /// `(0, s/(4N))`.
    #[arg(long = "N", alias = "big-n")]
    pub big_n: Option<usize>,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    /// Largest partition weight summed in series.
    #[arg(long)]
    pub max_weight: Option<usize>,
    #[arg(long, default_value_t = 100_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = AsymptVariant::Limit)]
    pub variant: AsymptVariant,
    #[arg(long, value_enum, default_value_t = LargedevVariant::Corrected)]
    pub largedev_variant: LargedevVariant,
    #[arg(long, value_enum, default_value_t = ContourRoute::Contour)]
    pub route: ContourRoute,
    /// Initial torus resolution per variable.
    #[arg(long, default_value_t = 64)]
    pub resolution: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct Single {
    #[command(flatten)]
    pub params: Params,
    /// Hard-edge interval length; for `largedev` the macroscopic endpoint s̃
    /// of the interval `(0, 4N s̃)`.
    #[arg(long)]
    pub s: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct Sweep {
    #[command(flatten)]
    pub params: Params,
    #[arg(long, value_enum)]
    pub method: Method,
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["s_min", "s_max", "points"])]
    pub s_list: Option<Vec<f64>>,
    #[arg(long)]
    pub s_min: Option<f64>,
    #[arg(long)]
    pub s_max: Option<f64>,
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long, value_enum, default_value_t = GridKind::Linear)]
    pub grid: GridKind,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ReportArgs {
    #[arg(long, default_value_t = 2.0)]
    pub beta: f64,
    #[arg(long, default_value_t = 1.0)]
    pub a: f64,
    #[arg(long, default_value_t = 1e-13)]
    pub tol: f64,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
pub enum Command {
    /// Series (n = 0, hard edge or finite N) or quadrature (n > 0) value.
    Exact(Single),
    /// Large-s asymptotic form.
    Asympt(Single),
    /// Large-N formula at fixed s̃.
    Largedev(Single),
    /// Torus or branch-cut contour integral.
    Contour(Single),
    /// Monte Carlo estimate from the bidiagonal model.
    Mc(Single),
    /// Identity battery; every line must PASS.
    Check,
    /// One method over a grid of s values.
    Sweep(Sweep),
    /// Side-by-side exponents and constants; no assertions.
    Report(ReportArgs),
}

#[derive(Debug, Clone, Parser, Serialize)]
#[command(name = "hardgap", version, about = "Hard-edge gap probabilities for Laguerre β-ensembles")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, global = true, default_value_t = Format::Csv)]
    pub format: Format,
    /// Worker threads (0: rayon default).
    #[arg(long, global = true, env = "HARDGAP_THREADS", default_value_t = 0)]
    pub threads: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Record {
    pub s: f64,
    pub beta: f64,
    pub a: f64,
    pub n: usize,
    #[serde(rename = "N")]
    pub big_n: Option<usize>,
    pub method: String,
    pub value: Option<f64>,
    pub log_value: Option<f64>,
    pub stderr: Option<f64>,
    pub trunc_weight: Option<usize>,
    pub tail_bound: Option<f64>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorRecord {
    pub error: &'static str,
    pub message: String,
    pub exit_code: i32,
}

impl ErrorRecord {
    pub fn from_error(e: &Error) -> Self {
        ErrorRecord { error: e.kind(), message: e.to_string(), exit_code: exit_code(e) }
    }
}

fn base(s: f64, p: &Params, method: &str) -> Record {
    Record { s, beta: p.beta, a: p.a, n: p.n, big_n: p.big_n, method: method.into(), ..Default::default() }
}

fn with_value(mut r: Record, value: f64, log_value: f64) -> Record {
    r.value = Some(value);
    r.log_value = Some(log_value);
    r
}

fn require_n(p: &Params, what: &str) -> Result<usize> {
    p.big_n.filter(|&n| n > 0).ok_or_else(|| Error::InvalidArgument(format!("{what} needs --N")))
}

fn validate_params(p: &Params) -> Result<()> {
    if !(p.tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tol = {} must be positive", p.tol)));
    }
    if !(p.beta > 0.0 && p.beta.is_finite()) {
        return Err(Error::Domain(format!("beta = {} must be positive", p.beta)));
    }
    if !(p.a >= 0.0 && p.a.is_finite()) {
        return Err(Error::Domain(format!("a = {} must be nonnegative", p.a)));
    }
    Ok(())
}

fn eval_exact(s: f64, p: &Params) -> Result<Record> {
    match (p.big_n, p.n) {
        (None, 0) => {
            let r = exact_e0_hard(s, p.a, p.beta, p.tol)?;
            let mut rec = with_value(base(s, p, "series"), r.value, r.ln_abs);
            rec.trunc_weight = Some(r.max_weight_used);
            rec.tail_bound = Some(r.tail_estimate);
            Ok(rec)
        }
        (None, n) => {
            let g = exact_e_hard(s, p.a, p.beta, n, p.tol)?;
            let mut rec = with_value(base(s, p, "quadrature"), g.value, g.ln_value);
            rec.tail_bound = Some(g.error);
            Ok(rec)
        }
        (Some(big_n), 0) => {
            let r = exact_e0_finite_n(s / (4.0 * big_n as f64), p.a, p.beta, big_n, p.tol)?;
            let mut rec = with_value(base(s, p, "series_finite_n"), r.value, r.ln_abs);
            rec.trunc_weight = Some(r.max_weight_used);
            rec.tail_bound = Some(r.tail_estimate);
            Ok(rec)
        }
        (Some(_), _) => Err(Error::InvalidArgument("finite-N exact values are available for n = 0 only".into())),
    }
}

fn eval_asympt(s: f64, p: &Params) -> Result<Record> {
    let form = asymptotic_en(p.a, p.beta, p.n as f64, p.variant.into())?;
    let ln = form.ln_evaluate(s);
    Ok(with_value(base(s, p, &format!("asympt_{:?}", form.source).to_lowercase()), ln.exp(), ln))
}

fn eval_largedev(s: f64, p: &Params) -> Result<Record> {
    let big_n = require_n(p, "largedev")?;
    if p.n != 0 {
        return Err(Error::InvalidArgument("largedev is available for n = 0 only".into()));
    }
    let (ln, m) = match p.largedev_variant {
        LargedevVariant::Corrected => (large_deviation_e0(big_n, s, p.a, p.beta)?, "largedev"),
        LargedevVariant::Printed => (large_deviation_e0_printed(big_n, s, p.a, p.beta)?, "largedev_printed"),
    };
    Ok(with_value(base(s, p, m), ln.exp(), ln))
}

fn eval_contour(s: f64, p: &Params) -> Result<Record> {
    if p.n != 0 {
        return Err(Error::InvalidArgument("contour integrals are available for n = 0 only".into()));
    }
    let (v, m) = match (p.big_n, p.route) {
        (Some(big_n), _) => {
            (torus_e0_finite_n(s / (4.0 * big_n as f64), p.a, p.beta, big_n, p.resolution, p.tol)?, "torus_finite_n")
        }
        (None, ContourRoute::Torus) => (torus_e0_hard(s, p.a, p.beta, p.resolution, p.tol)?, "torus"),
        (None, ContourRoute::Contour) => {
            let spec = ContourSpec { tol: p.tol.max(1e-13), ..ContourSpec::default() };
            (hard_contour_e0(s, p.a, p.beta, &spec)?, "contour")
        }
    };
    let mut rec = with_value(base(s, p, m), v.value, v.value.abs().ln());
    rec.tail_bound = Some(v.error);
    Ok(rec)
}

fn eval_mc(s: f64, p: &Params) -> Result<Record> {
    let big_n = require_n(p, "mc")?;
    let spec = EnsembleSpec::new(p.beta, p.a, big_n)?;
    let est = estimate_gap(&spec, s, p.n, p.samples, p.seed)?;
    let mut rec = with_value(base(s, p, "mc"), est.probability, est.probability.ln());
    rec.stderr = Some(est.stderr);
    rec.seed = Some(est.seed);
    Ok(rec)
}

pub fn evaluate(method: Method, s: f64, p: &Params) -> Result<Record> {
    validate_params(p)?;
    if !(s >= 0.0 && s.is_finite()) {
        return Err(Error::Domain(format!("s = {s} must be nonnegative")));
    }
    match method {
        Method::Exact => eval_exact(s, p),
        Method::Asympt => eval_asympt(s, p),
        Method::Largedev => eval_largedev(s, p),
        Method::Contour => eval_contour(s, p),
        Method::Mc => eval_mc(s, p),
    }
}

pub fn sweep_grid(sw: &Sweep) -> Result<Vec<f64>> {
    if let Some(list) = &sw.s_list {
        if list.is_empty() || list.iter().any(|&s| !(s > 0.0)) || list.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidArgument("--s-list must be positive and increasing".into()));
        }
        return Ok(list.clone());
    }
    let (lo, hi, k) = match (sw.s_min, sw.s_max, sw.points) {
        (Some(lo), Some(hi), Some(k)) => (lo, hi, k),
        _ => return Err(Error::InvalidArgument("sweep needs --s-list or --s-min, --s-max and --points".into())),
    };
    if !(lo > 0.0 && hi > lo && k >= 2) {
        return Err(Error::InvalidArgument(format!(
            "grid bounds must satisfy 0 < s_min < s_max with at least 2 points, got [{lo}, {hi}] × {k}"
        )));
    }
    let t = |i: usize| i as f64 / (k - 1) as f64;
    Ok((0..k)
        .map(|i| match sw.grid {
            GridKind::Linear => lo + (hi - lo) * t(i),
            GridKind::Log => (lo.ln() + (hi / lo).ln() * t(i)).exp(),
        })
        .collect())
}

struct Sink<'a> {
    out: &'a mut dyn Write,
    format: Format,
    header_done: bool,
}

impl Sink<'_> {
    fn record(&mut self, r: &Record) -> std::io::Result<()> {
        match self.format {
            Format::Csv => {
                if !self.header_done {
                    writeln!(self.out, "{CSV_HEADER}")?;
                    self.header_done = true;
                }
                let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
                w.serialize(r).map_err(std::io::Error::other)?;
                let bytes = w.into_inner().map_err(|e| std::io::Error::other(e.to_string()))?;
                self.out.write_all(&bytes)
            }
            Format::Json => writeln!(self.out, "{}", serde_json::to_string(r).map_err(std::io::Error::other)?),
        }
    }

    /// CSV: a row with `method = error:<kind>` and empty numeric fields.
    /// JSON: the error object.
    fn error(&mut self, s: f64, p: Option<&Params>, e: &Error) -> std::io::Result<()> {
        let er = ErrorRecord::from_error(e);
        match self.format {
            Format::Csv => {
                let mut r = match p {
                    Some(p) => base(s, p, ""),
                    None => Record { s, ..Default::default() },
                };
                r.method = format!("error:{}", er.error);
                self.record(&r)
            }
            Format::Json => writeln!(self.out, "{}", serde_json::to_string(&er).map_err(std::io::Error::other)?),
        }
    }
}

fn run_inner(
    config: &RunConfig,
    pool: &rayon::ThreadPool,
    sink: &mut Sink<'_>,
    diag: &mut dyn Write,
) -> std::io::Result<i32> {
    let single = |method: Method, args: &Single, sink: &mut Sink<'_>, diag: &mut dyn Write| -> std::io::Result<i32> {
        if let Some(w) = args.params.max_weight {
            jack::set_max_weight(w);
        }
        match pool.install(|| evaluate(method, args.s, &args.params)) {
            Ok(r) => {
                sink.record(&r)?;
                Ok(EXIT_OK)
            }
            Err(e) => {
                writeln!(diag, "hardgap: {e}")?;
                sink.error(args.s, Some(&args.params), &e)?;
                Ok(exit_code(&e))
            }
        }
    };
    match &config.command {
        Command::Exact(a) => single(Method::Exact, a, sink, diag),
        Command::Asympt(a) => single(Method::Asympt, a, sink, diag),
        Command::Largedev(a) => single(Method::Largedev, a, sink, diag),
        Command::Contour(a) => single(Method::Contour, a, sink, diag),
        Command::Mc(a) => single(Method::Mc, a, sink, diag),
        Command::Sweep(sw) => {
            if let Some(w) = sw.params.max_weight {
                jack::set_max_weight(w);
            }
            let grid = match sweep_grid(sw) {
                Ok(g) => g,
                Err(e) => {
                    writeln!(diag, "hardgap: {e}")?;
                    sink.error(f64::NAN, Some(&sw.params), &e)?;
                    return Ok(exit_code(&e));
                }
            };
            let results: Vec<Result<Record>> =
                pool.install(|| grid.par_iter().map(|&s| evaluate(sw.method, s, &sw.params)).collect());
            let mut code = EXIT_OK;
            for (s, r) in grid.iter().zip(results) {
                match r {
                    Ok(rec) => sink.record(&rec)?,
                    Err(e) => {
                        writeln!(diag, "hardgap: s = {s}: {e}")?;
                        sink.error(*s, Some(&sw.params), &e)?;
                        code = code.max(exit_code(&e));
                    }
                }
            }
            Ok(code)
        }
        Command::Check => {
            let lines = pool.install(suite::identity_suite);
            for l in &lines {
                match config.format {
                    Format::Csv => writeln!(sink.out, "{}", l.render())?,
                    Format::Json => writeln!(sink.out, "{}", serde_json::to_string(l).map_err(std::io::Error::other)?)?,
                }
            }
            Ok(if lines.iter().all(|l| l.pass) { EXIT_OK } else { EXIT_NUMERICAL })
        }
        Command::Report(r) => match pool.install(|| suite::report(r.beta, r.a, r.tol)) {
            Ok(lines) => {
                match config.format {
                    Format::Csv => {
                        writeln!(sink.out, "quantity,variant,value")?;
                        for l in &lines {
                            writeln!(sink.out, "{},{},{:.10}", l.quantity, l.variant, l.value)?;
                        }
                    }
                    Format::Json => {
                        for l in &lines {
                            writeln!(sink.out, "{}", serde_json::to_string(l).map_err(std::io::Error::other)?)?;
                        }
                    }
                }
                Ok(EXIT_OK)
            }
            Err(e) => {
                writeln!(diag, "hardgap: {e}")?;
                sink.error(f64::NAN, None, &e)?;
                Ok(exit_code(&e))
            }
        },
    }
}

/// Executes `config`, writing records to `out` and diagnostics to `diag`.
pub fn run(config: &RunConfig, out: &mut dyn Write, diag: &mut dyn Write) -> i32 {
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(config.threads).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(diag, "hardgap: thread pool: {e}");
            return EXIT_PARAMETER;
        }
    };
    let mut sink = Sink { out, format: config.format, header_done: false };
    match run_inner(config, &pool, &mut sink, diag) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(diag, "hardgap: output: {e}");
            1
        }
    }
}

/// Parses process arguments and runs; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_PARAMETER } else { EXIT_OK };
        }
    };
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(&config, &mut stdout.lock(), &mut stderr.lock())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String) {
        let config = RunConfig::try_parse_from(std::iter::once("hardgap").chain(args.iter().copied())).unwrap();
        let mut out = Vec::new();
        let mut diag = Vec::new();
        let code = run(&config, &mut out, &mut diag);
        (code, String::from_utf8(out).unwrap())
    }

    #[test]
    fn exact_row() {
        let (code, out) = run_args(&["exact", "--beta", "2", "--a", "1", "--n", "0", "--s", "4"]);
        assert_eq!(code, 0);
        let mut lines = out.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        let row: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(row.len(), 12);
        let v: f64 = row[6].parse().unwrap();
        assert!((v - 0.838_612_567).abs() < 1e-8, "{v}");
        assert_eq!(row[4], "");
    }

    #[test]
    fn quantization_exit_code() {
        let (code, out) = run_args(&["exact", "--beta", "2", "--a", "0.3", "--s", "1"]);
        assert_eq!(code, EXIT_PARAMETER);
        assert!(out.contains("error:parameter_quantization"));
    }

    #[test]
    fn sweep_in_grid_order() {
        let (code, out) = run_args(&[
            "sweep", "--method", "exact", "--beta", "2", "--a", "1", "--s-min", "1", "--s-max", "9", "--points", "5",
        ]);
        assert_eq!(code, 0);
        let s: Vec<f64> = out.lines().skip(1).map(|l| l.split(',').next().unwrap().parse().unwrap()).collect();
        assert_eq!(s, vec![1.0, 3.0, 5.0, 7.0, 9.0]);
    }

    #[test]
    fn bad_grid_rejected() {
        let (code, _) = run_args(&["sweep", "--method", "exact", "--beta", "2", "--a", "1", "--s-list", "3,2"]);
        assert_eq!(code, EXIT_PARAMETER);
    }

    #[test]
    fn json_records() {
        let (code, out) = run_args(&["asympt", "--beta", "2", "--a", "1", "--s", "100", "--format", "json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(v["method"], "asympt_limit");
        assert!(v["N"].is_null());
    }
}
