//! Command-line driver: classify data, build solutions, sample profiles,
//! trace wave curves and run the weak-form verifier.

pub mod config;
pub mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use delta_riemann::delta::Extinction;
use delta_riemann::verify::{grh_residual, random_bumps, verify_bumps, GrhReport};
use delta_riemann::{
    classify, construct, convexity, delta_existence, entropy_interval, eval_curve, sample_solution, solve_classical,
    solve_measure_with, solve_singular, Convexity, CurveId, DeltaShockPath, Entropic, Error, ExistenceReport,
    GasState, MeasureOptions, MeasureSolution, PlanKind, RegionLabel, ResidualReport, RiemannData,
};
use log::{debug, info};
use serde::{Deserialize, Serialize};

pub use config::{ProblemArgs, ProblemConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_NO_SOLUTION: i32 = 2;
pub const EXIT_CONFIG: i32 = 64;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid config field `{field}`: {message}")]
    Config { field: String, message: String },
    #[error("{0}")]
    Solver(#[from] Error),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config { .. } => EXIT_CONFIG,
            CliError::Solver(Error::NoMeasureSolution { .. } | Error::NoDeltaShock(_)) => EXIT_NO_SOLUTION,
            _ => EXIT_FAILURE,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "delta-riemann", version, about = "Riemann problems with delta shocks for isentropic gas dynamics")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Region of the right state and single delta shock existence.
    Classify(ProblemArgs),
    /// Build a solution and print its plan as JSON.
    Solve(SolveArgs),
    /// Sample a solution at one time into CSV plus an atoms sidecar.
    Sample(SampleArgs),
    /// Wave curves through a base state as CSV.
    Curves(CurvesArgs),
    /// Weak-form and Rankine-Hugoniot checks of the solution.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct ModeArgs {
    /// Force the classical solver.
    #[arg(long, conflicts_with = "delta")]
    pub classical: bool,
    /// Force a single delta shock.
    #[arg(long)]
    pub delta: bool,
    /// Accept a single delta shock that violates the entropy condition.
    #[arg(long)]
    pub allow_nonentropic: bool,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[command(flatten)]
    pub mode: ModeArgs,
    /// Write the solution JSON here instead of embedding it in the report.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[command(flatten)]
    pub mode: ModeArgs,
    /// Saved solution from `solve --out`; replaces the problem flags.
    #[arg(long, value_name = "PATH")]
    pub solution: Option<PathBuf>,
    #[arg(long, short = 't', allow_negative_numbers = true)]
    pub time: f64,
    #[arg(long, default_value_t = -1.0, allow_negative_numbers = true)]
    pub x_lo: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub x_hi: f64,
    #[arg(long, short, default_value_t = 201)]
    pub n: usize,
    /// CSV path; atoms go to `<stem>.atoms.json` beside it.
    #[arg(long, short)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum BaseSide {
    Left,
    Right,
}

#[derive(Debug, Args)]
pub struct CurvesArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Base state of the curves.
    #[arg(long, value_enum, default_value_t = BaseSide::Left)]
    pub base: BaseSide,
    /// Comma-separated curve names.
    #[arg(long, value_delimiter = ',', default_value = "S1,S2,R1,R2,D1,D2")]
    pub curve: Vec<String>,
    /// Density range; defaults to [rho/10, 10 rho] around the base.
    #[arg(long)]
    pub lo: Option<f64>,
    #[arg(long)]
    pub hi: Option<f64>,
    #[arg(long, short, default_value_t = 101)]
    pub n: usize,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[command(flatten)]
    pub mode: ModeArgs,
    /// Number of random test functions.
    #[arg(long, default_value_t = 20)]
    pub tests: usize,
    /// Gauss-Legendre points per cell.
    #[arg(long, default_value_t = 32)]
    pub order: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Largest accepted weak residual relative to its scale.
    #[arg(long, default_value_t = 1e-6)]
    pub tolerance: f64,
    /// Largest accepted relative Rankine-Hugoniot residual along atoms.
    #[arg(long, default_value_t = 1e-8)]
    pub grh_tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanStage {
    pub kind: PlanKind,
    pub origin: (f64, f64),
    pub end: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeltaSummary {
    pub case_row: delta_riemann::CaseRow,
    pub lifespan: Option<f64>,
    pub extinction: Extinction,
    pub entropy: Entropic,
    pub convexity: Option<Convexity>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub config: Option<ProblemConfig>,
    pub classification: RegionLabel,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub existence: Option<ExistenceReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub plan: Vec<PlanStage>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<DeltaSummary>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub artifacts: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solution: Option<MeasureSolution>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerifySummary>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BumpResult {
    pub center: (f64, f64),
    pub radii: (f64, f64),
    pub residual: ResidualReport,
    pub relative: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifySummary {
    pub tests: usize,
    pub order: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub max_relative: f64,
    pub failures: usize,
    pub bumps: Vec<BumpResult>,
    pub grh: Vec<GrhReport>,
    pub grh_max_relative: f64,
    pub passed: bool,
}

impl RunReport {
    fn new(command: &str, config: Option<ProblemConfig>, classification: RegionLabel) -> Self {
        RunReport {
            command: command.into(),
            config,
            classification,
            existence: None,
            plan: Vec::new(),
            delta: None,
            notes: Vec::new(),
            error: None,
            artifacts: Vec::new(),
            solution: None,
            verification: None,
        }
    }
}

/// Cap rayon's pool from `DELTA_RIEMANN_THREADS`.
fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("DELTA_RIEMANN_THREADS") else { return Ok(()) };
    let n: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| CliError::Config {
        field: "DELTA_RIEMANN_THREADS".into(),
        message: format!("expected a positive integer, got `{v}`"),
    })?;
    if rayon::ThreadPoolBuilder::new().num_threads(n).build_global().is_err() {
        debug!("thread pool already initialised");
    }
    Ok(())
}

/// Parse `args` (program name first), run the command and return the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    match configure_threads().and_then(|_| dispatch(&cli.command, out)) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cmd: &Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match cmd {
        Command::Classify(a) => cmd_classify(a, out),
        Command::Solve(a) => cmd_solve(a, out),
        Command::Sample(a) => cmd_sample(a, out),
        Command::Curves(a) => cmd_curves(a, out),
        Command::Verify(a) => cmd_verify(a, out),
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes()).map_err(|e| CliError::Io(e.to_string()))
}

fn cmd_classify(a: &ProblemArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let cfg = ProblemConfig::from_args(a)?;
    let (law, data) = (cfg.law(), cfg.data());
    let region = classify(&law, data.left, data.right)?;
    let mut report = RunReport::new("classify", Some(cfg), region);
    report.existence = Some(delta_existence(&law, data)?);
    emit(out, &output::json(&report)?)?;
    Ok(EXIT_OK)
}

fn build(cfg: &ProblemConfig, mode: &ModeArgs) -> Result<MeasureSolution, CliError> {
    let (law, data) = (cfg.law(), cfg.data());
    if mode.classical {
        if data.rho0 > 0.0 {
            return Err(CliError::Config {
                field: "rho0".into(),
                message: "the classical solver takes no point mass".into(),
            });
        }
        return Ok(MeasureSolution::from_classical(&solve_classical(&law, data.left, data.right)?)?);
    }
    if mode.delta {
        return Ok(MeasureSolution::from_delta(&law, construct(&law, data)?)?);
    }
    let sol = if data.rho0 > 0.0 {
        solve_singular(&law, data, cfg.pick)?
    } else {
        let opts = MeasureOptions { selection: cfg.pick, allow_nonentropic: mode.allow_nonentropic };
        solve_measure_with(&law, data.left, data.right, opts)?
    };
    info!("region {} plan {:?}", sol.region, sol.plan.kind);
    Ok(sol)
}

fn first_delta(sol: &MeasureSolution) -> Option<&DeltaShockPath> {
    let mut p = Some(&sol.plan);
    while let Some(plan) = p {
        if let Some(d) = plan.delta() {
            return Some(d);
        }
        p = plan.continuation.as_deref();
    }
    None
}

fn path_data(path: &DeltaShockPath) -> RiemannData {
    RiemannData::singular(path.left(), path.right(), path.rho0(), path.u0())
}

fn summarize(report: &mut RunReport, sol: &MeasureSolution) -> Result<(), CliError> {
    let mut p = Some(&sol.plan);
    while let Some(plan) = p {
        report.plan.push(PlanStage { kind: plan.kind, origin: (plan.origin.x, plan.origin.t), end: plan.end });
        p = plan.continuation.as_deref();
    }
    if let Some(path) = first_delta(sol) {
        let data = path_data(path);
        let interval = entropy_interval(&sol.law, path, data)?;
        let entropy = match (interval.valid_until, path.lifespan()) {
            (None, _) => Entropic::Always,
            (Some(t), _) if t <= 0.0 => Entropic::Never,
            (Some(t), Some(life)) if t >= life => Entropic::Always,
            (Some(t), _) => Entropic::Until(t),
        };
        report.delta = Some(DeltaSummary {
            case_row: path.case_row(),
            lifespan: path.lifespan(),
            extinction: path.extinction(),
            entropy,
            convexity: convexity(path, data).ok(),
        });
    }
    report.notes.extend(sol.notes.iter().cloned());
    Ok(())
}

/// Report for data without a measure solution, with the classical solution as fallback.
fn no_solution_report(command: &str, cfg: &ProblemConfig, e: &Error) -> Result<RunReport, CliError> {
    let (law, data) = (cfg.law(), cfg.data());
    let region = classify(&law, data.left, data.right)?;
    let mut report = RunReport::new(command, Some(*cfg), region);
    report.error = Some(e.to_string());
    if data.rho0 == 0.0 {
        let fallback = MeasureSolution::from_classical(&solve_classical(&law, data.left, data.right)?)?;
        if let PlanKind::Classical { pattern } = fallback.plan.kind {
            report.notes.push(format!("classical fallback: {pattern:?}"));
        }
        summarize(&mut report, &fallback)?;
        report.solution = Some(fallback);
    }
    Ok(report)
}

fn cmd_solve(a: &SolveArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let cfg = ProblemConfig::from_args(&a.problem)?;
    let sol = match build(&cfg, &a.mode) {
        Ok(s) => s,
        Err(CliError::Solver(e @ (Error::NoMeasureSolution { .. } | Error::NoDeltaShock(_)))) => {
            let report = no_solution_report("solve", &cfg, &e)?;
            emit(out, &output::json(&report)?)?;
            return Ok(EXIT_NO_SOLUTION);
        }
        Err(e) => return Err(e),
    };
    let mut report = RunReport::new("solve", Some(cfg), sol.region);
    summarize(&mut report, &sol)?;
    match &a.out {
        Some(path) => {
            output::write_file(path, &output::json(&sol)?)?;
            report.artifacts.push(path.display().to_string());
        }
        None => report.solution = Some(sol),
    }
    emit(out, &output::json(&report)?)?;
    Ok(EXIT_OK)
}

fn load_solution(path: &Path) -> Result<MeasureSolution, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Config { field: "solution".into(), message: e.to_string() })
}

fn cmd_sample(a: &SampleArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let (sol, cfg) = match &a.solution {
        Some(p) => (load_solution(p)?, None),
        None => {
            let cfg = ProblemConfig::from_args(&a.problem)?;
            (build(&cfg, &a.mode)?, Some(cfg))
        }
    };
    let profile = sample_solution(&sol, a.time, a.x_lo, a.x_hi, a.n)?;
    let sidecar = output::sidecar_path(&a.out);
    output::write_file(&a.out, &output::profile_csv(&profile))?;
    output::write_file(&sidecar, &output::atoms_json(&profile)?)?;
    let mut report = RunReport::new("sample", cfg, sol.region);
    summarize(&mut report, &sol)?;
    report.artifacts = vec![a.out.display().to_string(), sidecar.display().to_string()];
    emit(out, &output::json(&report)?)?;
    Ok(EXIT_OK)
}

fn cmd_curves(a: &CurvesArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let cfg = ProblemConfig::from_args(&a.problem)?;
    let law = cfg.law();
    let data = cfg.data();
    let base: GasState = match a.base {
        BaseSide::Left => data.left,
        BaseSide::Right => data.right,
    };
    let ids = a
        .curve
        .iter()
        .map(|s| {
            s.trim().parse::<CurveId>().map_err(|_| CliError::Config {
                field: "curve".into(),
                message: format!("unknown curve `{s}`"),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let lo = a.lo.unwrap_or(base.rho / 10.0);
    let hi = a.hi.unwrap_or(base.rho * 10.0);
    if !(lo > 0.0 && lo < hi && hi.is_finite()) {
        return Err(CliError::Config { field: "lo".into(), message: format!("need 0 < lo < hi, got [{lo}, {hi}]") });
    }
    if a.n < 2 {
        return Err(CliError::Config { field: "n".into(), message: "need at least two points".into() });
    }
    let mut csv = String::from("rho,u,curve\n");
    for id in ids {
        let dom = id.domain(&law, base.rho);
        for i in 0..a.n {
            let rho = if i + 1 == a.n { hi } else { lo + (hi - lo) * i as f64 / (a.n - 1) as f64 };
            if !dom.contains(rho) {
                continue;
            }
            if let Ok(u) = eval_curve(&law, id, base, rho) {
                csv.push_str(&format!("{},{},{}\n", output::num(rho), output::num(u), id.name()));
            }
        }
    }
    match &a.out {
        Some(p) => {
            output::write_file(p, &csv)?;
            let region = classify(&law, data.left, data.right)?;
            let mut report = RunReport::new("curves", Some(cfg), region);
            report.artifacts.push(p.display().to_string());
            emit(out, &output::json(&report)?)?;
        }
        None => emit(out, &csv)?,
    }
    Ok(EXIT_OK)
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let cfg = ProblemConfig::from_args(&a.problem)?;
    if a.order == 0 {
        return Err(CliError::Config { field: "order".into(), message: "must be positive".into() });
    }
    let sol = match build(&cfg, &a.mode) {
        Ok(s) => s,
        Err(CliError::Solver(e @ (Error::NoMeasureSolution { .. } | Error::NoDeltaShock(_)))) => {
            let report = no_solution_report("verify", &cfg, &e)?;
            emit(out, &output::json(&report)?)?;
            return Ok(EXIT_NO_SOLUTION);
        }
        Err(e) => return Err(e),
    };
    let bumps = random_bumps(&sol, a.tests, a.seed);
    let residuals = verify_bumps(&sol, &bumps, a.order)?;
    let results: Vec<BumpResult> = bumps
        .iter()
        .zip(&residuals)
        .map(|(b, r)| BumpResult { center: b.center, radii: b.radii, residual: *r, relative: r.relative() })
        .collect();
    let max_relative = results.iter().map(|r| r.relative).fold(0.0, f64::max);
    let failures = results.iter().filter(|r| !(r.relative <= a.tolerance)).count();

    let mut grh = Vec::new();
    let mut p = Some(&sol.plan);
    while let Some(plan) = p {
        if let Some(path) = plan.delta() {
            grh.push(grh_residual(&sol.law, path, path_data(path), 1000)?);
        }
        p = plan.continuation.as_deref();
    }
    let grh_max_relative = grh.iter().map(|g| g.relative()).fold(0.0, f64::max);
    let passed = failures == 0 && grh_max_relative <= a.grh_tolerance;

    let mut report = RunReport::new("verify", Some(cfg), sol.region);
    summarize(&mut report, &sol)?;
    report.verification = Some(VerifySummary {
        tests: a.tests,
        order: a.order,
        seed: a.seed,
        tolerance: a.tolerance,
        max_relative,
        failures,
        bumps: results,
        grh,
        grh_max_relative,
        passed,
    });
    emit(out, &output::json(&report)?)?;
    Ok(if passed { EXIT_OK } else { EXIT_FAILURE })
}
