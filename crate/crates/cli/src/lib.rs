//! Batch front end: state ingestion, verdicts, geometry, distillation runs,
//! ensemble simulation and simulated tomography.
//!
//! Exit codes: 0 success, 2 invalid state or configuration, 3 internal
//! numeric failure, 4 not distillable, 5 target unreachable.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{ArgGroup, Parser, ValueEnum};
use serde::Serialize;

use qdistill::distill::{
    estimate_state, filter_ensemble, pipeline_report, simulate_ensemble_with, EnsembleOptions, Outcome,
    DEFAULT_MAX_STEPS,
};
use qdistill::hs_geometry::geometry_report;
use qdistill::inseparability::{derive_filter, ppt_test, Party};
use qdistill::qstate::{
    eq10_state, parse_state_file, random_mixed, singlet_fraction, werner_state, write_state_file, DensityMatrix,
    StateFile,
};
use qdistill::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Analyze,
    Geometry,
    Distill,
    Simulate,
    Estimate,
}

#[derive(Debug, Parser)]
#[command(name = "qdistill", version, about = "Two-qubit entanglement distillation workbench")]
#[command(group(ArgGroup::new("source").required(true)))]
pub struct Cli {
    pub command: Command,
    /// State file (JSON)
    #[arg(long = "in", value_name = "FILE", group = "source")]
    pub input: Option<PathBuf>,
    /// Werner state with singlet weight F
    #[arg(long, value_name = "F", group = "source", allow_negative_numbers = true)]
    pub werner: Option<f64>,
    /// p|c00+d11><..| + (1-p)|c01+d10><..|
    #[arg(long, num_args = 3, value_names = ["C", "D", "P"], group = "source", allow_negative_numbers = true)]
    pub eq10: Option<Vec<f64>>,
    /// Random rank-2 mixed state
    #[arg(long, value_name = "SEED", group = "source")]
    pub random: Option<u64>,
    #[arg(long, default_value_t = 0.9)]
    pub target: f64,
    #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
    pub steps: usize,
    #[arg(long, default_value_t = 1_000_000)]
    pub pairs: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Emit CSV instead of the JSON report
    #[arg(long)]
    pub csv: bool,
    /// Samples per Pauli observable for `estimate`; 0 means exact
    #[arg(long, default_value_t = 10_000)]
    pub shots: u64,
    /// Worker threads for `simulate`; 0 uses all cores
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Source {
    File(PathBuf),
    Werner(f64),
    Eq10 { c: f64, d: f64, p: f64 },
    Random(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Report,
    Csv,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub source: Source,
    pub f_target: f64,
    pub max_steps: usize,
    pub n_pairs: usize,
    pub seed: u64,
    pub output_path: Option<PathBuf>,
    pub format: Format,
    pub shots: u64,
    pub workers: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Success = 0,
    Invalid = 2,
    Internal = 3,
    NotDistillable = 4,
    TargetUnreachable = 5,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: Exit,
    pub message: String,
}

impl CliError {
    fn invalid(message: impl Into<String>) -> Self {
        Self { code: Exit::Invalid, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotDistillable { .. } | Error::NotInseparable { .. } => Exit::NotDistillable,
            Error::TargetUnreachable { .. } => Exit::TargetUnreachable,
            Error::InvalidParameter { .. } => Exit::Invalid,
            ref e if e.is_invalid_state() => Exit::Invalid,
            _ => Exit::Internal,
        };
        Self { code, message: e.to_string() }
    }
}

/// What a command produced: text for stdout and files to write.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Response {
    pub stdout: String,
    pub files: Vec<(PathBuf, String)>,
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, CliError> {
        let source = match (cli.input, cli.werner, cli.eq10, cli.random) {
            (Some(path), ..) => Source::File(path),
            (_, Some(f), ..) => Source::Werner(f),
            (_, _, Some(v), _) => Source::Eq10 { c: v[0], d: v[1], p: v[2] },
            (.., Some(seed)) => Source::Random(seed),
            _ => return Err(CliError::invalid("no input state given")),
        };
        let needs_target = matches!(cli.command, Command::Distill | Command::Simulate);
        if needs_target && !(cli.target > 0.5 && cli.target < 1.0) {
            return Err(CliError::invalid(format!("--target {} must lie in (1/2, 1)", cli.target)));
        }
        if cli.command == Command::Simulate && cli.pairs < 2 {
            return Err(CliError::invalid(format!("--pairs {} must be at least 2", cli.pairs)));
        }
        Ok(Self {
            command: cli.command,
            source,
            f_target: cli.target,
            max_steps: cli.steps,
            n_pairs: cli.pairs,
            seed: cli.seed,
            output_path: cli.out,
            format: if cli.csv { Format::Csv } else { Format::Report },
            shots: cli.shots,
            workers: cli.workers,
        })
    }
}

pub fn load_state(source: &Source) -> Result<DensityMatrix, CliError> {
    let state = match source {
        Source::File(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::invalid(format!("cannot read {}: {e}", path.display())))?;
            parse_state_file(&text)?
        }
        Source::Werner(f) => werner_state(*f)?,
        Source::Eq10 { c, d, p } => eq10_state(*c, *d, *p)?,
        Source::Random(seed) => random_mixed(*seed, 2)?,
    };
    Ok(state)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

/// Routes the main document to `--out` when given, else to stdout.
fn emit(config: &RunConfig, body: String) -> Response {
    match &config.output_path {
        Some(path) => Response { stdout: String::new(), files: vec![(path.clone(), body)] },
        None => Response { stdout: body, files: Vec::new() },
    }
}

fn with_suffix(path: &std::path::Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

#[derive(Debug, Serialize)]
struct FilterSection {
    side: Party,
    schmidt_a: f64,
    schmidt_b: f64,
    w: [f64; 2],
    identity: bool,
    pass_probability: f64,
    singlet_fraction_after: f64,
}

#[derive(Debug, Serialize)]
struct AnalyzeReport {
    verdict: &'static str,
    min_pt_eigenvalue: f64,
    singlet_fraction: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    filter: Option<FilterSection>,
}

pub fn cmd_analyze(config: &RunConfig) -> Result<(Exit, Response), CliError> {
    let rho = load_state(&config.source)?;
    let verdict = ppt_test(&rho);
    let f = singlet_fraction(&rho).f;
    let filter = if verdict.inseparable {
        let d = derive_filter(&rho)?;
        let (p, f_after) = if d.filter.is_identity() {
            (1.0, f)
        } else {
            let (after, p) = filter_ensemble(&d.rotated, &d.filter)?;
            (p, singlet_fraction(&after).f)
        };
        Some(FilterSection {
            side: d.filter.side(),
            schmidt_a: d.schmidt.a,
            schmidt_b: d.schmidt.b,
            w: d.filter.entries(),
            identity: d.filter.is_identity(),
            pass_probability: p,
            singlet_fraction_after: f_after,
        })
    } else {
        None
    };
    let report = AnalyzeReport {
        verdict: if verdict.inseparable { "inseparable" } else { "separable" },
        min_pt_eigenvalue: verdict.min_eigenvalue,
        singlet_fraction: f,
        filter,
    };
    let body = match config.format {
        Format::Report => to_json(&report),
        Format::Csv => {
            let (p, fa) = report.filter.as_ref().map_or((1.0, f), |s| (s.pass_probability, s.singlet_fraction_after));
            format!(
                "inseparable,min_pt_eigenvalue,singlet_fraction,pass_probability,singlet_fraction_after\n{},{:?},{:?},{:?},{:?}\n",
                verdict.inseparable, verdict.min_eigenvalue, f, p, fa
            )
        }
    };
    Ok((Exit::Success, emit(config, body)))
}

#[derive(Debug, Serialize)]
struct GeometryOutput {
    #[serde(flatten)]
    geometry: qdistill::hs_geometry::GeometryReport,
    singlet_fraction: f64,
}

pub fn cmd_geometry(config: &RunConfig) -> Result<(Exit, Response), CliError> {
    let rho = load_state(&config.source)?;
    let geometry = geometry_report(&rho);
    let body = match config.format {
        Format::Report => to_json(&GeometryOutput { singlet_fraction: singlet_fraction(&rho).f, geometry }),
        Format::Csv => format!("t1,t2,t3\n{:?},{:?},{:?}\n", geometry.d[0], geometry.d[1], geometry.d[2]),
    };
    Ok((Exit::Success, emit(config, body)))
}

pub fn cmd_distill(config: &RunConfig) -> Result<(Exit, Response), CliError> {
    let rho = load_state(&config.source)?;
    let report = pipeline_report(&rho, config.f_target, config.max_steps)?;
    let code = match report.outcome {
        Outcome::Reached => Exit::Success,
        Outcome::NotDistillable => Exit::NotDistillable,
        Outcome::TargetUnreachable => Exit::TargetUnreachable,
    };
    let response = match config.format {
        Format::Csv => emit(config, format!("{}\n{}", report.stages_csv(), report.trail_csv())),
        Format::Report => {
            let mut r = emit(config, to_json(&report));
            if let Some(path) = &config.output_path {
                r.files.push((with_suffix(path, ".stages.csv"), report.stages_csv()));
                r.files.push((with_suffix(path, ".trail.csv"), report.trail_csv()));
            }
            r
        }
    };
    Ok((code, response))
}

pub fn cmd_simulate(config: &RunConfig) -> Result<(Exit, Response), CliError> {
    let rho = load_state(&config.source)?;
    let run = simulate_ensemble_with(
        &rho,
        &EnsembleOptions {
            n_pairs: config.n_pairs,
            f_target: config.f_target,
            max_steps: config.max_steps,
            seed: config.seed,
            workers: config.workers,
        },
    )?;
    let body = match config.format {
        Format::Report => to_json(&run),
        Format::Csv => {
            let mut out = String::from("stage,fidelity,pass_probability,cumulative_efficiency,survivors\n");
            let mut eff = 1.0;
            for (s, n) in run.report.stages.iter().zip(&run.stage_survivors) {
                eff *= s.efficiency_factor();
                out.push_str(&format!("{},{:?},{:?},{:?},{}\n", s.label, s.fidelity_after, s.pass_probability, eff, n));
            }
            out
        }
    };
    Ok((Exit::Success, emit(config, body)))
}

#[derive(Debug, Serialize)]
struct EstimateReport {
    shots: u64,
    seed: u64,
    frobenius_error: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    state_path: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    state: Option<StateFile>,
}

/// With `--out` the estimate goes to the file in state-file format and the
/// report to stdout; otherwise the report embeds the state.
pub fn cmd_estimate(config: &RunConfig) -> Result<(Exit, Response), CliError> {
    let rho = load_state(&config.source)?;
    let est = estimate_state(&rho, config.shots, config.seed)?;
    let mut report = EstimateReport {
        shots: config.shots,
        seed: config.seed,
        frobenius_error: est.distance(&rho),
        state_path: config.output_path.clone(),
        state: None,
    };
    let mut response = Response::default();
    match &config.output_path {
        Some(path) => response.files.push((path.clone(), write_state_file(&est))),
        None => report.state = Some(StateFile::from_state(&est)),
    }
    response.stdout = to_json(&report);
    Ok((Exit::Success, response))
}

pub fn execute(config: &RunConfig) -> Result<(Exit, Response), CliError> {
    match config.command {
        Command::Analyze => cmd_analyze(config),
        Command::Geometry => cmd_geometry(config),
        Command::Distill => cmd_distill(config),
        Command::Simulate => cmd_simulate(config),
        Command::Estimate => cmd_estimate(config),
    }
}

/// Parses `args`, runs the command, writes files and streams; returns the exit code.
pub fn main_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                return Exit::Invalid as i32;
            }
            let _ = write!(stdout, "{e}");
            return 0;
        }
    };
    let result = RunConfig::from_cli(cli).and_then(|config| execute(&config));
    match result {
        Ok((code, response)) => {
            for (path, text) in &response.files {
                if let Err(e) = std::fs::write(path, text) {
                    let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
                    return Exit::Invalid as i32;
                }
            }
            let _ = stdout.write_all(response.stdout.as_bytes());
            code as i32
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message);
            e.code as i32
        }
    }
}
