//! Command-line front end for the twistor-qgem library.
//!
//! Four subcommands expose the library's main entry points: `verify` runs
//! the seeded property suites, `reduce-check` measures the line-kernel
//! reduction over sampled point pairs, `phase` integrates the bilocal phase
//! between two worldline files, and `qgem` runs the two-mass protocol from
//! a config file, optionally sweeping one parameter axis.
//!
//! All numerical output is deterministic for a fixed seed and
//! configuration, at any thread count. Reports go to stdout (or `--out`);
//! a run manifest with timestamps and a config digest goes to stderr (and
//! beside `--out` as `<stem>.manifest.json`), so the report bytes stay
//! reproducible.
//!
//! Exit codes: 0 on success, 1 on scientific failure (a property violated,
//! a spread too large, worldlines that never overlap), 2 on usage or
//! configuration errors (bad flags, missing or malformed files).

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use twistor_qgem::phase::{
    bilocal_phase_with, newtonian_phase_with, KernelChoice, PhaseOptions, PhaseResult,
    PhysicalConstants,
};
use twistor_qgem::qgem::{run_protocol, sweep, ProtocolConfig, SweepAxis};
use twistor_qgem::verify::{run_verification, RunManifest, Suite, VerifyReport};
use twistor_qgem::worldline::SpacetimeWorldline;
use twistor_qgem::{PhaseError, ProtocolError, WorldlineError};

/// Spread above which a reduction measurement counts as a failed run.
const REDUCE_CHECK_SPREAD_LIMIT: f64 = 1e-8;

#[derive(Parser)]
#[command(
    name = "twistor-qgem",
    version,
    about = "Twistor-kernel verification suites, bilocal phases, and the two-mass protocol"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: GlobalArgs,
}

#[derive(Args)]
struct GlobalArgs {
    /// Seed for every randomized draw; runs with equal seeds are
    /// byte-identical.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Samples per property or measurement.
    #[arg(long, global = true, default_value_t = 1000)]
    trials: usize,

    /// Write the report here instead of stdout; a manifest lands beside it
    /// as `<stem>.manifest.json`.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Report format; defaults to json, except protocol sweeps which
    /// default to csv.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Gravitational constant override, m^3 kg^-1 s^-2.
    #[arg(long = "G", global = true, value_name = "G")]
    g_newton: Option<f64>,

    /// Reduced Planck constant override, J s.
    #[arg(long, global = true)]
    hbar: Option<f64>,

    /// Speed of light override, m/s.
    #[arg(long, global = true)]
    c: Option<f64>,
}

impl GlobalArgs {
    /// CODATA values with any command-line overrides applied.
    fn constants(&self) -> PhysicalConstants {
        self.constants_over(PhysicalConstants::codata2018())
    }

    /// Overrides applied on top of an existing base (a config file's own
    /// constants, say).
    fn constants_over(&self, base: PhysicalConstants) -> PhysicalConstants {
        PhysicalConstants {
            g_newton: self.g_newton.unwrap_or(base.g_newton),
            hbar: self.hbar.unwrap_or(base.hbar),
            c: self.c.unwrap_or(base.c),
        }
    }

    fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run seeded property suites; exit 0 iff every property passes.
    Verify {
        /// Which suite: algebra, invariance, reduction, or all.
        suite: String,
    },
    /// Measure det_kernel * interval^2 over sampled point pairs and write
    /// the ratios plus a summary.
    ReduceCheck,
    /// Integrate the bilocal phase between two worldline files.
    Phase {
        /// Worldline file for the first mass.
        worldline_a: PathBuf,
        /// Worldline file for the second mass.
        worldline_b: PathBuf,
        /// Kernel backend: static, retarded, invariant_interval,
        /// twistor_detkernel, or newtonian (time-domain oracle).
        #[arg(long, default_value = "static")]
        kernel: String,
    },
    /// Run the two-mass protocol from a config file, or sweep one axis.
    Qgem {
        /// Protocol config file (JSON).
        config: PathBuf,
        /// Sweep one axis instead of a single run: "t=0.5,1,2" (axes: t
        /// hold time, m both masses, r geometry scale).
        #[arg(long, value_name = "AXIS=V1,V2,...")]
        sweep: Option<String>,
    },
}

/// A failure routed to one of the two nonzero exit codes.
enum AppError {
    /// Usage or configuration problem: exit 2.
    Usage(String),
    /// A scientific check failed or a computation was ill-posed: exit 1.
    Science(String),
}

impl AppError {
    fn usage(msg: impl fmt::Display) -> Self {
        AppError::Usage(msg.to_string())
    }

    fn science(msg: impl fmt::Display) -> Self {
        AppError::Science(msg.to_string())
    }
}

impl From<std::io::Error> for AppError {
    fn from(e: std::io::Error) -> Self {
        AppError::Usage(e.to_string())
    }
}

impl From<WorldlineError> for AppError {
    fn from(e: WorldlineError) -> Self {
        // Anything wrong with an input file, from I/O to schema to
        // validation, is a configuration problem.
        AppError::Usage(e.to_string())
    }
}

impl From<PhaseError> for AppError {
    fn from(e: PhaseError) -> Self {
        match e {
            PhaseError::BadConstants(_) | PhaseError::InvalidArgument(_) => {
                AppError::Usage(e.to_string())
            }
            PhaseError::Worldline(w) => w.into(),
            // No-overlap, collisions, singular excess, and non-finite
            // functionals are statements about the physics of the inputs,
            // not about how the command was invoked.
            _ => AppError::Science(e.to_string()),
        }
    }
}

impl From<ProtocolError> for AppError {
    fn from(e: ProtocolError) -> Self {
        match e {
            ProtocolError::Phase(p) => p.into(),
            _ => AppError::Usage(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut manifest = RunManifest::begin(
        command_name(&cli.command),
        cli.global.seed,
        config_digest_bytes(&cli).as_bytes(),
    );
    let outcome = run(&cli);
    manifest.finish();
    emit_manifest(&manifest, cli.global.out.as_deref());
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(AppError::Science(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(AppError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn command_name(command: &Command) -> String {
    match command {
        Command::Verify { suite } => format!("verify {suite}"),
        Command::ReduceCheck => "reduce-check".to_string(),
        Command::Phase { .. } => "phase".to_string(),
        Command::Qgem { .. } => "qgem".to_string(),
    }
}

/// Canonical serialization of everything that influences the run, digested
/// into the manifest.
fn config_digest_bytes(cli: &Cli) -> String {
    let consts = cli.global.constants();
    let args = match &cli.command {
        Command::Verify { suite } => serde_json::json!({ "suite": suite }),
        Command::ReduceCheck => serde_json::json!({}),
        Command::Phase {
            worldline_a,
            worldline_b,
            kernel,
        } => serde_json::json!({
            "worldline_a": worldline_a.display().to_string(),
            "worldline_b": worldline_b.display().to_string(),
            "kernel": kernel,
        }),
        Command::Qgem { config, sweep } => serde_json::json!({
            "config": config.display().to_string(),
            "sweep": sweep,
        }),
    };
    serde_json::json!({
        "command": command_name(&cli.command),
        "seed": cli.global.seed,
        "trials": cli.global.trials,
        "format": cli.global.format.map(|f| f.to_string()),
        "constants": consts,
        "args": args,
    })
    .to_string()
}

fn emit_manifest(manifest: &RunManifest, out: Option<&Path>) {
    let body = manifest.to_json_string();
    eprintln!("{body}");
    if let Some(out) = out {
        let path = sibling(out, "manifest.json");
        if let Err(e) = fs::write(&path, body + "\n") {
            eprintln!("error: could not write manifest {}: {e}", path.display());
        }
    }
}

/// `report.json` -> `report.<suffix>`, or a plain append when the path has
/// no extension.
fn sibling(out: &Path, suffix: &str) -> PathBuf {
    out.with_extension(suffix)
}

/// Write the report to `--out` or stdout.
fn emit(out: Option<&Path>, body: &str) -> Result<(), AppError> {
    match out {
        Some(path) => {
            fs::write(path, body).map_err(|e| {
                AppError::usage(format!("could not write {}: {e}", path.display()))
            })?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(body.as_bytes())
                .and_then(|_| if body.ends_with('\n') { Ok(()) } else { lock.write_all(b"\n") })
                .map_err(AppError::from)?;
        }
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<(), AppError> {
    match &cli.command {
        Command::Verify { suite } => cmd_verify(suite, &cli.global),
        Command::ReduceCheck => cmd_reduce_check(&cli.global),
        Command::Phase {
            worldline_a,
            worldline_b,
            kernel,
        } => cmd_phase(worldline_a, worldline_b, kernel, &cli.global),
        Command::Qgem { config, sweep } => cmd_qgem(config, sweep.as_deref(), &cli.global),
    }
}

fn cmd_verify(suite: &str, global: &GlobalArgs) -> Result<(), AppError> {
    let suite: Suite = suite.parse().map_err(AppError::usage)?;
    let report = run_verification(suite, global.seed, global.trials)?;
    eprint!("{}", report.summary_lines());
    let body = match global.format_or(Format::Json) {
        Format::Json => report.to_json_string(),
        Format::Csv => properties_csv(&report),
    };
    emit(global.out.as_deref(), &body)?;
    if report.passed {
        Ok(())
    } else {
        Err(AppError::science("one or more properties failed"))
    }
}

fn properties_csv(report: &VerifyReport) -> String {
    let mut out = String::from("suite,property,trials,measured,threshold,goal,passed\n");
    for suite in &report.suites {
        for p in &suite.properties {
            let goal = match p.goal {
                twistor_qgem::verify::Goal::Below => "below",
                twistor_qgem::verify::Goal::Above => "above",
            };
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                suite.suite, p.name, p.trials, p.measured, p.threshold, goal, p.passed
            ));
        }
    }
    out
}

fn cmd_reduce_check(global: &GlobalArgs) -> Result<(), AppError> {
    use twistor_qgem::bitwistor::PiBasis;
    use twistor_qgem::kernel::{reduction_check, sample_point_pairs};

    let samples = global.trials;
    if samples < 2 {
        return Err(AppError::usage(
            "reduce-check needs at least 2 samples (set --trials)",
        ));
    }
    let pairs = sample_point_pairs(samples, global.seed, 5.0, 0.1);
    let report = reduction_check(&pairs, &PiBasis::default(), global.seed)
        .map_err(|e| AppError::science(e.to_string()))?;

    let summary = serde_json::to_string_pretty(&report).expect("report serializes");
    let mut csv = String::from("index,ratio_re,ratio_im\n");
    for (i, r) in report.ratios.iter().enumerate() {
        csv.push_str(&format!("{i},{},{}\n", r.re, r.im));
    }

    match global.format_or(Format::Json) {
        Format::Json => {
            emit(global.out.as_deref(), &summary)?;
            if let Some(out) = global.out.as_deref() {
                fs::write(sibling(out, "ratios.csv"), &csv)?;
            }
        }
        Format::Csv => {
            emit(global.out.as_deref(), &csv)?;
            if let Some(out) = global.out.as_deref() {
                fs::write(sibling(out, "summary.json"), &summary)?;
            }
        }
    }

    if report.relative_spread >= REDUCE_CHECK_SPREAD_LIMIT {
        return Err(AppError::science(format!(
            "reduction ratio spread {:.3e} exceeds {REDUCE_CHECK_SPREAD_LIMIT:.0e}",
            report.relative_spread
        )));
    }
    Ok(())
}

fn cmd_phase(
    path_a: &Path,
    path_b: &Path,
    kernel: &str,
    global: &GlobalArgs,
) -> Result<(), AppError> {
    let consts = global.constants();
    consts.validate().map_err(AppError::from)?;
    let wa = SpacetimeWorldline::from_json_file(path_a, consts.c)?;
    let wb = SpacetimeWorldline::from_json_file(path_b, consts.c)?;
    let opts = PhaseOptions::default();
    let result: PhaseResult = match kernel {
        "newtonian" => newtonian_phase_with(&wa, &wb, &consts, &opts)?,
        other => {
            let choice: KernelChoice = other.parse().map_err(AppError::usage)?;
            bilocal_phase_with(&wa, &wb, choice, &consts, &opts)?
        }
    };
    let body = match global.format_or(Format::Json) {
        Format::Json => serde_json::to_string_pretty(&result).expect("result serializes"),
        Format::Csv => format!(
            "phi,abs_error_estimate,kernel_id,excluded_singular_samples\n{},{},{},{}\n",
            result.phi, result.abs_error_estimate, result.kernel_id, result.excluded_singular_samples
        ),
    };
    emit(global.out.as_deref(), &body)
}

fn cmd_qgem(config_path: &Path, sweep_arg: Option<&str>, global: &GlobalArgs) -> Result<(), AppError> {
    let mut config = ProtocolConfig::from_json_file(config_path)?;
    // Command-line constants take precedence over the file's.
    let base = config.constants();
    let merged = global.constants_over(base);
    config.constants = Some(merged);
    config.validate().map_err(AppError::from)?;

    match sweep_arg {
        None => {
            let report = run_protocol(&config)?;
            let body = match global.format_or(Format::Json) {
                Format::Json => serde_json::to_string_pretty(&report).expect("report serializes"),
                Format::Csv => format!(
                    "phi_ll,phi_lr,phi_rl,phi_rr,delta_phi,concurrence,negativity,entropy_bits,separable\n{},{},{},{},{},{},{},{},{}\n",
                    report.branch_phases.phi_ll,
                    report.branch_phases.phi_lr,
                    report.branch_phases.phi_rl,
                    report.branch_phases.phi_rr,
                    report.effective_phase,
                    report.concurrence,
                    report.negativity,
                    report.entropy_bits,
                    report.separable
                ),
            };
            emit(global.out.as_deref(), &body)
        }
        Some(arg) => {
            let (axis, values) = parse_sweep(arg)?;
            let report = sweep(&config, axis, &values);
            let body = match global.format_or(Format::Csv) {
                Format::Csv => report.to_csv(),
                Format::Json => serde_json::to_string_pretty(&report).expect("report serializes"),
            };
            emit(global.out.as_deref(), &body)?;
            if report.failures.is_empty() {
                Ok(())
            } else {
                Err(AppError::science(format!(
                    "{} of {} sweep points failed; see the failures section of the report",
                    report.failures.len(),
                    report.failures.len() + report.points.len()
                )))
            }
        }
    }
}

/// Parse `axis=v1,v2,...` into a sweep axis and its values.
fn parse_sweep(arg: &str) -> Result<(SweepAxis, Vec<f64>), AppError> {
    let (axis, rest) = arg.split_once('=').ok_or_else(|| {
        AppError::usage(format!(
            "sweep argument '{arg}' is not of the form axis=v1,v2,..."
        ))
    })?;
    let axis: SweepAxis = axis.trim().parse().map_err(AppError::usage)?;
    let values: Result<Vec<f64>, _> = rest
        .split(',')
        .map(|v| v.trim().parse::<f64>())
        .collect();
    let values = values
        .map_err(|e| AppError::usage(format!("sweep value in '{rest}' did not parse: {e}")))?;
    if values.is_empty() {
        return Err(AppError::usage("sweep needs at least one value"));
    }
    if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
        return Err(AppError::usage(format!("sweep value {bad} is not finite")));
    }
    Ok((axis, values))
}
