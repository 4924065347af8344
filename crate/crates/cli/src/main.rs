//! Headless command-line interface: run simulations, render snapshots,
//! replay from snapshots, sweep parameters, and verify invariants.
//!
//! Exit codes: 0 success, 1 usage or configuration error, 2 runtime IO error.

mod overrides;

use clap::{Args, Parser, Subcommand};
use overrides::{apply_override, parse_set};
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use strandsim::engine::{RunOptions, Runner, StopRule};
use strandsim::io::{config_file, snapshot, Recorder, RenderSpec};
use strandsim::verify::run_verification;
use strandsim::SimulationConfig;

#[derive(Parser)]
#[command(
    name = "strandsim",
    about = "Deterministic 2D simulator of self-replicating codon strands",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a simulation, writing events, metrics, and snapshots.
    Run(RunArgs),
    /// Render a snapshot to SVG.
    Render(RenderArgs),
    /// Continue a run from a snapshot.
    Replay(ReplayArgs),
    /// Run a grid of simulations over one parameter.
    Sweep(SweepArgs),
    /// Run invariant checks on a short simulation.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct ConfigArgs {
    /// Config file (TOML); defaults apply when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Override a config key, e.g. --set angle_tolerance.red_blue=pi/16.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    sets: Vec<String>,
    /// Override the RNG seed.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    config: ConfigArgs,
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
    /// Override the step budget.
    #[arg(long)]
    max_steps: Option<u64>,
    /// Override the snapshot interval.
    #[arg(long)]
    snapshot_every: Option<u64>,
    /// Override the metrics interval.
    #[arg(long)]
    metrics_every: Option<u64>,
    /// Stop early: spontaneous-dimer | split | strand:BITS | new-strand:BITS.
    #[arg(long)]
    stop_on: Option<String>,
}

#[derive(Args)]
struct RenderArgs {
    /// Snapshot to render.
    #[arg(long)]
    snapshot: PathBuf,
    /// Output SVG path.
    #[arg(long)]
    out: PathBuf,
    /// Config that produced the snapshot (checked against its digest).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Pixels per length unit.
    #[arg(long, default_value_t = 6.0)]
    scale: f64,
    /// Padding around the container, in length units.
    #[arg(long, default_value_t = 12.0)]
    margin: f64,
}

#[derive(Args)]
struct ReplayArgs {
    /// Snapshot to resume from.
    #[arg(long)]
    snapshot: PathBuf,
    /// Config that produced the snapshot (checked against its digest).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Steps to run from the snapshot.
    #[arg(long)]
    steps: u64,
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
    /// Stop early: spontaneous-dimer | split | strand:BITS | new-strand:BITS.
    #[arg(long)]
    stop_on: Option<String>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    config: ConfigArgs,
    /// Parameter path to sweep, e.g. angle_tolerance.red_blue.
    #[arg(long)]
    param: String,
    /// Comma-separated values for the swept parameter.
    #[arg(long)]
    values: String,
    /// Runs per cell; seeds are rng_seed, rng_seed+1, ...
    #[arg(long, default_value_t = 10)]
    seeds: u64,
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
    /// Override the step budget per run.
    #[arg(long)]
    max_steps: Option<u64>,
    /// Stop rule per run (see `run --stop-on`).
    #[arg(long)]
    stop_on: Option<String>,
    /// Skip per-run output directories; write only the summary.
    #[arg(long, default_value_t = false)]
    summary_only: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    config: ConfigArgs,
    /// Steps to simulate under invariant checks.
    #[arg(long, default_value_t = 2000)]
    steps: u64,
    /// Check the contact oracle every this many steps.
    #[arg(long, default_value_t = 100)]
    oracle_every: u64,
}

enum CliError {
    /// Bad usage, bad config, bad inputs.
    Usage(String),
    /// Filesystem failures.
    Io(String),
}

impl CliError {
    fn io(context: &str, err: std::io::Error) -> CliError {
        CliError::Io(format!("{context}: {err}"))
    }
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Io(_) => 2,
        }
    }
    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Io(m) => m,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version requests are successes; anything else is a
            // usage error (exit 1).
            use clap::error::ErrorKind;
            let _ = err.print();
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.code())
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Run(args) => run(args),
        Command::Render(args) => render(args),
        Command::Replay(args) => replay(args),
        Command::Sweep(args) => sweep(args),
        Command::Verify(args) => verify(args),
    }
}

fn load_config(args: &ConfigArgs) -> Result<SimulationConfig, CliError> {
    let mut cfg = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("reading {}: {e}", path.display())))?;
            config_file::parse_config(&text)
                .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?
        }
        None => SimulationConfig::default(),
    };
    for set in &args.sets {
        let (key, value) = parse_set(set).map_err(CliError::Usage)?;
        apply_override(&mut cfg, &key, &value).map_err(CliError::Usage)?;
    }
    if let Some(seed) = args.seed {
        cfg.rng_seed = seed;
    }
    cfg.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(cfg)
}

fn parse_stop(rule: &Option<String>) -> Result<Option<StopRule>, CliError> {
    let Some(rule) = rule else { return Ok(None) };
    let parsed = match rule.as_str() {
        "spontaneous-dimer" => StopRule::SpontaneousDimer,
        "split" => StopRule::SplitTriggered,
        other => {
            if let Some(bits) = other.strip_prefix("strand:") {
                StopRule::StrandBits(bits.to_string())
            } else if let Some(bits) = other.strip_prefix("new-strand:") {
                StopRule::NewStrandBits(bits.to_string())
            } else {
                return Err(CliError::Usage(format!(
                    "unknown stop rule {other:?}; expected spontaneous-dimer, split, strand:BITS or new-strand:BITS"
                )));
            }
        }
    };
    Ok(Some(parsed))
}

fn write_resolved_config(dir: &Path, cfg: &SimulationConfig) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(&format!("creating {}", dir.display()), e))?;
    let path = dir.join("config.resolved.toml");
    fs::write(&path, config_file::to_toml(cfg))
        .map_err(|e| CliError::io(&format!("writing {}", path.display()), e))
}

fn execute_run(
    runner: &mut Runner,
    opts: &RunOptions,
    out: &Path,
) -> Result<strandsim::RunSummary, CliError> {
    let mut recorder =
        Recorder::create(out).map_err(|e| CliError::io(&format!("opening {}", out.display()), e))?;
    let summary = runner.run(opts, &mut recorder).map_err(|e| match e {
        strandsim::RunError::Io(io) => CliError::io("writing run outputs", io),
        strandsim::RunError::Engine(e) => CliError::Usage(e.to_string()),
    })?;
    recorder
        .finish()
        .map_err(|e| CliError::io("flushing run outputs", e))?;
    Ok(summary)
}

fn print_summary(summary: &strandsim::RunSummary) {
    println!(
        "steps {}  normalized_time {}  events {}{}",
        summary.steps,
        summary.normalized_time,
        summary.events_total,
        if summary.stopped_by_rule { "  (stopped by rule)" } else { "" }
    );
    if let Some(step) = summary.first_spontaneous_dimer {
        println!("first spontaneous dimer: step {step}");
    }
    if let Some(step) = summary.first_split {
        println!("first split: step {step}");
    }
    for (step, bits) in &summary.completions {
        println!("strand completed at step {step}: {bits}");
    }
}

fn run(args: RunArgs) -> Result<(), CliError> {
    let mut cfg = load_config(&args.config)?;
    if let Some(v) = args.snapshot_every {
        cfg.snapshot_every = v;
    }
    if let Some(v) = args.metrics_every {
        cfg.metrics_every = v;
    }
    cfg.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    write_resolved_config(&args.out, &cfg)?;
    let stop = parse_stop(&args.stop_on)?;
    let mut runner = Runner::new(cfg).map_err(|e| CliError::Usage(e.to_string()))?;
    let opts = RunOptions { max_steps: args.max_steps, stop };
    let summary = execute_run(&mut runner, &opts, &args.out)?;
    print_summary(&summary);
    Ok(())
}

fn load_snapshot_engine(
    snapshot_path: &Path,
    config: &Option<PathBuf>,
) -> Result<strandsim::Engine, CliError> {
    let text = fs::read_to_string(snapshot_path)
        .map_err(|e| CliError::Usage(format!("reading {}: {e}", snapshot_path.display())))?;
    let doc = snapshot::read_snapshot(&text)
        .map_err(|e| CliError::Usage(format!("{}: {e}", snapshot_path.display())))?;
    let cfg = load_config(&ConfigArgs {
        config: config.clone(),
        sets: Vec::new(),
        seed: None,
    })?;
    snapshot::restore_engine(doc, cfg).map_err(|e| CliError::Usage(e.to_string()))
}

fn render(args: RenderArgs) -> Result<(), CliError> {
    let engine = load_snapshot_engine(&args.snapshot, &args.config)?;
    let spec = RenderSpec { scale: args.scale, margin: args.margin };
    let svg = strandsim::io::render_svg(engine.codons(), engine.params(), &spec);
    if let Some(parent) = args.out.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)
                .map_err(|e| CliError::io(&format!("creating {}", parent.display()), e))?;
        }
    }
    fs::write(&args.out, svg)
        .map_err(|e| CliError::io(&format!("writing {}", args.out.display()), e))?;
    println!("wrote {}", args.out.display());
    Ok(())
}

fn replay(args: ReplayArgs) -> Result<(), CliError> {
    let engine = load_snapshot_engine(&args.snapshot, &args.config)?;
    write_resolved_config(&args.out, engine.config())?;
    let stop = parse_stop(&args.stop_on)?;
    let mut runner = Runner::resume(engine);
    let opts = RunOptions { max_steps: Some(args.steps), stop };
    let summary = execute_run(&mut runner, &opts, &args.out)?;
    print_summary(&summary);
    Ok(())
}

fn sweep(args: SweepArgs) -> Result<(), CliError> {
    let base = load_config(&args.config)?;
    let values: Vec<&str> = args.values.split(',').filter(|v| !v.is_empty()).collect();
    if values.is_empty() {
        return Err(CliError::Usage("--values must list at least one value".into()));
    }
    if args.seeds == 0 {
        return Err(CliError::Usage("--seeds must be at least 1".into()));
    }
    fs::create_dir_all(&args.out)
        .map_err(|e| CliError::io(&format!("creating {}", args.out.display()), e))?;
    let stop = parse_stop(&args.stop_on)?;

    let mut summary_csv = String::from(
        "param,value,rng_seed,steps,stopped_by_rule,first_spontaneous_dimer,first_split,first_completion,completions\n",
    );
    let mut table = String::new();
    for value in &values {
        let mut firsts: Vec<u64> = Vec::new();
        for k in 0..args.seeds {
            let mut cfg = base.clone();
            apply_override(&mut cfg, &args.param, value).map_err(CliError::Usage)?;
            cfg.rng_seed = base.rng_seed + k;
            cfg.validate().map_err(|e| CliError::Usage(e.to_string()))?;
            let seed = cfg.rng_seed;
            let cell_dir = args
                .out
                .join(format!("{}={}", args.param.replace('/', "_"), value.replace('/', "_")))
                .join(format!("seed_{seed}"));
            let mut runner = Runner::new(cfg.clone()).map_err(|e| CliError::Usage(e.to_string()))?;
            let opts = RunOptions { max_steps: args.max_steps, stop: stop.clone() };
            let summary = if args.summary_only {
                let mut sink = NullObserver;
                runner.run(&opts, &mut sink).map_err(|e| match e {
                    strandsim::RunError::Io(io) => CliError::io("running sweep cell", io),
                    strandsim::RunError::Engine(e) => CliError::Usage(e.to_string()),
                })?
            } else {
                write_resolved_config(&cell_dir, &cfg)?;
                execute_run(&mut runner, &opts, &cell_dir)?
            };
            let first_completion = summary.completions.iter().map(|(s, _)| *s).find(|s| *s > 0);
            let _ = writeln!(
                summary_csv,
                "{},{},{},{},{},{},{},{},{}",
                args.param,
                value,
                seed,
                summary.steps,
                summary.stopped_by_rule,
                opt(summary.first_spontaneous_dimer),
                opt(summary.first_split),
                opt(first_completion),
                summary.completions.len(),
            );
            if let Some(step) = summary.first_spontaneous_dimer {
                firsts.push(step);
            }
        }
        let median = median_with_censoring(&mut firsts, args.seeds);
        let _ = writeln!(
            table,
            "{} = {:>12}: first-dimer median {} ({} of {} runs saw one)",
            args.param,
            value,
            median,
            firsts.len(),
            args.seeds
        );
    }
    let summary_path = args.out.join("summary.csv");
    fs::write(&summary_path, summary_csv)
        .map_err(|e| CliError::io(&format!("writing {}", summary_path.display()), e))?;
    print!("{table}");
    println!("wrote {}", summary_path.display());
    Ok(())
}

fn opt(v: Option<u64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_else(|| "-".into())
}

/// Median over all runs, counting runs that never saw the event as infinite.
fn median_with_censoring(firsts: &mut Vec<u64>, total: u64) -> String {
    firsts.sort_unstable();
    let total = total as usize;
    let mid = total / 2;
    if firsts.len() > mid {
        firsts[mid].to_string()
    } else {
        "censored".into()
    }
}

struct NullObserver;
impl strandsim::RunObserver for NullObserver {
    fn on_events(&mut self, _: &[strandsim::EventRecord]) -> std::io::Result<()> {
        Ok(())
    }
    fn on_metrics(&mut self, _: &strandsim::MetricsRow) -> std::io::Result<()> {
        Ok(())
    }
    fn on_snapshot(&mut self, _: &strandsim::Engine) -> std::io::Result<()> {
        Ok(())
    }
}

fn verify(args: VerifyArgs) -> Result<(), CliError> {
    let cfg = load_config(&args.config)?;
    if args.oracle_every == 0 {
        return Err(CliError::Usage("--oracle-every must be at least 1".into()));
    }
    let report = run_verification(cfg, args.steps, args.oracle_every)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    for (name, count) in &report.checks {
        let failed = report
            .violations
            .iter()
            .filter(|v| v.invariant == *name || (*name == "state_invariants" && v.invariant != "contact_oracle"))
            .count();
        println!(
            "{}: {} checks, {}",
            name,
            count,
            if failed == 0 { "PASS".to_string() } else { format!("FAIL ({failed} violations)") }
        );
    }
    if report.passed() {
        println!("verification passed over {} steps", report.steps);
        Ok(())
    } else {
        for v in report.violations.iter().take(20) {
            eprintln!("violation: {v}");
        }
        Err(CliError::Usage(format!(
            "verification failed with {} violations",
            report.violations.len()
        )))
    }
}
