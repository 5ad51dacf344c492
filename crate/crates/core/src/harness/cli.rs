use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, CommandFactory, Parser, Subcommand};

use super::{fmt_sig, run_nmse_traces, run_radar_image, run_single, run_table1, ExperimentSpec, Method};
use crate::error::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "lrpsr", version, about = "Compressive low-rank plus sparse clutter removal experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Average TCR per method and compression ratio.
    Table1(RunArgs),
    /// Per-iteration NMSE curves of the solver variants.
    Nmse(RunArgs),
    /// Radar-scene images and TCR report.
    RadarImage(RunArgs),
    /// One method on one instance.
    Solve(SolveArgs),
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Experiment TOML file.
    #[arg(long)]
    config: PathBuf,
    /// Base seed; trial i uses seed + i.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out_dir: Option<PathBuf>,
    #[arg(long)]
    trials: Option<usize>,
    /// Compression ratio (repeatable); replaces the configured list.
    #[arg(long)]
    ratio: Vec<f64>,
    /// Method (repeatable); replaces the configured list.
    #[arg(long)]
    method: Vec<Method>,
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[command(flatten)]
    run: RunArgs,
    /// Directory holding a `Y.csv` data matrix (radar configs only).
    #[arg(long)]
    input: Option<PathBuf>,
}

fn load(args: &RunArgs) -> Result<ExperimentSpec> {
    let mut spec = ExperimentSpec::load(&args.config)?;
    if let Some(seed) = args.seed {
        spec.seed = seed;
    }
    if let Some(dir) = &args.out_dir {
        spec.out_dir = dir.clone();
    }
    if let Some(trials) = args.trials {
        spec.trials = trials;
    }
    if !args.ratio.is_empty() {
        spec.ratios = args.ratio.clone();
    }
    if !args.method.is_empty() {
        spec.methods = args.method.clone();
    }
    spec.validate()?;
    Ok(spec)
}

fn run(command: Command) -> Result<String> {
    match command {
        Command::Table1(args) => {
            let spec = load(&args)?;
            let table = run_table1(&spec)?;
            let path = spec.out_dir.join("table1.csv");
            table.write_csv(&path)?;
            Ok(format!("table1: {} rows over {} trials -> {}", table.rows.len(), spec.trials, path.display()))
        }
        Command::Nmse(args) => {
            let spec = load(&args)?;
            let traces = run_nmse_traces(&spec)?;
            let path = spec.out_dir.join("nmse.csv");
            traces.write_csv(&path)?;
            Ok(format!("nmse: {} rows over {} trials -> {}", traces.rows.len(), spec.trials, path.display()))
        }
        Command::RadarImage(args) => {
            let spec = load(&args)?;
            let report = run_radar_image(&spec)?;
            Ok(format!(
                "radar-image: {} outcomes, {} image files -> {}",
                report.outcomes.len(),
                report.images.len(),
                spec.out_dir.display()
            ))
        }
        Command::Solve(args) => {
            let spec = load(&args.run)?;
            let method = match args.run.method.as_slice() {
                [] => Method::LrpsrM,
                [m] => *m,
                _ => return Err(Error::InvalidArgument("solve takes a single --method".into())),
            };
            let ratio = match args.run.ratio.as_slice() {
                [] => spec.ratios[0],
                [r] => *r,
                _ => return Err(Error::InvalidArgument("solve takes a single --ratio".into())),
            };
            let single = run_single(&spec, method, ratio, args.input.as_deref())?;
            let iterations = single.run.recovery.as_ref().map_or(0, |r| r.iterations);
            let tcr = single.tcr_db.map_or_else(|| "n/a".to_string(), |t| format!("{} dB", fmt_sig(t)));
            Ok(format!(
                "solve: {method} ratio {} iterations {iterations} tcr {tcr} -> {}",
                fmt_sig(single.run.ratio),
                spec.out_dir.display()
            ))
        }
    }
}

fn config_of(command: &Command) -> &PathBuf {
    match command {
        Command::Table1(a) | Command::Nmse(a) | Command::RadarImage(a) => &a.config,
        Command::Solve(a) => &a.run.config,
    }
}

/// Parses `argv` (program name first), runs the subcommand and returns the
/// process exit code: 0 on success, 2 on usage errors, a missing config
/// file or invalid configuration values, 1 on any other failure.
pub fn cli_main<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let config = config_of(&cli.command);
    if !config.is_file() {
        eprintln!("error: config file '{}' not found\n\n{}", config.display(), Cli::command().render_usage());
        return 2;
    }
    match run(cli.command) {
        Ok(summary) => {
            println!("{summary}");
            0
        }
        Err(e @ (Error::Config(_) | Error::InvalidArgument(_))) => {
            eprintln!("error: {e}\n\n{}", Cli::command().render_usage());
            2
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
