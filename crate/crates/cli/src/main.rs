//! `ris-hsr`: run single trials or parameter sweeps and write CSV.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ris_hsr::harness::{self, summarize, write_summary_csv, write_trials_csv};
use ris_hsr::{Axis, Error, ScenarioConfig, Strategy, SweepSpec};

#[derive(Debug, Parser)]
#[command(
    name = "ris-hsr",
    version,
    about = "RIS-assisted secure HSR downlink scheduling"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run one trial and print its record as CSV.
    Run(RunArgs),
    /// Sweep one parameter over schemes and trials.
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Scenario file with `key = value` lines.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, default_value = "proposed")]
    scheme: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    /// requested_flows, num_slots, ris_elements, quant_bits, ris_mr_distance,
    /// ris_position_y or p_max.
    #[arg(long)]
    axis: String,
    /// Comma-separated, strictly increasing.
    #[arg(long, value_delimiter = ',', required = true)]
    values: Vec<f64>,
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "proposed,without_ris,rps,apt"
    )]
    schemes: Vec<String>,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Per-trial CSV; the summary goes next to it as `<stem>.summary.csv`.
    #[arg(long)]
    out: PathBuf,
    /// Worker threads (0 = all cores). Output does not depend on it.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Run(args) => run(args),
        Command::Sweep(args) => sweep(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_numerical() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn load_config(path: Option<&Path>) -> ris_hsr::Result<ScenarioConfig> {
    match path {
        Some(p) => ScenarioConfig::load(p),
        None => Ok(ScenarioConfig::default()),
    }
}

fn run(args: RunArgs) -> ris_hsr::Result<()> {
    let cfg = load_config(args.config.as_deref())?;
    let scheme: Strategy = args.scheme.parse()?;
    let record = harness::run_trial(&cfg, scheme, args.seed)?;
    let stdout = io::stdout();
    write_trials_csv(stdout.lock(), std::slice::from_ref(&record))
}

fn sweep(args: SweepArgs) -> ris_hsr::Result<()> {
    let cfg = load_config(args.config.as_deref())?;
    let spec = SweepSpec {
        axis: args.axis.parse::<Axis>()?,
        values: args.values,
        schemes: args
            .schemes
            .iter()
            .map(|s| s.trim().parse())
            .collect::<ris_hsr::Result<Vec<Strategy>>>()?,
        trials: args.trials,
        seed: args.seed,
    };
    spec.validate()?;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs)
        .build()
        .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;
    let records = pool.install(|| ris_hsr::run_sweep(&spec, &cfg))?;

    let mut out = BufWriter::new(File::create(&args.out)?);
    write_trials_csv(&mut out, &records)?;
    out.flush()?;

    let summary_path = summary_path(&args.out);
    let mut out = BufWriter::new(File::create(&summary_path)?);
    write_summary_csv(&mut out, &summarize(&records))?;
    out.flush()?;
    Ok(())
}

fn summary_path(out: &Path) -> PathBuf {
    out.with_extension("summary.csv")
}
