//! `rattlesim` — ensemble SDE experiments from the command line.
//!
//! Exit codes: 0 success (and, for verify-timechange, all factors passing),
//! 1 runtime failure, 2 configuration error, 3 inconclusive statistics.

use clap::{Args, Parser, Subcommand};
use rattlesim::config::RawConfig;
use rattlesim::experiments::{
    all_pass, run_figure1, run_figure2, run_simulate, run_timechange, write_figure1,
    write_figure2, write_simulate, write_timechange, Figure1Config, Figure2Config, Overrides,
    SimulateConfig, TimechangeConfig,
};
use rattlesim::CliError;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "rattlesim",
    version,
    about = "Monte Carlo SDE ensembles: sample paths, exit-time sweeps, early-warning statistics, and the space/time rescaling check"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an ad-hoc ensemble and emit paths.csv / stats.csv
    Simulate(RunArgs),
    /// Habitat-shrink collapse experiment (paths, survivor statistics, histogram)
    Figure1(RunArgs),
    /// Frozen-habitat exit-time sweep over a beta grid
    Figure2(RunArgs),
    /// Verify the space-contraction / time-change identity; exit 0 iff all k pass
    VerifyTimechange(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// INI config file; omitted keys use built-in defaults
    #[arg(long)]
    config: Option<PathBuf>,
    /// Master seed override
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Ensemble size override (per beta for figure2, per side for verify-timechange)
    #[arg(long)]
    n: Option<usize>,
    /// Also render SVG figures
    #[arg(long)]
    svg: bool,
}

impl RunArgs {
    fn load(&self) -> Result<(RawConfig, Overrides), CliError> {
        let raw = match &self.config {
            None => RawConfig::default(),
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Io { path: path.display().to_string(), source: e })?;
                RawConfig::parse(&text)?
            }
        };
        Ok((raw, Overrides { seed: self.seed, n: self.n }))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Simulate(args) => {
            let (raw, ov) = args.load()?;
            let cfg = SimulateConfig::from_config(&raw, &ov)?;
            let output = run_simulate(&cfg)?;
            let files = write_simulate(&args.out, &output, args.svg)?;
            report(&files, output.ensemble.len());
            Ok(ExitCode::SUCCESS)
        }
        Command::Figure1(args) => {
            let (raw, ov) = args.load()?;
            let cfg = Figure1Config::from_config(&raw, &ov)?;
            let output = run_figure1(&cfg)?;
            let files = write_figure1(&args.out, &cfg, &output, args.svg)?;
            report(&files, output.ensemble.len());
            Ok(ExitCode::SUCCESS)
        }
        Command::Figure2(args) => {
            let (raw, ov) = args.load()?;
            let cfg = Figure2Config::from_config(&raw, &ov)?;
            let rows = run_figure2(&cfg)?;
            let files = write_figure2(&args.out, &rows, args.svg)?;
            report(&files, rows.len());
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyTimechange(args) => {
            let (raw, ov) = args.load()?;
            let cfg = TimechangeConfig::from_config(&raw, &ov)?;
            let reports = run_timechange(&cfg)?;
            let files = write_timechange(&args.out, &reports)?;
            for r in &reports {
                println!(
                    "k = {}: ks_distance = {:.5}, threshold = {:.5} -> {}",
                    r.k,
                    r.ks_distance,
                    r.threshold,
                    if r.pass { "pass" } else { "FAIL" }
                );
            }
            report(&files, reports.len());
            if all_pass(&reports) {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::FAILURE)
            }
        }
    }
}

fn report(files: &[PathBuf], items: usize) {
    println!("wrote {} file(s) covering {items} item(s):", files.len());
    for f in files {
        println!("  {}", f.display());
    }
}
