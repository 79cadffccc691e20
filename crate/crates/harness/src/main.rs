use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use sparta_harness::experiments::{self, print_checks, Check};
use sparta_harness::{ExperimentConfig, ExperimentKind, HarnessError};

#[derive(Parser)]
#[command(name = "sparta", about = "Regime-switching shot scheduler experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct RunArgs {
    /// JSON experiment configuration; defaults apply when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Result directory; created if missing.
    #[arg(long)]
    out: PathBuf,
    /// Comma-separated seeds overriding the configuration.
    #[arg(long, value_delimiter = ',')]
    seeds: Option<Vec<u64>>,
    /// Total shot budget per trial.
    #[arg(long)]
    budget: Option<u64>,
    /// Exit with status 4 if any acceptance check fails.
    #[arg(long)]
    check: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Sample whitened statistics at a plateau and an informative point and KS-test them.
    ValidateChisq(RunArgs),
    /// Scheduler against the gCANS baseline on the spin-chain QAOA, one trial per seed.
    RunTfim(RunArgs),
    /// Both methods on the synthetic plateau landscape, plus the exit-rate report.
    RunLie(RunArgs),
    /// The spin-chain comparison repeated over chain lengths.
    RunScaling(RunArgs),
    /// Recompute the comparison summary from a result directory.
    Analyze {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        check: bool,
    },
}

fn load(args: &RunArgs, kind: ExperimentKind) -> Result<ExperimentConfig, HarnessError> {
    let cfg = match &args.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig { experiment: kind, ..Default::default() },
    };
    cfg.with_overrides(args.seeds.clone(), args.budget)
}

fn run(cli: Cli) -> Result<(Vec<Check>, bool), HarnessError> {
    let (kind, args) = match &cli.command {
        Command::ValidateChisq(a) => (ExperimentKind::ValidateChisq, a),
        Command::RunTfim(a) => (ExperimentKind::RunTfim, a),
        Command::RunLie(a) => (ExperimentKind::RunLie, a),
        Command::RunScaling(a) => (ExperimentKind::RunScaling, a),
        Command::Analyze { config, out, check } => {
            if let Some(path) = config {
                ExperimentConfig::load(path)?;
            }
            return Ok((experiments::analyze(out)?, *check));
        }
    };
    let cfg = load(args, kind)?;
    let out = &args.out;
    let checks = match kind {
        ExperimentKind::ValidateChisq => experiments::validate_chisq(&cfg, out)?,
        ExperimentKind::RunTfim => experiments::run_tfim(&cfg, out)?,
        ExperimentKind::RunLie => experiments::run_lie(&cfg, out)?,
        ExperimentKind::RunScaling => experiments::run_scaling(&cfg, out)?,
    };
    Ok((checks, args.check))
}

fn main() -> ExitCode {
    let result = run(Cli::parse()).and_then(|(checks, strict)| {
        print_checks(&checks);
        let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
        if strict && !failed.is_empty() {
            return Err(HarnessError::CheckFailed(failed.join("; ")));
        }
        Ok(())
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
