use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use displab_cli::config::{ExperimentConfig, SuiteKind};
use displab_cli::error::CliResult;
use displab_cli::record::{write_outputs, Verdict};
use displab_cli::run_suite;

/// Numerical verification of dispersive and Strichartz estimates.
#[derive(Parser)]
#[command(name = "displab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Kernel decay rates of frequency-localized propagators.
    Decay(RunArgs),
    /// Strichartz quotients of wave-packet families.
    Strichartz(RunArgs),
    /// Local well-posedness by Picard iteration.
    Wellposed(RunArgs),
    /// Bessel functions and radial Dunkl kernels.
    Dunkl(RunArgs),
    /// Admissible exponent regions and scaling round trips.
    Admissible(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// TOML configuration; built-in defaults when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory (overrides the configuration).
    #[arg(long)]
    out: Option<PathBuf>,
    /// RNG seed (overrides the configuration).
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

fn execute(kind: SuiteKind, args: RunArgs) -> CliResult<bool> {
    let cfg = match &args.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig::default(),
    };
    let seed = args.seed.or(cfg.seed).unwrap_or(0);
    let out = args
        .out
        .or_else(|| cfg.out.clone())
        .unwrap_or_else(|| PathBuf::from("results"));
    let (summary, tables) = run_suite(kind, &cfg, seed, args.jobs)?;
    for c in &summary.cases {
        println!("[{}] {}", c.verdict.label(), c.id);
    }
    write_outputs(&out, &summary, &tables)?;
    let failed = summary.cases.iter().filter(|c| c.verdict == Verdict::Fail).count();
    println!(
        "{}: {} of {} cases passed in {:.1} s; results in {}",
        summary.suite,
        summary.cases.len() - failed,
        summary.cases.len(),
        summary.wall_clock_s,
        out.display()
    );
    Ok(failed == 0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (kind, args) = match cli.command {
        Command::Decay(a) => (SuiteKind::Decay, a),
        Command::Strichartz(a) => (SuiteKind::Strichartz, a),
        Command::Wellposed(a) => (SuiteKind::Wellposed, a),
        Command::Dunkl(a) => (SuiteKind::Dunkl, a),
        Command::Admissible(a) => (SuiteKind::Admissible, a),
    };
    match execute(kind, args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
