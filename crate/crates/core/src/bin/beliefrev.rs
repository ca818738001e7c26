use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use beliefrev::scenario::{compare_backstories, compare_engines, parse_scenario, run_scenario, RunOptions, Scenario};
use beliefrev::Horizon;

/// Run belief-revision scenarios.
#[derive(Parser)]
#[command(name = "beliefrev", version)]
struct Cli {
    /// Evidential horizon k for the truth-value calculus.
    #[arg(long, global = true, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
    k: u32,

    /// Tolerance for numeric checks in traces and comparisons.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tolerance: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute a scenario and print its trace.
    Run { file: PathBuf },
    /// Parse a scenario without running it.
    Check { file: PathBuf },
    /// Compare updating and revision on a scenario's conflicts; with a second
    /// file, also compare the two Bayesian traces.
    Compare { file: PathBuf, other: Option<PathBuf> },
}

fn load(path: &Path) -> Result<Scenario, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_scenario(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if !(cli.tolerance.is_finite() && cli.tolerance >= 0.0) {
        eprintln!("error: --tolerance must be a non-negative number");
        return ExitCode::from(2);
    }
    let options = RunOptions {
        horizon: Horizon::new(cli.k).expect("clap enforces k >= 1"),
        tolerance: cli.tolerance,
    };
    let outcome = match &cli.command {
        Command::Run { file } => load(file).and_then(|sc| {
            let trace = run_scenario(&sc, options);
            print!("{trace}");
            if trace.failed() {
                Err(format!("{}: scenario halted", file.display()))
            } else {
                Ok(())
            }
        }),
        Command::Check { file } => load(file).map(|sc| println!("ok: {} directives", sc.len())),
        Command::Compare { file, other } => load(file).and_then(|sc| {
            let cmp = compare_engines(&sc, options).map_err(|e| format!("{}: {e}", file.display()))?;
            print!("{cmp}");
            if let Some(other) = other {
                let report = compare_backstories(&sc, &load(other)?, options);
                print!("{report}");
            }
            Ok(())
        }),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
