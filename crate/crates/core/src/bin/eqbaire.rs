//! Command-line driver for convergence scenarios.
//!
//! Exit codes: 0 when every check passes, 1 when a tail criterion or exact
//! identity fails, 2 for configuration and I/O errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use eqbaire::harness::{
    render, render_suite, run_scenario, write_out, Format, FunctionSpec, OperatorKind, Overrides, Scenario,
};

#[derive(Parser)]
#[command(name = "eqbaire", version, about = "Run pointwise-convergence scenarios")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Override the scenario RNG seed.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Override the tail tolerance.
    #[arg(long, global = true)]
    eps: Option<f64>,

    /// Override the schedule, e.g. `1,2,4,8`.
    #[arg(long, global = true, value_delimiter = ',')]
    schedule: Option<Vec<usize>>,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario file.
    Run { scenario: PathBuf },
    /// Run every `*.json` scenario in a directory, in file-name order.
    Suite { dir: PathBuf },
    /// List the functions and operators a scenario may name.
    List,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let overrides = Overrides {
        seed: cli.seed,
        eps: cli.eps,
        schedule: cli.schedule.clone(),
    };
    let outcome = match &cli.command {
        Command::Run { scenario } => Scenario::load(scenario).and_then(|mut s| {
            overrides.apply(&mut s);
            let report = run_scenario(&s)?;
            write_out(&render(&report, cli.format)?, cli.out.as_deref())?;
            Ok(report.summary.all_pass)
        }),
        Command::Suite { dir } => eqbaire::harness::run_suite(dir, &overrides).and_then(|suite| {
            write_out(&render_suite(&suite, cli.format)?, cli.out.as_deref())?;
            Ok(suite.summary.all_pass)
        }),
        Command::List => {
            let mut text = String::from("functions:\n");
            for name in FunctionSpec::NAMES {
                text.push_str(&format!("  {name}\n"));
            }
            text.push_str("operators:\n");
            for name in OperatorKind::NAMES {
                text.push_str(&format!("  {name}\n"));
            }
            write_out(&text, cli.out.as_deref()).map(|_| true)
        }
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("eqbaire: {e}");
            ExitCode::from(2)
        }
    }
}
