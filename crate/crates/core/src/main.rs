use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use agi_econ::cli::{self, Command, Invocation, EXIT_OK, EXIT_USAGE};

/// Cobb-Douglas AGI labor models: evaluate, sweep, simulate, fit, check.
#[derive(Debug, Parser)]
#[command(name = "agi-econ", version)]
struct Args {
    /// One of eval, sweep, simulate, fit, check
    #[arg(value_parser = ["eval", "sweep", "simulate", "fit", "check"])]
    command: String,

    /// INI config file
    #[arg(long)]
    config: PathBuf,

    /// Output directory (created if missing)
    #[arg(long)]
    out: PathBuf,

    /// Grid size for `sweep`, overrides [transition].n_points
    #[arg(long)]
    points: Option<usize>,

    /// Decay constant for `sweep`; repeat to overlay several curves
    #[arg(long = "lambda")]
    lambdas: Vec<f64>,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(args) => args,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let invocation = Invocation {
        command: Command::parse(&args.command).expect("clap restricts the command names"),
        config: args.config,
        out_dir: args.out,
        points: args.points,
        lambdas: args.lambdas,
    };
    match cli::execute(&invocation) {
        Ok(outcome) => {
            for line in &outcome.messages {
                println!("{line}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
