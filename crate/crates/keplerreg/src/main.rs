use std::process::ExitCode;

use clap::Parser;
use keplerreg::{run, Command, Overrides, RunConfig};

/// Regularized Kepler problem: algebra checks, quantum spectra and
/// trajectory propagation.
#[derive(Parser)]
#[command(name = "keplerreg", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    #[command(flatten)]
    overrides: Overrides,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = RunConfig::resolve(cli.command, &cli.overrides).and_then(|c| run(&c));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("keplerreg: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
