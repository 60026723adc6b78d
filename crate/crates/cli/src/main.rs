use std::process::ExitCode;

use clap::Parser;
use optical_bloch_cli::{execute, Cli};

fn main() -> ExitCode {
    ExitCode::from(execute(&Cli::parse()))
}
