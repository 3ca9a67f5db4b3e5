use std::process::ExitCode;

use clap::Parser;
use prunres::cli::{run, Cli};

fn main() -> ExitCode {
    run(&Cli::parse())
}
