//! Command line entry point; all logic lives in [`hexatangle::harness`].

use clap::Parser;
use std::process::ExitCode;

fn main() -> ExitCode {
    hexatangle::harness::run(hexatangle::harness::Cli::parse())
}
