use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use ctrs::cli::{run, Args, RunConfig};

fn main() -> ExitCode {
    let config = RunConfig::from(Args::parse());
    let out = run(&config);
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.status as u8)
}
