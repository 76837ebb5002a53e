use std::process::ExitCode;

use clap::Parser;

mod commands;
mod output;

use commands::{Cli, Failure};

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("EXPSPLINE_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Usage(format!("EXPSPLINE_THREADS must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Internal(e.to_string()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(64)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match configure_threads().and_then(|_| cli.command.run()) {
        Ok(code) => code,
        Err(f) => f.report(),
    }
}
