mod args;
mod commands;
mod error;
mod text;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Format};
use error::Outcome;

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("SCHURKIT_THREADS") else { return Ok(()) };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| format!("SCHURKIT_THREADS: expected a nonnegative integer, got `{raw}`"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| format!("SCHURKIT_THREADS: {e}"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    match commands::run(&cli.command) {
        Ok((doc, outcome)) => {
            let out = match cli.format {
                Format::Json => text::pretty_json(&doc),
                Format::Text => text::render(&doc),
            };
            print!("{out}");
            match outcome {
                Outcome::Pass => ExitCode::SUCCESS,
                Outcome::Fail => ExitCode::from(1),
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
