//! Command-line front end for `krawx-core`: single values, tables and the
//! named validation suites.

pub mod commands;
pub mod config;
mod error;
pub mod report;
pub mod sampling;
pub mod suites;

use std::io::Write;

use clap::Parser;

pub use commands::Outcome;
pub use config::{Cli, RunConfig};
pub use error::{exit, CliError};

/// Writes `text` to `path`, or to stdout when `path` is `None`.
pub fn emit(text: &str, path: Option<&std::path::Path>) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Io { path: p.to_path_buf(), source }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| CliError::Io { path: "<stdout>".into(), source })
        }
    }
}

/// Parses `args`, runs the command, writes its output and returns the exit code.
pub fn main_with_args<I, S>(args: I) -> u8
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { exit::USAGE } else { exit::OK };
        }
    };
    let result = RunConfig::from_cli(&cli).and_then(|cfg| {
        let outcome = commands::run(&cfg)?;
        emit(&outcome.text, cfg.out.as_deref())?;
        Ok(outcome)
    });
    match result {
        Ok(outcome) => {
            if let Some(report) = &outcome.report {
                eprintln!("{}", report.summary());
            }
            if outcome.passed() {
                exit::OK
            } else {
                exit::FAILED
            }
        }
        Err(e) => {
            eprintln!("krawx: {e}");
            e.exit_code()
        }
    }
}
