//! Command-line front end: argument parsing, report rendering, result cache
//! and the reproduction suite.

pub mod args;
pub mod cache;
pub mod commands;
pub mod repro;

use args::{Cli, Format};
use clap::Parser;
use std::ffi::OsString;
use std::io::Write;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CLAIM_FAILED: i32 = 2;

/// Parses `argv`, runs the command and writes the report. Returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    if cli.threads > 0 {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global();
    }
    let report = match commands::execute(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {}", e.0);
            return EXIT_USAGE;
        }
    };
    let body = match cli.format {
        Format::Text => report.text.clone(),
        Format::Json => report.json(),
        Format::Csv => report.csv.clone(),
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, body.as_bytes()),
        None => std::io::stdout().write_all(body.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return EXIT_USAGE;
    }
    if report.ok {
        EXIT_OK
    } else {
        EXIT_CLAIM_FAILED
    }
}
