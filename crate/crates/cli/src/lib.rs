//! Command-line frontend: argument parsing, dispatch and output encoding.
//!
//! Exit codes: 0 on success, 2 on argument errors, 1 on internal failure.

pub mod args;
mod commands;
pub mod document;

use std::ffi::OsString;
use std::fs;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

use crate::args::Cli;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const THREADS_VAR: &str = "SPECTRAL_NIL_THREADS";

/// Writes `msg` as a single line, dropping clap's usage footer.
fn diagnostic(err: &mut dyn Write, msg: &str) {
    let body: Vec<&str> = msg
        .lines()
        .map(str::trim)
        .take_while(|l| !l.starts_with("Usage:") && !l.starts_with("For more information"))
        .filter(|l| !l.is_empty())
        .collect();
    let line = if body.is_empty() { "unknown error".to_string() } else { body.join(" ") };
    let _ = writeln!(err, "spectral-nil: error: {}", line.trim_start_matches("error: "));
}

fn thread_count() -> Result<Option<usize>, String> {
    match std::env::var(THREADS_VAR) {
        Err(_) => Ok(None),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(format!("{THREADS_VAR} must be a positive integer, got {s:?}")),
        },
    }
}

/// Parses `argv` (program name first), runs the command and returns the exit code.
pub fn run_with<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    diagnostic(err, &e.render().to_string());
                    EXIT_USAGE
                }
            };
        }
    };
    let threads = match thread_count() {
        Ok(t) => t,
        Err(msg) => {
            diagnostic(err, &msg);
            return EXIT_USAGE;
        }
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => {
            diagnostic(err, &e.to_string());
            return EXIT_INTERNAL;
        }
    };
    let doc = match pool.install(|| commands::dispatch(&cli.command)) {
        Ok(d) => d,
        Err(e) => {
            diagnostic(err, &e.to_string());
            return if e.is_argument_error() { EXIT_USAGE } else { EXIT_INTERNAL };
        }
    };
    let bytes = match doc.encode(cli.format) {
        Ok(b) => b,
        Err(msg) => {
            diagnostic(err, &msg);
            return EXIT_INTERNAL;
        }
    };
    let written = match &cli.out {
        Some(path) => fs::write(path, &bytes).map_err(|e| format!("{}: {e}", path.display())),
        None => out.write_all(&bytes).and_then(|_| out.flush()).map_err(|e| e.to_string()),
    };
    match written {
        Ok(()) => EXIT_OK,
        Err(msg) => {
            diagnostic(err, &msg);
            EXIT_INTERNAL
        }
    }
}

/// Runs with the process arguments and standard streams.
pub fn run() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
