//! Command-line front end: parameters in, JSON or CSV out.

pub mod config;
pub mod error;
pub mod output;
pub mod tasks;

use clap::Parser;
use config::{resolve, Cli};
use error::CliError;
use std::ffi::OsString;
use std::io::Write;

/// Worker pool capped by ABX_THREADS when set.
pub fn thread_pool() -> Result<rayon::ThreadPool, CliError> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("ABX_THREADS") {
        match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => b = b.num_threads(n),
            _ => return Err(CliError::Validation(format!("ABX_THREADS={v}: expected a positive integer"))),
        }
    }
    b.build().map_err(|e| CliError::Numerical(format!("thread pool: {e}")))
}

fn execute(cli: &Cli) -> Result<i32, CliError> {
    let cfg = resolve(cli)?;
    let pool = thread_pool()?;
    let report = tasks::run_task(&cfg, &pool)?;
    let text = output::render(&cfg, &report)?;
    match &cfg.out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    if report.failed {
        eprintln!("error: validation checks failed");
        return Ok(3);
    }
    Ok(0)
}

/// Exit status: 0 success, 2 invalid input, 3 numerical failure, 1 i/o.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
