//! `p1lab`: constants tables, bound sweeps and FEM checks as CSV.
//!
//! Exit status: 0 when every assertion holds, 1 when some row violates its
//! bound (the rows are echoed to stderr), 2 on usage or runtime errors.

mod args;
mod commands;
mod config;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::Parser;

use args::{Cli, Command};

const OUTPUT_DIR_ENV: &str = "P1LAB_OUTPUT_DIR";

fn destination(cmd: &Command) -> Option<PathBuf> {
    if let Some(out) = &cmd.output().out {
        return Some(out.clone());
    }
    std::env::var_os(OUTPUT_DIR_ENV)
        .filter(|d| !d.is_empty())
        .map(|d| PathBuf::from(d).join(format!("{}.csv", cmd.name())))
}

fn emit(cmd: &Command, csv: &str) -> Result<()> {
    match destination(cmd) {
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            }
            std::fs::write(&path, csv).with_context(|| format!("writing {}", path.display()))?;
            eprintln!("wrote {}", path.display());
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(csv.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn run(argv: Vec<String>) -> Result<ExitCode> {
    let argv = config::expand(argv)?;
    let cli = Cli::try_parse_from(argv).unwrap_or_else(|e| e.exit());
    let outcome = commands::run(&cli.command)?;
    emit(&cli.command, &outcome.table.to_csv_string())?;

    for line in &outcome.summary {
        eprintln!("{line}");
    }
    if !outcome.violations.is_empty() {
        eprintln!("{} row(s) violate their bound:", outcome.violations.len());
        eprintln!("{}", outcome.table.header().join(","));
        for row in &outcome.violations {
            eprintln!("{row}");
        }
    }
    Ok(ExitCode::from(status(&outcome)))
}

fn status(outcome: &commands::Outcome) -> u8 {
    u8::from(!outcome.violations.is_empty())
}

fn main() -> ExitCode {
    let argv: Vec<String> = match std::env::args_os().map(|a| a.into_string()).collect() {
        Ok(v) => v,
        Err(bad) => {
            eprintln!("error: argument is not valid UTF-8: {bad:?}");
            return ExitCode::from(2);
        }
    };
    match run(argv) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
