//! `key = value` config files, merged into the argument list before parsing.
//!
//! Each key names a long flag (`cells = 8 16 32` is `--cells 8 16 32`). Keys
//! the chosen subcommand does not take are skipped, so one file can serve
//! several subcommands; keys no subcommand takes are errors.

use std::collections::BTreeSet;
use std::path::Path;

use anyhow::{bail, Context, Result};
use clap::CommandFactory;

use crate::args::Cli;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub line: usize,
    pub key: String,
    pub values: Vec<String>,
}

pub fn parse(text: &str) -> Result<Vec<Entry>> {
    let mut entries = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            bail!("line {}: expected key = value, got `{raw}`", i + 1);
        };
        let key = key.trim().trim_start_matches("--").to_string();
        let values: Vec<String> = value.split_whitespace().map(str::to_string).collect();
        if key.is_empty() || values.is_empty() {
            bail!("line {}: empty key or value", i + 1);
        }
        if key == "config" {
            bail!("line {}: config files cannot include other config files", i + 1);
        }
        entries.push(Entry {
            line: i + 1,
            key,
            values,
        });
    }
    Ok(entries)
}

fn long_flags(cmd: &clap::Command) -> BTreeSet<String> {
    cmd.get_arguments()
        .filter_map(|a| a.get_long())
        .map(str::to_string)
        .collect()
}

/// Path given by `--config` / `--config=` anywhere in `args`.
fn config_path(args: &[String]) -> Option<&str> {
    let mut it = args.iter();
    while let Some(a) = it.next() {
        if a == "--config" {
            return it.next().map(String::as_str);
        }
        if let Some(p) = a.strip_prefix("--config=") {
            return Some(p);
        }
    }
    None
}

fn given_on_command_line(args: &[String], key: &str) -> bool {
    let flag = format!("--{key}");
    let prefix = format!("--{key}=");
    args.iter().any(|a| *a == flag || a.starts_with(&prefix))
}

/// Inserts config entries right after the subcommand name, skipping any
/// flag already present in `args`. Returns `args` unchanged without
/// `--config`.
pub fn expand(args: Vec<String>) -> Result<Vec<String>> {
    let Some(path) = config_path(&args).map(str::to_string) else {
        return Ok(args);
    };
    let text = std::fs::read_to_string(Path::new(&path)).with_context(|| format!("reading config file {path}"))?;
    let entries = parse(&text).with_context(|| format!("in config file {path}"))?;
    merge(args, &entries).with_context(|| format!("in config file {path}"))
}

pub fn merge(args: Vec<String>, entries: &[Entry]) -> Result<Vec<String>> {
    let cli = Cli::command();
    let Some(pos) = args.iter().position(|a| cli.find_subcommand(a).is_some()) else {
        // let clap report the missing subcommand
        return Ok(args);
    };
    let sub = cli.find_subcommand(&args[pos]).expect("found above");
    let own = long_flags(sub);
    let any: BTreeSet<String> = cli.get_subcommands().flat_map(long_flags).collect();

    let mut inserted = Vec::new();
    for e in entries {
        if !any.contains(&e.key) {
            bail!("line {}: unknown key `{}`", e.line, e.key);
        }
        if !own.contains(&e.key) || given_on_command_line(&args, &e.key) {
            continue;
        }
        inserted.push(format!("--{}", e.key));
        inserted.extend(e.values.iter().cloned());
    }
    let mut out = args;
    out.splice(pos + 1..pos + 1, inserted);
    Ok(out)
}
