//! `key=value` config files.
//!
//! Entries become `--key=value` arguments placed right after the subcommand.
//! Keys also given as flags on the command line are dropped, so the flag wins.

use std::path::Path;

use crate::CliError;

/// Parse config text into `(key, value)` pairs. Blank lines and lines
/// starting with `#` are skipped.
pub fn parse_config(text: &str) -> Result<Vec<(String, String)>, CliError> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::usage(format!("config line {}: expected key=value", n + 1)))?;
        let k = k.trim().trim_start_matches("--");
        if k.is_empty() || k == "config" {
            return Err(CliError::usage(format!("config line {}: invalid key '{k}'", n + 1)));
        }
        out.push((k.to_string(), v.trim().to_string()));
    }
    Ok(out)
}

pub fn read_config(path: &Path) -> Result<Vec<(String, String)>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read config {}: {e}", path.display())))?;
    parse_config(&text)
}

/// Path given with `--config PATH` or `--config=PATH`, if any.
fn config_path(argv: &[String]) -> Result<Option<String>, CliError> {
    let mut found = None;
    let mut it = argv.iter().skip(1);
    while let Some(a) = it.next() {
        if a == "--" {
            break;
        }
        if a == "--config" {
            let p = it.next().ok_or_else(|| CliError::usage("--config needs a path"))?;
            found = Some(p.clone());
        } else if let Some(p) = a.strip_prefix("--config=") {
            found = Some(p.to_string());
        }
    }
    Ok(found)
}

/// Expand `--config` into arguments ahead of the command-line flags.
pub fn merge(argv: Vec<String>) -> Result<Vec<String>, CliError> {
    let Some(path) = config_path(&argv)? else {
        return Ok(argv);
    };
    let Some(sub) = argv.iter().skip(1).position(|a| !a.starts_with('-')).map(|i| i + 1) else {
        return Ok(argv);
    };
    let given: Vec<&str> = argv[sub + 1..]
        .iter()
        .filter_map(|a| a.strip_prefix("--"))
        .map(|a| a.split_once('=').map_or(a, |(k, _)| k))
        .collect();
    let entries = read_config(Path::new(&path))?;
    let mut out = argv[..=sub].to_vec();
    out.extend(entries.into_iter().filter(|(k, _)| !given.contains(&k.as_str())).map(|(k, v)| format!("--{k}={v}")));
    out.extend_from_slice(&argv[sub + 1..]);
    Ok(out)
}
