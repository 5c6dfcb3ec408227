//! `key = value` configuration files.
//!
//! Each entry becomes the long flag `--key value` and is inserted right
//! after the subcommand name, so flags given on the command line take
//! precedence. `flag = true` turns on a boolean switch and `flag = false`
//! leaves it off.

use std::ffi::OsString;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};

/// Flag arguments read from `path`.
pub fn read_config(path: &Path) -> Result<Vec<OsString>> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read config file {}", path.display()))?;
    parse_config(&text).with_context(|| format!("in config file {}", path.display()))
}

pub fn parse_config(text: &str) -> Result<Vec<OsString>> {
    let mut args = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            bail!("line {}: expected `key = value`, found {line:?}", idx + 1);
        };
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() || key.starts_with('-') || key.contains(char::is_whitespace) {
            bail!("line {}: invalid key {key:?}", idx + 1);
        }
        match value {
            "true" => args.push(format!("--{key}").into()),
            "false" => {}
            _ => {
                args.push(format!("--{key}").into());
                args.push(value.into());
            }
        }
    }
    Ok(args)
}

/// Removes every `--config FILE` (or `--config=FILE`) from `args` and puts
/// the files' flags right after the subcommand name.
pub fn expand_config(args: Vec<OsString>) -> Result<Vec<OsString>> {
    let mut rest = Vec::with_capacity(args.len());
    let mut extra = Vec::new();
    let mut iter = args.into_iter();
    while let Some(arg) = iter.next() {
        let s = arg.to_string_lossy();
        if s == "--config" {
            let path = iter.next().context("--config needs a file argument")?;
            extra.extend(read_config(Path::new(&path))?);
        } else if let Some(path) = s.strip_prefix("--config=") {
            extra.extend(read_config(Path::new(path))?);
        } else {
            rest.push(arg);
        }
    }
    if extra.is_empty() {
        return Ok(rest);
    }
    // rest[0] is the binary; the first non-flag after it is the subcommand
    let at = rest
        .iter()
        .skip(1)
        .position(|a| !a.to_string_lossy().starts_with('-'))
        .map(|p| p + 2)
        .unwrap_or(rest.len());
    rest.splice(at..at, extra);
    Ok(rest)
}
