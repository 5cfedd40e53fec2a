//! `key=value` configuration files. Each entry becomes `--key value` and is
//! inserted right after the subcommand, so flags given on the command line,
//! which come later, override it.

use std::ffi::OsString;
use std::fs;
use std::path::Path;

fn config_path(args: &[OsString]) -> Option<OsString> {
    let mut iter = args.iter();
    while let Some(arg) = iter.next() {
        let text = arg.to_string_lossy();
        if text == "--config" {
            return iter.next().cloned();
        }
        if let Some(path) = text.strip_prefix("--config=") {
            return Some(path.into());
        }
    }
    None
}

pub fn parse_config(text: &str) -> Result<Vec<OsString>, String> {
    let mut flags = Vec::new();
    for (number, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            format!(
                "config line {}: expected key=value, got '{line}'",
                number + 1
            )
        })?;
        let key = key.trim().trim_start_matches("--").replace('_', "-");
        let value = value.trim();
        if key.is_empty() {
            return Err(format!("config line {}: empty key", number + 1));
        }
        if key == "config" {
            return Err(format!(
                "config line {}: nested config files are not supported",
                number + 1
            ));
        }
        match value {
            "true" => flags.push(format!("--{key}").into()),
            "false" => {}
            _ => {
                flags.push(format!("--{key}").into());
                flags.push(value.into());
            }
        }
    }
    Ok(flags)
}

/// Returns `args` with the entries of the `--config` file (if any) spliced in
/// after the subcommand name.
pub fn expand_config(args: Vec<OsString>) -> Result<Vec<OsString>, String> {
    let Some(path) = config_path(&args) else {
        return Ok(args);
    };
    let path = Path::new(&path);
    let text = fs::read_to_string(path)
        .map_err(|e| format!("cannot read config file {}: {e}", path.display()))?;
    let flags = parse_config(&text)?;
    let split = args.len().min(2);
    let mut expanded = args[..split].to_vec();
    expanded.extend(flags);
    expanded.extend_from_slice(&args[split..]);
    Ok(expanded)
}
