//! Flat `key = value` configuration files.
//!
//! Every command resolves each setting as: command-line flag first, then the
//! configuration file, then the built-in default. Files hold one `key =
//! value` pair per line; blank lines and `#` comments are skipped, and
//! unknown keys are rejected so typos surface instead of being ignored.

use std::collections::HashMap;
use std::fmt::Display;
use std::path::Path;
use std::str::FromStr;

use crate::{CliError, CliResult};

/// Keys a configuration file may set (not every command reads every key).
const KNOWN_KEYS: &[&str] = &[
    "s",
    "eta1",
    "scheme",
    "c",
    "t",
    "q1b",
    "q1c",
    "trials",
    "seed",
    "resolution",
    "axis",
    "from",
    "to",
];

/// Parsed configuration file; empty when no file was given.
#[derive(Debug, Default)]
pub struct FileConfig {
    map: HashMap<String, String>,
    origin: String,
}

/// Loads and validates `path`, or returns an empty configuration.
pub fn load(path: Option<&Path>) -> CliResult<FileConfig> {
    let Some(path) = path else {
        return Ok(FileConfig::default());
    };
    let text = std::fs::read_to_string(path)
        .map_err(|err| CliError::Runtime(format!("reading config {}: {err}", path.display())))?;
    let mut map = HashMap::new();
    for (index, raw_line) in text.lines().enumerate() {
        let line = raw_line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(CliError::Param(format!(
                "config {} line {}: expected `key = value`, got `{line}`",
                path.display(),
                index + 1
            )));
        };
        let key = key.trim();
        if !KNOWN_KEYS.contains(&key) {
            return Err(CliError::Param(format!(
                "config {} line {}: unknown key `{key}`",
                path.display(),
                index + 1
            )));
        }
        map.insert(key.to_string(), value.trim().to_string());
    }
    Ok(FileConfig {
        map,
        origin: path.display().to_string(),
    })
}

impl FileConfig {
    fn parse_key<T: FromStr>(&self, key: &str) -> CliResult<Option<T>>
    where
        T::Err: Display,
    {
        match self.map.get(key) {
            None => Ok(None),
            Some(raw) => raw.parse::<T>().map(Some).map_err(|err| {
                CliError::Param(format!(
                    "config {}: key `{key}` = `{raw}`: {err}",
                    self.origin
                ))
            }),
        }
    }

    /// Resolves `key` with the flag > file > default precedence.
    pub fn get<T: FromStr>(&self, key: &str, flag: Option<T>, default: T) -> CliResult<T>
    where
        T::Err: Display,
    {
        if let Some(value) = flag {
            return Ok(value);
        }
        Ok(self.parse_key(key)?.unwrap_or(default))
    }

    /// Resolves `key` without a default (flag > file > `None`).
    pub fn get_opt<T: FromStr>(&self, key: &str, flag: Option<T>) -> CliResult<Option<T>>
    where
        T::Err: Display,
    {
        if flag.is_some() {
            return Ok(flag);
        }
        self.parse_key(key)
    }
}
