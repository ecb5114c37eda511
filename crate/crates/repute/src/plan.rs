//! Plan files: `key = value` lines naming command-line flags without the
//! leading dashes. `dataset` names the input file. Boolean flags take
//! `true` or `false`. Blank lines and `#` comments are ignored.
//!
//! A plan is expanded into arguments placed before the ones given on the
//! command line, so explicit flags win.

use std::path::Path;

use crate::error::{ReputeError, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Plan {
    pub dataset: Option<String>,
    pub entries: Vec<(String, String)>,
}

/// Flags that take no value on the command line.
const SWITCHES: [&str; 3] = ["subgroups", "strict", "sequential"];

pub fn parse_plan(text: &str, path: &Path) -> Result<Plan> {
    let mut plan = Plan::default();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split_once('#').map_or(raw, |(head, _)| head).trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| ReputeError::Parse { path: path.to_path_buf(), line: n + 1, message };
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| err(format!("expected `key = value`, found {line:?}")))?;
        let (key, value) = (key.trim().trim_start_matches("--"), value.trim());
        if key.is_empty() || key.contains(char::is_whitespace) {
            return Err(err(format!("invalid key {key:?}")));
        }
        if SWITCHES.contains(&key) && !matches!(value, "true" | "false") {
            return Err(err(format!("{key} expects true or false, found {value:?}")));
        }
        if plan.entries.iter().any(|(k, _)| k == key) || (key == "dataset" && plan.dataset.is_some()) {
            return Err(err(format!("duplicate key {key}")));
        }
        if key == "dataset" {
            plan.dataset = Some(value.to_string());
        } else {
            plan.entries.push((key.to_string(), value.to_string()));
        }
    }
    Ok(plan)
}

pub fn load_plan(path: impl AsRef<Path>) -> Result<Plan> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| ReputeError::io(path, e))?;
    parse_plan(&text, path)
}

impl Plan {
    pub fn to_args(&self) -> Vec<String> {
        let mut args = Vec::new();
        for (key, value) in &self.entries {
            if SWITCHES.contains(&key.as_str()) {
                if value == "true" {
                    args.push(format!("--{key}"));
                }
            } else {
                args.push(format!("--{key}={value}"));
            }
        }
        args
    }
}
