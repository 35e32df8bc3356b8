//! Optional `key = value` defaults file.

use std::collections::BTreeMap;
use std::path::Path;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("line {line}: expected key = value")]
    Syntax { line: usize },
    #[error("line {line}: unknown key {key:?}")]
    UnknownKey { line: usize, key: String },
    #[error("key {key:?}: cannot parse {value:?}")]
    Value { key: String, value: String },
    #[error("cannot read config: {0}")]
    Io(#[from] std::io::Error),
}

pub const KEYS: [&str; 12] = [
    "max_k",
    "window",
    "subsum_cap",
    "scan_cap",
    "max_candidates",
    "gaussian_branch",
    "gaussian_max_k",
    "gaussian_window",
    "seed",
    "trials",
    "max_vertices",
    "citation",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    pub max_k: u32,
    pub window: Option<u32>,
    pub subsum_cap: u32,
    pub scan_cap: u32,
    pub max_candidates: u128,
    pub gaussian_branch: bool,
    pub gaussian_max_k: u32,
    pub gaussian_window: u32,
    pub seed: u64,
    pub trials: u32,
    pub max_vertices: usize,
    pub citation: Option<String>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_k: 12,
            window: None,
            subsum_cap: 24,
            scan_cap: 60,
            max_candidates: 2_000_000,
            gaussian_branch: false,
            gaussian_max_k: 5,
            gaussian_window: 6,
            seed: 20_240_601,
            trials: 200,
            max_vertices: 9,
            citation: None,
        }
    }
}

fn parse_value<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, ConfigError> {
    value.parse().map_err(|_| ConfigError::Value {
        key: key.into(),
        value: value.into(),
    })
}

impl Config {
    pub fn parse(text: &str) -> Result<Config, ConfigError> {
        let mut raw = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or(ConfigError::Syntax { line: i + 1 })?;
            let k = k.trim();
            if !KEYS.contains(&k) {
                return Err(ConfigError::UnknownKey {
                    line: i + 1,
                    key: k.into(),
                });
            }
            raw.insert(k.to_string(), v.trim().to_string());
        }
        let mut c = Config::default();
        for (k, v) in &raw {
            match k.as_str() {
                "max_k" => c.max_k = parse_value(k, v)?,
                "window" => c.window = Some(parse_value(k, v)?),
                "subsum_cap" => c.subsum_cap = parse_value(k, v)?,
                "scan_cap" => c.scan_cap = parse_value(k, v)?,
                "max_candidates" => c.max_candidates = parse_value(k, v)?,
                "gaussian_branch" => c.gaussian_branch = parse_value(k, v)?,
                "gaussian_max_k" => c.gaussian_max_k = parse_value(k, v)?,
                "gaussian_window" => c.gaussian_window = parse_value(k, v)?,
                "seed" => c.seed = parse_value(k, v)?,
                "trials" => c.trials = parse_value(k, v)?,
                "max_vertices" => c.max_vertices = parse_value(k, v)?,
                "citation" => c.citation = Some(v.clone()),
                _ => unreachable!("checked against KEYS"),
            }
        }
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Config, ConfigError> {
        Config::parse(&std::fs::read_to_string(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_defaults() {
        let c = Config::parse("# caps\nmax_k = 8\nwindow=20\n\ngaussian_branch = true\ncitation = table 3 of a survey\n").unwrap();
        assert_eq!(c.max_k, 8);
        assert_eq!(c.window, Some(20));
        assert!(c.gaussian_branch);
        assert_eq!(c.citation.as_deref(), Some("table 3 of a survey"));
        assert_eq!(c.scan_cap, Config::default().scan_cap);
        assert_eq!(Config::parse("").unwrap(), Config::default());
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(matches!(Config::parse("max_k 8"), Err(ConfigError::Syntax { line: 1 })));
        assert!(matches!(Config::parse("x=1"), Err(ConfigError::UnknownKey { .. })));
        assert!(matches!(Config::parse("max_k=eight"), Err(ConfigError::Value { .. })));
    }
}
