//! Effective bounds: defaults, then an optional `key = value` file, then flags.

use std::path::Path;

use serde_json::{json, Value};

use crate::CliError;

pub const ENV_VAR: &str = "JQFORGE_CONFIG";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Config {
    pub n_vars: usize,
    pub deg_bound: u32,
    pub max_j: u32,
    pub order: u32,
    /// 2-adic digits to display; 0 turns the display off.
    pub digits: u32,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            n_vars: 4,
            deg_bound: 16,
            max_j: 6,
            order: 16,
            digits: 0,
        }
    }
}

impl Config {
    /// Apply `key = value` lines; `#` starts a comment.
    pub fn apply_text(&mut self, text: &str) -> Result<(), CliError> {
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("config line {}: expected key = value", no + 1)))?;
            self.set(k.trim(), v.trim())
                .map_err(|e| CliError::Usage(format!("config line {}: {e}", no + 1)))?;
        }
        Ok(())
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        fn num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, String> {
            v.parse().map_err(|_| format!("{key}: not a non-negative integer: {v}"))
        }
        match key.replace('-', "_").as_str() {
            "n_vars" | "vars" => self.n_vars = num(key, value)?,
            "deg_bound" => self.deg_bound = num(key, value)?,
            "max_j" => self.max_j = num(key, value)?,
            "order" => self.order = num(key, value)?,
            "digits" => self.digits = num(key, value)?,
            _ => return Err(format!("unknown key {key}")),
        }
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Config, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        let mut c = Config::default();
        c.apply_text(&text)?;
        Ok(c)
    }

    /// Defaults, overridden by the file named in `JQFORGE_CONFIG` when set.
    pub fn from_env() -> Result<Config, CliError> {
        match std::env::var_os(ENV_VAR) {
            Some(p) if !p.is_empty() => Config::load(Path::new(&p)),
            _ => Ok(Config::default()),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n_vars": self.n_vars,
            "deg_bound": self.deg_bound,
            "max_j": self.max_j,
            "order": self.order,
            "digits": self.digits,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_rejects() {
        let mut c = Config::default();
        c.apply_text("# bounds\nn_vars = 3\ndeg-bound=10  # inline\n\n").unwrap();
        assert_eq!((c.n_vars, c.deg_bound, c.max_j), (3, 10, 6));
        assert!(c.apply_text("colour = red").is_err());
        assert!(c.apply_text("order 3").is_err());
        assert!(c.apply_text("order = -3").is_err());
    }
}
