//! Resolved run settings: defaults, then a flat `key = value` config file,
//! then command-line flags.

use std::collections::BTreeMap;
use std::path::Path;

use girth_qaoa::engine::DEFAULT_MAX_DEPTH;
use girth_qaoa::graph::DEFAULT_BRUTE_FORCE_CAP;
use girth_qaoa::oracle::DEFAULT_MAX_QUBITS;
use girth_qaoa::{Engine, MemoryBudget, OptimizerConfig, RestartSchedule, TableOptions};

use crate::error::CliError;

/// Environment variable supplying the default worker-thread count.
pub const THREADS_ENV: &str = "GIRTH_QAOA_THREADS";

#[derive(Debug, Clone, PartialEq)]
pub struct Settings {
    /// Worker threads; 0 lets the pool pick one per core.
    pub threads: usize,
    pub seed: u64,
    pub d: usize,
    pub max_depth: usize,
    pub max_qubits: usize,
    pub brute_force_cap: usize,
    pub shallow_restarts: usize,
    pub deep_restarts: usize,
    pub deep_from: usize,
    pub max_iterations: usize,
    pub gradient_tolerance: f64,
    pub finite_difference_step: f64,
}

pub const KEYS: [&str; 12] = [
    "threads",
    "seed",
    "d",
    "max_depth",
    "max_qubits",
    "brute_force_cap",
    "shallow_restarts",
    "deep_restarts",
    "deep_from",
    "max_iterations",
    "gradient_tolerance",
    "finite_difference_step",
];

impl Default for Settings {
    fn default() -> Self {
        let schedule = RestartSchedule::default();
        let opt = OptimizerConfig::default();
        Settings {
            threads: 0,
            seed: opt.seed,
            d: 3,
            max_depth: DEFAULT_MAX_DEPTH,
            max_qubits: DEFAULT_MAX_QUBITS,
            brute_force_cap: DEFAULT_BRUTE_FORCE_CAP,
            shallow_restarts: schedule.shallow_restarts,
            deep_restarts: schedule.deep_restarts,
            deep_from: schedule.deep_from,
            max_iterations: opt.max_iterations,
            gradient_tolerance: opt.gradient_tolerance,
            finite_difference_step: opt.finite_difference_step,
        }
    }
}

fn parse<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, CliError> {
    value
        .trim()
        .parse()
        .map_err(|_| CliError::usage(format!("invalid value `{value}` for `{key}`")))
}

impl Settings {
    /// Defaults with the thread count taken from [`THREADS_ENV`] when set.
    pub fn from_environment() -> Result<Self, CliError> {
        let mut s = Settings::default();
        if let Ok(v) = std::env::var(THREADS_ENV) {
            s.set("threads", &v)?;
        }
        Ok(s)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        match key {
            "threads" => self.threads = parse(key, value)?,
            "seed" => self.seed = parse(key, value)?,
            "d" => self.d = parse(key, value)?,
            "max_depth" => self.max_depth = parse(key, value)?,
            "max_qubits" => self.max_qubits = parse(key, value)?,
            "brute_force_cap" => self.brute_force_cap = parse(key, value)?,
            "shallow_restarts" => self.shallow_restarts = parse(key, value)?,
            "deep_restarts" => self.deep_restarts = parse(key, value)?,
            "deep_from" => self.deep_from = parse(key, value)?,
            "max_iterations" => self.max_iterations = parse(key, value)?,
            "gradient_tolerance" => self.gradient_tolerance = parse(key, value)?,
            "finite_difference_step" => self.finite_difference_step = parse(key, value)?,
            other => {
                return Err(CliError::usage(format!(
                    "unknown configuration key `{other}` (known: {})",
                    KEYS.join(", ")
                )))
            }
        }
        Ok(())
    }

    /// Applies a config document: `key = value` lines, `#` comments.
    pub fn apply_config_text(&mut self, text: &str) -> Result<(), CliError> {
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::usage(format!("config line {}: expected `key = value`", idx + 1))
            })?;
            self.set(key.trim(), value.trim())
                .map_err(|e| CliError::usage(format!("config line {}: {}", idx + 1, e.message)))?;
        }
        Ok(())
    }

    pub fn apply_config_file(&mut self, path: &Path) -> Result<(), CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("cannot read config {}: {e}", path.display())))?;
        self.apply_config_text(&text)
    }

    /// Applies the flags that were given, by configuration key.
    pub fn apply_flags(&mut self, flags: &[(&str, Option<String>)]) -> Result<(), CliError> {
        for (key, value) in flags {
            if let Some(v) = value {
                self.set(key, v)?;
            }
        }
        Ok(())
    }

    pub fn to_map(&self) -> BTreeMap<String, String> {
        let values = [
            self.threads.to_string(),
            self.seed.to_string(),
            self.d.to_string(),
            self.max_depth.to_string(),
            self.max_qubits.to_string(),
            self.brute_force_cap.to_string(),
            self.shallow_restarts.to_string(),
            self.deep_restarts.to_string(),
            self.deep_from.to_string(),
            self.max_iterations.to_string(),
            self.gradient_tolerance.to_string(),
            self.finite_difference_step.to_string(),
        ];
        KEYS.iter().map(|k| k.to_string()).zip(values).collect()
    }

    pub fn engine(&self) -> Engine {
        Engine::new(MemoryBudget::up_to_depth(self.max_depth))
    }

    pub fn table_options(&self) -> TableOptions {
        TableOptions {
            engine: self.engine(),
            optimizer: OptimizerConfig {
                max_iterations: self.max_iterations,
                gradient_tolerance: self.gradient_tolerance,
                finite_difference_step: self.finite_difference_step,
                restart_count: self.shallow_restarts,
                seed: self.seed,
            },
            schedule: RestartSchedule {
                shallow_restarts: self.shallow_restarts,
                deep_restarts: self.deep_restarts,
                deep_from: self.deep_from,
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_is_flags_over_file_over_defaults() {
        let mut s = Settings::default();
        s.apply_config_text("# tuning\nseed = 5\nd=4\n\ndeep_restarts = 1 # fewer\n").unwrap();
        s.apply_flags(&[("seed", Some("9".into())), ("d", None)]).unwrap();
        assert_eq!(s.seed, 9);
        assert_eq!(s.d, 4);
        assert_eq!(s.deep_restarts, 1);
        assert_eq!(s.max_depth, DEFAULT_MAX_DEPTH);
    }

    #[test]
    fn rejects_bad_lines() {
        let mut s = Settings::default();
        assert!(s.apply_config_text("seed 5").is_err());
        assert!(s.apply_config_text("colour = red").is_err());
        assert!(s.apply_config_text("seed = -1").is_err());
    }

    #[test]
    fn map_covers_every_key() {
        let m = Settings::default().to_map();
        assert_eq!(m.len(), KEYS.len());
        let mut s = Settings::default();
        for (k, v) in &m {
            s.set(k, v).unwrap();
        }
        assert_eq!(s, Settings::default());
    }
}
