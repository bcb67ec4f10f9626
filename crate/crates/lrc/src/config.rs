//! Run configuration: a flat `key = value` file whose entries command-line flags override.

use std::path::{Path, PathBuf};

use lrc_core::quasimod::RECOGNITION_MARGIN;

use crate::error::{AppError, AppResult};
use crate::format::OutputFormat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub q_order: i64,
    pub big_q_order: i64,
    pub cq_order: i64,
    pub hbar_order: i64,
    pub zdeg_bound: i64,
    pub genus: u32,
    pub dmax: u32,
    pub margin: usize,
    pub format: OutputFormat,
    pub omega: Option<PathBuf>,
    pub threads: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            q_order: 12,
            big_q_order: 8,
            cq_order: 12,
            hbar_order: 7,
            zdeg_bound: 8,
            genus: 2,
            dmax: 2,
            margin: RECOGNITION_MARGIN,
            format: OutputFormat::Text,
            omega: None,
            threads: 1,
        }
    }
}

const KEYS: &[&str] = &["q_order", "Q_order", "cq_order", "hbar_order", "zdeg_bound", "genus", "dmax", "margin", "format", "omega", "threads"];

impl RunConfig {
    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> AppResult<()> {
        fn num<T: std::str::FromStr>(key: &str, v: &str) -> AppResult<T> {
            v.parse().map_err(|_| AppError::Usage(format!("{key} expects a number, got {v:?}")))
        }
        match key {
            "q_order" => self.q_order = num(key, value)?,
            "Q_order" => self.big_q_order = num(key, value)?,
            "cq_order" => self.cq_order = num(key, value)?,
            "hbar_order" => self.hbar_order = num(key, value)?,
            "zdeg_bound" => self.zdeg_bound = num(key, value)?,
            "genus" => self.genus = num(key, value)?,
            "dmax" => self.dmax = num(key, value)?,
            "margin" => self.margin = num(key, value)?,
            "threads" => self.threads = num(key, value)?,
            "format" => self.format = value.parse()?,
            "omega" => self.omega = Some(PathBuf::from(value)),
            other => return Err(AppError::Usage(format!("unknown configuration key {other:?}; known keys: {}", KEYS.join(", ")))),
        }
        Ok(())
    }

    /// Parses a configuration file body. Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> AppResult<Self> {
        let mut c = RunConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| AppError::format("configuration", format!("line {}: expected key = value", i + 1)))?;
            c.set(k.trim(), v.trim())?;
        }
        Ok(c)
    }

    pub fn load(path: &Path) -> AppResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| AppError::Io { path: path.to_path_buf(), source })?;
        Self::parse(&text)
    }

    pub fn validate(&self) -> AppResult<()> {
        let orders = [("q_order", self.q_order), ("Q_order", self.big_q_order), ("cq_order", self.cq_order), ("hbar_order", self.hbar_order), ("zdeg_bound", self.zdeg_bound)];
        for (k, v) in orders {
            if v < 5 {
                return Err(AppError::Usage(format!("{k} = {v} is below the minimum 5")));
            }
        }
        if self.q_order < self.big_q_order {
            return Err(AppError::Usage(format!("q_order ({}) must be at least Q_order ({})", self.q_order, self.big_q_order)));
        }
        if self.margin < RECOGNITION_MARGIN {
            return Err(AppError::Usage(format!("margin must be at least {RECOGNITION_MARGIN}")));
        }
        if self.threads == 0 {
            return Err(AppError::Usage("threads must be at least 1".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_then_validation() {
        let c = RunConfig::parse("# orders\nq_order = 20\nQ_order=10 # trailing\nformat = json\n").unwrap();
        assert_eq!((c.q_order, c.big_q_order, c.format), (20, 10, OutputFormat::Json));
        c.validate().unwrap();
        let bad = RunConfig::parse("q_order = 6\nQ_order = 9\n").unwrap();
        assert!(bad.validate().is_err());
        assert!(RunConfig::parse("bogus = 1").is_err());
        assert!(RunConfig::parse("q_order 3").is_err());
    }
}
