//! Study configuration: flat `key=value` files plus flag overrides.

use std::path::{Path, PathBuf};

use spfide::{SolverChoice, DEFAULT_TOL};

use crate::values::{parse_epsilon, parse_list, parse_n, parse_solver, parse_tol};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Markdown,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "csv" => Ok(Format::Csv),
            "markdown" | "md" => Ok(Format::Markdown),
            other => Err(format!("unknown format {other:?}; expected csv or markdown")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StudyConfig {
    pub problem: String,
    pub epsilon_list: Vec<f64>,
    pub n_list: Vec<usize>,
    pub solver: SolverChoice,
    pub tol: f64,
    pub output_dir: PathBuf,
    pub formats: Vec<Format>,
}

impl Default for StudyConfig {
    /// `example1` on ε = 2^0, 2^-6, ..., 2^-24 and N = 64, 128, ..., 1024.
    fn default() -> Self {
        Self {
            problem: "example1".into(),
            epsilon_list: [0, -6, -12, -18, -24].iter().map(|&k| 2f64.powi(k)).collect(),
            n_list: vec![64, 128, 256, 512, 1024],
            solver: SolverChoice::Lu,
            tol: DEFAULT_TOL,
            output_dir: PathBuf::from("."),
            formats: vec![Format::Csv, Format::Markdown],
        }
    }
}

impl StudyConfig {
    /// Applies one `key=value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        match key {
            "problem" => self.problem = value.trim().to_string(),
            "epsilon_list" => self.epsilon_list = parse_list(value, parse_epsilon)?,
            "n_list" => self.n_list = parse_list(value, parse_n)?,
            "solver" => self.solver = parse_solver(value)?,
            "tol" => self.tol = parse_tol(value)?,
            "output_dir" => self.output_dir = PathBuf::from(value.trim()),
            "formats" => self.formats = parse_list(value, |s| s.parse())?,
            other => return Err(format!("unknown key {other:?}")),
        }
        Ok(())
    }

    /// Reads a config file. Blank lines and lines starting with `#` are skipped;
    /// keys not present keep their defaults.
    pub fn from_file(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        Self::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let mut cfg = Self::default();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected key=value", lineno + 1))?;
            cfg.set(key.trim(), value).map_err(|e| format!("line {}: {e}", lineno + 1))?;
        }
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.epsilon_list.is_empty() {
            return Err("epsilon_list must not be empty".into());
        }
        if self.n_list.is_empty() {
            return Err("n_list must not be empty".into());
        }
        if !self.n_list.windows(2).all(|w| w[0] < w[1]) {
            return Err("n_list must be strictly ascending".into());
        }
        if self.formats.is_empty() {
            return Err("formats must not be empty".into());
        }
        Ok(())
    }

    pub fn wants(&self, format: Format) -> bool {
        self.formats.contains(&format)
    }
}
