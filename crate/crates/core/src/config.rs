//! Run configuration shared by the harness and the command line.
//!
//! The file format is flat `key = value` text, one pair per line, with `#`
//! starting a comment. List values are comma separated.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tolerances::Tolerances;
use crate::MAX_QUBITS;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PhaseKind {
    Dyadic,
    Nondyadic,
    Mixed,
}

impl FromStr for PhaseKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "dyadic" => Ok(PhaseKind::Dyadic),
            "nondyadic" => Ok(PhaseKind::Nondyadic),
            "mixed" => Ok(PhaseKind::Mixed),
            other => Err(Error::Config(format!("unknown phase kind {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
    Text,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "text" => Ok(OutputFormat::Text),
            other => Err(Error::Config(format!("unknown output format {other:?}"))),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
            OutputFormat::Text => "text",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    /// Largest first-register size used by simulated checks.
    pub t_max: u32,
    /// Largest register size used by checks that only evaluate closed forms.
    pub t_max_analytic: u32,
    pub s_values: Vec<u32>,
    pub phase_kind: PhaseKind,
    pub seed: u64,
    /// Random instances drawn per `(t, s, φ)` in addition to the diagonal one.
    pub random_draws: u32,
    pub tolerances: Tolerances,
    pub include: Vec<String>,
    pub exclude: Vec<String>,
    pub precision_bits: Vec<u32>,
    pub epsilons: Vec<f64>,
    /// Not echoed in reports: output must not depend on the worker count.
    #[serde(skip)]
    pub workers: Option<usize>,
    #[serde(skip)]
    pub output: Option<PathBuf>,
    #[serde(skip)]
    pub format: OutputFormat,
}

/// Smallest ε accepted in the precision grid; smaller values push
/// `t_required` past the qubit cap.
pub const MIN_EPSILON: f64 = 0.05;

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            t_max: 8,
            t_max_analytic: 10,
            s_values: vec![1, 2],
            phase_kind: PhaseKind::Mixed,
            seed: 0,
            random_draws: 1,
            tolerances: Tolerances::default(),
            include: Vec::new(),
            exclude: Vec::new(),
            precision_bits: vec![1, 2, 3, 4],
            epsilons: vec![1.0, 0.5, 0.25, 0.1],
            workers: None,
            output: None,
            format: OutputFormat::Json,
        }
    }
}

fn parse_num<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| Error::Config(format!("{key}: cannot parse {value:?}")))
}

fn parse_list<T: FromStr>(key: &str, value: &str) -> Result<Vec<T>> {
    value
        .split(',')
        .map(str::trim)
        .filter(|v| !v.is_empty())
        .map(|v| parse_num(key, v))
        .collect()
}

fn parse_names(value: &str) -> Vec<String> {
    value
        .split(',')
        .map(str::trim)
        .filter(|v| !v.is_empty())
        .map(String::from)
        .collect()
}

impl RunConfig {
    /// Parses config text on top of the defaults and validates the result.
    pub fn parse(text: &str) -> Result<Self> {
        Self::parse_with(RunConfig::default(), text)
    }

    /// Parses config text on top of `config` and validates the result.
    pub fn parse_with(mut config: RunConfig, text: &str) -> Result<Self> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!("line {}: expected `key = value`", i + 1))
            })?;
            config
                .set(key.trim(), value.trim())
                .map_err(|e| Error::Config(format!("line {}: {e}", i + 1)))?;
        }
        config.validate()?;
        Ok(config)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        Self::from_file_with(RunConfig::default(), path)
    }

    pub fn from_file_with(config: RunConfig, path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::parse_with(config, &text)
    }

    /// Sets one key. Does not validate the config as a whole.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let tol = &mut self.tolerances;
        match key {
            "t_max" => self.t_max = parse_num(key, value)?,
            "t_max_analytic" => self.t_max_analytic = parse_num(key, value)?,
            "s_values" => self.s_values = parse_list(key, value)?,
            "phase_kind" => self.phase_kind = value.parse()?,
            "seed" => self.seed = parse_num(key, value)?,
            "random_draws" => self.random_draws = parse_num(key, value)?,
            "include" => self.include = parse_names(value),
            "exclude" => self.exclude = parse_names(value),
            "precision_bits" => self.precision_bits = parse_list(key, value)?,
            "epsilons" => self.epsilons = parse_list(key, value)?,
            "workers" => self.workers = Some(parse_num(key, value)?),
            "output" => self.output = Some(PathBuf::from(value)),
            "format" => self.format = value.parse()?,
            "tolerance.unitarity" => tol.unitarity = parse_num(key, value)?,
            "tolerance.elementwise" => tol.elementwise = parse_num(key, value)?,
            "tolerance.amplitude" => tol.amplitude = parse_num(key, value)?,
            "tolerance.probability" => tol.probability = parse_num(key, value)?,
            "tolerance.normalization" => tol.normalization = parse_num(key, value)?,
            "tolerance.state" => tol.state = parse_num(key, value)?,
            "tolerance.strict_margin" => tol.strict_margin = parse_num(key, value)?,
            "tolerance.bound_slack" => tol.bound_slack = parse_num(key, value)?,
            other => return Err(Error::Config(format!("unknown key {other:?}"))),
        }
        Ok(())
    }

    pub fn max_s(&self) -> u32 {
        self.s_values.iter().copied().max().unwrap_or(0)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.t_max == 0 {
            return bad("t_max must be >= 1".into());
        }
        if self.s_values.is_empty() || self.s_values.contains(&0) {
            return bad("s_values must be a nonempty list of positive sizes".into());
        }
        if self.t_max + self.max_s() > MAX_QUBITS {
            return bad(format!(
                "t_max + max(s_values) = {} exceeds {MAX_QUBITS} qubits",
                self.t_max + self.max_s()
            ));
        }
        if self.t_max_analytic == 0 || self.t_max_analytic + 1 > MAX_QUBITS {
            return bad(format!(
                "t_max_analytic must be in 1..={}",
                MAX_QUBITS - 1
            ));
        }
        if !self.tolerances.all_positive() {
            return bad("tolerances must be positive".into());
        }
        if self.precision_bits.contains(&0) {
            return bad("precision_bits must be positive".into());
        }
        if let Some(eps) = self
            .epsilons
            .iter()
            .find(|e| !(**e >= MIN_EPSILON && **e <= 1.0))
        {
            return bad(format!("epsilon {eps} outside [{MIN_EPSILON}, 1]"));
        }
        if self.workers == Some(0) {
            return bad("workers must be >= 1".into());
        }
        Ok(())
    }
}
