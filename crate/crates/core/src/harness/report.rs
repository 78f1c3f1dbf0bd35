//! Check results and the aggregated report.

use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

impl CheckStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Skipped => "skipped",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub status: CheckStatus,
    pub instances: u64,
    /// Smallest slack by which the claim held; negative on failure. Exact
    /// (integer or boolean) facts contribute a margin of zero.
    pub worst_margin: Option<f64>,
    pub failing_params: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub elapsed_ms: u64,
}

/// Running tally of one check over its instances.
#[derive(Debug, Clone, Default)]
pub struct Tally {
    instances: u64,
    worst: Option<f64>,
    failure: Option<String>,
    note: Option<String>,
}

impl Tally {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records one instance with the given margin. `holds` decides the
    /// verdict; the margin is only reported. The first failing instance is
    /// kept as the failing parameters.
    pub fn record(&mut self, margin: f64, holds: bool, params: impl FnOnce() -> String) {
        self.instances += 1;
        self.worst = Some(match self.worst {
            Some(w) if w <= margin => w,
            _ => margin,
        });
        if !holds && self.failure.is_none() {
            self.failure = Some(params());
        }
    }

    /// `error ≤ tol`, margin `tol − error`.
    pub fn within(&mut self, error: f64, tol: f64, params: impl FnOnce() -> String) {
        let holds = error <= tol;
        self.record(tol - error, holds, params);
    }

    /// An exact fact: margin zero when it holds, −1 otherwise.
    pub fn exact(&mut self, holds: bool, params: impl FnOnce() -> String) {
        self.record(if holds { 0.0 } else { -1.0 }, holds, params);
    }

    /// Records an error raised while evaluating an instance as a failure.
    pub fn error(&mut self, err: &Error, params: impl FnOnce() -> String) {
        self.record(-1.0, false, || format!("{}: {err}", params()));
    }

    pub fn set_note(&mut self, note: impl Into<String>) {
        self.note = Some(note.into());
    }

    pub fn instances(&self) -> u64 {
        self.instances
    }

    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    pub(crate) fn into_result(self, name: &str, elapsed_ms: u64) -> CheckResult {
        CheckResult {
            name: name.to_string(),
            status: if self.failure.is_none() {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            instances: self.instances,
            worst_margin: self.worst,
            failing_params: self.failure,
            note: self.note,
            elapsed_ms,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub version: String,
    pub seed: u64,
    pub config: RunConfig,
    /// Seconds since the Unix epoch at which the run started.
    pub timestamp: u64,
    pub results: Vec<CheckResult>,
}

impl CheckReport {
    pub fn result(&self, name: &str) -> Option<&CheckResult> {
        self.results.iter().find(|r| r.name == name)
    }

    pub fn count(&self, status: CheckStatus) -> usize {
        self.results.iter().filter(|r| r.status == status).count()
    }

    /// No check failed. Skipped checks only arise from failures, so this
    /// also means nothing was skipped.
    pub fn all_passed(&self) -> bool {
        self.count(CheckStatus::Fail) == 0 && self.count(CheckStatus::Skipped) == 0
    }

    /// The report with timestamp and timings zeroed.
    pub fn canonical(&self) -> CheckReport {
        let mut r = self.clone();
        r.timestamp = 0;
        for res in &mut r.results {
            res.elapsed_ms = 0;
        }
        r
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<CheckReport> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tally_tracks_worst_and_first_failure() {
        let mut t = Tally::new();
        t.within(1e-13, 1e-12, || "a".into());
        t.within(2e-12, 1e-12, || "b".into());
        t.within(5e-12, 1e-12, || "c".into());
        let r = t.into_result("x", 0);
        assert_eq!(r.status, CheckStatus::Fail);
        assert_eq!(r.instances, 3);
        assert_eq!(r.failing_params.as_deref(), Some("b"));
        assert!((r.worst_margin.unwrap() + 4e-12).abs() < 1e-20);
    }

    #[test]
    fn json_round_trip() {
        let mut t = Tally::new();
        t.record(0.1 + 0.2, true, String::new);
        let report = CheckReport {
            version: "0".into(),
            seed: 3,
            config: RunConfig::default(),
            timestamp: 12,
            results: vec![t.into_result("n", 4)],
        };
        let back = CheckReport::from_json(&report.to_json().unwrap()).unwrap();
        assert_eq!(back, report);
    }
}
