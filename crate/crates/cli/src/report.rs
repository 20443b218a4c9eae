//! Machine-readable suite reports.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::config::{RunConfig, Suite};
use crate::error::{CliError, Result};

pub const SCHEMA_VERSION: u32 = 1;

/// One verified instance. `margin ≥ 0` means the pass condition holds with room to spare.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseRecord {
    pub id: String,
    pub inputs: Value,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub est_error: f64,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CaseRecord {
    /// Record for `lhs ≤ rhs` with the given error allowance.
    pub fn upper(id: impl Into<String>, inputs: Value, lhs: f64, rhs: f64, est_error: f64) -> Self {
        Self {
            id: id.into(),
            inputs,
            lhs,
            rhs,
            margin: rhs - lhs,
            est_error,
            pass: lhs <= rhs + est_error,
            note: None,
        }
    }

    /// Record for `lhs > rhs` (a strict lower bound, e.g. a counterexample).
    pub fn lower(id: impl Into<String>, inputs: Value, lhs: f64, rhs: f64, est_error: f64) -> Self {
        Self {
            id: id.into(),
            inputs,
            lhs,
            rhs,
            margin: lhs - rhs,
            est_error,
            pass: lhs - est_error > rhs,
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn require(mut self, cond: bool, why: &str) -> Self {
        if !cond {
            self.pass = false;
            self.note = Some(match self.note.take() {
                Some(n) => format!("{n}; {why}"),
                None => why.to_string(),
            });
        }
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum PlotKind {
    EpsilonScanCurve,
    CpnConvergence,
    BesicovitchLadder,
    MarginHistogram,
}

impl PlotKind {
    pub fn name(self) -> &'static str {
        match self {
            PlotKind::EpsilonScanCurve => "epsilon_scan_curve",
            PlotKind::CpnConvergence => "cpn_convergence",
            PlotKind::BesicovitchLadder => "besicovitch_ladder",
            PlotKind::MarginHistogram => "margin_histogram",
        }
    }
}

/// Columnar data attached to a report for external plotting.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Series {
    pub kind: PlotKind,
    pub label: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub count: usize,
    pub failure_count: usize,
    pub failures: Vec<String>,
    pub worst_margin: Option<f64>,
    pub worst_case: Option<String>,
}

impl Summary {
    pub fn of(cases: &[CaseRecord]) -> Self {
        let failures: Vec<String> = cases.iter().filter(|c| !c.pass).map(|c| c.id.clone()).collect();
        let worst = cases
            .iter()
            .filter(|c| c.margin.is_finite())
            .min_by(|a, b| a.margin.total_cmp(&b.margin));
        Self {
            count: cases.len(),
            failure_count: failures.len(),
            failures,
            worst_margin: worst.map(|c| c.margin),
            worst_case: worst.map(|c| c.id.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    pub timestamp: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema_version: u32,
    pub config: RunConfig,
    pub cases: Vec<CaseRecord>,
    pub summary: Summary,
    pub series: Vec<Series>,
    pub provenance: Provenance,
    /// Wall-clock seconds per suite. Not persisted, so reports stay reproducible.
    #[serde(skip)]
    pub timings: Vec<(Suite, f64)>,
}

impl SuiteReport {
    pub fn new(config: RunConfig, cases: Vec<CaseRecord>, series: Vec<Series>) -> Self {
        Self {
            timings: Vec::new(),
            schema_version: SCHEMA_VERSION,
            summary: Summary::of(&cases),
            config,
            cases,
            series,
            provenance: Provenance {
                tool: env!("CARGO_PKG_NAME").to_string(),
                version: env!("CARGO_PKG_VERSION").to_string(),
                timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Millis, true),
            },
        }
    }

    pub fn passed(&self) -> bool {
        self.summary.failure_count == 0
    }

    pub fn case(&self, id: &str) -> Option<&CaseRecord> {
        self.cases.iter().find(|c| c.id == id)
    }

    /// Cases whose id starts with `prefix`.
    pub fn cases_with_prefix<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = &'a CaseRecord> + 'a {
        self.cases.iter().filter(move |c| c.id.starts_with(prefix))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Read {
            path: path.to_path_buf(),
            reason: e.to_string(),
        })?;
        serde_json::from_str(&text).map_err(|e| CliError::Read {
            path: path.to_path_buf(),
            reason: e.to_string(),
        })
    }

    /// Writes the JSON report to `path` and the per-case CSV summary next to it.
    /// Returns the CSV path.
    pub fn write(&self, path: &Path) -> Result<PathBuf> {
        let write_err = |p: &Path| {
            let p = p.to_path_buf();
            move |source| CliError::Write { path: p, source }
        };
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir).map_err(write_err(dir))?;
        }
        std::fs::write(path, self.to_json() + "\n").map_err(write_err(path))?;
        let csv_path = path.with_extension("csv");
        let mut w = csv::Writer::from_path(&csv_path).map_err(|e| CliError::Write {
            path: csv_path.clone(),
            source: e.into(),
        })?;
        let csv_io = |e: csv::Error| CliError::Write {
            path: csv_path.clone(),
            source: e.into(),
        };
        w.write_record(["id", "lhs", "rhs", "margin", "est_error", "pass"])
            .map_err(csv_io)?;
        for c in &self.cases {
            w.write_record([
                c.id.clone(),
                fmt(c.lhs),
                fmt(c.rhs),
                fmt(c.margin),
                fmt(c.est_error),
                c.pass.to_string(),
            ])
            .map_err(csv_io)?;
        }
        w.flush().map_err(write_err(&csv_path))?;
        Ok(csv_path)
    }
}

pub(crate) fn fmt(x: f64) -> String {
    format!("{x:e}")
}

/// Report body with the timestamp blanked, for determinism comparisons.
pub fn without_timestamp(json: &str) -> Result<String> {
    let mut v: Value = serde_json::from_str(json).map_err(|e| CliError::Read {
        path: PathBuf::from("<report>"),
        reason: e.to_string(),
    })?;
    if let Some(p) = v.get_mut("provenance").and_then(Value::as_object_mut) {
        p.remove("timestamp");
    }
    Ok(serde_json::to_string(&v).expect("value serializes"))
}
