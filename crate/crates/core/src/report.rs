//! Sweep reports: configuration echo, ordered records, tallies, and their
//! JSON / CSV serializations.
//!
//! Residues are decimal strings (they outgrow 64 bits quickly), and the
//! modulus travels alongside each one. With timing disabled, identical
//! configurations produce byte-identical output.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::congruence::{CheckId, CheckOptions, EngineKind, VerificationRecord};
use crate::identity::{IdentityCheck, IdentityConfig, IdentityId};
use crate::{Error, Result, TOOL_VERSION};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(Error::Precondition(format!("unknown format '{s}'"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
        })
    }
}

/// Resolved sweep parameters, echoed verbatim into the report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub checks: Vec<CheckId>,
    pub pmin: u64,
    pub pmax: u64,
    pub engine: EngineKind,
    /// Worker threads; `None` uses every available core.
    pub jobs: Option<usize>,
    /// Adds randomized p-adic arithmetic cross-check records when set.
    pub seed: Option<u64>,
    pub options: CheckOptions,
    pub timing: bool,
}

impl SweepConfig {
    pub fn new(checks: impl Into<Vec<CheckId>>, pmin: u64, pmax: u64, engine: EngineKind) -> Self {
        Self {
            checks: checks.into(),
            pmin,
            pmax,
            engine,
            jobs: None,
            seed: None,
            options: CheckOptions::default(),
            timing: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Tally {
    pub passed: usize,
    pub failed: usize,
    pub excluded: usize,
}

impl Tally {
    fn add(&mut self, pass: Option<bool>) {
        match pass {
            Some(true) => self.passed += 1,
            Some(false) => self.failed += 1,
            None => self.excluded += 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Summary {
    pub by_check: BTreeMap<String, Tally>,
    pub total: Tally,
}

impl Summary {
    fn from_outcomes<'a>(outcomes: impl IntoIterator<Item = (&'a str, Option<bool>)>) -> Self {
        let mut s = Summary::default();
        for (id, pass) in outcomes {
            s.by_check.entry(id.to_string()).or_default().add(pass);
            s.total.add(pass);
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool_version: String,
    pub config: SweepConfig,
    pub records: Vec<VerificationRecord>,
    pub summary: Summary,
    pub total_elapsed_ms: f64,
}

impl Report {
    /// Sorts the records by `(prime, check_id)` (stably) and tallies them.
    pub fn new(config: SweepConfig, mut records: Vec<VerificationRecord>, total_elapsed_ms: f64) -> Self {
        records.sort_by(|a, b| (a.prime, &a.check_id).cmp(&(b.prime, &b.check_id)));
        let summary = Summary::from_outcomes(records.iter().map(|r| (r.check_id.as_str(), r.pass)));
        Self { tool_version: TOOL_VERSION.to_string(), config, records, summary, total_elapsed_ms }
    }

    pub fn failed(&self) -> usize {
        self.summary.total.failed
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Precondition(format!("serialize report: {e}")))
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Precondition(format!("parse report: {e}")))
    }

    pub fn write_csv<W: Write>(&self, w: W) -> csv::Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["check_id", "prime", "modulus_power", "case_label", "lhs", "rhs", "pass", "elapsed_ms"])?;
        for r in &self.records {
            out.write_record([
                r.check_id.clone(),
                r.prime.to_string(),
                r.modulus_power.to_string(),
                r.case_label.clone(),
                r.lhs.clone().unwrap_or_default(),
                r.rhs.clone().unwrap_or_default(),
                pass_cell(r.pass).to_string(),
                r.elapsed_ms.to_string(),
            ])?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn render(&self, format: Format) -> Result<Vec<u8>> {
        match format {
            Format::Json => Ok(self.to_json()?.into_bytes()),
            Format::Csv => {
                let mut buf = Vec::new();
                self.write_csv(&mut buf).map_err(|e| Error::Precondition(format!("csv: {e}")))?;
                Ok(buf)
            }
        }
    }
}

fn pass_cell(pass: Option<bool>) -> &'static str {
    match pass {
        Some(true) => "true",
        Some(false) => "false",
        None => "excluded",
    }
}

/// One identity evaluation with its exact sides printed as `n/d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityRecord {
    pub identity_id: String,
    pub params: BTreeMap<String, i64>,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

impl From<&IdentityCheck> for IdentityRecord {
    fn from(c: &IdentityCheck) -> Self {
        Self {
            identity_id: c.identity_id.clone(),
            params: c.params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            lhs: c.lhs.to_string(),
            rhs: c.rhs.to_string(),
            pass: c.pass,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityRunConfig {
    pub ids: Vec<IdentityId>,
    pub ranges: IdentityConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub tool_version: String,
    pub config: IdentityRunConfig,
    pub records: Vec<IdentityRecord>,
    pub summary: Summary,
    pub total_elapsed_ms: f64,
}

impl IdentityReport {
    pub fn new(config: IdentityRunConfig, checks: &[IdentityCheck], total_elapsed_ms: f64) -> Self {
        let records: Vec<IdentityRecord> = checks.iter().map(IdentityRecord::from).collect();
        let summary = Summary::from_outcomes(records.iter().map(|r| (r.identity_id.as_str(), Some(r.pass))));
        Self { tool_version: TOOL_VERSION.to_string(), config, records, summary, total_elapsed_ms }
    }

    pub fn failed(&self) -> usize {
        self.summary.total.failed
    }

    pub fn render(&self, format: Format) -> Result<Vec<u8>> {
        match format {
            Format::Json => {
                serde_json::to_vec_pretty(self).map_err(|e| Error::Precondition(format!("serialize report: {e}")))
            }
            Format::Csv => {
                let mut out = csv::Writer::from_writer(Vec::new());
                let to_err = |e: csv::Error| Error::Precondition(format!("csv: {e}"));
                out.write_record(["identity_id", "params", "lhs", "rhs", "pass"]).map_err(to_err)?;
                for r in &self.records {
                    let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                    out.write_record([
                        r.identity_id.clone(),
                        params.join(";"),
                        r.lhs.clone(),
                        r.rhs.clone(),
                        r.pass.to_string(),
                    ])
                    .map_err(to_err)?;
                }
                out.into_inner().map_err(|e| Error::Precondition(format!("csv: {e}")))
            }
        }
    }
}

/// Writes `bytes` to `path` (or stdout for `-`).
pub fn write_output(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    if path.as_os_str() == "-" {
        let mut out = std::io::stdout().lock();
        out.write_all(bytes)?;
        return out.flush();
    }
    std::fs::write(path, bytes)
}
