//! Experiment configs, report emission and the `conecorr` command line.
//!
//! A config names one correspondence and/or one semigroup family and a list
//! of checks:
//!
//! ```json
//! {
//!   "name": "interval-semigroup",
//!   "seed": 0,
//!   "resolution": 200,
//!   "family": {"family": "interval-scalar", "a": 0.5, "b": 1.0},
//!   "checks": [{"check": "growth-fit", "params": {"ts": [0, 1, 2]}}]
//! }
//! ```
//!
//! `run` writes `report.json` plus one CSV per tabular check into the output
//! directory. Exit codes: 0 when every PASS-class check passes, 1 when one
//! fails, 2 for config errors, 3 for execution errors.

pub mod checks;

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::correspondence::{CorrespondenceDoc, SetMap, SublinearCorrespondence, CORRESPONDENCE_KINDS};
use crate::geometry::NormSpec;
use crate::semigroup::{FamilyDoc, SemigroupFamily, FAMILY_KINDS};
use crate::{TOL_SUP, VERSION};

pub use checks::{Check, CheckInfo, Subject, CATALOG};

/// Environment variable holding the worker thread count.
pub const THREADS_ENV: &str = "CONECORR_THREADS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_EXECUTION: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("execution error: {0}")]
    Execution(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Execution(_) => EXIT_EXECUTION,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Expect {
    #[default]
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckSpec {
    pub check: String,
    #[serde(default)]
    pub params: Value,
    #[serde(default)]
    pub expect: Expect,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub name: String,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_norm")]
    pub norm: NormSpec,
    #[serde(default = "default_resolution")]
    pub resolution: usize,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default)]
    pub correspondence: Option<CorrespondenceDoc>,
    #[serde(default)]
    pub family: Option<FamilyDoc>,
    #[serde(default)]
    pub checks: Vec<CheckSpec>,
    /// Output directory, relative to the working directory.
    #[serde(default)]
    pub output: Option<PathBuf>,
}

fn default_norm() -> NormSpec {
    NormSpec::Euclidean
}

fn default_resolution() -> usize {
    200
}

fn default_tol() -> f64 {
    TOL_SUP
}

/// Command-line overrides for `run`.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub out: Option<PathBuf>,
    pub resolution: Option<usize>,
    pub tol: Option<f64>,
}

/// A config with its subjects built and checks parsed.
pub struct Experiment {
    pub config: ExperimentConfig,
    pub correspondence: Option<SublinearCorrespondence>,
    pub family: Option<SemigroupFamily>,
    pub checks: Vec<(CheckSpec, Check)>,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn apply(&mut self, o: &Overrides) {
        if let Some(r) = o.resolution {
            self.resolution = r;
        }
        if let Some(t) = o.tol {
            self.tol = t;
        }
        if let Some(out) = &o.out {
            self.output = Some(out.clone());
        }
    }

    /// Validates the config and builds everything it references.
    pub fn prepare(self) -> Result<Experiment, CliError> {
        let config_err = |e: crate::Error| CliError::Config(e.to_string());
        if self.resolution < 2 {
            return Err(CliError::Config(format!("resolution must be >= 2, got {}", self.resolution)));
        }
        if !(self.tol.is_finite() && self.tol >= 0.0) {
            return Err(CliError::Config(format!("tol must be >= 0, got {}", self.tol)));
        }
        let correspondence = self.correspondence.as_ref().map(|d| d.build()).transpose().map_err(config_err)?;
        let family = self.family.as_ref().map(|d| d.build()).transpose().map_err(config_err)?;
        let mut parsed = Vec::new();
        for spec in &self.checks {
            let check = Check::parse(&spec.check, &spec.params).map_err(CliError::Config)?;
            let dim = match check.subject() {
                Subject::Correspondence => correspondence.as_ref().map(|c| c.cone().dim()),
                Subject::Family => family.as_ref().map(|f| f.cone().dim()),
            };
            let Some(dim) = dim else {
                return Err(CliError::Config(format!(
                    "check {:?} needs a {}",
                    spec.check,
                    match check.subject() {
                        Subject::Correspondence => "correspondence",
                        Subject::Family => "family",
                    }
                )));
            };
            if let Some(p) = check.points().into_iter().find(|p| p.dim() != dim) {
                return Err(CliError::Config(format!(
                    "check {:?}: point {p} has dimension {}, expected {dim}",
                    spec.check,
                    p.dim()
                )));
            }
            parsed.push((spec.clone(), check));
        }
        Ok(Experiment { config: self, correspondence, family, checks: parsed })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Info,
    /// Failed as expected.
    Xfail,
    /// Passed although a failure was expected; counts as a failure.
    Xpass,
}

impl Status {
    fn from_outcome(passed: Option<bool>, expect: Expect) -> Self {
        match (passed, expect) {
            (None, _) => Status::Info,
            (Some(true), Expect::Pass) => Status::Pass,
            (Some(false), Expect::Pass) => Status::Fail,
            (Some(false), Expect::Fail) => Status::Xfail,
            (Some(true), Expect::Fail) => Status::Xpass,
        }
    }

    pub fn is_failure(self) -> bool {
        matches!(self, Status::Fail | Status::Xpass)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub status: Status,
    pub expect: Expect,
    pub params: Value,
    pub values: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub name: String,
    pub version: String,
    pub seed: u64,
    pub norm: NormSpec,
    pub resolution: usize,
    pub tol: f64,
    pub overall: Status,
    pub checks: Vec<CheckRecord>,
    /// The only run-dependent field: start time and per-check wall times.
    pub timestamp: Value,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.overall == Status::Pass {
            EXIT_OK
        } else {
            EXIT_CHECK_FAILED
        }
    }

    /// The report as JSON without the `timestamp` field.
    pub fn deterministic_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if let Value::Object(m) = &mut v {
            m.remove("timestamp");
        }
        serde_json::to_string_pretty(&v).expect("report serializes")
    }
}

impl Experiment {
    /// Runs every check in order. Tables are returned alongside the report,
    /// keyed by their file names.
    pub fn execute(&self) -> Result<(Report, Vec<(String, checks::Table)>), CliError> {
        let cfg = &self.config;
        let ctx = checks::Context { norm: &cfg.norm, resolution: cfg.resolution, tol: cfg.tol, seed: cfg.seed };
        let started = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs_f64()).unwrap_or(0.0);
        let mut records = Vec::new();
        let mut tables = Vec::new();
        let mut wall = Map::new();
        for (i, (spec, check)) in self.checks.iter().enumerate() {
            let clock = Instant::now();
            let outcome = match check.subject() {
                Subject::Correspondence => {
                    checks::run_on_correspondence(check, self.correspondence.as_ref().expect("validated"), &ctx)
                }
                Subject::Family => checks::run_on_family(check, self.family.as_ref().expect("validated"), &ctx),
            }
            .map_err(|e| CliError::Execution(format!("check {} ({}): {e}", i, spec.check)))?;
            let key = format!("{i:02}-{}", spec.check);
            wall.insert(key.clone(), json!(clock.elapsed().as_secs_f64()));
            let table = outcome.table.map(|t| {
                let file = format!("{key}.csv");
                tables.push((file.clone(), t));
                file
            });
            records.push(CheckRecord {
                check: spec.check.clone(),
                status: Status::from_outcome(outcome.passed, spec.expect),
                expect: spec.expect,
                params: check.echo(),
                values: outcome.values,
                tolerance: outcome.tolerance,
                witness: outcome.witness,
                table,
            });
        }
        let overall = if records.iter().any(|r| r.status.is_failure()) { Status::Fail } else { Status::Pass };
        let report = Report {
            name: cfg.name.clone(),
            version: VERSION.to_string(),
            seed: cfg.seed,
            norm: cfg.norm.clone(),
            resolution: cfg.resolution,
            tol: cfg.tol,
            overall,
            checks: records,
            timestamp: json!({"started_unix": started, "wall_time_s": wall}),
        };
        Ok((report, tables))
    }
}

fn io_err(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Execution(format!("{}: {e}", path.display()))
}

/// Writes `report.json` and the CSV tables into `dir`.
pub fn write_outputs(dir: &Path, report: &Report, tables: &[(String, checks::Table)]) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    let path = dir.join("report.json");
    let text = serde_json::to_string_pretty(report).expect("report serializes");
    fs::write(&path, text + "\n").map_err(|e| io_err(&path, e))?;
    for (file, table) in tables {
        let path = dir.join(file);
        let mut w = csv::Writer::from_path(&path).map_err(|e| io_err(&path, e))?;
        w.write_record(&table.headers).map_err(|e| io_err(&path, e))?;
        for row in &table.rows {
            w.write_record(row).map_err(|e| io_err(&path, e))?;
        }
        w.flush().map_err(|e| io_err(&path, e))?;
    }
    Ok(())
}

/// Loads, validates, runs and writes one config. Returns the report and the
/// directory it was written to.
pub fn run(config_path: &Path, overrides: &Overrides) -> Result<(Report, PathBuf), CliError> {
    let mut config = ExperimentConfig::load(config_path)?;
    config.apply(overrides);
    let out = config.output.clone().unwrap_or_else(|| PathBuf::from("out").join(&config.name));
    let experiment = config.prepare()?;
    let (report, tables) = experiment.execute()?;
    write_outputs(&out, &report, &tables)?;
    Ok((report, out))
}

/// The catalog of built-in correspondences, families, norms and checks.
pub fn list_builtins() -> Value {
    let checks: Vec<Value> = CATALOG
        .iter()
        .map(|c| {
            let params: Vec<Value> = c
                .params
                .iter()
                .map(|(name, ty, default)| {
                    if default.is_empty() {
                        json!({"name": name, "type": ty, "required": true})
                    } else {
                        json!({"name": name, "type": ty, "default": default})
                    }
                })
                .collect();
            json!({
                "name": c.name,
                "subject": c.subject,
                "summary": c.summary,
                "params": params,
                "example": serde_json::from_str::<Value>(c.example).expect("catalog examples are JSON"),
            })
        })
        .collect();
    json!({
        "correspondences": CORRESPONDENCE_KINDS,
        "families": FAMILY_KINDS,
        "norms": ["euclidean", "coord-1", "coord-inf", "cone-induced"],
        "checks": checks,
    })
}

/// Sizes the global rayon pool from `CONECORR_THREADS` when it is set.
pub fn init_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| CliError::Config(format!("{THREADS_ENV} must be a positive integer, got {raw:?}")))?;
    if n == 0 {
        return Err(CliError::Config(format!("{THREADS_ENV} must be positive")));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Execution(e.to_string()))
}
