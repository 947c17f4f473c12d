//! Experiment manifests and the machine-readable report they produce.
//!
//! A manifest names one process spec, a normalizer, a replica count, and a
//! list of checks. Running it yields a [`ReportDocument`] whose JSON form
//! is byte-identical across reruns of the same manifest (timestamps can be
//! suppressed for that purpose). Seeds are mandatory: a manifest without a
//! seed does not parse.

use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::experiment::{
    duality_experiment, inverse_slope_experiment, involution_experiment,
    pnorm_negligibility_check, range_slope_experiment, renewal_experiment, sup_slope_experiment,
    CheckSummary, ExperimentConfig,
};
use crate::sim::{ProcessKind, ProcessSpec};
use crate::slope::SlopeConfig;

/// Report schema version; bump on breaking layout changes.
pub const SCHEMA_VERSION: u32 = 1;

/// The checks a manifest may request.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckId {
    RangeSlope,
    SupSlope,
    InverseSlope,
    Renewal,
    Pnorm,
    Duality,
    Involution,
}

impl CheckId {
    pub fn name(&self) -> &'static str {
        match self {
            CheckId::RangeSlope => "range_slope",
            CheckId::SupSlope => "sup_slope",
            CheckId::InverseSlope => "inverse_slope",
            CheckId::Renewal => "renewal",
            CheckId::Pnorm => "pnorm",
            CheckId::Duality => "duality",
            CheckId::Involution => "involution",
        }
    }

    /// Rejects check/process combinations that cannot run, before any
    /// simulation happens.
    fn validate_for(&self, spec: &ProcessSpec) -> Result<()> {
        let scalar = !matches!(spec.kind, ProcessKind::MultidimBm { .. });
        match self {
            CheckId::Renewal => {
                if !matches!(spec.kind, ProcessKind::Renewal { .. }) {
                    return Err(Error::InvalidSpec(format!(
                        "check `renewal` needs a renewal process, got `{}`",
                        spec.kind
                    )));
                }
            }
            CheckId::RangeSlope | CheckId::SupSlope | CheckId::InverseSlope => {
                if !scalar || spec.expected_path_slope().is_none() {
                    return Err(Error::InvalidSpec(format!(
                        "check `{}` needs a scalar process with a known slope, got `{}`",
                        self.name(),
                        spec.kind
                    )));
                }
            }
            CheckId::Pnorm | CheckId::Duality | CheckId::Involution => {
                if !scalar {
                    return Err(Error::InvalidSpec(format!(
                        "check `{}` needs a scalar process, got `{}`",
                        self.name(),
                        spec.kind
                    )));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    pub format: OutputFormat,
    pub path: String,
}

/// A named, fully seeded experiment: process, normalizer, replicas, checks.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentManifest {
    pub name: String,
    pub spec: ProcessSpec,
    #[serde(default = "default_psi")]
    pub psi: String,
    pub replicas: u32,
    pub checks: Vec<CheckId>,
    #[serde(default)]
    pub tail_fraction: Option<f64>,
    #[serde(default)]
    pub spread_tolerance: Option<f64>,
    /// Overrides the per-check default tolerance/threshold.
    #[serde(default)]
    pub tolerance: Option<f64>,
    pub output: OutputSpec,
}

fn default_psi() -> String {
    "t".into()
}

impl ExperimentManifest {
    pub fn from_json(text: &str) -> Result<Self> {
        let manifest: ExperimentManifest = serde_json::from_str(text)?;
        manifest.validate()?;
        Ok(manifest)
    }

    pub fn validate(&self) -> Result<()> {
        if self.replicas < 1 {
            return Err(Error::InvalidSpec("replicas must be at least 1".into()));
        }
        if self.checks.is_empty() {
            return Err(Error::InvalidSpec("manifest lists no checks".into()));
        }
        self.spec.validate()?;
        for check in &self.checks {
            check.validate_for(&self.spec)?;
        }
        self.experiment_config().validate()
    }

    pub fn experiment_config(&self) -> ExperimentConfig {
        let mut slope = SlopeConfig::default();
        if let Some(tf) = self.tail_fraction {
            slope.tail_fraction = tf;
        }
        if let Some(st) = self.spread_tolerance {
            slope.spread_tolerance = st;
        }
        ExperimentConfig {
            psi: self.psi.clone(),
            replicas: self.replicas,
            slope,
            tolerance: self.tolerance,
        }
    }
}

/// One executed check inside a report.
#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub check: CheckId,
    pub pass: bool,
    pub summary: CheckSummary,
}

/// The versioned, machine-readable result of one manifest run.
#[derive(Clone, Debug, Serialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generated_at_unix: Option<u64>,
    pub process: String,
    pub horizon: f64,
    pub step: f64,
    pub seed: u64,
    pub psi: String,
    pub replicas: u32,
    pub tail_fraction: f64,
    pub spread_tolerance: f64,
    pub checks: Vec<CheckOutcome>,
    pub pass: bool,
}

impl ReportDocument {
    pub fn to_json_pretty(&self) -> Result<String> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        Ok(text)
    }

    /// Flat `check,metric,value` table for the CSV output format.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("check,metric,value\n");
        for outcome in &self.checks {
            let name = outcome.check.name();
            for (metric, value) in outcome.summary.metrics() {
                out.push_str(&format!("{name},{metric},{value}\n"));
            }
            out.push_str(&format!("{name},pass,{}\n", outcome.pass));
        }
        out.push_str(&format!("all,pass,{}\n", self.pass));
        out
    }
}

/// Runs every check in the manifest and assembles the report.
///
/// Replicas execute concurrently but the report is ordered by check and
/// replica index, so the output is deterministic.
pub fn run_manifest(
    manifest: &ExperimentManifest,
    include_timestamp: bool,
) -> Result<ReportDocument> {
    manifest.validate()?;
    let cfg = manifest.experiment_config();
    let spec = &manifest.spec;

    let mut checks = Vec::with_capacity(manifest.checks.len());
    for check in &manifest.checks {
        let summary = match check {
            CheckId::RangeSlope => CheckSummary::RangeSlope(range_slope_experiment(spec, &cfg)?),
            CheckId::SupSlope => CheckSummary::SupSlope(sup_slope_experiment(spec, &cfg)?),
            CheckId::InverseSlope => {
                CheckSummary::InverseSlope(inverse_slope_experiment(spec, &cfg)?)
            }
            CheckId::Renewal => CheckSummary::Renewal(renewal_experiment(spec, &cfg)?),
            CheckId::Pnorm => CheckSummary::Pnorm(pnorm_negligibility_check(spec, &cfg)?),
            CheckId::Duality => CheckSummary::Duality(duality_experiment(spec, &cfg)?),
            CheckId::Involution => CheckSummary::Involution(involution_experiment(spec, &cfg)?),
        };
        checks.push(CheckOutcome {
            check: *check,
            pass: summary.pass(),
            summary,
        });
    }

    let pass = checks.iter().all(|c| c.pass);
    let generated_at_unix = include_timestamp.then(|| {
        SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0)
    });
    Ok(ReportDocument {
        schema_version: SCHEMA_VERSION,
        name: manifest.name.clone(),
        generated_at_unix,
        process: spec.kind.to_string(),
        horizon: spec.horizon,
        step: spec.step,
        seed: spec.seed,
        psi: manifest.psi.clone(),
        replicas: manifest.replicas,
        tail_fraction: cfg.slope.tail_fraction,
        spread_tolerance: cfg.slope.spread_tolerance,
        checks,
        pass,
    })
}

/// Names of all installed checks, for diagnostics.
pub const KNOWN_CHECKS: &[&str] = &[
    "range_slope",
    "sup_slope",
    "inverse_slope",
    "renewal",
    "pnorm",
    "duality",
    "involution",
];

#[cfg(test)]
mod tests {
    use super::*;

    fn manifest_json(process: &str, checks: &str) -> String {
        format!(
            r#"{{
              "name": "test",
              "spec": {{ "process": "{process}", "horizon": 200.0, "step": 0.05, "seed": 11 }},
              "replicas": 2,
              "checks": [{checks}],
              "output": {{ "format": "json", "path": "report.json" }}
            }}"#
        )
    }

    #[test]
    fn manifest_round_trips_and_runs() {
        let manifest =
            ExperimentManifest::from_json(&manifest_json("drift:1.0", "\"duality\"")).unwrap();
        let report = run_manifest(&manifest, false).unwrap();
        assert!(report.pass);
        assert_eq!(report.schema_version, SCHEMA_VERSION);
        assert!(report.generated_at_unix.is_none());
        let json = report.to_json_pretty().unwrap();
        assert!(json.contains("\"check\": \"duality\""));
    }

    #[test]
    fn unknown_check_fails_to_parse() {
        let err = ExperimentManifest::from_json(&manifest_json("bm", "\"no_such_check\""));
        assert!(err.is_err());
    }

    #[test]
    fn missing_seed_fails_to_parse() {
        let text = r#"{
          "name": "x",
          "spec": { "process": "bm", "horizon": 10.0, "step": 0.1 },
          "replicas": 1,
          "checks": ["duality"],
          "output": { "format": "json", "path": "r.json" }
        }"#;
        assert!(ExperimentManifest::from_json(text).is_err());
    }

    #[test]
    fn incompatible_check_rejected_before_running() {
        let err = ExperimentManifest::from_json(&manifest_json("mbm:2", "\"range_slope\""));
        assert!(err.is_err());
        let err = ExperimentManifest::from_json(&manifest_json("bm", "\"renewal\""));
        assert!(err.is_err());
    }

    #[test]
    fn reports_are_reproducible() {
        let manifest = ExperimentManifest::from_json(&manifest_json(
            "drift:0.5",
            "\"range_slope\", \"involution\"",
        ))
        .unwrap();
        let a = run_manifest(&manifest, false).unwrap().to_json_pretty().unwrap();
        let b = run_manifest(&manifest, false).unwrap().to_json_pretty().unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn csv_table_has_pass_rows() {
        let manifest =
            ExperimentManifest::from_json(&manifest_json("drift:1.0", "\"duality\"")).unwrap();
        let report = run_manifest(&manifest, false).unwrap();
        let csv = report.to_csv();
        assert!(csv.starts_with("check,metric,value\n"));
        assert!(csv.contains("duality,pass,true"));
        assert!(csv.ends_with("all,pass,true\n"));
    }
}
