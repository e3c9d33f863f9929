//! The versioned JSON model file. Self-contained: predictions on new data
//! need only this file. The creation timestamp is the single
//! non-deterministic field.

use std::fs;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use hatepipe_core::classifiers::TrainedModel;
use hatepipe_core::evaluation::EvaluationReport;

use crate::config::PipelineConfig;
use crate::pipeline::{FittedPipeline, TrainOutcome};
use crate::CliError;

pub const MODEL_FORMAT_VERSION: u32 = 1;
pub const REPORT_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelFile {
    pub format_version: u32,
    pub created_unix_ms: u64,
    pub config: PipelineConfig,
    pub relation: String,
    pub class_labels: Vec<String>,
    pub dataset_instances: usize,
    pub dedup_removed: usize,
    pub train_instances: usize,
    /// Held-out test rows (indices into the cleaned, deduplicated dataset),
    /// stored so `evaluate --held-out` never re-shuffles.
    pub test_indices: Vec<usize>,
    /// Laplace-corrected training class distribution; the baseline for the
    /// information and relative-error statistics.
    pub priors: Vec<f64>,
    pub pipeline: FittedPipeline,
    pub model: TrainedModel,
}

impl ModelFile {
    pub fn from_outcome(outcome: TrainOutcome, config: PipelineConfig) -> Self {
        let created_unix_ms = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_millis() as u64)
            .unwrap_or(0);
        ModelFile {
            format_version: MODEL_FORMAT_VERSION,
            created_unix_ms,
            config,
            relation: outcome.relation,
            class_labels: outcome.class_labels,
            dataset_instances: outcome.dataset_instances,
            dedup_removed: outcome.dedup_removed,
            train_instances: outcome.train_instances,
            test_indices: outcome.test_indices,
            priors: outcome.priors,
            pipeline: outcome.pipeline,
            model: outcome.model,
        }
    }

    pub fn save(&self, path: &Path) -> Result<(), CliError> {
        let json = serde_json::to_string_pretty(self)
            .map_err(|e| CliError::Run(format!("cannot serialize model: {e}")))?;
        fs::write(path, json).map_err(|e| {
            CliError::Input(format!("cannot write model file '{}': {e}", path.display()))
        })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| {
            CliError::Input(format!("cannot read model file '{}': {e}", path.display()))
        })?;
        let model: ModelFile = serde_json::from_str(&text).map_err(|e| {
            CliError::Input(format!("invalid model file '{}': {e}", path.display()))
        })?;
        if model.format_version != MODEL_FORMAT_VERSION {
            return Err(CliError::Input(format!(
                "unsupported model format version {} (expected {})",
                model.format_version, MODEL_FORMAT_VERSION
            )));
        }
        Ok(model)
    }
}

/// The machine-readable evaluation report written by `evaluate --json` and
/// read back by `report`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub format_version: u32,
    pub report: EvaluationReport,
}

impl ReportFile {
    pub fn new(report: EvaluationReport) -> Self {
        ReportFile {
            format_version: REPORT_FORMAT_VERSION,
            report,
        }
    }

    pub fn save(&self, path: &Path) -> Result<(), CliError> {
        let json = serde_json::to_string_pretty(self)
            .map_err(|e| CliError::Run(format!("cannot serialize report: {e}")))?;
        fs::write(path, json)
            .map_err(|e| CliError::Input(format!("cannot write report '{}': {e}", path.display())))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| {
            CliError::Input(format!("cannot read report '{}': {e}", path.display()))
        })?;
        let file: ReportFile = serde_json::from_str(&text).map_err(|e| {
            CliError::Input(format!("invalid report file '{}': {e}", path.display()))
        })?;
        if file.format_version != REPORT_FORMAT_VERSION {
            return Err(CliError::Input(format!(
                "unsupported report format version {} (expected {})",
                file.format_version, REPORT_FORMAT_VERSION
            )));
        }
        Ok(file)
    }
}
