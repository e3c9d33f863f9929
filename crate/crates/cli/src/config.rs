//! Pipeline configuration: defaults, the JSON config file, and the parsers
//! behind the CLI flag syntax. Flags override config-file values which
//! override the defaults.

use serde::{Deserialize, Serialize};

use hatepipe_core::features::{Analyzer, Weighting};
use hatepipe_core::preprocess::TargetRange;

use crate::CliError;

/// Input file format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum DataFormat {
    Csv,
    Arff,
}

impl DataFormat {
    /// Falls back to the file extension when no format was given.
    pub fn infer(explicit: Option<DataFormat>, path: &str) -> Result<DataFormat, CliError> {
        if let Some(format) = explicit {
            return Ok(format);
        }
        let lower = path.to_ascii_lowercase();
        if lower.ends_with(".arff") {
            Ok(DataFormat::Arff)
        } else if lower.ends_with(".csv") {
            Ok(DataFormat::Csv)
        } else {
            Err(CliError::Input(format!(
                "cannot infer format of '{path}': pass --format csv|arff"
            )))
        }
    }
}

/// Model family to train.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
pub enum Algo {
    #[serde(rename = "nb")]
    #[value(name = "nb")]
    NbMultinomial,
    #[serde(rename = "nb-gaussian")]
    #[value(name = "nb-gaussian")]
    NbGaussian,
    #[serde(rename = "svm")]
    #[value(name = "svm")]
    Svm,
}

/// Everything a training run depends on. Serialized inside the model file so
/// a run is reproducible from the model alone.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    pub input: Option<String>,
    pub format: Option<DataFormat>,
    /// Class column as a header name or a zero-based index; default is the
    /// format's own convention (CSV: last column, ARFF: last nominal).
    pub class_col: Option<String>,
    pub header: bool,
    pub test_fraction: f64,
    pub seed: u64,
    pub clean: bool,
    pub normalize: TargetRange,
    pub select_k: Option<usize>,
    pub features: Analyzer,
    pub ngrams: (usize, usize),
    pub min_df: usize,
    pub weighting: Weighting,
    pub algo: Algo,
    pub lambda: f64,
    pub epochs: usize,
    pub alpha: f64,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            input: None,
            format: None,
            class_col: None,
            header: true,
            test_fraction: 0.2,
            seed: 42,
            clean: true,
            normalize: TargetRange::ZeroOne,
            select_k: None,
            features: Analyzer::Word,
            ngrams: (1, 2),
            min_df: 2,
            weighting: Weighting::TfIdf,
            algo: Algo::Svm,
            lambda: 1e-4,
            epochs: 10,
            alpha: 1.0,
        }
    }
}

impl PipelineConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.test_fraction > 0.0 && self.test_fraction < 1.0) {
            return Err(CliError::Input(format!(
                "test fraction must be in (0,1), got {}",
                self.test_fraction
            )));
        }
        if self.ngrams.0 == 0 || self.ngrams.0 > self.ngrams.1 {
            return Err(CliError::Input(format!(
                "invalid n-gram range {}..{}",
                self.ngrams.0, self.ngrams.1
            )));
        }
        if self.select_k == Some(0) {
            return Err(CliError::Input("--select-k must be at least 1".into()));
        }
        Ok(())
    }
}

/// Parses the `MIN..MAX` n-gram flag syntax.
pub fn parse_ngrams(s: &str) -> Result<(usize, usize), String> {
    let (min, max) = s
        .split_once("..")
        .ok_or_else(|| format!("expected MIN..MAX, got '{s}'"))?;
    let min: usize = min
        .trim()
        .parse()
        .map_err(|_| format!("bad n-gram min '{min}'"))?;
    let max: usize = max
        .trim()
        .parse()
        .map_err(|_| format!("bad n-gram max '{max}'"))?;
    Ok((min, max))
}

/// Parses the `0,1` / `-1,1` normalization flag syntax.
pub fn parse_range(s: &str) -> Result<TargetRange, String> {
    match s.trim() {
        "0,1" => Ok(TargetRange::ZeroOne),
        "-1,1" => Ok(TargetRange::MinusOneOne),
        other => Err(format!("expected 0,1 or -1,1, got '{other}'")),
    }
}

pub fn parse_analyzer(s: &str) -> Result<Analyzer, String> {
    match s.trim() {
        "word" => Ok(Analyzer::Word),
        "char" => Ok(Analyzer::Char),
        other => Err(format!("expected word or char, got '{other}'")),
    }
}

pub fn parse_weighting(s: &str) -> Result<Weighting, String> {
    match s.trim() {
        "binary" => Ok(Weighting::Binary),
        "tf" => Ok(Weighting::Tf),
        "tfidf" => Ok(Weighting::TfIdf),
        other => Err(format!("expected binary, tf or tfidf, got '{other}'")),
    }
}
