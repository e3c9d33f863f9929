//! Dataset preparation: duplicate removal, text cleaning, min-max
//! normalization, nominal-to-numeric conversion and information-gain
//! attribute ranking/selection.
//!
//! Everything that learns from data (normalization bounds, imputation means,
//! attribute ranking) is fitted on the training split only and applied as
//! frozen parameters afterwards.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::{AttributeKind, AttributeSpec, CorpusError, Dataset, Value};

#[derive(Debug, Error, PartialEq)]
pub enum PreprocessError {
    #[error("dataset has no instances")]
    EmptyDataset,
    #[error("dataset has no class attribute")]
    NoClassAttribute,
    #[error(
        "attribute count mismatch: params cover {expected} numeric attributes, dataset has {found}"
    )]
    AttributeCountMismatch { expected: usize, found: usize },
    #[error("k must be at least 1")]
    ZeroSelection,
    #[error(transparent)]
    Corpus(#[from] CorpusError),
}

/// Hashable canonical form of a cell, used to detect duplicate rows.
#[derive(PartialEq, Eq, Hash)]
enum CellKey {
    Numeric(u64),
    Nominal(usize),
    Text(String),
    Missing,
}

fn cell_key(value: &Value) -> CellKey {
    match value {
        // canonicalize -0.0 so hash and equality agree
        Value::Numeric(v) => CellKey::Numeric(if *v == 0.0 { 0 } else { v.to_bits() }),
        Value::Nominal(idx) => CellKey::Nominal(*idx),
        Value::Text(s) => CellKey::Text(s.clone()),
        Value::Missing => CellKey::Missing,
    }
}

/// Keeps the first occurrence of each fully-identical row (class included),
/// preserving relative order.
pub fn deduplicate(ds: &Dataset) -> Dataset {
    let mut seen: HashSet<Vec<CellKey>> = HashSet::with_capacity(ds.n_instances());
    let mut keep = Vec::new();
    for (i, row) in ds.instances().iter().enumerate() {
        let key: Vec<CellKey> = row.iter().map(cell_key).collect();
        if seen.insert(key) {
            keep.push(i);
        }
    }
    ds.select_rows(&keep)
}

fn is_url_token(token: &str) -> bool {
    match token.find("://") {
        None | Some(0) => false,
        Some(pos) => {
            let scheme = &token[..pos];
            let mut chars = scheme.chars();
            chars
                .next()
                .map(|c| c.is_ascii_alphabetic())
                .unwrap_or(false)
                && scheme
                    .chars()
                    .all(|c| c.is_ascii_alphanumeric() || matches!(c, '+' | '.' | '-'))
        }
    }
}

/// Normalizes raw text: lowercasing, `URL`/`USER` placeholder tokens for
/// URLs and @-mentions, control characters stripped and whitespace collapsed.
/// Idempotent on its own output (placeholders pass through unchanged).
pub fn clean_text(raw: &str) -> String {
    let stripped: String = raw
        .chars()
        .filter(|c| !c.is_control() || c.is_whitespace())
        .collect();
    let mut out = String::with_capacity(stripped.len());
    for token in stripped.split_whitespace() {
        if !out.is_empty() {
            out.push(' ');
        }
        if token == "URL" || token == "USER" {
            out.push_str(token);
        } else if is_url_token(token) {
            out.push_str("URL");
        } else if token.starts_with('@') && token.len() > 1 {
            out.push_str("USER");
        } else {
            out.extend(token.chars().flat_map(char::to_lowercase));
        }
    }
    out
}

/// Applies [`clean_text`] to every text cell of a dataset.
pub fn clean_dataset_text(ds: &Dataset) -> Dataset {
    let text_cols: Vec<usize> = ds
        .schema()
        .iter()
        .enumerate()
        .filter(|(_, a)| a.kind.is_text())
        .map(|(i, _)| i)
        .collect();
    if text_cols.is_empty() {
        return ds.clone();
    }
    let instances = ds
        .instances()
        .iter()
        .map(|row| {
            let mut row = row.clone();
            for &col in &text_cols {
                if let Value::Text(s) = &row[col] {
                    row[col] = Value::Text(clean_text(s));
                }
            }
            row
        })
        .collect();
    ds.with_instances(instances)
        .expect("cleaning preserves row validity")
}

/// Target interval for min-max normalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TargetRange {
    #[serde(rename = "0,1")]
    ZeroOne,
    #[serde(rename = "-1,1")]
    MinusOneOne,
}

impl TargetRange {
    pub fn bounds(self) -> (f64, f64) {
        match self {
            TargetRange::ZeroOne => (0.0, 1.0),
            TargetRange::MinusOneOne => (-1.0, 1.0),
        }
    }
}

/// Fitted min-max bounds, one pair per numeric attribute in schema order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalizationParams {
    pub range: TargetRange,
    pub bounds: Vec<(f64, f64)>,
}

fn numeric_columns(ds: &Dataset) -> Vec<usize> {
    ds.schema()
        .iter()
        .enumerate()
        .filter(|(_, a)| a.kind.is_numeric())
        .map(|(i, _)| i)
        .collect()
}

/// Observes per-attribute min/max on the (training) dataset.
pub fn fit_normalizer(
    ds: &Dataset,
    range: TargetRange,
) -> Result<NormalizationParams, PreprocessError> {
    if ds.n_instances() == 0 {
        return Err(PreprocessError::EmptyDataset);
    }
    let cols = numeric_columns(ds);
    let mut bounds = Vec::with_capacity(cols.len());
    for &col in &cols {
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        for row in ds.instances() {
            if let Value::Numeric(v) = row[col] {
                min = min.min(v);
                max = max.max(v);
            }
        }
        if min > max {
            // no observed values; maps everything to the lower bound
            min = 0.0;
            max = 0.0;
        }
        bounds.push((min, max));
    }
    Ok(NormalizationParams { range, bounds })
}

/// Maps each numeric value v to lo + (v-min)(hi-lo)/(max-min), clipping
/// values outside the fitted bounds; a zero-variance attribute maps to lo.
pub fn apply_normalizer(
    ds: &Dataset,
    params: &NormalizationParams,
) -> Result<Dataset, PreprocessError> {
    let cols = numeric_columns(ds);
    if cols.len() != params.bounds.len() {
        return Err(PreprocessError::AttributeCountMismatch {
            expected: params.bounds.len(),
            found: cols.len(),
        });
    }
    let (lo, hi) = params.range.bounds();
    let instances = ds
        .instances()
        .iter()
        .map(|row| {
            let mut row = row.clone();
            for (&col, &(min, max)) in cols.iter().zip(&params.bounds) {
                if let Value::Numeric(v) = row[col] {
                    row[col] = Value::Numeric(normalize_value(v, min, max, lo, hi));
                }
            }
            row
        })
        .collect();
    Ok(ds.with_instances(instances)?)
}

/// Single-value min-max mapping used by [`apply_normalizer`]: clips to the
/// target range, and a degenerate (min == max) attribute maps to `lo`.
pub fn normalize_value(v: f64, min: f64, max: f64, lo: f64, hi: f64) -> f64 {
    if min == max {
        return lo;
    }
    let scaled = lo + (v - min) * (hi - lo) / (max - min);
    scaled.clamp(lo, hi)
}

/// Per-attribute means for missing-value imputation, fitted on the training
/// split and applied to any split.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Imputer {
    pub means: Vec<f64>,
}

impl Imputer {
    /// Mean of the observed values per numeric attribute (0 when a column
    /// has no observed values).
    pub fn fit(ds: &Dataset) -> Self {
        let cols = numeric_columns(ds);
        let means = cols
            .iter()
            .map(|&col| {
                let mut sum = 0.0;
                let mut n = 0usize;
                for row in ds.instances() {
                    if let Value::Numeric(v) = row[col] {
                        sum += v;
                        n += 1;
                    }
                }
                if n == 0 {
                    0.0
                } else {
                    sum / n as f64
                }
            })
            .collect();
        Imputer { means }
    }

    pub fn apply(&self, ds: &Dataset) -> Result<Dataset, PreprocessError> {
        let cols = numeric_columns(ds);
        if cols.len() != self.means.len() {
            return Err(PreprocessError::AttributeCountMismatch {
                expected: self.means.len(),
                found: cols.len(),
            });
        }
        let instances = ds
            .instances()
            .iter()
            .map(|row| {
                let mut row = row.clone();
                for (&col, &mean) in cols.iter().zip(&self.means) {
                    if row[col].is_missing() {
                        row[col] = Value::Numeric(mean);
                    }
                }
                row
            })
            .collect();
        Ok(ds.with_instances(instances)?)
    }
}

/// Replaces each non-class nominal attribute by numeric indicators: a binary
/// attribute becomes one 0/1 attribute (1 when the value equals the first
/// list entry), arity-k attributes become k one-hot attributes. New names
/// carry an `=value` suffix. Text and numeric attributes pass through.
pub fn nominal_to_numeric(ds: &Dataset) -> Dataset {
    let class_index = ds.class_index();
    let mut schema: Vec<AttributeSpec> = Vec::new();
    let mut new_class_index = None;
    // per source attribute: expansion into output columns
    enum Expansion {
        Keep,
        Binary,
        OneHot(usize),
    }
    let mut plan = Vec::with_capacity(ds.n_attributes());
    // indicator names get a numeric suffix if they collide with any name
    // already emitted or with a pass-through attribute still to come
    let kept_names: HashSet<&str> = ds
        .schema()
        .iter()
        .enumerate()
        .filter(|(i, a)| Some(*i) == class_index || !a.kind.is_nominal())
        .map(|(_, a)| a.name.as_str())
        .collect();
    let uniquify = |schema: &[AttributeSpec], base: String| -> String {
        let taken = |name: &str| kept_names.contains(name) || schema.iter().any(|a| a.name == name);
        if !taken(&base) {
            return base;
        }
        let mut k = 2;
        loop {
            let candidate = format!("{base}_{k}");
            if !taken(&candidate) {
                return candidate;
            }
            k += 1;
        }
    };
    for (i, attr) in ds.schema().iter().enumerate() {
        if Some(i) == class_index {
            new_class_index = Some(schema.len());
            schema.push(attr.clone());
            plan.push(Expansion::Keep);
            continue;
        }
        match &attr.kind {
            AttributeKind::Nominal(values) if values.len() == 2 => {
                let name = uniquify(&schema, format!("{}={}", attr.name, values[0]));
                schema.push(AttributeSpec::numeric(name));
                plan.push(Expansion::Binary);
            }
            AttributeKind::Nominal(values) => {
                for v in values {
                    let name = uniquify(&schema, format!("{}={}", attr.name, v));
                    schema.push(AttributeSpec::numeric(name));
                }
                plan.push(Expansion::OneHot(values.len()));
            }
            _ => {
                schema.push(attr.clone());
                plan.push(Expansion::Keep);
            }
        }
    }
    let instances = ds
        .instances()
        .iter()
        .map(|row| {
            let mut out = Vec::with_capacity(schema.len());
            for (value, expansion) in row.iter().zip(&plan) {
                match expansion {
                    Expansion::Keep => out.push(value.clone()),
                    Expansion::Binary => out.push(match value {
                        Value::Nominal(idx) => Value::Numeric(if *idx == 0 { 1.0 } else { 0.0 }),
                        _ => Value::Missing,
                    }),
                    Expansion::OneHot(arity) => match value {
                        Value::Nominal(idx) => {
                            for j in 0..*arity {
                                out.push(Value::Numeric(if j == *idx { 1.0 } else { 0.0 }));
                            }
                        }
                        _ => out.extend(std::iter::repeat_n(Value::Missing, *arity)),
                    },
                }
            }
            out
        })
        .collect();
    Dataset::new(ds.relation(), schema, new_class_index, instances)
        .expect("one-hot expansion preserves validity")
}

/// Attribute indices with their information-gain scores in bits, sorted by
/// descending score, ties broken by ascending index.
#[derive(Debug, Clone, PartialEq)]
pub struct AttributeRanking(pub Vec<(usize, f64)>);

const IG_BINS: usize = 10;

fn entropy_of_counts(counts: &HashMap<usize, usize>, total: usize) -> f64 {
    if total == 0 {
        return 0.0;
    }
    let total = total as f64;
    counts
        .values()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / total;
            -p * p.log2()
        })
        .sum()
}

/// Category id of a cell for the conditional-entropy computation: nominal
/// index, 10 equal-width bins for numerics, distinct strings for text, and
/// missing as its own category.
fn category_of(
    value: &Value,
    bounds: Option<(f64, f64)>,
    text_ids: &mut HashMap<String, usize>,
) -> usize {
    match value {
        Value::Missing => usize::MAX,
        Value::Nominal(idx) => *idx,
        Value::Numeric(v) => {
            let (min, max) = bounds.expect("numeric attribute has observed bounds");
            if min == max {
                0
            } else {
                let bin = ((v - min) / (max - min) * IG_BINS as f64).floor() as usize;
                bin.min(IG_BINS - 1)
            }
        }
        Value::Text(s) => {
            let next = text_ids.len();
            *text_ids.entry(s.clone()).or_insert(next)
        }
    }
}

/// Scores every non-class attribute by information gain
/// IG(A) = H(Y) - H(Y|A) with base-2 entropy.
pub fn rank_attributes(ds: &Dataset) -> Result<AttributeRanking, PreprocessError> {
    if ds.n_instances() == 0 {
        return Err(PreprocessError::EmptyDataset);
    }
    let class_index = ds.class_index().ok_or(PreprocessError::NoClassAttribute)?;
    let labels = ds.labels()?;

    let mut class_counts: HashMap<usize, usize> = HashMap::new();
    for label in &labels {
        *class_counts.entry(label.0).or_insert(0) += 1;
    }
    let n = ds.n_instances();
    let class_entropy = entropy_of_counts(&class_counts, n);

    let mut scored = Vec::new();
    for (attr, spec) in ds.schema().iter().enumerate() {
        if attr == class_index {
            continue;
        }
        let bounds = if spec.kind.is_numeric() {
            let mut min = f64::INFINITY;
            let mut max = f64::NEG_INFINITY;
            for row in ds.instances() {
                if let Value::Numeric(v) = row[attr] {
                    min = min.min(v);
                    max = max.max(v);
                }
            }
            Some(if min > max { (0.0, 0.0) } else { (min, max) })
        } else {
            None
        };

        let mut text_ids = HashMap::new();
        // per category: (size, class counts)
        let mut groups: HashMap<usize, (usize, HashMap<usize, usize>)> = HashMap::new();
        for (row, label) in ds.instances().iter().zip(&labels) {
            let cat = category_of(&row[attr], bounds, &mut text_ids);
            let entry = groups.entry(cat).or_default();
            entry.0 += 1;
            *entry.1.entry(label.0).or_insert(0) += 1;
        }
        let conditional: f64 = groups
            .values()
            .map(|(size, counts)| (*size as f64 / n as f64) * entropy_of_counts(counts, *size))
            .sum();
        let gain = (class_entropy - conditional).max(0.0);
        scored.push((attr, gain));
    }
    scored.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then(a.0.cmp(&b.0)));
    Ok(AttributeRanking(scored))
}

/// Keeps the class attribute plus the top-k ranked attributes, preserving the
/// original attribute order. A k beyond the attribute count keeps everything.
pub fn select_attributes(ds: &Dataset, k: usize) -> Result<Dataset, PreprocessError> {
    if k == 0 {
        return Err(PreprocessError::ZeroSelection);
    }
    let ranking = rank_attributes(ds)?;
    let class_index = ds.class_index().expect("checked by rank_attributes");
    let mut keep: Vec<usize> = ranking.0.iter().take(k).map(|&(i, _)| i).collect();
    keep.push(class_index);
    keep.sort_unstable();

    let schema: Vec<AttributeSpec> = keep.iter().map(|&i| ds.schema()[i].clone()).collect();
    let new_class_index = keep.iter().position(|&i| i == class_index);
    let instances = ds
        .instances()
        .iter()
        .map(|row| keep.iter().map(|&i| row[i].clone()).collect())
        .collect();
    Ok(Dataset::new(
        ds.relation(),
        schema,
        new_class_index,
        instances,
    )?)
}
