//! The end-to-end pipeline: fitting preprocessing and features on the
//! training split, mapping raw rows into the model's feature space, and the
//! train/evaluate/predict drivers used by the CLI commands.
//!
//! One [`FittedPipeline`] value captures every frozen transform (cleaning,
//! vocabulary, attribute selection, imputation means, normalization bounds),
//! so the same code path maps rows at training and at prediction time.

use serde::{Deserialize, Serialize};

use hatepipe_core::classifiers::{
    class_priors, objective, train_svm, NaiveBayesModel, NbVariant, Prediction, SvmHyperParams,
    TrainedModel, VectorizedDataset,
};
use hatepipe_core::corpus::{AttributeKind, AttributeSpec, Dataset, Value};
use hatepipe_core::evaluation::{evaluate, stratified_split_indices, EvaluationReport};
use hatepipe_core::features::{
    build_vocabulary, vectorize, SparseVector, VectorizerConfig, Vocabulary, Weighting,
};
use hatepipe_core::preprocess::{
    clean_dataset_text, clean_text, deduplicate, normalize_value, rank_attributes, TargetRange,
};

use crate::config::{Algo, PipelineConfig};
use crate::CliError;

/// One numeric feature derived from a schema attribute.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "kebab-case")]
pub enum FeatureSource {
    /// The attribute's numeric value.
    Numeric { attr: usize },
    /// 1.0 when the nominal attribute takes the given value index.
    NominalIndicator { attr: usize, value: usize },
}

/// Frozen transforms mapping a raw schema row into the model feature space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FittedPipeline {
    pub schema: Vec<AttributeSpec>,
    pub class_index: usize,
    pub clean: bool,
    pub weighting: Weighting,
    pub vocabulary: Option<Vocabulary>,
    pub features: Vec<FeatureSource>,
    pub imputer_means: Vec<f64>,
    pub normalizer_bounds: Vec<(f64, f64)>,
    pub normalizer_range: TargetRange,
}

fn text_columns(schema: &[AttributeSpec]) -> Vec<usize> {
    schema
        .iter()
        .enumerate()
        .filter(|(_, a)| a.kind.is_text())
        .map(|(i, _)| i)
        .collect()
}

/// All non-class, non-text attributes expanded into numeric descriptors,
/// mirroring the nominal-to-numeric conversion (binary nominals become one
/// first-value indicator, larger arities one-hot).
fn enumerate_features(schema: &[AttributeSpec], class_index: usize) -> Vec<FeatureSource> {
    let mut features = Vec::new();
    for (attr, spec) in schema.iter().enumerate() {
        if attr == class_index {
            continue;
        }
        match &spec.kind {
            AttributeKind::Numeric => features.push(FeatureSource::Numeric { attr }),
            AttributeKind::Nominal(values) if values.len() == 2 => {
                features.push(FeatureSource::NominalIndicator { attr, value: 0 });
            }
            AttributeKind::Nominal(values) => {
                for value in 0..values.len() {
                    features.push(FeatureSource::NominalIndicator { attr, value });
                }
            }
            AttributeKind::Text => {}
        }
    }
    features
}

fn raw_feature(row: &[Value], feature: &FeatureSource) -> Option<f64> {
    match feature {
        FeatureSource::Numeric { attr } => row[*attr].as_numeric(),
        FeatureSource::NominalIndicator { attr, value } => match row[*attr] {
            Value::Nominal(idx) => Some(if idx == *value { 1.0 } else { 0.0 }),
            _ => None,
        },
    }
}

impl FittedPipeline {
    pub fn feature_name(&self, feature: &FeatureSource) -> String {
        match feature {
            FeatureSource::Numeric { attr } => self.schema[*attr].name.clone(),
            FeatureSource::NominalIndicator { attr, value } => match &self.schema[*attr].kind {
                AttributeKind::Nominal(values) => {
                    format!("{}={}", self.schema[*attr].name, values[*value])
                }
                _ => unreachable!("indicator over non-nominal attribute"),
            },
        }
    }

    pub fn class_labels(&self) -> &[String] {
        match &self.schema[self.class_index].kind {
            AttributeKind::Nominal(values) => values,
            _ => unreachable!("class attribute is nominal"),
        }
    }

    pub fn dim(&self) -> usize {
        self.vocabulary.as_ref().map_or(0, Vocabulary::len) + self.features.len()
    }

    /// Concatenated text of a row's text attributes.
    fn document_of(&self, row: &[Value]) -> String {
        let mut doc = String::new();
        for &col in &text_columns(&self.schema) {
            if let Value::Text(s) = &row[col] {
                if !doc.is_empty() {
                    doc.push(' ');
                }
                doc.push_str(s);
            }
        }
        doc
    }

    /// Maps one raw row (already matching the schema, class value ignored)
    /// into the model feature space.
    pub fn vectorize_row(&self, row: &[Value]) -> SparseVector {
        let mut entries: Vec<(usize, f64)> = Vec::new();
        let vocab_dim = self.vocabulary.as_ref().map_or(0, Vocabulary::len);
        if let Some(vocab) = &self.vocabulary {
            let mut doc = self.document_of(row);
            if self.clean {
                doc = clean_text(&doc);
            }
            for (idx, w) in vectorize(&doc, vocab, self.weighting).iter() {
                entries.push((idx, w));
            }
        }
        let (lo, hi) = self.normalizer_range.bounds();
        for (j, feature) in self.features.iter().enumerate() {
            let raw = raw_feature(row, feature).unwrap_or(self.imputer_means[j]);
            let (min, max) = self.normalizer_bounds[j];
            let v = normalize_value(raw, min, max, lo, hi);
            if v != 0.0 {
                entries.push((vocab_dim + j, v));
            }
        }
        SparseVector::from_entries(self.dim(), entries).expect("entries are in range")
    }
}

/// Fits every transform on the training split.
pub fn fit_pipeline(train: &Dataset, config: &PipelineConfig) -> Result<FittedPipeline, CliError> {
    let class_index = train
        .class_index()
        .ok_or_else(|| CliError::Input("training data has no class attribute".into()))?;
    let schema = train.schema().to_vec();
    let mut features = enumerate_features(&schema, class_index);

    // attribute selection applies to the numeric side only; text columns
    // feed the vocabulary and its min_df cutoff instead
    if let Some(k) = config.select_k {
        if k < features.len() {
            let temp_schema: Vec<AttributeSpec> = features
                .iter()
                .enumerate()
                .map(|(j, _)| AttributeSpec::numeric(format!("f{j}")))
                .chain([schema[class_index].clone()])
                .collect();
            let temp_rows: Vec<Vec<Value>> = train
                .instances()
                .iter()
                .map(|row| {
                    features
                        .iter()
                        .map(|f| match raw_feature(row, f) {
                            Some(v) => Value::Numeric(v),
                            None => Value::Missing,
                        })
                        .chain([row[class_index].clone()])
                        .collect()
                })
                .collect();
            let temp = Dataset::new("selection", temp_schema, Some(features.len()), temp_rows)
                .map_err(|e| CliError::Run(e.to_string()))?;
            let ranking = rank_attributes(&temp).map_err(|e| CliError::Run(e.to_string()))?;
            let mut keep: Vec<usize> = ranking.0.iter().take(k).map(|&(i, _)| i).collect();
            keep.sort_unstable();
            features = keep.into_iter().map(|i| features[i].clone()).collect();
        }
    }

    // imputation means and normalization bounds over the training split
    let mut means = Vec::with_capacity(features.len());
    let mut bounds = Vec::with_capacity(features.len());
    for feature in &features {
        let mut sum = 0.0;
        let mut n = 0usize;
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        for row in train.instances() {
            if let Some(v) = raw_feature(row, feature) {
                sum += v;
                n += 1;
                min = min.min(v);
                max = max.max(v);
            }
        }
        means.push(if n == 0 { 0.0 } else { sum / n as f64 });
        bounds.push(if min > max { (0.0, 0.0) } else { (min, max) });
    }

    let vocabulary = if text_columns(&schema).is_empty() {
        None
    } else {
        let stub = FittedPipeline {
            schema: schema.clone(),
            class_index,
            clean: config.clean,
            weighting: config.weighting,
            vocabulary: None,
            features: Vec::new(),
            imputer_means: Vec::new(),
            normalizer_bounds: Vec::new(),
            normalizer_range: config.normalize,
        };
        let docs: Vec<String> = train
            .instances()
            .iter()
            .map(|row| stub.document_of(row))
            .collect();
        let vectorizer_config = VectorizerConfig {
            analyzer: config.features,
            ngram_min: config.ngrams.0,
            ngram_max: config.ngrams.1,
            min_df: config.min_df,
        };
        Some(
            build_vocabulary(&docs, &vectorizer_config)
                .map_err(|e| CliError::Run(e.to_string()))?,
        )
    };

    Ok(FittedPipeline {
        schema,
        class_index,
        clean: config.clean,
        weighting: config.weighting,
        vocabulary,
        features,
        imputer_means: means,
        normalizer_bounds: bounds,
        normalizer_range: config.normalize,
    })
}

/// Everything `train` produces besides the model file itself.
pub struct TrainOutcome {
    pub pipeline: FittedPipeline,
    pub model: TrainedModel,
    pub priors: Vec<f64>,
    pub relation: String,
    pub class_labels: Vec<String>,
    pub dataset_instances: usize,
    pub dedup_removed: usize,
    pub train_instances: usize,
    pub test_indices: Vec<usize>,
    pub svm_objective: Option<f64>,
}

/// Cleaning then duplicate removal, the fixed preparation order.
pub fn prepare_dataset(ds: &Dataset, clean: bool) -> (Dataset, usize) {
    let cleaned = if clean {
        clean_dataset_text(ds)
    } else {
        ds.clone()
    };
    let deduped = deduplicate(&cleaned);
    let removed = cleaned.n_instances() - deduped.n_instances();
    (deduped, removed)
}

fn labels_of(ds: &Dataset) -> Result<Vec<usize>, CliError> {
    Ok(ds
        .labels()
        .map_err(|e| CliError::Input(e.to_string()))?
        .into_iter()
        .map(|l| l.0)
        .collect())
}

/// Vectorizes a dataset through the fitted pipeline.
pub fn vectorize_dataset(pipeline: &FittedPipeline, ds: &Dataset) -> Vec<SparseVector> {
    ds.instances()
        .iter()
        .map(|row| pipeline.vectorize_row(row))
        .collect()
}

/// Runs the whole training flow on a parsed dataset.
pub fn run_training(ds: &Dataset, config: &PipelineConfig) -> Result<TrainOutcome, CliError> {
    let (prepared, dedup_removed) = prepare_dataset(ds, config.clean);
    let split = stratified_split_indices(&prepared, config.test_fraction, config.seed)
        .map_err(|e| CliError::Input(e.to_string()))?;
    let train = prepared.select_rows(&split.train);

    let pipeline = fit_pipeline(&train, config)?;
    let class_labels = pipeline.class_labels().to_vec();
    let labels = labels_of(&train)?;
    let vectors = vectorize_dataset(&pipeline, &train);
    let data = VectorizedDataset::new(vectors, labels.clone(), class_labels.len())
        .map_err(|e| CliError::Run(e.to_string()))?;

    let mut svm_objective = None;
    let model = match config.algo {
        Algo::NbMultinomial => TrainedModel::NaiveBayes(
            NaiveBayesModel::train(&data, NbVariant::Multinomial, config.alpha)
                .map_err(|e| CliError::Run(e.to_string()))?,
        ),
        Algo::NbGaussian => TrainedModel::NaiveBayes(
            NaiveBayesModel::train(&data, NbVariant::Gaussian, config.alpha)
                .map_err(|e| CliError::Run(e.to_string()))?,
        ),
        Algo::Svm => {
            let hyper = SvmHyperParams {
                lambda: config.lambda,
                epochs: config.epochs,
                seed: config.seed,
            };
            let model = train_svm(&data, &hyper).map_err(|e| CliError::Run(e.to_string()))?;
            svm_objective = Some(objective(
                model.weights(),
                model.bias(),
                hyper.lambda,
                &data,
            ));
            TrainedModel::Svm(model)
        }
    };
    let priors = class_priors(data.labels(), class_labels.len());

    Ok(TrainOutcome {
        pipeline,
        model,
        priors,
        relation: prepared.relation().to_string(),
        class_labels,
        dataset_instances: prepared.n_instances(),
        dedup_removed,
        train_instances: split.train.len(),
        test_indices: split.test,
        svm_objective,
    })
}

/// Re-expresses a parsed dataset in the model's schema, designating
/// `class_index` as the class.
///
/// Attribute names must match positionally. Nominal value lists may differ
/// in order or be a subset of the training list (CSV first-appearance order
/// depends on the file); indices are remapped, and values unseen at training
/// time are an error. A column the CSV reader inferred as numeric or text is
/// coerced when the model expects text or nominal there.
pub fn align_to_schema(
    ds: &Dataset,
    expected: &[AttributeSpec],
    class_index: Option<usize>,
) -> Result<Dataset, CliError> {
    let found = ds.schema();
    if found.len() != expected.len() || found.iter().zip(expected).any(|(f, e)| f.name != e.name) {
        let diffs = schema_diff(expected, found);
        return Err(CliError::Input(format!(
            "schema does not match the model:\n  {}",
            diffs.join("\n  ")
        )));
    }

    // per column: how to map a parsed value into the expected kind
    enum Map {
        Keep,
        Remap(Vec<usize>),
        TextToNominal(Vec<String>),
        ToText,
    }
    let mut maps = Vec::with_capacity(expected.len());
    for (col, (f, e)) in found.iter().zip(expected).enumerate() {
        let map = match (&f.kind, &e.kind) {
            (a, b) if a == b => Map::Keep,
            (AttributeKind::Nominal(have), AttributeKind::Nominal(want)) => {
                let mut remap = Vec::with_capacity(have.len());
                for v in have {
                    match want.iter().position(|w| w == v) {
                        Some(idx) => remap.push(idx),
                        None => {
                            return Err(CliError::Input(format!(
                                "attribute '{}' has value '{}' unseen at training time",
                                f.name, v
                            )))
                        }
                    }
                }
                Map::Remap(remap)
            }
            (AttributeKind::Text, AttributeKind::Nominal(want)) => Map::TextToNominal(want.clone()),
            (AttributeKind::Numeric | AttributeKind::Text, AttributeKind::Text) => Map::ToText,
            _ => {
                let diffs = schema_diff(expected, found);
                return Err(CliError::Input(format!(
                    "schema does not match the model:\n  {}",
                    diffs.join("\n  ")
                )));
            }
        };
        let _ = col;
        maps.push(map);
    }

    let mut rows = Vec::with_capacity(ds.n_instances());
    for (row_no, row) in ds.instances().iter().enumerate() {
        let mut out = Vec::with_capacity(row.len());
        for ((value, map), spec) in row.iter().zip(&maps).zip(expected) {
            let mapped = match (value, map) {
                (Value::Missing, _) => Value::Missing,
                (v, Map::Keep) => v.clone(),
                (Value::Nominal(idx), Map::Remap(remap)) => Value::Nominal(remap[*idx]),
                (Value::Text(s), Map::TextToNominal(want)) => {
                    match want.iter().position(|w| w == s) {
                        Some(idx) => Value::Nominal(idx),
                        None => {
                            return Err(CliError::Input(format!(
                                "row {}: attribute '{}' has value '{}' unseen at training time",
                                row_no + 1,
                                spec.name,
                                s
                            )))
                        }
                    }
                }
                (Value::Numeric(v), Map::ToText) => Value::Text(format!("{v}")),
                (Value::Text(s), Map::ToText) => Value::Text(s.clone()),
                _ => {
                    return Err(CliError::Input(format!(
                        "row {}: attribute '{}' has an incompatible value",
                        row_no + 1,
                        spec.name
                    )))
                }
            };
            out.push(mapped);
        }
        rows.push(out);
    }
    Dataset::new(ds.relation(), expected.to_vec(), class_index, rows)
        .map_err(|e| CliError::Input(e.to_string()))
}

/// Differences between a model schema and an input schema, for error
/// messages.
pub fn schema_diff(expected: &[AttributeSpec], found: &[AttributeSpec]) -> Vec<String> {
    let mut diffs = Vec::new();
    if expected.len() != found.len() {
        diffs.push(format!(
            "attribute count: expected {}, found {}",
            expected.len(),
            found.len()
        ));
    }
    for (i, (e, f)) in expected.iter().zip(found).enumerate() {
        if e != f {
            diffs.push(format!(
                "attribute {}: expected '{}' ({}), found '{}' ({})",
                i + 1,
                e.name,
                kind_name(&e.kind),
                f.name,
                kind_name(&f.kind)
            ));
        }
    }
    diffs
}

fn kind_name(kind: &AttributeKind) -> String {
    match kind {
        AttributeKind::Numeric => "numeric".into(),
        AttributeKind::Text => "string".into(),
        AttributeKind::Nominal(values) => format!("nominal[{}]", values.len()),
    }
}

/// Evaluates a labeled dataset (already schema-checked) against the model.
pub fn run_evaluation(
    pipeline: &FittedPipeline,
    model: &TrainedModel,
    priors: &[f64],
    ds: &Dataset,
) -> Result<EvaluationReport, CliError> {
    let labels = labels_of(ds)?;
    let vectors = vectorize_dataset(pipeline, ds);
    evaluate(model, &vectors, &labels, pipeline.class_labels(), priors)
        .map_err(|e| CliError::Run(e.to_string()))
}

/// Predicts one already-vectorized row.
pub fn predict_vector(model: &TrainedModel, x: &SparseVector) -> Result<Prediction, CliError> {
    model.predict(x).map_err(|e| CliError::Run(e.to_string()))
}
