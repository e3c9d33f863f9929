//! In-memory dataset model and the CSV/ARFF readers and writers.
//!
//! A [`Dataset`] is a schema (ordered [`AttributeSpec`]s) plus dense rows of
//! [`Value`]s and an optional class-attribute designation. Parsed datasets are
//! immutable and safe to share read-only across threads.

mod arff;
mod csv;

pub use arff::{parse_arff, write_arff};
pub use csv::{parse_csv, read_csv_records, ClassColumn};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors produced by dataset construction and the format parsers.
///
/// Parsing is total: every input yields either a `Dataset` or one of these,
/// with a 1-based line or record position where applicable.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum CorpusError {
    #[error("{message} at line {line}")]
    Syntax { line: usize, message: String },
    #[error("ragged row at record {row}: expected {expected} fields, found {found}")]
    RaggedRow {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("unterminated quote in record {row}")]
    UnterminatedQuote { row: usize },
    #[error("class column '{0}' not found")]
    ClassColumnNotFound(String),
    #[error("invalid dataset: {0}")]
    InvalidDataset(String),
    #[error("instance {row} has no class value")]
    UnlabeledInstance { row: usize },
}

/// The kind of an attribute: numeric, nominal with an ordered value list, or
/// free text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum AttributeKind {
    Numeric,
    Nominal(Vec<String>),
    Text,
}

impl AttributeKind {
    pub fn is_nominal(&self) -> bool {
        matches!(self, AttributeKind::Nominal(_))
    }

    pub fn is_numeric(&self) -> bool {
        matches!(self, AttributeKind::Numeric)
    }

    pub fn is_text(&self) -> bool {
        matches!(self, AttributeKind::Text)
    }
}

/// One column of the schema: a non-empty name plus its [`AttributeKind`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttributeSpec {
    pub name: String,
    pub kind: AttributeKind,
}

impl AttributeSpec {
    pub fn numeric(name: impl Into<String>) -> Self {
        AttributeSpec {
            name: name.into(),
            kind: AttributeKind::Numeric,
        }
    }

    pub fn text(name: impl Into<String>) -> Self {
        AttributeSpec {
            name: name.into(),
            kind: AttributeKind::Text,
        }
    }

    pub fn nominal(name: impl Into<String>, values: Vec<String>) -> Self {
        AttributeSpec {
            name: name.into(),
            kind: AttributeKind::Nominal(values),
        }
    }

    fn validate(&self) -> Result<(), CorpusError> {
        if self.name.is_empty() {
            return Err(CorpusError::InvalidDataset(
                "attribute name must be non-empty".into(),
            ));
        }
        if let AttributeKind::Nominal(values) = &self.kind {
            if values.is_empty() {
                return Err(CorpusError::InvalidDataset(format!(
                    "nominal attribute '{}' has an empty value list",
                    self.name
                )));
            }
            for (i, v) in values.iter().enumerate() {
                if values[..i].contains(v) {
                    return Err(CorpusError::InvalidDataset(format!(
                        "nominal attribute '{}' has duplicate value '{}'",
                        self.name, v
                    )));
                }
            }
        }
        Ok(())
    }
}

/// A single cell. `Nominal` holds the index into the attribute's value list;
/// `Missing` is the "?" marker.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Value {
    Numeric(f64),
    Nominal(usize),
    Text(String),
    Missing,
}

impl Value {
    pub fn is_missing(&self) -> bool {
        matches!(self, Value::Missing)
    }

    pub fn as_numeric(&self) -> Option<f64> {
        match self {
            Value::Numeric(v) => Some(*v),
            _ => None,
        }
    }
}

/// Index into the class attribute's value list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClassLabel(pub usize);

/// Schema plus instances. Every row has exactly one value per attribute and
/// nominal indices stay within their value lists; the class attribute, when
/// designated, is nominal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    relation: String,
    schema: Vec<AttributeSpec>,
    class_index: Option<usize>,
    instances: Vec<Vec<Value>>,
}

impl Dataset {
    /// Builds a dataset, checking every schema and row invariant.
    pub fn new(
        relation: impl Into<String>,
        schema: Vec<AttributeSpec>,
        class_index: Option<usize>,
        instances: Vec<Vec<Value>>,
    ) -> Result<Self, CorpusError> {
        if schema.is_empty() {
            return Err(CorpusError::InvalidDataset(
                "schema must contain at least one attribute".into(),
            ));
        }
        for (i, attr) in schema.iter().enumerate() {
            attr.validate()?;
            if schema[..i].iter().any(|a| a.name == attr.name) {
                return Err(CorpusError::InvalidDataset(format!(
                    "duplicate attribute name '{}'",
                    attr.name
                )));
            }
        }
        if let Some(ci) = class_index {
            match schema.get(ci) {
                None => {
                    return Err(CorpusError::InvalidDataset(format!(
                        "class index {ci} out of range for {} attributes",
                        schema.len()
                    )))
                }
                Some(spec) if !spec.kind.is_nominal() => {
                    return Err(CorpusError::InvalidDataset(format!(
                        "class attribute '{}' must be nominal",
                        spec.name
                    )))
                }
                _ => {}
            }
        }
        let ds = Dataset {
            relation: relation.into(),
            schema,
            class_index,
            instances: Vec::new(),
        };
        let mut ds = ds;
        for row in instances {
            ds.push_row(row)?;
        }
        Ok(ds)
    }

    /// Appends one row after checking arity and per-cell validity.
    pub fn push_row(&mut self, row: Vec<Value>) -> Result<(), CorpusError> {
        if row.len() != self.schema.len() {
            return Err(CorpusError::InvalidDataset(format!(
                "row has {} values, schema has {} attributes",
                row.len(),
                self.schema.len()
            )));
        }
        for (spec, value) in self.schema.iter().zip(&row) {
            match (&spec.kind, value) {
                (_, Value::Missing) => {}
                (AttributeKind::Numeric, Value::Numeric(v)) => {
                    if !v.is_finite() {
                        return Err(CorpusError::InvalidDataset(format!(
                            "non-finite numeric value in attribute '{}'",
                            spec.name
                        )));
                    }
                }
                (AttributeKind::Nominal(values), Value::Nominal(idx)) => {
                    if *idx >= values.len() {
                        return Err(CorpusError::InvalidDataset(format!(
                            "nominal index {idx} out of range for attribute '{}'",
                            spec.name
                        )));
                    }
                }
                (AttributeKind::Text, Value::Text(_)) => {}
                _ => {
                    return Err(CorpusError::InvalidDataset(format!(
                        "value kind does not match attribute '{}'",
                        spec.name
                    )))
                }
            }
        }
        self.instances.push(row);
        Ok(())
    }

    pub fn relation(&self) -> &str {
        &self.relation
    }

    pub fn schema(&self) -> &[AttributeSpec] {
        &self.schema
    }

    pub fn instances(&self) -> &[Vec<Value>] {
        &self.instances
    }

    pub fn n_attributes(&self) -> usize {
        self.schema.len()
    }

    pub fn n_instances(&self) -> usize {
        self.instances.len()
    }

    pub fn class_index(&self) -> Option<usize> {
        self.class_index
    }

    /// Value list of the class attribute, or an empty slice when no class is
    /// designated.
    pub fn class_values(&self) -> &[String] {
        match self.class_index.and_then(|ci| self.schema.get(ci)) {
            Some(AttributeSpec {
                kind: AttributeKind::Nominal(values),
                ..
            }) => values,
            _ => &[],
        }
    }

    pub fn n_classes(&self) -> usize {
        self.class_values().len()
    }

    /// Class label of one row, `None` for missing.
    pub fn class_of(&self, row: usize) -> Option<ClassLabel> {
        let ci = self.class_index?;
        match self.instances[row][ci] {
            Value::Nominal(idx) => Some(ClassLabel(idx)),
            _ => None,
        }
    }

    /// Class labels of every row; errors on the first missing class value.
    pub fn labels(&self) -> Result<Vec<ClassLabel>, CorpusError> {
        let ci = self
            .class_index
            .ok_or_else(|| CorpusError::InvalidDataset("dataset has no class attribute".into()))?;
        self.instances
            .iter()
            .enumerate()
            .map(|(row, values)| match values[ci] {
                Value::Nominal(idx) => Ok(ClassLabel(idx)),
                _ => Err(CorpusError::UnlabeledInstance { row: row + 1 }),
            })
            .collect()
    }

    /// Instance counts per class value (missing classes not counted).
    pub fn class_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.n_classes()];
        if let Some(ci) = self.class_index {
            for row in &self.instances {
                if let Value::Nominal(idx) = row[ci] {
                    counts[idx] += 1;
                }
            }
        }
        counts
    }

    /// New dataset holding the given rows (by index, in the given order).
    pub fn select_rows(&self, indices: &[usize]) -> Dataset {
        Dataset {
            relation: self.relation.clone(),
            schema: self.schema.clone(),
            class_index: self.class_index,
            instances: indices.iter().map(|&i| self.instances[i].clone()).collect(),
        }
    }

    /// Replaces the instance rows wholesale, re-checking row invariants.
    pub fn with_instances(&self, instances: Vec<Vec<Value>>) -> Result<Dataset, CorpusError> {
        Dataset::new(
            self.relation.clone(),
            self.schema.clone(),
            self.class_index,
            instances,
        )
    }

    /// Re-designates the class attribute (must be nominal).
    pub fn with_class_index(&self, class_index: Option<usize>) -> Result<Dataset, CorpusError> {
        Dataset::new(
            self.relation.clone(),
            self.schema.clone(),
            class_index,
            self.instances.clone(),
        )
    }
}
