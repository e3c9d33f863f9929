//! Sparse text features: tokenization, word/character n-gram vocabularies
//! and binary / term-frequency / tf-idf weighting.
//!
//! A [`Vocabulary`] is fitted on the training corpus only. Terms are indexed
//! in lexicographic order, so the mapping is deterministic across runs,
//! platforms and corpus permutations. Documents are expected to have passed
//! through [`crate::preprocess::clean_text`] already.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FeatureError {
    #[error("cannot build a vocabulary from an empty corpus")]
    EmptyCorpus,
    #[error("invalid n-gram range [{min}, {max}]")]
    InvalidNgramRange { min: usize, max: usize },
    #[error("vector dimension {found} does not match expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// Unit the n-gram analyzer works on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Analyzer {
    Word,
    Char,
}

/// How term occurrences are weighted in a vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Weighting {
    Binary,
    Tf,
    TfIdf,
}

/// Analyzer, n-gram range and document-frequency cutoff for a vocabulary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VectorizerConfig {
    pub analyzer: Analyzer,
    pub ngram_min: usize,
    pub ngram_max: usize,
    pub min_df: usize,
}

impl Default for VectorizerConfig {
    /// Word unigrams+bigrams with min_df 2.
    fn default() -> Self {
        VectorizerConfig {
            analyzer: Analyzer::Word,
            ngram_min: 1,
            ngram_max: 2,
            min_df: 2,
        }
    }
}

impl VectorizerConfig {
    fn validate(&self) -> Result<(), FeatureError> {
        if self.ngram_min == 0 || self.ngram_min > self.ngram_max {
            return Err(FeatureError::InvalidNgramRange {
                min: self.ngram_min,
                max: self.ngram_max,
            });
        }
        Ok(())
    }
}

/// Splits on Unicode whitespace and keeps maximal runs of letters, digits
/// and apostrophes; all other punctuation separates and is dropped.
pub fn tokenize(text: &str) -> Vec<String> {
    let mut tokens = Vec::new();
    let mut current = String::new();
    for c in text.chars() {
        if c.is_alphanumeric() || c == '\'' {
            current.push(c);
        } else if !current.is_empty() {
            tokens.push(std::mem::take(&mut current));
        }
    }
    if !current.is_empty() {
        tokens.push(current);
    }
    tokens
}

/// All analyzer n-grams of a document, with multiplicity.
fn analyze(doc: &str, config: &VectorizerConfig) -> Vec<String> {
    let mut grams = Vec::new();
    match config.analyzer {
        Analyzer::Word => {
            let tokens = tokenize(doc);
            for n in config.ngram_min..=config.ngram_max {
                if n > tokens.len() {
                    break;
                }
                for window in tokens.windows(n) {
                    grams.push(window.join(" "));
                }
            }
        }
        Analyzer::Char => {
            let chars: Vec<char> = doc.chars().collect();
            for n in config.ngram_min..=config.ngram_max {
                if n > chars.len() {
                    break;
                }
                for window in chars.windows(n) {
                    grams.push(window.iter().collect());
                }
            }
        }
    }
    grams
}

/// Fitted term -> index map with document frequencies.
///
/// Indices run 0..len with no gaps; lookups binary-search the sorted term
/// list, so no side table has to survive serialization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Vocabulary {
    config: VectorizerConfig,
    doc_count: usize,
    terms: Vec<String>,
    dfs: Vec<usize>,
}

impl Vocabulary {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn doc_count(&self) -> usize {
        self.doc_count
    }

    pub fn config(&self) -> &VectorizerConfig {
        &self.config
    }

    pub fn terms(&self) -> impl Iterator<Item = (&str, usize)> {
        self.terms
            .iter()
            .map(String::as_str)
            .zip(self.dfs.iter().copied())
    }

    pub fn index_of(&self, term: &str) -> Option<usize> {
        self.terms.binary_search_by(|t| t.as_str().cmp(term)).ok()
    }

    pub fn df(&self, index: usize) -> usize {
        self.dfs[index]
    }
}

/// Builds a vocabulary over the training corpus: all analyzer n-grams with
/// document frequency >= min_df, indexed in lexicographic term order.
pub fn build_vocabulary<S: AsRef<str>>(
    corpus: &[S],
    config: &VectorizerConfig,
) -> Result<Vocabulary, FeatureError> {
    config.validate()?;
    if corpus.is_empty() {
        return Err(FeatureError::EmptyCorpus);
    }
    let mut dfs: HashMap<String, usize> = HashMap::new();
    for doc in corpus {
        let mut grams = analyze(doc.as_ref(), config);
        grams.sort_unstable();
        grams.dedup();
        for gram in grams {
            *dfs.entry(gram).or_insert(0) += 1;
        }
    }
    let mut entries: Vec<(String, usize)> = dfs
        .into_iter()
        .filter(|&(_, df)| df >= config.min_df)
        .collect();
    entries.sort_unstable_by(|a, b| a.0.cmp(&b.0));
    let (terms, dfs) = entries.into_iter().unzip();
    Ok(Vocabulary {
        config: config.clone(),
        doc_count: corpus.len(),
        terms,
        dfs,
    })
}

/// Sorted (index, weight) pairs over a fixed dimension; indices strictly
/// increase and zero weights are never stored.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SparseVector {
    dim: usize,
    entries: Vec<(usize, f64)>,
}

impl SparseVector {
    pub fn empty(dim: usize) -> Self {
        SparseVector {
            dim,
            entries: Vec::new(),
        }
    }

    /// Builds from unordered entries; duplicates are summed, zeros dropped.
    pub fn from_entries(dim: usize, mut entries: Vec<(usize, f64)>) -> Result<Self, FeatureError> {
        entries.sort_unstable_by_key(|e| e.0);
        let mut merged: Vec<(usize, f64)> = Vec::with_capacity(entries.len());
        for (idx, w) in entries {
            if idx >= dim {
                return Err(FeatureError::DimensionMismatch {
                    expected: dim,
                    found: idx + 1,
                });
            }
            match merged.last_mut() {
                Some(last) if last.0 == idx => last.1 += w,
                _ => merged.push((idx, w)),
            }
        }
        merged.retain(|&(_, w)| w != 0.0);
        Ok(SparseVector {
            dim,
            entries: merged,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.entries.iter().copied()
    }

    pub fn dot_dense(&self, dense: &[f64]) -> f64 {
        self.entries.iter().map(|&(i, w)| w * dense[i]).sum()
    }

    pub fn l2_norm(&self) -> f64 {
        self.entries.iter().map(|&(_, w)| w * w).sum::<f64>().sqrt()
    }

    /// Optional length normalization; a zero vector is left unchanged.
    pub fn l2_normalized(&self) -> SparseVector {
        let norm = self.l2_norm();
        if norm == 0.0 {
            return self.clone();
        }
        SparseVector {
            dim: self.dim,
            entries: self.entries.iter().map(|&(i, w)| (i, w / norm)).collect(),
        }
    }
}

/// Maps a document into the vocabulary's feature space.
///
/// tf is the raw term count, binary is presence, and tf-idf is
/// tf * ln((1+D)/(1+df)); out-of-vocabulary terms are ignored and computed
/// zero weights (a term present in every training document) are dropped.
pub fn vectorize(doc: &str, vocab: &Vocabulary, weighting: Weighting) -> SparseVector {
    let mut counts: HashMap<usize, f64> = HashMap::new();
    for gram in analyze(doc, &vocab.config) {
        if let Some(idx) = vocab.index_of(&gram) {
            *counts.entry(idx).or_insert(0.0) += 1.0;
        }
    }
    let d = vocab.doc_count as f64;
    let entries: Vec<(usize, f64)> = counts
        .into_iter()
        .map(|(idx, tf)| {
            let w = match weighting {
                Weighting::Binary => 1.0,
                Weighting::Tf => tf,
                Weighting::TfIdf => tf * ((1.0 + d) / (1.0 + vocab.dfs[idx] as f64)).ln(),
            };
            (idx, w)
        })
        .collect();
    SparseVector::from_entries(vocab.len(), entries).expect("indices come from the vocabulary")
}
