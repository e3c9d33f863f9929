//! Building blocks for a two-class text classification pipeline: dataset
//! ingestion (CSV/ARFF), preprocessing, sparse feature extraction, Naive
//! Bayes and linear SVM training, and Weka-style evaluation reports.
//!
//! The crate is organised along the pipeline stages:
//!
//! - [`corpus`]: the in-memory dataset model plus ARFF/CSV readers and the
//!   ARFF writer.
//! - [`preprocess`]: deduplication, text cleaning, min-max normalization,
//!   nominal-to-numeric conversion and information-gain attribute selection.
//! - [`features`]: tokenization, word/char n-gram vocabularies and
//!   binary/tf/tf-idf sparse vectors.
//! - [`classifiers`]: multinomial/Gaussian Naive Bayes and a Pegasos-style
//!   linear SVM with Platt-calibrated probabilities.
//! - [`evaluation`]: stratified splits, confusion matrices and the full
//!   evaluation report (Kappa, K&B information scores, class complexity,
//!   error measures, per-class statistics) with a fixed-layout text renderer.

pub mod classifiers;
pub mod corpus;
pub mod evaluation;
pub mod features;
pub mod preprocess;
