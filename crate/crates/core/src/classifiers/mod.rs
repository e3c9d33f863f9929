//! Supervised models: multinomial/Gaussian Naive Bayes and a linear SVM
//! trained by stochastic subgradient descent with Platt-calibrated
//! probabilities.
//!
//! Training is single-threaded and fully determined by (data, hyperparams,
//! seed); trained models are immutable and safe for concurrent prediction.

mod naive_bayes;
mod platt;
mod svm;

pub use naive_bayes::{NaiveBayesModel, NbLikelihood, NbVariant};
pub use platt::{fit_platt, PlattCalibration};
pub use svm::{objective, objective_gradient, train_svm, SvmHyperParams, SvmModel};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::features::SparseVector;

#[derive(Debug, Error, PartialEq)]
pub enum ClassifierError {
    #[error("training data is empty")]
    EmptyTrainingSet,
    #[error("class {0} has no training instances")]
    MissingClass(usize),
    #[error("expected exactly 2 classes, found {0}")]
    NotTwoClass(usize),
    #[error("vector dimension {found} does not match model dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("smoothing parameter must be positive, got {0}")]
    InvalidAlpha(f64),
    #[error("regularization must be positive, got {0}")]
    InvalidLambda(f64),
    #[error("epoch count must be at least 1")]
    InvalidEpochs,
    #[error("multinomial model requires non-negative feature values, found {0}")]
    NegativeFeature(f64),
    #[error("label {label} out of range for {classes} classes")]
    LabelOutOfRange { label: usize, classes: usize },
    #[error("vector and label counts differ: {vectors} vs {labels}")]
    LengthMismatch { vectors: usize, labels: usize },
}

/// A labeled collection of sparse vectors sharing one feature space.
#[derive(Debug, Clone)]
pub struct VectorizedDataset {
    vectors: Vec<SparseVector>,
    labels: Vec<usize>,
    n_classes: usize,
    dim: usize,
}

impl VectorizedDataset {
    pub fn new(
        vectors: Vec<SparseVector>,
        labels: Vec<usize>,
        n_classes: usize,
    ) -> Result<Self, ClassifierError> {
        if vectors.len() != labels.len() {
            return Err(ClassifierError::LengthMismatch {
                vectors: vectors.len(),
                labels: labels.len(),
            });
        }
        if vectors.is_empty() {
            return Err(ClassifierError::EmptyTrainingSet);
        }
        let dim = vectors[0].dim();
        for v in &vectors {
            if v.dim() != dim {
                return Err(ClassifierError::DimensionMismatch {
                    expected: dim,
                    found: v.dim(),
                });
            }
        }
        for &label in &labels {
            if label >= n_classes {
                return Err(ClassifierError::LabelOutOfRange {
                    label,
                    classes: n_classes,
                });
            }
        }
        Ok(VectorizedDataset {
            vectors,
            labels,
            n_classes,
            dim,
        })
    }

    pub fn vectors(&self) -> &[SparseVector] {
        &self.vectors
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn n_classes(&self) -> usize {
        self.n_classes
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Instances per class.
    pub fn class_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.n_classes];
        for &label in &self.labels {
            counts[label] += 1;
        }
        counts
    }
}

/// Laplace-corrected class priors (N_c + 1)/(N + C).
pub fn class_priors(labels: &[usize], n_classes: usize) -> Vec<f64> {
    let mut counts = vec![0usize; n_classes];
    for &label in labels {
        counts[label] += 1;
    }
    let n = labels.len() as f64;
    let c = n_classes as f64;
    counts
        .iter()
        .map(|&count| (count as f64 + 1.0) / (n + c))
        .collect()
}

/// Probability per class label; entries are in [0,1] and sum to 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassDistribution(Vec<f64>);

impl ClassDistribution {
    /// Softmax-normalizes unnormalized log scores. Adding any constant to
    /// every score (multiplying unnormalized scores by a positive constant)
    /// leaves the result unchanged.
    pub fn from_log_scores(log_scores: &[f64]) -> Self {
        let max = log_scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let exps: Vec<f64> = log_scores.iter().map(|&s| (s - max).exp()).collect();
        let sum: f64 = exps.iter().sum();
        ClassDistribution(exps.iter().map(|&e| e / sum).collect())
    }

    pub fn from_probabilities(probs: Vec<f64>) -> Self {
        debug_assert!(probs.iter().all(|&p| (0.0..=1.0).contains(&p)));
        ClassDistribution(probs)
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.0
    }

    pub fn probability(&self, class: usize) -> f64 {
        self.0[class]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Most probable class, ties broken by the lowest class index.
    pub fn argmax(&self) -> usize {
        let mut best = 0;
        for (i, &p) in self.0.iter().enumerate().skip(1) {
            if p > self.0[best] {
                best = i;
            }
        }
        best
    }
}

/// One scored instance: the predicted label, the class distribution, and the
/// raw decision value for margin classifiers.
#[derive(Debug, Clone, PartialEq)]
pub struct Prediction {
    pub label: usize,
    pub distribution: ClassDistribution,
    pub decision_value: Option<f64>,
}

/// Tagged union over the trained model kinds, as persisted in model files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TrainedModel {
    NaiveBayes(NaiveBayesModel),
    Svm(SvmModel),
}

impl TrainedModel {
    pub fn predict(&self, x: &SparseVector) -> Result<Prediction, ClassifierError> {
        match self {
            TrainedModel::NaiveBayes(m) => {
                let dist = m.predict(x)?;
                Ok(Prediction {
                    label: dist.argmax(),
                    distribution: dist,
                    decision_value: None,
                })
            }
            TrainedModel::Svm(m) => m.predict(x),
        }
    }

    pub fn n_classes(&self) -> usize {
        match self {
            TrainedModel::NaiveBayes(m) => m.n_classes(),
            TrainedModel::Svm(_) => 2,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            TrainedModel::NaiveBayes(m) => m.dim(),
            TrainedModel::Svm(m) => m.dim(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_score_normalization_is_shift_invariant() {
        let scores = [-3.0, -1.5, -2.0];
        let shifted: Vec<f64> = scores.iter().map(|s| s + 7.3).collect();
        let a = ClassDistribution::from_log_scores(&scores);
        let b = ClassDistribution::from_log_scores(&shifted);
        for (pa, pb) in a.probabilities().iter().zip(b.probabilities()) {
            assert!((pa - pb).abs() < 1e-12);
        }
        assert_eq!(a.argmax(), b.argmax());
    }

    #[test]
    fn argmax_breaks_ties_to_lowest_index() {
        let dist = ClassDistribution::from_probabilities(vec![0.4, 0.4, 0.2]);
        assert_eq!(dist.argmax(), 0);
    }

    #[test]
    fn priors_are_laplace_corrected() {
        let priors = class_priors(&[0, 0, 1], 2);
        assert_eq!(priors, vec![3.0 / 5.0, 2.0 / 5.0]);
        let sum: f64 = priors.iter().sum();
        assert!((sum - 1.0).abs() < 1e-12);
    }

    #[test]
    fn vectorized_dataset_validates_inputs() {
        use crate::features::SparseVector;
        let v = vec![SparseVector::empty(3)];
        assert!(matches!(
            VectorizedDataset::new(v.clone(), vec![5], 2),
            Err(ClassifierError::LabelOutOfRange { .. })
        ));
        assert!(matches!(
            VectorizedDataset::new(v, vec![0, 1], 2),
            Err(ClassifierError::LengthMismatch { .. })
        ));
        assert!(matches!(
            VectorizedDataset::new(vec![], vec![], 2),
            Err(ClassifierError::EmptyTrainingSet)
        ));
    }
}
