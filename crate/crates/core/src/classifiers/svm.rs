//! Two-class linear SVM trained by Pegasos-style stochastic subgradient
//! descent on the regularized hinge objective
//!
//!   F(w, b) = (lambda/2)||w||^2 + (1/N) sum_i max(0, 1 - y_i (w.x_i + b))
//!
//! with y in {-1, +1}, a per-epoch seeded shuffle, step size 1/(lambda*t)
//! under a global step counter t, and an unregularized bias. Class
//! probabilities come from a Platt sigmoid fitted on the training decision
//! values; the predicted label comes from the sign of the decision value.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::platt::{fit_platt, PlattCalibration};
use super::{ClassDistribution, ClassifierError, Prediction, VectorizedDataset};
use crate::features::SparseVector;

/// Regularization, epoch count and shuffle seed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SvmHyperParams {
    pub lambda: f64,
    pub epochs: usize,
    pub seed: u64,
}

impl Default for SvmHyperParams {
    fn default() -> Self {
        SvmHyperParams {
            lambda: 1e-4,
            epochs: 10,
            seed: 42,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SvmModel {
    weights: Vec<f64>,
    bias: f64,
    lambda: f64,
    calibration: PlattCalibration,
    positive_class: usize,
}

/// Value of the regularized hinge objective at (weights, bias).
pub fn objective(weights: &[f64], bias: f64, lambda: f64, data: &VectorizedDataset) -> f64 {
    let norm_sq: f64 = weights.iter().map(|w| w * w).sum();
    let hinge: f64 = data
        .vectors()
        .iter()
        .zip(data.labels())
        .map(|(x, &label)| {
            let y = if label == 1 { 1.0 } else { -1.0 };
            (1.0 - y * (x.dot_dense(weights) + bias)).max(0.0)
        })
        .sum();
    0.5 * lambda * norm_sq + hinge / data.len() as f64
}

/// Analytic (sub)gradient of the objective at (weights, bias); away from the
/// hinge kinks (no margin exactly 1) this is the gradient.
pub fn objective_gradient(
    weights: &[f64],
    bias: f64,
    lambda: f64,
    data: &VectorizedDataset,
) -> (Vec<f64>, f64) {
    let n = data.len() as f64;
    let mut grad: Vec<f64> = weights.iter().map(|w| lambda * w).collect();
    let mut grad_bias = 0.0;
    for (x, &label) in data.vectors().iter().zip(data.labels()) {
        let y = if label == 1 { 1.0 } else { -1.0 };
        if y * (x.dot_dense(weights) + bias) < 1.0 {
            for (idx, w) in x.iter() {
                grad[idx] -= y * w / n;
            }
            grad_bias -= y / n;
        }
    }
    (grad, grad_bias)
}

/// Trains the SVM. Exactly two classes are required; class index 1 is the
/// positive class. Identical (data, hyperparams) give bitwise-identical
/// models.
pub fn train_svm(
    data: &VectorizedDataset,
    hyper: &SvmHyperParams,
) -> Result<SvmModel, ClassifierError> {
    if data.n_classes() != 2 {
        return Err(ClassifierError::NotTwoClass(data.n_classes()));
    }
    let counts = data.class_counts();
    if let Some(missing) = counts.iter().position(|&c| c == 0) {
        return Err(ClassifierError::MissingClass(missing));
    }
    if hyper.lambda <= 0.0 {
        return Err(ClassifierError::InvalidLambda(hyper.lambda));
    }
    if hyper.epochs == 0 {
        return Err(ClassifierError::InvalidEpochs);
    }

    let mut weights = vec![0.0f64; data.dim()];
    let mut bias = 0.0f64;
    let mut rng = ChaCha8Rng::seed_from_u64(hyper.seed);
    let mut order: Vec<usize> = (0..data.len()).collect();
    let mut t = 0u64;

    for _ in 0..hyper.epochs {
        order.shuffle(&mut rng);
        for &i in &order {
            t += 1;
            let eta = 1.0 / (hyper.lambda * t as f64);
            let x = &data.vectors()[i];
            let y = if data.labels()[i] == 1 { 1.0 } else { -1.0 };
            let margin = y * (x.dot_dense(&weights) + bias);
            // w <- (1 - eta*lambda) w  [+ eta*y*x on margin violation]
            let shrink = 1.0 - eta * hyper.lambda;
            for w in weights.iter_mut() {
                *w *= shrink;
            }
            if margin < 1.0 {
                for (idx, v) in x.iter() {
                    weights[idx] += eta * y * v;
                }
                bias += eta * y;
            }
        }
    }

    let decisions: Vec<f64> = data
        .vectors()
        .iter()
        .map(|x| x.dot_dense(&weights) + bias)
        .collect();
    let positives: Vec<bool> = data.labels().iter().map(|&l| l == 1).collect();
    let calibration = fit_platt(&decisions, &positives);

    Ok(SvmModel {
        weights,
        bias,
        lambda: hyper.lambda,
        calibration,
        positive_class: 1,
    })
}

impl SvmModel {
    /// Raw decision value w.x + b.
    pub fn decision(&self, x: &SparseVector) -> Result<f64, ClassifierError> {
        if x.dim() != self.weights.len() {
            return Err(ClassifierError::DimensionMismatch {
                expected: self.weights.len(),
                found: x.dim(),
            });
        }
        Ok(x.dot_dense(&self.weights) + self.bias)
    }

    /// Calibrated distribution plus the sign-based label: positive for
    /// f > 0, negative for f < 0, and the lowest class index on the exact
    /// tie f = 0.
    pub fn predict(&self, x: &SparseVector) -> Result<Prediction, ClassifierError> {
        let f = self.decision(x)?;
        let p_pos = self.calibration.probability(f);
        let negative_class = 1 - self.positive_class;
        let mut probs = vec![0.0; 2];
        probs[self.positive_class] = p_pos;
        probs[negative_class] = 1.0 - p_pos;
        let label = if f > 0.0 {
            self.positive_class
        } else if f < 0.0 {
            negative_class
        } else {
            self.positive_class.min(negative_class)
        };
        Ok(Prediction {
            label,
            distribution: ClassDistribution::from_probabilities(probs),
            decision_value: Some(f),
        })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn bias(&self) -> f64 {
        self.bias
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn calibration(&self) -> &PlattCalibration {
        &self.calibration
    }

    pub fn positive_class(&self) -> usize {
        self.positive_class
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }
}
