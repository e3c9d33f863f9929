//! Naive Bayes with multinomial (count/weight features) and Gaussian
//! (arbitrary numeric features) likelihoods.
//!
//! Priors are Laplace-corrected, (N_c + 1)/(N + C). The multinomial term
//! probabilities use additive smoothing alpha; Gaussian standard deviations
//! are clamped to a per-attribute floor so zero-variance attributes keep
//! likelihoods finite.

use serde::{Deserialize, Serialize};

use super::{class_priors, ClassDistribution, ClassifierError, VectorizedDataset};
use crate::features::SparseVector;

/// Which likelihood family to fit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NbVariant {
    Multinomial,
    Gaussian,
}

/// Per-class likelihood parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "lowercase")]
pub enum NbLikelihood {
    Multinomial {
        alpha: f64,
        /// theta[c][t]: smoothed probability of term t under class c.
        theta: Vec<Vec<f64>>,
    },
    Gaussian {
        /// means[c][a], stddevs[c][a] per class and attribute.
        means: Vec<Vec<f64>>,
        stddevs: Vec<Vec<f64>>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NaiveBayesModel {
    priors: Vec<f64>,
    dim: usize,
    likelihood: NbLikelihood,
}

const LN_2PI: f64 = 1.8378770664093453;

fn ln_normal_density(x: f64, mean: f64, stddev: f64) -> f64 {
    let z = (x - mean) / stddev;
    -stddev.ln() - 0.5 * (LN_2PI + z * z)
}

impl NaiveBayesModel {
    /// Fits the model on a vectorized training set.
    ///
    /// Every class must have at least one instance; alpha must be positive
    /// for the multinomial variant.
    pub fn train(
        data: &VectorizedDataset,
        variant: NbVariant,
        alpha: f64,
    ) -> Result<Self, ClassifierError> {
        let counts = data.class_counts();
        if let Some(missing) = counts.iter().position(|&c| c == 0) {
            return Err(ClassifierError::MissingClass(missing));
        }
        let priors = class_priors(data.labels(), data.n_classes());
        let likelihood = match variant {
            NbVariant::Multinomial => {
                if alpha <= 0.0 {
                    return Err(ClassifierError::InvalidAlpha(alpha));
                }
                Self::fit_multinomial(data, alpha)?
            }
            NbVariant::Gaussian => Self::fit_gaussian(data, &counts),
        };
        Ok(NaiveBayesModel {
            priors,
            dim: data.dim(),
            likelihood,
        })
    }

    fn fit_multinomial(
        data: &VectorizedDataset,
        alpha: f64,
    ) -> Result<NbLikelihood, ClassifierError> {
        let c = data.n_classes();
        let dim = data.dim();
        let mut term_counts = vec![vec![0.0f64; dim]; c];
        for (x, &label) in data.vectors().iter().zip(data.labels()) {
            for (idx, w) in x.iter() {
                if w < 0.0 {
                    return Err(ClassifierError::NegativeFeature(w));
                }
                term_counts[label][idx] += w;
            }
        }
        let theta = term_counts
            .into_iter()
            .map(|counts| {
                let total: f64 = counts.iter().sum();
                let denom = total + alpha * dim as f64;
                counts.iter().map(|&n| (n + alpha) / denom).collect()
            })
            .collect();
        Ok(NbLikelihood::Multinomial { alpha, theta })
    }

    fn fit_gaussian(data: &VectorizedDataset, counts: &[usize]) -> NbLikelihood {
        let c = data.n_classes();
        let dim = data.dim();
        let n = data.len() as f64;
        let mut sums = vec![vec![0.0f64; dim]; c];
        let mut sq_sums = vec![vec![0.0f64; dim]; c];
        let mut global_sums = vec![0.0f64; dim];
        let mut global_sq_sums = vec![0.0f64; dim];
        // implicit sparse zeros contribute nothing to sums, so a plain
        // accumulation over stored entries covers all N_c values
        for (x, &label) in data.vectors().iter().zip(data.labels()) {
            for (idx, w) in x.iter() {
                sums[label][idx] += w;
                sq_sums[label][idx] += w * w;
                global_sums[idx] += w;
                global_sq_sums[idx] += w * w;
            }
        }
        let floors: Vec<f64> = (0..dim)
            .map(|a| {
                let mean = global_sums[a] / n;
                let var = (global_sq_sums[a] / n - mean * mean).max(0.0);
                let std = var.sqrt();
                if std == 0.0 {
                    1e-3
                } else {
                    1e-3 * std
                }
            })
            .collect();
        let mut means = vec![vec![0.0f64; dim]; c];
        let mut stddevs = vec![vec![0.0f64; dim]; c];
        for class in 0..c {
            let nc = counts[class] as f64;
            for a in 0..dim {
                let mean = sums[class][a] / nc;
                let var = (sq_sums[class][a] / nc - mean * mean).max(0.0);
                means[class][a] = mean;
                stddevs[class][a] = var.sqrt().max(floors[a]);
            }
        }
        NbLikelihood::Gaussian { means, stddevs }
    }

    /// Posterior distribution over classes; log-scores are softmax-normalized
    /// and ties in the argmax go to the lowest class index.
    pub fn predict(&self, x: &SparseVector) -> Result<ClassDistribution, ClassifierError> {
        if x.dim() != self.dim {
            return Err(ClassifierError::DimensionMismatch {
                expected: self.dim,
                found: x.dim(),
            });
        }
        let log_scores: Vec<f64> = match &self.likelihood {
            NbLikelihood::Multinomial { theta, .. } => self
                .priors
                .iter()
                .zip(theta)
                .map(|(&prior, theta_c)| {
                    prior.ln() + x.iter().map(|(idx, w)| w * theta_c[idx].ln()).sum::<f64>()
                })
                .collect(),
            NbLikelihood::Gaussian { means, stddevs } => self
                .priors
                .iter()
                .enumerate()
                .map(|(class, &prior)| {
                    let means_c = &means[class];
                    let stddevs_c = &stddevs[class];
                    // every attribute contributes; start from the all-zeros
                    // baseline and correct the stored entries
                    let mut ll: f64 = (0..self.dim)
                        .map(|a| ln_normal_density(0.0, means_c[a], stddevs_c[a]))
                        .sum();
                    for (idx, w) in x.iter() {
                        ll += ln_normal_density(w, means_c[idx], stddevs_c[idx])
                            - ln_normal_density(0.0, means_c[idx], stddevs_c[idx]);
                    }
                    prior.ln() + ll
                })
                .collect(),
        };
        Ok(ClassDistribution::from_log_scores(&log_scores))
    }

    pub fn priors(&self) -> &[f64] {
        &self.priors
    }

    pub fn n_classes(&self) -> usize {
        self.priors.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn likelihood(&self) -> &NbLikelihood {
        &self.likelihood
    }
}
