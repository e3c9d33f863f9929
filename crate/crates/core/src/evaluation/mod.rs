//! Scoring: confusion matrices, Kappa, per-class statistics with ROC areas,
//! probability error measures, Kononenko-Bratko information scores and class
//! complexity, assembled into an [`EvaluationReport`] and rendered as a
//! fixed-layout text block.
//!
//! All statistics are deterministic sequential reductions over instance
//! order. Predicted probabilities are clamped to [1e-10, 1 - 1e-10] before
//! any logarithm so overconfident wrong predictions keep every score finite.

mod render;
mod split;

pub use render::render_report;
pub use split::{stratified_split, stratified_split_indices, SplitIndices};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classifiers::{ClassDistribution, ClassifierError, TrainedModel};
use crate::corpus::CorpusError;
use crate::features::SparseVector;

/// Probability clamp applied before logarithms.
pub const PROB_CLAMP: f64 = 1e-10;

#[derive(Debug, Error, PartialEq)]
pub enum EvalError {
    #[error("test fraction must be in (0,1), got {0}")]
    InvalidFraction(f64),
    #[error("dataset has no instances")]
    EmptyDataset,
    #[error("cannot evaluate an empty test set")]
    EmptyTestSet,
    #[error("length mismatch: {left} actuals vs {right} predictions")]
    LengthMismatch { left: usize, right: usize },
    #[error("label {label} out of range for {classes} classes")]
    UnknownLabel { label: usize, classes: usize },
    #[error("confusion matrix is not square")]
    MalformedMatrix,
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error(transparent)]
    Classifier(#[from] ClassifierError),
}

/// C x C counts; cell (i, j) holds instances of actual class i predicted as
/// class j.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    labels: Vec<String>,
    counts: Vec<Vec<u64>>,
}

impl ConfusionMatrix {
    pub fn from_counts(labels: Vec<String>, counts: Vec<Vec<u64>>) -> Result<Self, EvalError> {
        if counts.len() != labels.len() || counts.iter().any(|row| row.len() != labels.len()) {
            return Err(EvalError::MalformedMatrix);
        }
        Ok(ConfusionMatrix { labels, counts })
    }

    pub fn from_predictions(
        labels: Vec<String>,
        actuals: &[usize],
        predicted: &[usize],
    ) -> Result<Self, EvalError> {
        if actuals.len() != predicted.len() {
            return Err(EvalError::LengthMismatch {
                left: actuals.len(),
                right: predicted.len(),
            });
        }
        let c = labels.len();
        let mut counts = vec![vec![0u64; c]; c];
        for (&a, &p) in actuals.iter().zip(predicted) {
            if a >= c {
                return Err(EvalError::UnknownLabel {
                    label: a,
                    classes: c,
                });
            }
            if p >= c {
                return Err(EvalError::UnknownLabel {
                    label: p,
                    classes: c,
                });
            }
            counts[a][p] += 1;
        }
        Ok(ConfusionMatrix { labels, counts })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn counts(&self) -> &[Vec<u64>] {
        &self.counts
    }

    pub fn n_classes(&self) -> usize {
        self.labels.len()
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    pub fn correct(&self) -> u64 {
        (0..self.n_classes()).map(|i| self.counts[i][i]).sum()
    }

    pub fn accuracy(&self) -> f64 {
        self.correct() as f64 / self.total() as f64
    }

    pub fn row_sum(&self, i: usize) -> u64 {
        self.counts[i].iter().sum()
    }

    pub fn col_sum(&self, j: usize) -> u64 {
        self.counts.iter().map(|row| row[j]).sum()
    }
}

/// Chance-corrected agreement (p_o - p_e)/(1 - p_e); 0 when p_e = 1.
pub fn kappa(cm: &ConfusionMatrix) -> f64 {
    let n = cm.total() as f64;
    let p_o = cm.correct() as f64 / n;
    let p_e: f64 = (0..cm.n_classes())
        .map(|c| cm.row_sum(c) as f64 * cm.col_sum(c) as f64)
        .sum::<f64>()
        / (n * n);
    if p_e >= 1.0 {
        0.0
    } else {
        (p_o - p_e) / (1.0 - p_e)
    }
}

/// One row of the per-class table. `recall` always equals `tp_rate`; the
/// F-measure is 0 when precision + recall is 0, and the ROC area is missing
/// when it is undefined for the class.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerClassRow {
    pub tp_rate: f64,
    pub fp_rate: f64,
    pub precision: f64,
    pub recall: f64,
    pub f_measure: f64,
    pub roc_area: Option<f64>,
}

/// Per-class rows plus the support-weighted average row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerClassStats {
    pub rows: Vec<PerClassRow>,
    pub weighted: PerClassRow,
}

fn ratio(num: f64, denom: f64) -> f64 {
    if denom == 0.0 {
        0.0
    } else {
        num / denom
    }
}

/// Derives per-class rates from the matrix, attaching externally computed
/// ROC areas (one optional value per class, in class order).
pub fn per_class_stats(cm: &ConfusionMatrix, roc_areas: &[Option<f64>]) -> PerClassStats {
    let c = cm.n_classes();
    let n = cm.total() as f64;
    let mut rows = Vec::with_capacity(c);
    for class in 0..c {
        let tp = cm.counts[class][class] as f64;
        let support = cm.row_sum(class) as f64;
        let fp = cm.col_sum(class) as f64 - tp;
        let fn_ = support - tp;
        let tn = n - tp - fp - fn_;
        let tp_rate = ratio(tp, tp + fn_);
        let precision = ratio(tp, tp + fp);
        rows.push(PerClassRow {
            tp_rate,
            fp_rate: ratio(fp, fp + tn),
            precision,
            recall: tp_rate,
            f_measure: ratio(2.0 * precision * tp_rate, precision + tp_rate),
            roc_area: roc_areas.get(class).copied().flatten(),
        });
    }

    let weighted = |get: &dyn Fn(&PerClassRow) -> f64| -> f64 {
        rows.iter()
            .enumerate()
            .map(|(class, row)| cm.row_sum(class) as f64 * get(row))
            .sum::<f64>()
            / n
    };
    let roc_supported: f64 = rows
        .iter()
        .enumerate()
        .filter(|(_, r)| r.roc_area.is_some())
        .map(|(class, _)| cm.row_sum(class) as f64)
        .sum();
    let weighted_roc = if roc_supported == 0.0 {
        None
    } else {
        Some(
            rows.iter()
                .enumerate()
                .filter_map(|(class, r)| r.roc_area.map(|a| cm.row_sum(class) as f64 * a))
                .sum::<f64>()
                / roc_supported,
        )
    };
    let weighted = PerClassRow {
        tp_rate: weighted(&|r| r.tp_rate),
        fp_rate: weighted(&|r| r.fp_rate),
        precision: weighted(&|r| r.precision),
        recall: weighted(&|r| r.recall),
        f_measure: weighted(&|r| r.f_measure),
        roc_area: weighted_roc,
    };
    PerClassStats { rows, weighted }
}

/// ROC area by the Mann-Whitney rank statistic; tied scores contribute half
/// per tied positive-negative pair. `None` when either class is absent.
pub fn roc_auc(scores: &[f64], positives: &[bool]) -> Option<f64> {
    let n_pos = positives.iter().filter(|&&p| p).count();
    let n_neg = positives.len() - n_pos;
    if n_pos == 0 || n_neg == 0 {
        return None;
    }
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[a].partial_cmp(&scores[b]).unwrap());

    // average ranks across ties (1-based ranks)
    let mut rank = vec![0.0f64; scores.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && scores[order[j + 1]] == scores[order[i]] {
            j += 1;
        }
        let avg = (i + 1 + j + 1) as f64 / 2.0;
        for &idx in &order[i..=j] {
            rank[idx] = avg;
        }
        i = j + 1;
    }

    let rank_sum: f64 = positives
        .iter()
        .enumerate()
        .filter(|&(_, &p)| p)
        .map(|(i, _)| rank[i])
        .sum();
    let u = rank_sum - (n_pos * (n_pos + 1)) as f64 / 2.0;
    Some(u / (n_pos as f64 * n_neg as f64))
}

/// Mean absolute / root mean squared probability error, with the relative
/// variants against the prior predictor (missing when the prior predictor
/// itself has zero error).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorStats {
    pub mae: f64,
    pub rmse: f64,
    pub rae_pct: Option<f64>,
    pub rrse_pct: Option<f64>,
}

/// Probability error measures over indicator targets, per
/// MAE = sum |p_hat - y| / (N*C) and RMSE = sqrt(sum (p_hat - y)^2 / (N*C));
/// the baseline predictor outputs `priors` for every instance.
pub fn error_stats(dists: &[ClassDistribution], actuals: &[usize], priors: &[f64]) -> ErrorStats {
    let n = actuals.len();
    let c = priors.len();
    let mut abs_sum = 0.0;
    let mut sq_sum = 0.0;
    let mut prior_abs_sum = 0.0;
    let mut prior_sq_sum = 0.0;
    for (dist, &actual) in dists.iter().zip(actuals) {
        for (class, &prior) in priors.iter().enumerate() {
            let y = if class == actual { 1.0 } else { 0.0 };
            let d = dist.probability(class) - y;
            abs_sum += d.abs();
            sq_sum += d * d;
            let dp = prior - y;
            prior_abs_sum += dp.abs();
            prior_sq_sum += dp * dp;
        }
    }
    let denom = (n * c) as f64;
    let mae = abs_sum / denom;
    let rmse = (sq_sum / denom).sqrt();
    let prior_mae = prior_abs_sum / denom;
    let prior_rmse = (prior_sq_sum / denom).sqrt();
    // ratio before scaling: a predictor identical to the prior scores
    // exactly 100
    ErrorStats {
        mae,
        rmse,
        rae_pct: (prior_mae > 0.0).then(|| 100.0 * (mae / prior_mae)),
        rrse_pct: (prior_rmse > 0.0).then(|| 100.0 * (rmse / prior_rmse)),
    }
}

fn clamp_prob(p: f64) -> f64 {
    p.clamp(PROB_CLAMP, 1.0 - PROB_CLAMP)
}

/// Kononenko-Bratko information scores.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KbScores {
    pub relative_pct: f64,
    pub total_bits: f64,
}

/// Per instance, with prior q of the actual class and posterior p assigned
/// to it: Inf = log2(p/q) when p >= q, else -log2((1-p)/(1-q)). The relative
/// score is the sum of per-instance percentages 100*Inf/(-log2 q).
pub fn kb_scores(dists: &[ClassDistribution], actuals: &[usize], priors: &[f64]) -> KbScores {
    let mut total_bits = 0.0;
    let mut relative_pct = 0.0;
    for (dist, &actual) in dists.iter().zip(actuals) {
        let q = priors[actual];
        let p = clamp_prob(dist.probability(actual));
        let inf = if p >= q {
            (p / q).log2()
        } else {
            -((1.0 - p) / (1.0 - q)).log2()
        };
        total_bits += inf;
        relative_pct += 100.0 * inf / (-q.log2());
    }
    KbScores {
        relative_pct,
        total_bits,
    }
}

/// Bits to encode the actual labels under the prior (order 0) and under the
/// model's predicted distributions (scheme); Sf is their difference.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassComplexity {
    pub order0_bits: f64,
    pub scheme_bits: f64,
}

impl ClassComplexity {
    pub fn sf_bits(&self) -> f64 {
        self.order0_bits - self.scheme_bits
    }
}

pub fn class_complexity(
    dists: &[ClassDistribution],
    actuals: &[usize],
    priors: &[f64],
) -> ClassComplexity {
    let mut order0 = 0.0;
    let mut scheme = 0.0;
    for (dist, &actual) in dists.iter().zip(actuals) {
        order0 += -priors[actual].log2();
        scheme += -clamp_prob(dist.probability(actual)).log2();
    }
    ClassComplexity {
        order0_bits: order0,
        scheme_bits: scheme,
    }
}

/// Every statistic of the evaluation block plus the confusion matrix and the
/// per-class table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationReport {
    pub n: usize,
    pub correct: usize,
    pub kappa: f64,
    pub kb: KbScores,
    pub complexity: ClassComplexity,
    pub errors: ErrorStats,
    pub confusion: ConfusionMatrix,
    pub per_class: PerClassStats,
}

impl EvaluationReport {
    pub fn incorrect(&self) -> usize {
        self.n - self.correct
    }

    pub fn correct_pct(&self) -> f64 {
        100.0 * self.correct as f64 / self.n as f64
    }

    pub fn incorrect_pct(&self) -> f64 {
        100.0 * self.incorrect() as f64 / self.n as f64
    }

    pub fn kb_bits_per_instance(&self) -> f64 {
        self.kb.total_bits / self.n as f64
    }

    pub fn order0_bits_per_instance(&self) -> f64 {
        self.complexity.order0_bits / self.n as f64
    }

    pub fn scheme_bits_per_instance(&self) -> f64 {
        self.complexity.scheme_bits / self.n as f64
    }

    pub fn sf_bits(&self) -> f64 {
        self.complexity.sf_bits()
    }

    pub fn sf_bits_per_instance(&self) -> f64 {
        self.sf_bits() / self.n as f64
    }
}

/// Builds the full report from per-instance predictions.
pub fn assemble_report(
    predicted: &[usize],
    dists: &[ClassDistribution],
    actuals: &[usize],
    class_names: &[String],
    priors: &[f64],
) -> Result<EvaluationReport, EvalError> {
    if actuals.is_empty() {
        return Err(EvalError::EmptyTestSet);
    }
    if predicted.len() != actuals.len() || dists.len() != actuals.len() {
        return Err(EvalError::LengthMismatch {
            left: actuals.len(),
            right: predicted.len().max(dists.len()),
        });
    }
    let confusion = ConfusionMatrix::from_predictions(class_names.to_vec(), actuals, predicted)?;
    let roc_areas: Vec<Option<f64>> = (0..class_names.len())
        .map(|class| {
            let scores: Vec<f64> = dists.iter().map(|d| d.probability(class)).collect();
            let positives: Vec<bool> = actuals.iter().map(|&a| a == class).collect();
            roc_auc(&scores, &positives)
        })
        .collect();
    Ok(EvaluationReport {
        n: actuals.len(),
        correct: confusion.correct() as usize,
        kappa: kappa(&confusion),
        kb: kb_scores(dists, actuals, priors),
        complexity: class_complexity(dists, actuals, priors),
        errors: error_stats(dists, actuals, priors),
        per_class: per_class_stats(&confusion, &roc_areas),
        confusion,
    })
}

/// Runs the model over the test vectors once and assembles the report.
pub fn evaluate(
    model: &TrainedModel,
    vectors: &[SparseVector],
    actuals: &[usize],
    class_names: &[String],
    priors: &[f64],
) -> Result<EvaluationReport, EvalError> {
    if vectors.is_empty() {
        return Err(EvalError::EmptyTestSet);
    }
    if vectors.len() != actuals.len() {
        return Err(EvalError::LengthMismatch {
            left: actuals.len(),
            right: vectors.len(),
        });
    }
    let mut predicted = Vec::with_capacity(vectors.len());
    let mut dists = Vec::with_capacity(vectors.len());
    for x in vectors {
        let p = model.predict(x)?;
        predicted.push(p.label);
        dists.push(p.distribution);
    }
    assemble_report(&predicted, &dists, actuals, class_names, priors)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels2() -> Vec<String> {
        vec!["non-offensive".into(), "offensive".into()]
    }

    /// The reference Naive Bayes confusion matrix.
    fn nb_matrix() -> ConfusionMatrix {
        ConfusionMatrix::from_counts(labels2(), vec![vec![4788, 627], vec![1887, 5195]]).unwrap()
    }

    /// The reference SVM confusion matrix.
    fn svm_matrix() -> ConfusionMatrix {
        ConfusionMatrix::from_counts(labels2(), vec![vec![5333, 82], vec![47, 7035]]).unwrap()
    }

    #[test]
    fn nb_matrix_accuracy_matches_reference_value() {
        let cm = nb_matrix();
        assert_eq!(cm.total(), 12497);
        assert_eq!(cm.correct(), 9983);
        assert!((cm.accuracy() * 100.0 - 79.8832).abs() < 5e-4);
    }

    #[test]
    fn svm_matrix_accuracy_matches_reference_value() {
        let cm = svm_matrix();
        assert_eq!(cm.correct(), 12368);
        assert!((cm.accuracy() * 100.0 - 98.9678).abs() < 5e-4);
    }

    #[test]
    fn all_correct_predictions_give_diagonal_matrix() {
        let cm =
            ConfusionMatrix::from_predictions(labels2(), &[0, 1, 1, 0], &[0, 1, 1, 0]).unwrap();
        assert_eq!(cm.counts(), &[vec![2, 0], vec![0, 2]]);
        assert_eq!(cm.accuracy(), 1.0);
    }

    #[test]
    fn kappa_matches_reference_values() {
        assert!((kappa(&nb_matrix()) - 0.6013).abs() < 1e-4);
        assert!((kappa(&svm_matrix()) - 0.979).abs() < 1e-3);
    }

    #[test]
    fn kappa_of_perfect_diagonal_is_one() {
        let cm = ConfusionMatrix::from_counts(labels2(), vec![vec![3, 0], vec![0, 7]]).unwrap();
        assert_eq!(kappa(&cm), 1.0);
    }

    #[test]
    fn kappa_degenerate_single_cell_is_zero() {
        let cm = ConfusionMatrix::from_counts(vec!["a".into()], vec![vec![5]]).unwrap();
        assert_eq!(kappa(&cm), 0.0);
    }

    #[test]
    fn per_class_stats_match_reference_nb_table() {
        let stats = per_class_stats(&nb_matrix(), &[None, None]);
        let non = &stats.rows[0];
        assert!((non.precision - 0.717).abs() < 5e-4);
        assert!((non.recall - 0.884).abs() < 5e-4);
        assert!((non.f_measure - 0.792).abs() < 5e-4);
        assert!((non.fp_rate - 0.266).abs() < 5e-4);
        assert!((stats.weighted.precision - 0.816).abs() < 5e-4);
        assert!((stats.weighted.tp_rate - 0.799).abs() < 5e-4);
    }

    #[test]
    fn per_class_stats_match_reference_svm_table() {
        let stats = per_class_stats(&svm_matrix(), &[None, None]);
        assert!((stats.rows[0].precision - 0.991).abs() < 5e-4);
        assert!((stats.rows[0].f_measure - 0.988).abs() < 5e-4);
        assert!((stats.rows[1].precision - 0.988).abs() < 5e-4);
    }

    #[test]
    fn weighted_tp_rate_equals_accuracy() {
        for cm in [nb_matrix(), svm_matrix()] {
            let stats = per_class_stats(&cm, &[None, None]);
            assert!((stats.weighted.tp_rate - cm.accuracy()).abs() < 1e-9);
        }
    }

    #[test]
    fn auc_matches_pairwise_counting_fixture() {
        // oracle: brute-force count over all 4 positive-negative pairs:
        // (0.9 beats both, 0.4 beats only 0.1) -> 3/4
        let scores = [0.9, 0.4, 0.6, 0.1];
        let positives = [true, true, false, false];
        assert_eq!(roc_auc(&scores, &positives), Some(0.75));
    }

    #[test]
    fn auc_perfect_separation_is_one() {
        let scores = [0.9, 0.8, 0.2, 0.1];
        let positives = [true, true, false, false];
        assert_eq!(roc_auc(&scores, &positives), Some(1.0));
    }

    #[test]
    fn auc_all_ties_is_half() {
        let scores = [0.5, 0.5, 0.5, 0.5];
        let positives = [true, false, true, false];
        assert_eq!(roc_auc(&scores, &positives), Some(0.5));
    }

    #[test]
    fn auc_single_class_is_missing() {
        assert_eq!(roc_auc(&[0.1, 0.9], &[true, true]), None);
    }

    fn dist(p: &[f64]) -> ClassDistribution {
        ClassDistribution::from_probabilities(p.to_vec())
    }

    #[test]
    fn error_stats_match_hand_computed_example() {
        // oracle: formula by hand -> MAE (0.4+1.2)/4, RMSE sqrt(0.8/4)
        let dists = vec![dist(&[0.8, 0.2]), dist(&[0.6, 0.4])];
        let stats = error_stats(&dists, &[0, 1], &[0.5, 0.5]);
        assert!((stats.mae - 0.4).abs() < 1e-12);
        assert!((stats.rmse - 0.2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn perfect_predictions_have_zero_error() {
        let dists = vec![dist(&[1.0, 0.0]), dist(&[0.0, 1.0])];
        let stats = error_stats(&dists, &[0, 1], &[0.5, 0.5]);
        assert_eq!(stats.mae, 0.0);
        assert_eq!(stats.rmse, 0.0);
    }

    #[test]
    fn prior_predictor_relative_errors_are_exactly_100() {
        let priors = [0.6, 0.4];
        let dists = vec![dist(&priors), dist(&priors), dist(&priors)];
        let stats = error_stats(&dists, &[0, 1, 0], &priors);
        assert_eq!(stats.rae_pct, Some(100.0));
        assert_eq!(stats.rrse_pct, Some(100.0));
    }

    #[test]
    fn kb_scores_are_zero_when_posterior_equals_prior() {
        let priors = [0.7, 0.3];
        let dists = vec![dist(&priors), dist(&priors)];
        let kb = kb_scores(&dists, &[0, 1], &priors);
        assert_eq!(kb.total_bits, 0.0);
        assert_eq!(kb.relative_pct, 0.0);
        let cx = class_complexity(&dists, &[0, 1], &priors);
        assert!((cx.sf_bits()).abs() < 1e-9);
        assert_eq!(cx.scheme_bits, cx.order0_bits);
    }

    #[test]
    fn confident_correct_prediction_is_about_one_bit() {
        // oracle: q = 0.5, p clamped to 1-1e-10 -> Inf ~ 1 bit, relative ~ 100%
        let kb = kb_scores(&[dist(&[0.0, 1.0])], &[1], &[0.5, 0.5]);
        assert!((kb.total_bits - 1.0).abs() < 1e-9);
        assert!((kb.relative_pct - 100.0).abs() < 1e-7);
    }

    #[test]
    fn reference_ratios_are_internally_consistent() {
        // 6347.927/12497 = 0.508 and 12336.1197/12497 = 0.9871
        assert!((6347.927_f64 / 12497.0 - 0.508).abs() < 1e-3);
        assert!((12336.1197_f64 / 12497.0 - 0.9871).abs() < 1e-3);
        // and the reference Sf line is the definitional difference
        assert!((12336.1197_f64 - 15728.4368 - (-3392.3171)).abs() < 1e-9);
    }

    #[test]
    fn class_complexity_of_perfect_uniform_case() {
        let n = 50;
        let dists: Vec<ClassDistribution> = (0..n)
            .map(|i| {
                if i % 2 == 0 {
                    dist(&[1.0, 0.0])
                } else {
                    dist(&[0.0, 1.0])
                }
            })
            .collect();
        let actuals: Vec<usize> = (0..n).map(|i| i % 2).collect();
        let cx = class_complexity(&dists, &actuals, &[0.5, 0.5]);
        assert!((cx.order0_bits - n as f64).abs() < 1e-9);
        assert!(cx.scheme_bits.abs() < 1e-6);
        assert!((cx.sf_bits() - n as f64).abs() < 1e-6);
    }

    #[test]
    fn assemble_report_is_internally_consistent() {
        let dists = vec![
            dist(&[0.9, 0.1]),
            dist(&[0.2, 0.8]),
            dist(&[0.6, 0.4]),
            dist(&[0.3, 0.7]),
        ];
        let predicted = [0, 1, 0, 1];
        let actuals = [0, 1, 1, 1];
        let report =
            assemble_report(&predicted, &dists, &actuals, &labels2(), &[0.4, 0.6]).unwrap();
        assert_eq!(report.n, 4);
        assert_eq!(report.correct + report.incorrect(), report.n);
        assert!((report.correct_pct() + report.incorrect_pct() - 100.0).abs() < 1e-9);
        assert!((report.kb_bits_per_instance() - report.kb.total_bits / 4.0).abs() < 1e-15);
        assert!(
            (report.sf_bits() - (report.complexity.order0_bits - report.complexity.scheme_bits))
                .abs()
                < 1e-15
        );
    }

    #[test]
    fn empty_test_set_is_rejected() {
        let err = assemble_report(&[], &[], &[], &labels2(), &[0.5, 0.5]).unwrap_err();
        assert_eq!(err, EvalError::EmptyTestSet);

        use crate::classifiers::{NaiveBayesModel, NbVariant, VectorizedDataset};
        use crate::features::SparseVector;
        let a = SparseVector::from_entries(1, vec![(0, 1.0)]).unwrap();
        let data = VectorizedDataset::new(vec![a, SparseVector::empty(1)], vec![0, 1], 2).unwrap();
        let model = TrainedModel::NaiveBayes(
            NaiveBayesModel::train(&data, NbVariant::Multinomial, 1.0).unwrap(),
        );
        let err = evaluate(&model, &[], &[], &labels2(), &[0.5, 0.5]).unwrap_err();
        assert_eq!(err, EvalError::EmptyTestSet);
    }

    #[test]
    fn mismatched_lengths_are_rejected() {
        let err = ConfusionMatrix::from_predictions(labels2(), &[0, 1], &[0]).unwrap_err();
        assert!(matches!(err, EvalError::LengthMismatch { .. }));
        let err = ConfusionMatrix::from_predictions(labels2(), &[0, 7], &[0, 1]).unwrap_err();
        assert_eq!(
            err,
            EvalError::UnknownLabel {
                label: 7,
                classes: 2
            }
        );
    }
}
