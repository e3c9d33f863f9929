//! Sigmoid calibration of decision values, p = 1/(1 + exp(A*f + B)), fitted
//! by Newton iterations maximizing the log-likelihood of the training labels
//! with the usual smoothed targets.

use serde::{Deserialize, Serialize};

const MAX_ITER: usize = 100;
const TOLERANCE: f64 = 1e-10;
const MIN_STEP: f64 = 1e-10;
const RIDGE: f64 = 1e-12;

/// Fitted sigmoid parameters mapping a decision value into (0, 1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlattCalibration {
    pub a: f64,
    pub b: f64,
}

impl PlattCalibration {
    /// Probability of the positive class for decision value `f`.
    pub fn probability(&self, f: f64) -> f64 {
        let fapb = self.a * f + self.b;
        if fapb >= 0.0 {
            let e = (-fapb).exp();
            e / (1.0 + e)
        } else {
            1.0 / (1.0 + fapb.exp())
        }
    }
}

fn negative_log_likelihood(decisions: &[f64], targets: &[f64], a: f64, b: f64) -> f64 {
    let mut fval = 0.0;
    for (&f, &t) in decisions.iter().zip(targets) {
        let fapb = a * f + b;
        if fapb >= 0.0 {
            fval += t * fapb + (1.0 + (-fapb).exp()).ln();
        } else {
            fval += (t - 1.0) * fapb + (1.0 + fapb.exp()).ln();
        }
    }
    fval
}

/// Fits (A, B) on training decision values and their labels.
pub fn fit_platt(decisions: &[f64], positives: &[bool]) -> PlattCalibration {
    let n_pos = positives.iter().filter(|&&p| p).count() as f64;
    let n_neg = positives.len() as f64 - n_pos;

    // smoothed targets keep the fit away from 0/1 asymptotes
    let hi_target = (n_pos + 1.0) / (n_pos + 2.0);
    let lo_target = 1.0 / (n_neg + 2.0);
    let targets: Vec<f64> = positives
        .iter()
        .map(|&p| if p { hi_target } else { lo_target })
        .collect();

    let mut a = 0.0;
    let mut b = ((n_neg + 1.0) / (n_pos + 1.0)).ln();
    let mut fval = negative_log_likelihood(decisions, &targets, a, b);

    for _ in 0..MAX_ITER {
        let mut h11 = RIDGE;
        let mut h22 = RIDGE;
        let mut h21 = 0.0;
        let mut g1 = 0.0;
        let mut g2 = 0.0;
        for (&f, &t) in decisions.iter().zip(&targets) {
            let fapb = a * f + b;
            let (p, q) = if fapb >= 0.0 {
                let e = (-fapb).exp();
                (e / (1.0 + e), 1.0 / (1.0 + e))
            } else {
                let e = fapb.exp();
                (1.0 / (1.0 + e), e / (1.0 + e))
            };
            let d2 = p * q;
            h11 += f * f * d2;
            h22 += d2;
            h21 += f * d2;
            let d1 = t - p;
            g1 += f * d1;
            g2 += d1;
        }
        if g1.abs() < TOLERANCE && g2.abs() < TOLERANCE {
            break;
        }
        let det = h11 * h22 - h21 * h21;
        let da = -(h22 * g1 - h21 * g2) / det;
        let db = -(-h21 * g1 + h11 * g2) / det;
        let gd = g1 * da + g2 * db;

        let mut step = 1.0;
        let mut improved = false;
        while step >= MIN_STEP {
            let new_a = a + step * da;
            let new_b = b + step * db;
            let new_fval = negative_log_likelihood(decisions, &targets, new_a, new_b);
            if new_fval < fval + 1e-4 * step * gd {
                a = new_a;
                b = new_b;
                fval = new_fval;
                improved = true;
                break;
            }
            step /= 2.0;
        }
        if !improved {
            break;
        }
    }
    PlattCalibration { a, b }
}
