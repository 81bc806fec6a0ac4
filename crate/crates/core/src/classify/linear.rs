//! Logistic regression trained by full-batch gradient descent.

use serde::{Deserialize, Serialize};

use crate::classify::TrainMatrix;
use crate::dataset::{Dataset, FeatureVector, FEATURE_COUNT};
use crate::error::{Error, Result};

/// Weights and bias of a linear decision function over the 30 features.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LinearModel {
    pub weights: Vec<f64>,
    pub bias: f64,
}

impl LinearModel {
    pub fn decision(&self, x: &FeatureVector) -> f64 {
        let mut score = self.bias;
        for (w, &v) in self.weights.iter().zip(x.values()) {
            score += w * v as f64;
        }
        score
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct LogisticParams {
    pub learning_rate: f64,
    pub iterations: usize,
    /// L2 penalty on the weights (the bias is not penalized).
    pub l2: f64,
}

impl Default for LogisticParams {
    fn default() -> LogisticParams {
        LogisticParams {
            learning_rate: 0.1,
            iterations: 2000,
            l2: 1e-4,
        }
    }
}

impl LogisticParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.learning_rate > 0.0) {
            return Err(Error::InvalidSpec("learning_rate must be positive".into()));
        }
        if self.l2 < 0.0 {
            return Err(Error::InvalidSpec("l2 must be non-negative".into()));
        }
        Ok(())
    }
}

#[inline]
fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// ln(1 + e^(−m)) computed without overflow.
#[inline]
fn log1p_exp_neg(margin: f64) -> f64 {
    if margin > 0.0 {
        (-margin).exp().ln_1p()
    } else {
        -margin + margin.exp().ln_1p()
    }
}

/// Regularized mean negative log-likelihood over the training set.
pub(crate) fn logistic_loss(x: &[f64], y: &[f64], weights: &[f64], bias: f64, l2: f64) -> f64 {
    let n = y.len();
    let mut loss = 0.0;
    for i in 0..n {
        let row = &x[i * FEATURE_COUNT..(i + 1) * FEATURE_COUNT];
        let mut z = bias;
        for (w, v) in weights.iter().zip(row) {
            z += w * v;
        }
        loss += log1p_exp_neg(y[i] * z);
    }
    loss / n as f64 + 0.5 * l2 * weights.iter().map(|w| w * w).sum::<f64>()
}

/// Analytic gradient of [`logistic_loss`] in (weights, bias).
pub(crate) fn logistic_gradient(
    x: &[f64],
    y: &[f64],
    weights: &[f64],
    bias: f64,
    l2: f64,
) -> (Vec<f64>, f64) {
    let n = y.len();
    let mut grad_w = vec![0.0; FEATURE_COUNT];
    let mut grad_b = 0.0;
    for i in 0..n {
        let row = &x[i * FEATURE_COUNT..(i + 1) * FEATURE_COUNT];
        let mut z = bias;
        for (w, v) in weights.iter().zip(row) {
            z += w * v;
        }
        // d/dz ln(1+e^{−yz}) = −y σ(−yz)
        let coeff = -y[i] * sigmoid(-y[i] * z);
        for (g, v) in grad_w.iter_mut().zip(row) {
            *g += coeff * v;
        }
        grad_b += coeff;
    }
    let inv_n = 1.0 / n as f64;
    for (g, w) in grad_w.iter_mut().zip(weights) {
        *g = *g * inv_n + l2 * w;
    }
    (grad_w, grad_b * inv_n)
}

/// Minimizes the regularized negative log-likelihood by full-batch
/// gradient descent with backtracking: a step that would increase the
/// loss is rejected and the step size halved, so the loss sequence is
/// non-increasing across accepted steps. Weights start at zero.
pub fn train_logistic(train: &Dataset, params: &LogisticParams) -> Result<LinearModel> {
    params.validate()?;
    let m = TrainMatrix::from_dataset(train);
    let mut weights = vec![0.0; FEATURE_COUNT];
    let mut bias = 0.0;
    let mut rate = params.learning_rate;
    let mut loss = logistic_loss(&m.x, &m.y, &weights, bias, params.l2);

    for _ in 0..params.iterations {
        let (grad_w, grad_b) = logistic_gradient(&m.x, &m.y, &weights, bias, params.l2) ;
        let mut accepted = false;
        while rate > 1e-12 {
            let cand_w: Vec<f64> = weights
                .iter()
                .zip(&grad_w)
                .map(|(w, g)| w - rate * g)
                .collect();
            let cand_b = bias - rate * grad_b;
            let cand_loss = logistic_loss(&m.x, &m.y, &cand_w, cand_b, params.l2);
            if !cand_loss.is_finite() {
                return Err(Error::Diverged(format!(
                    "logistic loss became non-finite at rate {rate}"
                )));
            }
            if cand_loss <= loss {
                weights = cand_w;
                bias = cand_b;
                loss = cand_loss;
                accepted = true;
                break;
            }
            rate *= 0.5;
        }
        if !accepted {
            break; // step size exhausted; already at numerical optimum
        }
    }

    Ok(LinearModel { weights, bias })
}
