//! Gradient boosting on the logistic loss: stagewise regression trees fit
//! to negative gradients (residuals), combined by an additive score.

use serde::{Deserialize, Serialize};

use crate::classify::tree::{dense_features, fit_gradient_tree, FeaturePolicy, RegTreeParams, RegressionTree};
use crate::dataset::{Dataset, FeatureVector};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GBoostParams {
    pub n_rounds: usize,
    pub learning_rate: f64,
    pub max_depth: usize,
    pub min_leaf: usize,
}

impl Default for GBoostParams {
    fn default() -> GBoostParams {
        GBoostParams {
            n_rounds: 100,
            learning_rate: 0.1,
            max_depth: 3,
            min_leaf: 1,
        }
    }
}

impl GBoostParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.learning_rate > 0.0 && self.learning_rate <= 1.0) {
            return Err(Error::InvalidSpec("learning_rate must lie in (0, 1]".into()));
        }
        if self.max_depth == 0 {
            return Err(Error::InvalidSpec("max_depth must be at least 1".into()));
        }
        if self.min_leaf == 0 {
            return Err(Error::InvalidSpec("min_leaf must be at least 1".into()));
        }
        Ok(())
    }
}

/// Additive-score ensemble: prior log-odds plus rate-scaled trees.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GBoostModel {
    pub base_score: f64,
    pub learning_rate: f64,
    pub members: Vec<RegressionTree>,
}

impl GBoostModel {
    pub fn decision(&self, x: &FeatureVector) -> f64 {
        let mut score = self.base_score;
        for tree in &self.members {
            score += self.learning_rate * tree.predict(x.values());
        }
        score
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

/// Mean logistic loss of raw scores against ±1 labels.
pub(crate) fn logistic_loss_scores(scores: &[f64], labels: &[i8]) -> f64 {
    let mut loss = 0.0;
    for (&f, &y) in scores.iter().zip(labels) {
        let margin = y as f64 * f;
        loss += if margin > 0.0 {
            (-margin).exp().ln_1p()
        } else {
            -margin + margin.exp().ln_1p()
        };
    }
    loss / scores.len() as f64
}

/// Each round fits a squared-error regression tree to the residuals
/// r = y·σ(−y·F) and applies a one-step Newton value per leaf. The
/// zero-round model is the prior log-odds, predicting the majority class.
pub fn train_gboost(train: &Dataset, params: &GBoostParams) -> Result<GBoostModel> {
    params.validate()?;
    let (features, labels) = dense_features(train);
    let n = train.len();
    let n_pos = labels.iter().filter(|&&l| l > 0).count() as f64;
    let n_neg = n as f64 - n_pos;
    let base_score = (n_pos / n_neg).ln();

    let mut scores = vec![base_score; n];
    let mut members = Vec::with_capacity(params.n_rounds);
    let indices: Vec<u32> = (0..n as u32).collect();
    let tree_params = RegTreeParams {
        max_depth: params.max_depth,
        min_leaf: params.min_leaf,
        lambda: 0.0,
        min_gain: 0.0,
    };
    let unit_h = vec![1.0; n];

    for _ in 0..params.n_rounds {
        // Residuals (negative gradients) and hessians of the logistic loss.
        let mut residuals = vec![0.0; n];
        let mut hessians = vec![0.0; n];
        for i in 0..n {
            let y = labels[i] as f64;
            let p = sigmoid(-y * scores[i]);
            residuals[i] = y * p;
            hessians[i] = p * (1.0 - p);
        }

        // Structure search is plain squared-error on residuals
        // (unit hessians); leaf values take one Newton step.
        let tree = fit_gradient_tree(
            &features,
            &indices,
            &residuals,
            &unit_h,
            &tree_params,
            &mut FeaturePolicy::All,
            &|leaf_indices| {
                let mut num = 0.0;
                let mut den = 0.0;
                for &i in leaf_indices {
                    num += residuals[i as usize];
                    den += hessians[i as usize];
                }
                if den < 1e-12 {
                    0.0
                } else {
                    num / den
                }
            },
        );

        for i in 0..n {
            scores[i] += params.learning_rate
                * tree.predict(&features[i * crate::dataset::FEATURE_COUNT..(i + 1) * crate::dataset::FEATURE_COUNT]);
        }
        members.push(tree);
    }

    Ok(GBoostModel {
        base_score,
        learning_rate: params.learning_rate,
        members,
    })
}
