//! AdaBoost over shallow weight-aware trees, combined by weighted
//! majority vote.

use serde::{Deserialize, Serialize};

use crate::classify::tree::{dense_features, train_weighted_tree, ClassificationTree, TreeParams};
use crate::dataset::{Dataset, FeatureVector};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AdaBoostParams {
    pub n_rounds: usize,
    /// Depth of each weak learner; 1 gives classic decision stumps.
    pub stump_depth: usize,
}

impl Default for AdaBoostParams {
    fn default() -> AdaBoostParams {
        AdaBoostParams {
            n_rounds: 100,
            stump_depth: 1,
        }
    }
}

impl AdaBoostParams {
    pub fn validate(&self) -> Result<()> {
        if self.n_rounds == 0 {
            return Err(Error::InvalidSpec("n_rounds must be at least 1".into()));
        }
        if self.stump_depth == 0 {
            return Err(Error::InvalidSpec("stump_depth must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AdaBoostModel {
    pub members: Vec<ClassificationTree>,
    /// Per-member vote weights α = ½ln((1−ε)/ε).
    pub member_weights: Vec<f64>,
}

impl AdaBoostModel {
    pub fn decision(&self, x: &FeatureVector) -> f64 {
        self.members
            .iter()
            .zip(&self.member_weights)
            .map(|(t, &w)| w * t.predict(x).value() as f64)
            .sum()
    }
}

pub struct AdaBoostOutcome {
    pub model: AdaBoostModel,
    pub warnings: Vec<String>,
    /// Sample-weight vector after every completed round, for diagnostics
    /// and the normalization invariant.
    pub weight_history: Vec<Vec<f64>>,
}

/// Error floor substituted when a weak learner is perfect, keeping its
/// vote weight large but finite.
const EPSILON_FLOOR: f64 = 1e-10;

/// Boosting loop: fit a weight-aware stump, compute its weighted error ε,
/// weight it by α = ½ln((1−ε)/ε), then multiplicatively reweight samples
/// and renormalize. Stops early when ε = 0 (the learner is kept) or
/// ε ≥ 0.5 (the learner is discarded; an error if it was the first).
pub fn train_adaboost(train: &Dataset, params: &AdaBoostParams) -> Result<AdaBoostOutcome> {
    params.validate()?;
    let (features, labels) = dense_features(train);
    let n = train.len();
    let tree_params = TreeParams {
        max_depth: Some(params.stump_depth),
        min_leaf: 1,
    };

    let mut weights = vec![1.0 / n as f64; n];
    let mut members = Vec::new();
    let mut member_weights = Vec::new();
    let mut weight_history = Vec::new();
    let mut warnings = Vec::new();

    for round in 0..params.n_rounds {
        let stump = train_weighted_tree(&features, &labels, &weights, &tree_params);
        let predictions: Vec<i8> = train
            .samples()
            .iter()
            .map(|s| stump.predict(&s.features).value())
            .collect();
        let epsilon: f64 = predictions
            .iter()
            .zip(&labels)
            .zip(&weights)
            .filter(|((p, l), _)| p != l)
            .map(|(_, &w)| w)
            .sum();

        if epsilon >= 0.5 {
            if members.is_empty() {
                return Err(Error::InvalidTrainingSet(format!(
                    "first weak learner has weighted error {epsilon:.4} >= 0.5"
                )));
            }
            warnings.push(format!(
                "round {round}: weak learner error {epsilon:.4} >= 0.5, stopping early"
            ));
            break;
        }

        let bounded = epsilon.max(EPSILON_FLOOR);
        let alpha = 0.5 * ((1.0 - bounded) / bounded).ln();
        members.push(stump);
        member_weights.push(alpha);

        if epsilon == 0.0 {
            // Perfect learner: nothing left to reweight.
            weight_history.push(weights.clone());
            break;
        }

        let mut z = 0.0;
        for ((w, &p), &l) in weights.iter_mut().zip(&predictions).zip(&labels) {
            *w *= (-alpha * (l as f64) * (p as f64)).exp();
            z += *w;
        }
        for w in weights.iter_mut() {
            *w /= z;
        }
        weight_history.push(weights.clone());
    }

    Ok(AdaBoostOutcome {
        model: AdaBoostModel {
            members,
            member_weights,
        },
        warnings,
        weight_history,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::testutil::dataset_from_rows;
    use crate::dataset::Label;

    #[test]
    fn perfect_round_one_gives_single_member() {
        let ds = dataset_from_rows(&[(&[-1], -1), (&[1], 1)]);
        let outcome = train_adaboost(&ds, &AdaBoostParams::default()).unwrap();
        assert_eq!(outcome.model.members.len(), 1);
        assert!(outcome.model.member_weights[0] > 0.0);
        for s in ds.samples() {
            assert_eq!(
                Label::from_score(outcome.model.decision(&s.features)),
                s.label
            );
        }
    }

    #[test]
    fn single_member_ensemble_follows_that_member() {
        let ds = dataset_from_rows(&[(&[-1], -1), (&[1], 1)]);
        let outcome = train_adaboost(&ds, &AdaBoostParams::default()).unwrap();
        let member = &outcome.model.members[0];
        for s in ds.samples() {
            assert_eq!(
                Label::from_score(outcome.model.decision(&s.features)),
                member.predict(&s.features)
            );
        }
    }

    #[test]
    fn weights_remain_a_distribution_after_every_round() {
        let ds = dataset_from_rows(&[
            (&[-1, 1, 1], -1),
            (&[-1, -1, 1], -1),
            (&[1, -1, -1], -1),
            (&[1, 1, -1], 1),
            (&[1, 1, 1], 1),
            (&[-1, 1, -1], 1),
            (&[1, -1, 1], 1),
            (&[-1, -1, -1], -1),
        ]);
        let outcome = train_adaboost(
            &ds,
            &AdaBoostParams {
                n_rounds: 10,
                stump_depth: 1,
            },
        )
        .unwrap();
        assert!(!outcome.weight_history.is_empty());
        for weights in &outcome.weight_history {
            let total: f64 = weights.iter().sum();
            assert!((total - 1.0).abs() < 1e-12, "weights sum to {total}");
            assert!(weights.iter().all(|&w| w >= 0.0));
        }
    }

    /// Manual AdaBoost trace with a brute-force weighted stump at each
    /// round, fully independent of the production trainer.
    fn manual_trace(ds: &Dataset, rounds: usize) -> Vec<f64> {
        use crate::dataset::FEATURE_COUNT;
        let n = ds.len();
        let mut weights = vec![1.0 / n as f64; n];
        let mut alphas = Vec::new();
        for _ in 0..rounds {
            // Enumerate every (feature, threshold) stump, scoring by
            // weighted Gini exactly like the tree builder does.
            let mut best: Option<(f64, usize, f64)> = None; // (gain, feature, threshold)
            let total_phish: f64 = ds
                .samples()
                .iter()
                .zip(&weights)
                .filter(|(s, _)| s.label == Label::Phishing)
                .map(|(_, &w)| w)
                .sum();
            let total: f64 = weights.iter().sum();
            let gini = |p: f64, l: f64| {
                let t = p + l;
                if t <= 0.0 {
                    0.0
                } else {
                    1.0 - (p / t).powi(2) - (l / t).powi(2)
                }
            };
            let parent = gini(total_phish, total - total_phish);
            for feature in 0..FEATURE_COUNT {
                for threshold in [-0.5, 0.0, 0.5] {
                    let mut lp = 0.0;
                    let mut ll = 0.0;
                    let mut ln = 0usize;
                    for (s, &w) in ds.samples().iter().zip(&weights) {
                        if (s.features.values()[feature] as f64) <= threshold {
                            ln += 1;
                            if s.label == Label::Phishing {
                                lp += w;
                            } else {
                                ll += w;
                            }
                        }
                    }
                    if ln == 0 || ln == n {
                        continue;
                    }
                    let rp = total_phish - lp;
                    let rl = (total - total_phish) - ll;
                    let gain =
                        parent - ((lp + ll) * gini(lp, ll) + (rp + rl) * gini(rp, rl)) / total;
                    if best.map_or(gain > 1e-12, |(g, _, _)| gain > g + 1e-12) {
                        best = Some((gain, feature, threshold));
                    }
                }
            }
            let (_, feature, threshold) = best.expect("some stump splits");
            // Leaf labels by weighted majority (tie → legitimate).
            let side_label = |left: bool| {
                let mut p = 0.0;
                let mut l = 0.0;
                for (s, &w) in ds.samples().iter().zip(&weights) {
                    let goes_left = (s.features.values()[feature] as f64) <= threshold;
                    if goes_left == left {
                        if s.label == Label::Phishing {
                            p += w;
                        } else {
                            l += w;
                        }
                    }
                }
                if p > l {
                    -1.0
                } else {
                    1.0
                }
            };
            let left_label = side_label(true);
            let right_label = side_label(false);
            let predict = |s: &crate::dataset::LabeledSample| {
                if (s.features.values()[feature] as f64) <= threshold {
                    left_label
                } else {
                    right_label
                }
            };
            let epsilon: f64 = ds
                .samples()
                .iter()
                .zip(&weights)
                .filter(|(s, _)| predict(s) != s.label.as_f64())
                .map(|(_, &w)| w)
                .sum();
            if epsilon >= 0.5 {
                break;
            }
            let alpha = 0.5 * ((1.0 - epsilon.max(1e-10)) / epsilon.max(1e-10)).ln();
            alphas.push(alpha);
            if epsilon == 0.0 {
                break;
            }
            let mut z = 0.0;
            for (w, s) in weights.iter_mut().zip(ds.samples()) {
                *w *= (-alpha * s.label.as_f64() * predict(s)).exp();
                z += *w;
            }
            for w in weights.iter_mut() {
                *w /= z;
            }
        }
        alphas
    }

    #[test]
    fn member_weights_match_manual_trace_on_hand_set() {
        let ds = dataset_from_rows(&[
            (&[-1, 1, 1], -1),
            (&[-1, -1, 1], -1),
            (&[1, -1, -1], -1),
            (&[1, 1, -1], 1),
            (&[1, 1, 1], 1),
            (&[-1, 1, -1], 1),
            (&[1, -1, 1], 1),
            (&[-1, -1, -1], -1),
        ]);
        let expected = manual_trace(&ds, 3);
        let outcome = train_adaboost(
            &ds,
            &AdaBoostParams {
                n_rounds: 3,
                stump_depth: 1,
            },
        )
        .unwrap();
        assert_eq!(outcome.model.member_weights.len(), expected.len());
        for (got, want) in outcome.model.member_weights.iter().zip(&expected) {
            assert!(
                (got - want).abs() < 1e-9,
                "member weight {got} vs trace {want}"
            );
        }
    }

    #[test]
    fn single_class_training_set_is_rejected_upstream() {
        // ε on a single-class set is 0 for the constant stump, which is
        // fine; the cross-family guard in `fit` rejects it first. Here we
        // only check the trainer tolerates a perfect constant learner.
        let ds = dataset_from_rows(&[(&[1], 1), (&[0], 1)]);
        let outcome = train_adaboost(&ds, &AdaBoostParams::default()).unwrap();
        assert_eq!(outcome.model.members.len(), 1);
    }
}
