//! Random forest: bagged CART trees with per-split feature subsampling,
//! aggregated by majority vote.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::classify::tree::{dense_features, ClassificationTree, FeaturePolicy, TreeBuilder, TreeParams};
use crate::dataset::{Dataset, FeatureVector, FEATURE_COUNT};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ForestParams {
    pub n_trees: usize,
    /// Features considered per split; ⌊√30⌋ = 5 by default.
    pub max_features: usize,
    pub bootstrap: bool,
    #[serde(flatten)]
    pub tree: TreeParams,
}

impl Default for ForestParams {
    fn default() -> ForestParams {
        ForestParams {
            n_trees: 100,
            max_features: 5,
            bootstrap: true,
            tree: TreeParams::default(),
        }
    }
}

impl ForestParams {
    pub fn validate(&self) -> Result<()> {
        if self.n_trees == 0 {
            return Err(Error::InvalidSpec("n_trees must be at least 1".into()));
        }
        if self.max_features == 0 || self.max_features > FEATURE_COUNT {
            return Err(Error::InvalidSpec(format!(
                "max_features must lie in [1, {FEATURE_COUNT}]"
            )));
        }
        self.tree.validate()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ForestModel {
    pub members: Vec<ClassificationTree>,
}

impl ForestModel {
    /// Vote balance in [−1, 1]; exact zero predicts legitimate.
    pub fn decision(&self, x: &FeatureVector) -> f64 {
        let vote: i64 = self
            .members
            .iter()
            .map(|t| t.predict(x).value() as i64)
            .sum();
        vote as f64 / self.members.len() as f64
    }
}

/// Trains `n_trees` trees, each on a seeded bootstrap resample (when
/// enabled) with `max_features` candidate features per split. Member
/// RNG streams derive from the master seed so the ensemble is
/// reproducible regardless of scheduling.
pub fn train_forest(train: &Dataset, params: &ForestParams, seed: u64) -> Result<ForestModel> {
    params.validate()?;
    let (features, labels) = dense_features(train);
    let weights = vec![1.0; train.len()];
    let n = train.len();

    let members: Vec<ClassificationTree> = (0..params.n_trees)
        .map(|member| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (member as u64).wrapping_mul(0x9E3779B97F4A7C15).wrapping_add(member as u64));
            let indices: Vec<u32> = if params.bootstrap {
                (0..n).map(|_| rng.gen_range(0..n) as u32).collect()
            } else {
                (0..n as u32).collect()
            };
            let policy = if params.max_features < FEATURE_COUNT {
                FeaturePolicy::Subsample {
                    count: params.max_features,
                    rng: &mut rng,
                }
            } else {
                FeaturePolicy::All
            };
            TreeBuilder {
                features: &features,
                labels: &labels,
                weights: &weights,
                params: &params.tree,
                policy,
            }
            .build(&indices)
        })
        .collect();

    Ok(ForestModel { members })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::testutil::dataset_from_rows;
    use crate::classify::tree::train_tree;
    use crate::dataset::Label;

    fn hand_set() -> Dataset {
        dataset_from_rows(&[
            (&[-1, -1, 1], -1),
            (&[-1, 0, 0], -1),
            (&[0, -1, -1], -1),
            (&[1, 1, 0], 1),
            (&[1, 0, 1], 1),
            (&[0, 1, 1], 1),
            (&[1, -1, 1], 1),
            (&[-1, 1, -1], -1),
        ])
    }

    #[test]
    fn degenerate_forest_equals_single_tree() {
        let ds = hand_set();
        let params = ForestParams {
            n_trees: 1,
            max_features: FEATURE_COUNT,
            bootstrap: false,
            tree: TreeParams::default(),
        };
        let forest = train_forest(&ds, &params, 9).unwrap();
        let tree = train_tree(&ds, &TreeParams::default()).unwrap();
        for s in ds.samples() {
            assert_eq!(
                Label::from_score(forest.decision(&s.features)),
                tree.predict(&s.features)
            );
        }
    }

    #[test]
    fn majority_vote_of_three_members() {
        // Build a forest by hand from three stumps that predict
        // {−1, −1, +1} on an all-zeros query.
        let ds_neg = dataset_from_rows(&[(&[-1], -1), (&[0], -1), (&[1], 1)]);
        let ds_pos = dataset_from_rows(&[(&[-1], -1), (&[0], 1), (&[1], 1)]);
        let t_neg = train_tree(&ds_neg, &TreeParams::default()).unwrap();
        let t_pos = train_tree(&ds_pos, &TreeParams::default()).unwrap();
        let forest = ForestModel {
            members: vec![t_neg.clone(), t_neg, t_pos],
        };
        let query = FeatureVector([0; FEATURE_COUNT]);
        assert_eq!(Label::from_score(forest.decision(&query)), Label::Phishing);
    }

    #[test]
    fn forest_is_deterministic_per_seed() {
        let ds = hand_set();
        let params = ForestParams {
            n_trees: 12,
            ..Default::default()
        };
        let a = train_forest(&ds, &params, 5).unwrap();
        let b = train_forest(&ds, &params, 5).unwrap();
        for s in ds.samples() {
            assert_eq!(a.decision(&s.features), b.decision(&s.features));
        }
        // Serialized forms match bit for bit.
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn forest_fits_training_set_reasonably() {
        let ds = hand_set();
        let forest = train_forest(&ds, &ForestParams::default(), 42).unwrap();
        let correct = ds
            .samples()
            .iter()
            .filter(|s| Label::from_score(forest.decision(&s.features)) == s.label)
            .count();
        assert!(correct >= 6, "only {correct}/8 correct");
    }
}
