//! K-nearest-neighbors. The model is the training set itself; queries
//! run a brute-force scan with exact integer distances.

use serde::{Deserialize, Serialize};

use crate::dataset::{Dataset, FeatureVector, Label, FEATURE_COUNT};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceMetric {
    Euclidean,
    Manhattan,
}

impl Default for DistanceMetric {
    fn default() -> DistanceMetric {
        DistanceMetric::Euclidean
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct KnnParams {
    pub k: usize,
    pub metric: DistanceMetric,
}

impl Default for KnnParams {
    fn default() -> KnnParams {
        KnnParams {
            k: 5,
            metric: DistanceMetric::Euclidean,
        }
    }
}

impl KnnParams {
    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::InvalidSpec("k must be at least 1".into()));
        }
        Ok(())
    }
}

/// Stored training set plus query parameters.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KnnModel {
    pub k: usize,
    pub metric: DistanceMetric,
    pub train_features: Vec<FeatureVector>,
    pub train_labels: Vec<Label>,
}

impl KnnModel {
    pub fn fit(train: &Dataset, params: &KnnParams) -> KnnModel {
        KnnModel {
            k: params.k,
            metric: params.metric,
            train_features: train.samples().iter().map(|s| s.features).collect(),
            train_labels: train.samples().iter().map(|s| s.label).collect(),
        }
    }

    /// Majority label among the k nearest training samples. Distance ties
    /// resolve to the lower training index; vote ties predict legitimate.
    pub fn predict(&self, x: &FeatureVector) -> Label {
        Label::from_score(self.decision(x))
    }

    /// Signed vote balance in [−1, 1] over the k nearest neighbors.
    pub fn decision(&self, x: &FeatureVector) -> f64 {
        let k = self.k.min(self.train_features.len());
        if k == 0 {
            return 0.0;
        }
        // (distance, index) pairs; integer distances make ties exact.
        let mut nearest: Vec<(u32, u32)> = Vec::with_capacity(k + 1);
        let mut worst: Option<(u32, u32)> = None;
        for (i, f) in self.train_features.iter().enumerate() {
            let d = self.distance(x, f);
            let entry = (d, i as u32);
            if nearest.len() < k {
                nearest.push(entry);
                if nearest.len() == k {
                    worst = nearest.iter().copied().max();
                }
            } else if entry < worst.unwrap() {
                let pos = nearest
                    .iter()
                    .position(|&e| e == worst.unwrap())
                    .expect("worst entry present");
                nearest[pos] = entry;
                worst = nearest.iter().copied().max();
            }
        }
        let mut vote = 0i64;
        for &(_, idx) in &nearest {
            vote += self.train_labels[idx as usize].value() as i64;
        }
        vote as f64 / k as f64
    }

    fn distance(&self, a: &FeatureVector, b: &FeatureVector) -> u32 {
        let mut acc = 0u32;
        for i in 0..FEATURE_COUNT {
            let d = (a.values()[i] - b.values()[i]).unsigned_abs() as u32;
            acc += match self.metric {
                DistanceMetric::Euclidean => d * d,
                DistanceMetric::Manhattan => d,
            };
        }
        acc
    }
}

/// One-shot prediction without building a model, with an explicit k.
pub fn knn_predict(
    train: &Dataset,
    x: &FeatureVector,
    k: usize,
    metric: DistanceMetric,
) -> Result<Label> {
    if k == 0 || k > train.len() {
        return Err(Error::InvalidSpec(format!(
            "k must lie in [1, {}], got {k}",
            train.len()
        )));
    }
    let model = KnnModel::fit(train, &KnnParams { k, metric });
    Ok(model.predict(x))
}
