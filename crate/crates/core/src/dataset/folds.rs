//! Stratified partitioning for cross-validation and holdout evaluation.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dataset::{Dataset, Label};
use crate::error::{Error, Result};

/// Assignment of every sample to one of `k` folds.
///
/// Fold sizes differ by at most one, and per-fold class counts differ from
/// perfect stratification by at most one per class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldPlan {
    pub k: usize,
    pub seed: u64,
    /// Per-sample fold index in `[0, k)`, in dataset row order.
    pub assignments: Vec<u32>,
}

impl FoldPlan {
    /// Sample indices belonging to fold `fold`.
    pub fn fold_indices(&self, fold: usize) -> Vec<usize> {
        self.assignments
            .iter()
            .enumerate()
            .filter(|(_, &f)| f as usize == fold)
            .map(|(i, _)| i)
            .collect()
    }

    /// Sample indices outside fold `fold` (the training side).
    pub fn complement_indices(&self, fold: usize) -> Vec<usize> {
        self.assignments
            .iter()
            .enumerate()
            .filter(|(_, &f)| f as usize != fold)
            .map(|(i, _)| i)
            .collect()
    }

    /// Stable fingerprint of the assignment vector, used to assert that
    /// paired experiment runs consumed identical folds.
    pub fn fingerprint(&self) -> u64 {
        // FNV-1a over (k, seed, assignments).
        let mut h: u64 = 0xcbf29ce484222325;
        let mut eat = |byte: u8| {
            h ^= byte as u64;
            h = h.wrapping_mul(0x100000001b3);
        };
        for b in (self.k as u64).to_le_bytes() {
            eat(b);
        }
        for b in self.seed.to_le_bytes() {
            eat(b);
        }
        for &a in &self.assignments {
            for b in a.to_le_bytes() {
                eat(b);
            }
        }
        h
    }
}

/// Builds a stratified k-fold plan: indices are shuffled within each class
/// by a seeded RNG and dealt round-robin into folds, with the dealing
/// cursor carried across classes so overall fold sizes stay within one.
pub fn stratified_kfold(dataset: &Dataset, k: usize, seed: u64) -> Result<FoldPlan> {
    if k < 2 {
        return Err(Error::InvalidSplit(format!("k must be at least 2, got {k}")));
    }
    for label in [Label::Phishing, Label::Legitimate] {
        let count = dataset.class_count(label);
        if count > 0 && count < k {
            return Err(Error::InvalidSplit(format!(
                "class {label} has {count} samples, fewer than k={k}"
            )));
        }
    }
    if dataset.len() < k {
        return Err(Error::InvalidSplit(format!(
            "dataset has {} samples, fewer than k={k}",
            dataset.len()
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut assignments = vec![0u32; dataset.len()];
    let mut cursor = 0usize;
    // Classes in ascending label order: phishing (−1) first.
    for label in [Label::Phishing, Label::Legitimate] {
        let mut indices: Vec<usize> = dataset
            .samples()
            .iter()
            .enumerate()
            .filter(|(_, s)| s.label == label)
            .map(|(i, _)| i)
            .collect();
        indices.shuffle(&mut rng);
        for idx in indices {
            assignments[idx] = (cursor % k) as u32;
            cursor += 1;
        }
    }

    Ok(FoldPlan {
        k,
        seed,
        assignments,
    })
}

/// Splits a dataset into disjoint train and test parts with
/// `round(test_fraction · n)` test samples, stratified within one sample
/// per class. Deterministic for a fixed seed.
pub fn holdout_split(
    dataset: &Dataset,
    test_fraction: f64,
    seed: u64,
) -> Result<(Dataset, Dataset)> {
    if !(test_fraction > 0.0 && test_fraction < 1.0) {
        return Err(Error::InvalidSplit(format!(
            "test fraction must lie in (0, 1), got {test_fraction}"
        )));
    }
    let n = dataset.len();
    let test_total = (test_fraction * n as f64).round() as usize;
    if test_total == 0 || test_total >= n {
        return Err(Error::InvalidSplit(format!(
            "degenerate split: {test_total} of {n} samples in test"
        )));
    }

    // Largest-remainder allocation of the test budget across classes.
    let classes = [Label::Phishing, Label::Legitimate];
    let counts: Vec<usize> = classes.iter().map(|&l| dataset.class_count(l)).collect();
    let exact: Vec<f64> = counts.iter().map(|&c| test_fraction * c as f64).collect();
    let mut take: Vec<usize> = exact.iter().map(|e| e.floor() as usize).collect();
    let mut leftover = test_total.saturating_sub(take.iter().sum::<usize>());
    let mut order: Vec<usize> = (0..classes.len()).collect();
    order.sort_by(|&a, &b| {
        let fa = exact[a] - exact[a].floor();
        let fb = exact[b] - exact[b].floor();
        fb.partial_cmp(&fa).unwrap().then(a.cmp(&b))
    });
    for &c in order.iter().cycle() {
        if leftover == 0 {
            break;
        }
        if take[c] < counts[c] {
            take[c] += 1;
            leftover -= 1;
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut test_idx = Vec::with_capacity(test_total);
    let mut train_idx = Vec::with_capacity(n - test_total);
    for (ci, &label) in classes.iter().enumerate() {
        let mut indices: Vec<usize> = dataset
            .samples()
            .iter()
            .enumerate()
            .filter(|(_, s)| s.label == label)
            .map(|(i, _)| i)
            .collect();
        indices.shuffle(&mut rng);
        test_idx.extend_from_slice(&indices[..take[ci]]);
        train_idx.extend_from_slice(&indices[take[ci]..]);
    }
    test_idx.sort_unstable();
    train_idx.sort_unstable();
    if train_idx.is_empty() || test_idx.is_empty() {
        return Err(Error::InvalidSplit("one side of the split is empty".into()));
    }

    Ok((dataset.subset(&train_idx), dataset.subset(&test_idx)))
}
