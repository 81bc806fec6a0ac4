//! CART-style decision trees over ternary features.
//!
//! Split candidates are the midpoints of the values actually present for
//! each feature at a node, so a feature contributes at most two candidate
//! thresholds. Classification trees maximize Gini impurity decrease;
//! the boosters' regression trees maximize a gradient/hessian gain with
//! optional L2 leaf regularization.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dataset::{Dataset, FeatureVector, Label, FEATURE_COUNT};
use crate::error::{Error, Result};

/// Gini impurity of a two-class node given per-class weights.
pub fn gini(weight_phish: f64, weight_legit: f64) -> f64 {
    let total = weight_phish + weight_legit;
    if total <= 0.0 {
        return 0.0;
    }
    let p = weight_phish / total;
    let q = weight_legit / total;
    1.0 - p * p - q * q
}

/// Flat-arena classification tree; node 0 is the root.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassificationTree {
    pub nodes: Vec<ClassNode>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClassNode {
    Split {
        feature: usize,
        threshold: f64,
        left: usize,
        right: usize,
    },
    Leaf {
        label: Label,
        /// Training weight of each class that reached this leaf.
        weight_phish: f64,
        weight_legit: f64,
    },
}

impl ClassificationTree {
    pub fn predict(&self, x: &FeatureVector) -> Label {
        match self.leaf(x) {
            ClassNode::Leaf { label, .. } => *label,
            ClassNode::Split { .. } => unreachable!("leaf walk ended on a split"),
        }
    }

    /// Signed margin at the reached leaf: (legit − phish) / total weight.
    pub fn decision(&self, x: &FeatureVector) -> f64 {
        match self.leaf(x) {
            ClassNode::Leaf {
                weight_phish,
                weight_legit,
                ..
            } => {
                let total = weight_phish + weight_legit;
                if total > 0.0 {
                    (weight_legit - weight_phish) / total
                } else {
                    0.0
                }
            }
            ClassNode::Split { .. } => unreachable!(),
        }
    }

    fn leaf(&self, x: &FeatureVector) -> &ClassNode {
        let mut node = 0usize;
        loop {
            match &self.nodes[node] {
                leaf @ ClassNode::Leaf { .. } => return leaf,
                ClassNode::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => {
                    node = if (x.values()[*feature] as f64) <= *threshold {
                        *left
                    } else {
                        *right
                    };
                }
            }
        }
    }

    pub fn depth(&self) -> usize {
        fn walk(nodes: &[ClassNode], i: usize) -> usize {
            match &nodes[i] {
                ClassNode::Leaf { .. } => 0,
                ClassNode::Split { left, right, .. } => 1 + walk(nodes, *left).max(walk(nodes, *right)),
            }
        }
        walk(&self.nodes, 0)
    }
}

/// Decision tree hyperparameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TreeParams {
    /// Maximum split depth; `None` grows until purity or `min_leaf`.
    pub max_depth: Option<usize>,
    /// Minimum number of samples in each child of a split.
    pub min_leaf: usize,
}

impl Default for TreeParams {
    fn default() -> TreeParams {
        TreeParams {
            max_depth: None,
            min_leaf: 1,
        }
    }
}

impl TreeParams {
    pub fn validate(&self) -> Result<()> {
        if self.min_leaf < 1 {
            return Err(Error::InvalidSpec("min_leaf must be at least 1".into()));
        }
        Ok(())
    }
}

/// Candidate thresholds at a node: midpoints of adjacent present values.
/// `lower[t]` is the set of value buckets that go left at threshold `t`.
struct Candidates {
    thresholds: Vec<(f64, usize)>, // (threshold, last bucket index going left)
}

fn candidates(present: [bool; 3]) -> Candidates {
    let values = [-1.0f64, 0.0, 1.0];
    let idx: Vec<usize> = (0..3).filter(|&i| present[i]).collect();
    let mut thresholds = Vec::new();
    for pair in idx.windows(2) {
        let midpoint = (values[pair[0]] + values[pair[1]]) / 2.0;
        thresholds.push((midpoint, pair[0]));
    }
    Candidates { thresholds }
}

/// Per-feature class-weight histogram over the three value buckets.
struct SplitScan<'a> {
    features: &'a [i8],
    n_cols: usize,
}

impl<'a> SplitScan<'a> {
    fn new(features: &'a [i8], n_cols: usize) -> SplitScan<'a> {
        SplitScan { features, n_cols }
    }

    #[inline]
    fn value(&self, row: usize, col: usize) -> i8 {
        self.features[row * self.n_cols + col]
    }
}

/// Best split at a node by Gini decrease. Ties resolve to the lowest
/// feature index, then the lowest threshold, matching the exhaustive
/// enumeration order.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BestSplit {
    pub feature: usize,
    pub threshold: f64,
    pub gain: f64,
}

fn find_gini_split(
    scan: &SplitScan,
    indices: &[u32],
    labels: &[i8],
    weights: &[f64],
    feature_set: &[usize],
    min_leaf: usize,
) -> Option<BestSplit> {
    let mut total_phish = 0.0f64;
    let mut total_legit = 0.0f64;
    for &i in indices {
        if labels[i as usize] < 0 {
            total_phish += weights[i as usize];
        } else {
            total_legit += weights[i as usize];
        }
    }
    let total = total_phish + total_legit;
    if total <= 0.0 {
        return None;
    }
    let parent_gini = gini(total_phish, total_legit);

    let mut best: Option<BestSplit> = None;
    for &feature in feature_set {
        // Bucket class weights and sample counts by feature value.
        let mut w_phish = [0.0f64; 3];
        let mut w_legit = [0.0f64; 3];
        let mut count = [0usize; 3];
        for &i in indices {
            let bucket = (scan.value(i as usize, feature) + 1) as usize;
            count[bucket] += 1;
            if labels[i as usize] < 0 {
                w_phish[bucket] += weights[i as usize];
            } else {
                w_legit[bucket] += weights[i as usize];
            }
        }
        let present = [count[0] > 0, count[1] > 0, count[2] > 0];
        for (threshold, last_left) in candidates(present).thresholds {
            let mut left_phish = 0.0;
            let mut left_legit = 0.0;
            let mut left_count = 0usize;
            for b in 0..=last_left {
                left_phish += w_phish[b];
                left_legit += w_legit[b];
                left_count += count[b];
            }
            let right_count = indices.len() - left_count;
            if left_count < min_leaf || right_count < min_leaf {
                continue;
            }
            let right_phish = total_phish - left_phish;
            let right_legit = total_legit - left_legit;
            let left_w = left_phish + left_legit;
            let right_w = right_phish + right_legit;
            let children = (left_w * gini(left_phish, left_legit)
                + right_w * gini(right_phish, right_legit))
                / total;
            let gain = parent_gini - children;
            if gain > best.map_or(1e-12, |b| b.gain + 1e-12) {
                best = Some(BestSplit {
                    feature,
                    threshold,
                    gain,
                });
            }
        }
    }
    best
}

/// Per-node feature selection: all features, or a seeded random subset
/// (the subset is re-sorted so split search order stays canonical).
pub(crate) enum FeaturePolicy<'a> {
    All,
    Subsample {
        count: usize,
        rng: &'a mut ChaCha8Rng,
    },
}

impl FeaturePolicy<'_> {
    fn pick(&mut self, out: &mut Vec<usize>) {
        out.clear();
        match self {
            FeaturePolicy::All => out.extend(0..FEATURE_COUNT),
            FeaturePolicy::Subsample { count, rng } => {
                if *count >= FEATURE_COUNT {
                    out.extend(0..FEATURE_COUNT);
                    return;
                }
                // Partial Fisher-Yates over a scratch index array.
                let mut idx: [usize; FEATURE_COUNT] = std::array::from_fn(|i| i);
                for i in 0..*count {
                    let j = rng.gen_range(i..FEATURE_COUNT);
                    idx.swap(i, j);
                }
                out.extend_from_slice(&idx[..*count]);
                out.sort_unstable();
            }
        }
    }
}

pub(crate) struct TreeBuilder<'a> {
    pub features: &'a [i8],
    pub labels: &'a [i8],
    pub weights: &'a [f64],
    pub params: &'a TreeParams,
    pub policy: FeaturePolicy<'a>,
}

impl TreeBuilder<'_> {
    pub fn build(mut self, indices: &[u32]) -> ClassificationTree {
        let scan = SplitScan::new(self.features, FEATURE_COUNT);
        let mut nodes = Vec::new();
        let mut scratch = Vec::with_capacity(FEATURE_COUNT);
        let mut work = indices.to_vec();
        build_class_node(
            &mut nodes,
            &scan,
            &mut work,
            self.labels,
            self.weights,
            self.params,
            &mut self.policy,
            &mut scratch,
            0,
        );
        ClassificationTree { nodes }
    }
}

#[allow(clippy::too_many_arguments)]
fn build_class_node(
    nodes: &mut Vec<ClassNode>,
    scan: &SplitScan,
    indices: &mut [u32],
    labels: &[i8],
    weights: &[f64],
    params: &TreeParams,
    policy: &mut FeaturePolicy,
    scratch: &mut Vec<usize>,
    depth: usize,
) -> usize {
    let mut weight_phish = 0.0;
    let mut weight_legit = 0.0;
    for &i in indices.iter() {
        if labels[i as usize] < 0 {
            weight_phish += weights[i as usize];
        } else {
            weight_legit += weights[i as usize];
        }
    }

    let make_leaf = |nodes: &mut Vec<ClassNode>| {
        // Weighted majority; an exact tie predicts legitimate.
        let label = if weight_phish > weight_legit {
            Label::Phishing
        } else {
            Label::Legitimate
        };
        let id = nodes.len();
        nodes.push(ClassNode::Leaf {
            label,
            weight_phish,
            weight_legit,
        });
        id
    };

    let pure = weight_phish == 0.0 || weight_legit == 0.0;
    let depth_capped = params.max_depth.is_some_and(|d| depth >= d);
    if pure || depth_capped || indices.len() < 2 * params.min_leaf {
        return make_leaf(nodes);
    }

    policy.pick(scratch);
    let split = match find_gini_split(scan, indices, labels, weights, scratch, params.min_leaf) {
        Some(s) => s,
        None => return make_leaf(nodes),
    };

    // Partition in place: left = value <= threshold.
    let mut mid = 0;
    for i in 0..indices.len() {
        if (scan.value(indices[i] as usize, split.feature) as f64) <= split.threshold {
            indices.swap(i, mid);
            mid += 1;
        }
    }
    let id = nodes.len();
    nodes.push(ClassNode::Split {
        feature: split.feature,
        threshold: split.threshold,
        left: 0,
        right: 0,
    });
    let (left_idx, right_idx) = indices.split_at_mut(mid);
    let left = build_class_node(
        nodes, scan, left_idx, labels, weights, params, policy, scratch, depth + 1,
    );
    let right = build_class_node(
        nodes, scan, right_idx, labels, weights, params, policy, scratch, depth + 1,
    );
    match &mut nodes[id] {
        ClassNode::Split {
            left: l, right: r, ..
        } => {
            *l = left;
            *r = right;
        }
        ClassNode::Leaf { .. } => unreachable!(),
    }
    id
}

/// Trains a single classification tree with uniform sample weights.
pub fn train_tree(train: &Dataset, params: &TreeParams) -> Result<ClassificationTree> {
    params.validate()?;
    let (features, labels) = dense_features(train);
    let weights = vec![1.0; train.len()];
    let indices: Vec<u32> = (0..train.len() as u32).collect();
    Ok(TreeBuilder {
        features: &features,
        labels: &labels,
        weights: &weights,
        params,
        policy: FeaturePolicy::All,
    }
    .build(&indices))
}

/// Trains a classification tree with explicit per-sample weights
/// (the AdaBoost weak learner).
pub(crate) fn train_weighted_tree(
    features: &[i8],
    labels: &[i8],
    weights: &[f64],
    params: &TreeParams,
) -> ClassificationTree {
    let n = labels.len();
    let indices: Vec<u32> = (0..n as u32).collect();
    TreeBuilder {
        features,
        labels,
        weights,
        params,
        policy: FeaturePolicy::All,
    }
    .build(&indices)
}

pub(crate) fn dense_features(train: &Dataset) -> (Vec<i8>, Vec<i8>) {
    let mut features = Vec::with_capacity(train.len() * FEATURE_COUNT);
    let mut labels = Vec::with_capacity(train.len());
    for s in train.samples() {
        features.extend_from_slice(s.features.values());
        labels.push(s.label.value());
    }
    (features, labels)
}

// ---------------------------------------------------------------------------
// Regression trees for the boosting families.
// ---------------------------------------------------------------------------

/// Flat-arena regression tree; leaves hold real-valued outputs.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RegressionTree {
    pub nodes: Vec<RegNode>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RegNode {
    Split {
        feature: usize,
        threshold: f64,
        left: usize,
        right: usize,
    },
    Leaf {
        value: f64,
    },
}

impl RegressionTree {
    pub fn predict(&self, values: &[i8]) -> f64 {
        let mut node = 0usize;
        loop {
            match &self.nodes[node] {
                RegNode::Leaf { value } => return *value,
                RegNode::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => {
                    node = if (values[*feature] as f64) <= *threshold {
                        *left
                    } else {
                        *right
                    };
                }
            }
        }
    }
}

/// Parameters for one gradient-fitted tree.
pub(crate) struct RegTreeParams {
    pub max_depth: usize,
    pub min_leaf: usize,
    /// L2 regularization added to hessian sums in gain and leaf weights.
    pub lambda: f64,
    /// Minimum gain required to keep a split.
    pub min_gain: f64,
}

/// Grows a regression tree on gradient/hessian statistics. `split_g` and
/// `split_h` drive structure search (gain = ½[G_L²/(H_L+λ) + G_R²/(H_R+λ)
/// − G²/(H+λ)] − γ); `leaf_value` computes each leaf's output from the
/// sample indices that reached it.
pub(crate) fn fit_gradient_tree(
    features: &[i8],
    indices: &[u32],
    split_g: &[f64],
    split_h: &[f64],
    params: &RegTreeParams,
    policy: &mut FeaturePolicy,
    leaf_value: &dyn Fn(&[u32]) -> f64,
) -> RegressionTree {
    let scan = SplitScan::new(features, FEATURE_COUNT);
    let mut nodes = Vec::new();
    let mut work = indices.to_vec();
    let mut scratch = Vec::with_capacity(FEATURE_COUNT);
    build_reg_node(
        &mut nodes,
        &scan,
        &mut work,
        split_g,
        split_h,
        params,
        policy,
        &mut scratch,
        leaf_value,
        0,
    );
    RegressionTree { nodes }
}

#[allow(clippy::too_many_arguments)]
fn build_reg_node(
    nodes: &mut Vec<RegNode>,
    scan: &SplitScan,
    indices: &mut [u32],
    split_g: &[f64],
    split_h: &[f64],
    params: &RegTreeParams,
    policy: &mut FeaturePolicy,
    scratch: &mut Vec<usize>,
    leaf_value: &dyn Fn(&[u32]) -> f64,
    depth: usize,
) -> usize {
    let make_leaf = |nodes: &mut Vec<RegNode>, indices: &[u32]| {
        let id = nodes.len();
        nodes.push(RegNode::Leaf {
            value: leaf_value(indices),
        });
        id
    };

    if depth >= params.max_depth || indices.len() < 2 * params.min_leaf {
        return make_leaf(nodes, indices);
    }

    let mut total_g = 0.0;
    let mut total_h = 0.0;
    for &i in indices.iter() {
        total_g += split_g[i as usize];
        total_h += split_h[i as usize];
    }
    let score = |g: f64, h: f64| g * g / (h + params.lambda).max(1e-12);

    policy.pick(scratch);
    let mut best: Option<(usize, f64, f64)> = None; // (feature, threshold, gain)
    for &feature in scratch.iter() {
        let mut g_bucket = [0.0f64; 3];
        let mut h_bucket = [0.0f64; 3];
        let mut count = [0usize; 3];
        for &i in indices.iter() {
            let bucket = (scan.value(i as usize, feature) + 1) as usize;
            g_bucket[bucket] += split_g[i as usize];
            h_bucket[bucket] += split_h[i as usize];
            count[bucket] += 1;
        }
        let present = [count[0] > 0, count[1] > 0, count[2] > 0];
        for (threshold, last_left) in candidates(present).thresholds {
            let mut left_g = 0.0;
            let mut left_h = 0.0;
            let mut left_count = 0usize;
            for b in 0..=last_left {
                left_g += g_bucket[b];
                left_h += h_bucket[b];
                left_count += count[b];
            }
            let right_count = indices.len() - left_count;
            if left_count < params.min_leaf || right_count < params.min_leaf {
                continue;
            }
            let gain = 0.5
                * (score(left_g, left_h) + score(total_g - left_g, total_h - left_h)
                    - score(total_g, total_h))
                - params.min_gain;
            let beats = best.map_or(gain > 1e-12, |(_, _, g)| gain > g + 1e-12);
            if beats {
                best = Some((feature, threshold, gain));
            }
        }
    }

    let (feature, threshold, _) = match best {
        Some(b) => b,
        None => return make_leaf(nodes, indices),
    };

    let mut mid = 0;
    for i in 0..indices.len() {
        if (scan.value(indices[i] as usize, feature) as f64) <= threshold {
            indices.swap(i, mid);
            mid += 1;
        }
    }
    let id = nodes.len();
    nodes.push(RegNode::Split {
        feature,
        threshold,
        left: 0,
        right: 0,
    });
    let (left_idx, right_idx) = indices.split_at_mut(mid);
    let left = build_reg_node(
        nodes, scan, left_idx, split_g, split_h, params, policy, scratch, leaf_value, depth + 1,
    );
    let right = build_reg_node(
        nodes, scan, right_idx, split_g, split_h, params, policy, scratch, leaf_value, depth + 1,
    );
    match &mut nodes[id] {
        RegNode::Split {
            left: l, right: r, ..
        } => {
            *l = left;
            *r = right;
        }
        RegNode::Leaf { .. } => unreachable!(),
    }
    id
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::testutil::dataset_from_rows;

    #[test]
    fn pure_node_stays_a_leaf() {
        let ds = dataset_from_rows(&[(&[1], 1), (&[-1], 1)]);
        let tree = train_tree(&ds, &TreeParams::default()).unwrap();
        assert_eq!(tree.nodes.len(), 1);
        assert!(matches!(
            tree.nodes[0],
            ClassNode::Leaf {
                label: Label::Legitimate,
                ..
            }
        ));
    }

    #[test]
    fn symmetric_node_has_gini_half() {
        assert_eq!(gini(2.0, 2.0), 0.5);
        assert_eq!(gini(2.0, 0.0), 0.0);
    }

    #[test]
    fn separable_pair_splits_on_the_informative_feature() {
        let ds = dataset_from_rows(&[(&[-1], -1), (&[1], 1)]);
        let tree = train_tree(&ds, &TreeParams::default()).unwrap();
        match &tree.nodes[0] {
            ClassNode::Split {
                feature, threshold, ..
            } => {
                assert_eq!(*feature, 0);
                assert_eq!(*threshold, 0.0); // midpoint of {-1, 1}
            }
            ClassNode::Leaf { .. } => panic!("expected a split"),
        }
        assert_eq!(tree.predict(&ds.samples()[0].features), Label::Phishing);
        assert_eq!(tree.predict(&ds.samples()[1].features), Label::Legitimate);
    }

    /// Exhaustive enumeration over all (feature, midpoint-threshold) pairs;
    /// independent of the builder's histogram path.
    pub(super) fn brute_force_root_split(
        ds: &Dataset,
        weights: &[f64],
    ) -> Option<(usize, f64, f64)> {
        let n = ds.len();
        let mut best: Option<(usize, f64, f64)> = None;
        let total_phish: f64 = ds
            .samples()
            .iter()
            .zip(weights)
            .filter(|(s, _)| s.label == Label::Phishing)
            .map(|(_, w)| w)
            .sum();
        let total_legit: f64 = weights.iter().sum::<f64>() - total_phish;
        let parent = gini(total_phish, total_legit);
        for feature in 0..FEATURE_COUNT {
            let mut present: Vec<i8> = (0..n)
                .map(|i| ds.samples()[i].features.values()[feature])
                .collect();
            present.sort_unstable();
            present.dedup();
            for pair in present.windows(2) {
                let threshold = (pair[0] as f64 + pair[1] as f64) / 2.0;
                let mut lp = 0.0;
                let mut ll = 0.0;
                let mut ln = 0usize;
                for (i, s) in ds.samples().iter().enumerate() {
                    if (s.features.values()[feature] as f64) <= threshold {
                        ln += 1;
                        if s.label == Label::Phishing {
                            lp += weights[i];
                        } else {
                            ll += weights[i];
                        }
                    }
                }
                if ln == 0 || ln == n {
                    continue;
                }
                let rp = total_phish - lp;
                let rl = total_legit - ll;
                let w = total_phish + total_legit;
                let children = ((lp + ll) * gini(lp, ll) + (rp + rl) * gini(rp, rl)) / w;
                let gain = parent - children;
                let beats = best.map_or(gain > 1e-12, |(_, _, g)| gain > g + 1e-12);
                if beats {
                    best = Some((feature, threshold, gain));
                }
            }
        }
        best
    }

    #[test]
    fn root_split_matches_exhaustive_enumeration_on_hand_set() {
        // Six samples; feature 1 separates best, feature 0 partially.
        let ds = dataset_from_rows(&[
            (&[-1, -1], -1),
            (&[-1, -1], -1),
            (&[1, -1], -1),
            (&[1, 1], 1),
            (&[-1, 1], 1),
            (&[1, 1], 1),
        ]);
        let weights = vec![1.0; ds.len()];
        let oracle = brute_force_root_split(&ds, &weights).unwrap();
        let tree = train_tree(&ds, &TreeParams::default()).unwrap();
        match &tree.nodes[0] {
            ClassNode::Split {
                feature, threshold, ..
            } => {
                assert_eq!(*feature, oracle.0);
                assert_eq!(*threshold, oracle.1);
            }
            ClassNode::Leaf { .. } => panic!("expected a split"),
        }
    }

    #[test]
    fn max_depth_zero_gives_majority_leaf() {
        let ds = dataset_from_rows(&[(&[-1], -1), (&[1], 1), (&[1], 1)]);
        let tree = train_tree(
            &ds,
            &TreeParams {
                max_depth: Some(0),
                min_leaf: 1,
            },
        )
        .unwrap();
        assert_eq!(tree.nodes.len(), 1);
        assert_eq!(tree.predict(&ds.samples()[0].features), Label::Legitimate);
    }

    #[test]
    fn min_leaf_blocks_undersized_children() {
        let ds = dataset_from_rows(&[(&[-1], -1), (&[1], 1), (&[1], 1), (&[1], 1)]);
        let tree = train_tree(
            &ds,
            &TreeParams {
                max_depth: None,
                min_leaf: 2,
            },
        )
        .unwrap();
        // The only useful split would isolate one sample on the left.
        assert_eq!(tree.nodes.len(), 1);
    }

    #[test]
    fn regression_tree_fits_leaf_means() {
        // g = residuals with h = 1 and mean-leaf values reproduces a
        // squared-error regression stump.
        let ds = dataset_from_rows(&[(&[-1], -1), (&[-1], -1), (&[1], 1), (&[1], 1)]);
        let (features, _) = dense_features(&ds);
        let g = [2.0, 1.0, -1.0, -2.0];
        let h = [1.0; 4];
        let indices: Vec<u32> = (0..4).collect();
        let tree = fit_gradient_tree(
            &features,
            &indices,
            &g,
            &h,
            &RegTreeParams {
                max_depth: 1,
                min_leaf: 1,
                lambda: 0.0,
                min_gain: 0.0,
            },
            &mut FeaturePolicy::All,
            &|idx| idx.iter().map(|&i| g[i as usize]).sum::<f64>() / idx.len() as f64,
        );
        assert!((tree.predict(&[-1; FEATURE_COUNT]) - 1.5).abs() < 1e-12);
        let mut pos = [1i8; FEATURE_COUNT];
        pos[0] = 1;
        assert!((tree.predict(&pos) - (-1.5)).abs() < 1e-12);
    }
}
