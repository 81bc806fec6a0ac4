//! Kernel SVM trained by sequential minimal optimization.
//!
//! Working pairs are selected by the first-order max-violating-pair rule:
//! the candidate pushing hardest from above is paired with the one
//! pushing hardest from below. Optimization sweeps run over a shrinking
//! active set (the non-bound multipliers plus recent violators) and
//! periodically reconcile against the full set, stopping when the largest
//! KKT violation falls under the tolerance. Kernel values on ternary
//! vectors reduce to exact integer dot products.

use serde::{Deserialize, Serialize};

use crate::classify::kernel::{KernelKind, KernelSpec};
use crate::dataset::{Dataset, FeatureVector, Label, FEATURE_COUNT};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SvmParams {
    pub kernel: KernelSpec,
    /// KKT violation tolerance.
    pub tol: f64,
    /// Cap on optimization sweeps (one sweep is a bounded batch of
    /// working-pair steps) before giving up with a warning.
    pub max_passes: usize,
}

impl Default for SvmParams {
    fn default() -> SvmParams {
        SvmParams {
            kernel: KernelSpec::default(),
            tol: 1e-3,
            max_passes: 10_000,
        }
    }
}

impl SvmParams {
    pub fn validate(&self) -> Result<()> {
        self.kernel.validate()?;
        if !(self.tol > 0.0) {
            return Err(Error::InvalidSpec("tol must be positive".into()));
        }
        if self.max_passes == 0 {
            return Err(Error::InvalidSpec("max_passes must be at least 1".into()));
        }
        Ok(())
    }
}

/// Support vectors, dual coefficients and bias of a trained kernel machine.
///
/// Invariants: 0 ≤ αᵢ ≤ C for every i, and |Σ αᵢyᵢ| ≤ 1e-6.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KernelMachineModel {
    pub support_vectors: Vec<FeatureVector>,
    pub alphas: Vec<f64>,
    pub labels: Vec<Label>,
    pub bias: f64,
    pub kernel: KernelSpec,
}

impl KernelMachineModel {
    /// Decision value Σ αᵢyᵢK(xᵢ, x) + b.
    pub fn decision(&self, x: &FeatureVector) -> f64 {
        let mut score = self.bias;
        for ((sv, &alpha), &label) in self
            .support_vectors
            .iter()
            .zip(&self.alphas)
            .zip(&self.labels)
        {
            score += alpha * label.as_f64() * kernel_ternary(&self.kernel, sv.values(), x.values());
        }
        score
    }

    /// Σ αᵢyᵢ, which the dual equality constraint pins to zero.
    pub fn dual_balance(&self) -> f64 {
        self.alphas
            .iter()
            .zip(&self.labels)
            .map(|(&a, &l)| a * l.as_f64())
            .sum()
    }
}

/// Kernel between two ternary vectors via exact integer dot products.
#[inline]
fn kernel_ternary(spec: &KernelSpec, a: &[i8; FEATURE_COUNT], b: &[i8; FEATURE_COUNT]) -> f64 {
    match spec.kind {
        KernelKind::Linear => int_dot(a, b) as f64,
        KernelKind::Rbf => (-spec.gamma * int_sq_dist(a, b) as f64).exp(),
        KernelKind::Sigmoid => (spec.gamma * int_dot(a, b) as f64 + spec.r).tanh(),
        KernelKind::Polynomial => {
            (spec.gamma * int_dot(a, b) as f64 + spec.r).powi(spec.degree as i32)
        }
    }
}

#[inline]
fn int_dot(a: &[i8; FEATURE_COUNT], b: &[i8; FEATURE_COUNT]) -> i32 {
    let mut acc = 0i32;
    for i in 0..FEATURE_COUNT {
        acc += a[i] as i32 * b[i] as i32;
    }
    acc
}

#[inline]
fn int_sq_dist(a: &[i8; FEATURE_COUNT], b: &[i8; FEATURE_COUNT]) -> i32 {
    let mut acc = 0i32;
    for i in 0..FEATURE_COUNT {
        let d = (a[i] - b[i]) as i32;
        acc += d * d;
    }
    acc
}

pub struct SvmOutcome {
    pub model: KernelMachineModel,
    pub converged: bool,
    pub warnings: Vec<String>,
}

/// FIFO cache of kernel rows keyed by sample index.
struct RowCache {
    rows: Vec<Option<Box<[f32]>>>,
    order: std::collections::VecDeque<u32>,
    capacity: usize,
}

impl RowCache {
    fn new(n: usize, capacity: usize) -> RowCache {
        RowCache {
            rows: vec![None; n],
            order: std::collections::VecDeque::new(),
            capacity: capacity.max(4),
        }
    }

    fn get(&mut self, i: usize, spec: &KernelSpec, x: &[[i8; FEATURE_COUNT]]) -> &[f32] {
        self.load(i, usize::MAX, spec, x);
        self.rows[i].as_deref().unwrap()
    }

    /// Loads rows i and j, guaranteeing neither evicts the other.
    fn get_pair(
        &mut self,
        i: usize,
        j: usize,
        spec: &KernelSpec,
        x: &[[i8; FEATURE_COUNT]],
    ) -> (&[f32], &[f32]) {
        self.load(i, j, spec, x);
        self.load(j, i, spec, x);
        (
            self.rows[i].as_deref().unwrap(),
            self.rows[j].as_deref().unwrap(),
        )
    }

    fn load(&mut self, i: usize, pinned: usize, spec: &KernelSpec, x: &[[i8; FEATURE_COUNT]]) {
        if self.rows[i].is_some() {
            return;
        }
        while self.order.len() >= self.capacity {
            let evict = self.order.pop_front().expect("cache order nonempty");
            if evict as usize == pinned {
                self.order.push_back(evict);
                continue;
            }
            self.rows[evict as usize] = None;
        }
        let row: Vec<f32> = x
            .iter()
            .map(|xk| kernel_ternary(spec, &x[i], xk) as f32)
            .collect();
        self.rows[i] = Some(row.into_boxed_slice());
        self.order.push_back(i as u32);
    }
}

const ALPHA_EPS: f64 = 1e-12;
/// Steps per sweep between convergence checks.
const SWEEP_STEPS: usize = 1000;
/// Sweeps between active-set rebuilds.
const SHRINK_EVERY: usize = 4;

struct Solver<'a> {
    x: &'a [[i8; FEATURE_COUNT]],
    y: &'a [f64],
    spec: KernelSpec,
    tol: f64,
    alphas: Vec<f64>,
    /// g_i = Σ_j α_j y_j K(j, i); the unbiased decision value.
    g: Vec<f64>,
    cache: RowCache,
    active: Vec<u32>,
}

impl Solver<'_> {
    /// Violation score of index i: y_i − g_i. A pair violates KKT when
    /// max over the up-set exceeds min over the down-set by more than tol.
    #[inline]
    fn score(&self, i: usize) -> f64 {
        self.y[i] - self.g[i]
    }

    #[inline]
    fn in_up_set(&self, i: usize) -> bool {
        (self.y[i] > 0.0 && self.alphas[i] < self.spec.c)
            || (self.y[i] < 0.0 && self.alphas[i] > 0.0)
    }

    #[inline]
    fn in_down_set(&self, i: usize) -> bool {
        (self.y[i] > 0.0 && self.alphas[i] > 0.0)
            || (self.y[i] < 0.0 && self.alphas[i] < self.spec.c)
    }

    /// First-order max-violating pair over `indices`.
    fn select_pair(&self, indices: &[u32]) -> Option<(usize, usize, f64)> {
        let mut up: Option<(f64, usize)> = None;
        let mut down: Option<(f64, usize)> = None;
        for &iu in indices {
            let i = iu as usize;
            let s = self.score(i);
            if self.in_up_set(i) && up.map_or(true, |(b, _)| s > b) {
                up = Some((s, i));
            }
            if self.in_down_set(i) && down.map_or(true, |(b, _)| s < b) {
                down = Some((s, i));
            }
        }
        match (up, down) {
            (Some((m, i)), Some((mm, j))) if m - mm > self.tol => Some((i, j, m - mm)),
            _ => None,
        }
    }

    /// Two-variable update on the selected pair. Returns false when the
    /// pair admits no feasible progress.
    fn take_step(&mut self, i1: usize, i2: usize) -> bool {
        if i1 == i2 {
            return false;
        }
        let c = self.spec.c;
        let (a1_old, a2_old) = (self.alphas[i1], self.alphas[i2]);
        let (y1, y2) = (self.y[i1], self.y[i2]);
        let s = y1 * y2;
        // Bias-free errors; their difference is what the update needs.
        let e1 = self.g[i1] - y1;
        let e2 = self.g[i2] - y2;

        let (low, high) = if s < 0.0 {
            ((a2_old - a1_old).max(0.0), (c + a2_old - a1_old).min(c))
        } else {
            ((a1_old + a2_old - c).max(0.0), (a1_old + a2_old).min(c))
        };
        if low >= high {
            return false;
        }

        let k11 = kernel_ternary(&self.spec, &self.x[i1], &self.x[i1]);
        let k22 = kernel_ternary(&self.spec, &self.x[i2], &self.x[i2]);
        let k12 = kernel_ternary(&self.spec, &self.x[i1], &self.x[i2]);
        let eta = k11 + k22 - 2.0 * k12;

        let mut a2 = if eta > 1e-12 {
            (a2_old + y2 * (e1 - e2) / eta).clamp(low, high)
        } else {
            // Indefinite direction (possible for the sigmoid kernel):
            // evaluate the dual objective at both clip ends.
            let f1 = y1 * self.g[i1] - a1_old * k11 - s * a2_old * k12;
            let f2 = y2 * self.g[i2] - s * a1_old * k12 - a2_old * k22;
            let l1 = a1_old + s * (a2_old - low);
            let h1 = a1_old + s * (a2_old - high);
            let obj_low = l1 * f1 + low * f2
                + 0.5 * l1 * l1 * k11
                + 0.5 * low * low * k22
                + s * low * l1 * k12
                - l1
                - low;
            let obj_high = h1 * f1 + high * f2
                + 0.5 * h1 * h1 * k11
                + 0.5 * high * high * k22
                + s * high * h1 * k12
                - h1
                - high;
            if obj_low < obj_high - 1e-12 {
                low
            } else if obj_low > obj_high + 1e-12 {
                high
            } else {
                return false;
            }
        };
        if a2 < ALPHA_EPS {
            a2 = 0.0;
        } else if a2 > c - ALPHA_EPS {
            a2 = c;
        }
        if (a2 - a2_old).abs() < 1e-12 {
            return false;
        }
        let mut a1 = a1_old + s * (a2_old - a2);
        if a1 < ALPHA_EPS {
            a1 = 0.0;
        } else if a1 > c - ALPHA_EPS {
            a1 = c;
        }

        let d1 = (a1 - a1_old) * y1;
        let d2 = (a2 - a2_old) * y2;

        let (row1, row2) = self.cache.get_pair(i1, i2, &self.spec, self.x);
        for ((gk, &r1), &r2) in self.g.iter_mut().zip(row1.iter()).zip(row2.iter()) {
            *gk += d1 * r1 as f64 + d2 * r2 as f64;
        }

        self.alphas[i1] = a1;
        self.alphas[i2] = a2;
        true
    }

    /// Rebuilds the active set: non-bound multipliers plus bound ones
    /// whose violation is not safely inside the margin.
    fn rebuild_active(&mut self, margin: f64) {
        let n = self.y.len();
        self.active.clear();
        // Bound-safe thresholds come from the current global (m, M).
        let all: Vec<u32> = (0..n as u32).collect();
        let (m, mm) = self.global_bounds(&all);
        for i in 0..n {
            let s = self.score(i);
            let keep = if self.alphas[i] > 0.0 && self.alphas[i] < self.spec.c {
                true
            } else {
                let up_safe = !self.in_up_set(i) || s >= mm - margin;
                let down_safe = !self.in_down_set(i) || s <= m + margin;
                !(up_safe && down_safe) || (self.in_up_set(i) && s > mm) || (self.in_down_set(i) && s < m)
            };
            if keep {
                self.active.push(i as u32);
            }
        }
        if self.active.is_empty() {
            self.active = all;
        }
    }

    fn global_bounds(&self, indices: &[u32]) -> (f64, f64) {
        let mut m = f64::NEG_INFINITY;
        let mut mm = f64::INFINITY;
        for &iu in indices {
            let i = iu as usize;
            let s = self.score(i);
            if self.in_up_set(i) {
                m = m.max(s);
            }
            if self.in_down_set(i) {
                mm = mm.min(s);
            }
        }
        (m, mm)
    }

    /// Recomputes g from scratch for all samples (used after shrinking,
    /// before the final convergence verdict).
    fn recompute_g(&mut self) {
        let n = self.y.len();
        self.g = vec![0.0; n];
        for j in 0..n {
            let aj = self.alphas[j];
            if aj > 0.0 {
                let coeff = aj * self.y[j];
                let row = self.cache.get(j, &self.spec, self.x);
                for (gk, &r) in self.g.iter_mut().zip(row.iter()) {
                    *gk += coeff * r as f64;
                }
            }
        }
    }
}

/// Trains a kernel machine by SMO. Both classes must be present. If the
/// sweep cap is reached the best-so-far model is still returned, flagged
/// as unconverged.
pub fn train_svm_smo(train: &Dataset, params: &SvmParams) -> Result<SvmOutcome> {
    params.validate()?;
    let n = train.len();
    let mut x = Vec::with_capacity(n);
    let mut y = Vec::with_capacity(n);
    for s in train.samples() {
        x.push(*s.features.values());
        y.push(s.label.as_f64());
    }

    let mut solver = Solver {
        x: &x,
        y: &y,
        spec: params.kernel,
        tol: params.tol,
        alphas: vec![0.0; n],
        g: vec![0.0; n],
        cache: RowCache::new(n, 512.min(n)),
        active: (0..n as u32).collect(),
    };

    let mut converged = false;
    let mut sweeps = 0usize;
    'outer: while sweeps < params.max_passes {
        sweeps += 1;
        let mut progressed = false;
        for _ in 0..SWEEP_STEPS {
            let Some((i, j, _)) = solver.select_pair(&solver.active) else {
                break;
            };
            if !solver.take_step(i, j) {
                break;
            }
            progressed = true;
        }

        let active_done = solver.select_pair(&solver.active).is_none();
        if active_done || !progressed {
            // Reconcile against the full index set before concluding.
            solver.recompute_g();
            let all: Vec<u32> = (0..n as u32).collect();
            if solver.select_pair(&all).is_none() {
                converged = true;
                break 'outer;
            }
            solver.active = all;
        } else if sweeps % SHRINK_EVERY == 0 {
            solver.rebuild_active(10.0 * params.tol);
        }
    }

    let mut warnings = Vec::new();
    if !converged {
        warnings.push(format!(
            "smo hit the sweep cap ({}) before satisfying kkt at tol {}",
            params.max_passes, params.tol
        ));
    }

    // Bias from the final optimality bounds: midpoint of (m, M).
    let all: Vec<u32> = (0..n as u32).collect();
    let (m, mm) = solver.global_bounds(&all);
    let bias = if m.is_finite() && mm.is_finite() {
        (m + mm) / 2.0
    } else {
        0.0
    };

    let mut support_vectors = Vec::new();
    let mut alphas = Vec::new();
    let mut labels = Vec::new();
    for i in 0..n {
        if solver.alphas[i] > ALPHA_EPS {
            support_vectors.push(FeatureVector(x[i]));
            alphas.push(solver.alphas[i]);
            labels.push(if y[i] < 0.0 {
                Label::Phishing
            } else {
                Label::Legitimate
            });
        }
    }

    let model = KernelMachineModel {
        support_vectors,
        alphas,
        labels,
        bias,
        kernel: params.kernel,
    };
    debug_assert!(model.dual_balance().abs() <= 1e-6);
    Ok(SvmOutcome {
        model,
        converged,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::testutil::dataset_from_rows;

    #[test]
    fn two_point_problem_has_analytic_solution() {
        // Opposite-class points at ±e₁ with a linear kernel and large C:
        // α₁ = α₂ = 0.5, bias 0, both points support vectors.
        let ds = dataset_from_rows(&[(&[1], 1), (&[-1], -1)]);
        let mut rows = Vec::new();
        for s in ds.samples() {
            let mut v = [0i8; FEATURE_COUNT];
            v[0] = s.features.values()[0];
            rows.push((v, s.label));
        }
        let samples: Vec<crate::dataset::LabeledSample> = rows
            .iter()
            .map(|(v, l)| crate::dataset::LabeledSample {
                features: FeatureVector(*v),
                label: *l,
            })
            .collect();
        let ds = Dataset::new(
            crate::dataset::FeatureSchema::canonical().clone(),
            samples,
            "test",
        )
        .unwrap();

        let params = SvmParams {
            kernel: KernelSpec {
                kind: KernelKind::Linear,
                c: 1000.0,
                ..Default::default()
            },
            ..Default::default()
        };
        let outcome = train_svm_smo(&ds, &params).unwrap();
        let m = &outcome.model;
        assert!(outcome.converged);
        assert_eq!(m.alphas.len(), 2);
        assert!((m.alphas[0] - 0.5).abs() < 1e-9, "alpha {}", m.alphas[0]);
        assert!((m.alphas[1] - 0.5).abs() < 1e-9);
        assert!(m.bias.abs() < 1e-9);
        assert!(m.dual_balance().abs() < 1e-12);
        assert!((m.decision(&ds.samples()[0].features) - 1.0).abs() < 1e-9);
        assert!((m.decision(&ds.samples()[1].features) + 1.0).abs() < 1e-9);
    }

    #[test]
    fn duals_satisfy_box_and_equality_constraints() {
        let ds = dataset_from_rows(&[
            (&[-1, -1, 0], -1),
            (&[-1, 0, 1], -1),
            (&[0, -1, -1], -1),
            (&[1, 1, 0], 1),
            (&[1, 0, -1], 1),
            (&[0, 1, 1], 1),
            (&[1, -1, 1], 1),
            (&[-1, 1, 0], -1),
        ]);
        for kind in [
            KernelKind::Linear,
            KernelKind::Rbf,
            KernelKind::Sigmoid,
            KernelKind::Polynomial,
        ] {
            let params = SvmParams {
                kernel: KernelSpec {
                    kind,
                    c: 1.0,
                    gamma: 1.0 / FEATURE_COUNT as f64,
                    r: 0.0,
                    degree: 3,
                },
                ..Default::default()
            };
            let outcome = train_svm_smo(&ds, &params).unwrap();
            let m = &outcome.model;
            for &a in &m.alphas {
                assert!(
                    (0.0..=params.kernel.c + 1e-12).contains(&a),
                    "{kind:?}: alpha {a}"
                );
            }
            assert!(
                m.dual_balance().abs() <= 1e-6,
                "{kind:?}: sum alpha*y = {}",
                m.dual_balance()
            );
        }
    }

    #[test]
    fn rbf_separates_the_separable() {
        let ds = dataset_from_rows(&[
            (&[-1, -1], -1),
            (&[-1, 0], -1),
            (&[1, 1], 1),
            (&[1, 0], 1),
        ]);
        let outcome = train_svm_smo(&ds, &SvmParams::default()).unwrap();
        for s in ds.samples() {
            assert_eq!(
                Label::from_score(outcome.model.decision(&s.features)),
                s.label
            );
        }
    }

    #[test]
    fn kkt_violations_below_tol_at_convergence() {
        let ds = dataset_from_rows(&[
            (&[-1, -1, 1], -1),
            (&[-1, 0, 0], -1),
            (&[0, -1, 1], -1),
            (&[1, 1, 0], 1),
            (&[1, 0, 1], 1),
            (&[0, 1, -1], 1),
            (&[1, 1, 1], 1),
            (&[-1, -1, -1], -1),
            (&[0, 0, 1], 1),
            (&[0, 0, -1], -1),
        ]);
        let params = SvmParams::default();
        let outcome = train_svm_smo(&ds, &params).unwrap();
        assert!(outcome.converged);
        let m = &outcome.model;
        // Every training point must satisfy the KKT conditions at tol:
        // margin violations only for alphas at the box bound.
        for s in ds.samples() {
            let f = m.decision(&s.features);
            let margin = s.label.as_f64() * f;
            // Recover this sample's alpha (0 when not a support vector).
            let alpha = m
                .support_vectors
                .iter()
                .zip(&m.alphas)
                .find(|(sv, _)| *sv == &s.features)
                .map(|(_, &a)| a)
                .unwrap_or(0.0);
            let c = params.kernel.c;
            if alpha < 1e-9 {
                assert!(margin >= 1.0 - 10.0 * params.tol, "alpha=0 margin {margin}");
            } else if alpha > c - 1e-9 {
                assert!(margin <= 1.0 + 10.0 * params.tol, "alpha=C margin {margin}");
            } else {
                assert!(
                    (margin - 1.0).abs() <= 10.0 * params.tol,
                    "non-bound margin {margin}"
                );
            }
        }
    }
}
