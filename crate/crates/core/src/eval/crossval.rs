//! Stratified k-fold cross-validation with per-fold timing.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::{fit, predict, ClassifierSpec};
use crate::dataset::{stratified_kfold, Dataset, FoldPlan};
use crate::error::Result;
use crate::eval::{confusion, metrics, ConfusionCounts, MetricsReport, Timing};

/// Outcome of one fold: metrics plus convergence diagnostics.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FoldOutcome {
    pub fold: usize,
    pub report: MetricsReport,
    pub converged: bool,
    pub warnings: Vec<String>,
}

/// Cross-validation results for one classifier spec.
///
/// `aggregate` derives from the pooled confusion counts over all folds,
/// not from averaging fold metrics; its timing fields hold the mean
/// per-fold wall-clock times.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossValReport {
    pub label: String,
    pub spec_json: serde_json::Value,
    pub k: usize,
    pub seed: u64,
    pub fold_plan_fingerprint: u64,
    pub per_fold: Vec<FoldOutcome>,
    pub aggregate: MetricsReport,
    pub converged: bool,
}

/// Runs k-fold cross-validation: for each fold, train on the other k−1
/// folds and evaluate on the held-out one, recording train/test times.
/// Folds execute concurrently (bounded by the surrounding rayon pool);
/// outputs are deterministic regardless of scheduling.
pub fn cross_validate(
    dataset: &Dataset,
    spec: &ClassifierSpec,
    k: usize,
    seed: u64,
) -> Result<CrossValReport> {
    let plan = stratified_kfold(dataset, k, seed)?;
    cross_validate_with_plan(dataset, spec, &plan)
}

/// Same as [`cross_validate`] but against a caller-provided fold plan,
/// so paired experiment runs can share identical folds.
pub fn cross_validate_with_plan(
    dataset: &Dataset,
    spec: &ClassifierSpec,
    plan: &FoldPlan,
) -> Result<CrossValReport> {
    let outcomes: Vec<Result<FoldOutcome>> = (0..plan.k)
        .into_par_iter()
        .map(|fold| run_fold(dataset, spec, plan, fold))
        .collect();

    let mut per_fold = Vec::with_capacity(plan.k);
    for outcome in outcomes {
        per_fold.push(outcome?);
    }

    let pooled = per_fold.iter().fold(ConfusionCounts::default(), |acc, f| {
        acc.add(&f.report.counts)
    });
    let mut aggregate = metrics(&pooled)?;
    aggregate.timing = Timing {
        train_time_s: per_fold
            .iter()
            .map(|f| f.report.timing.train_time_s)
            .sum::<f64>()
            / plan.k as f64,
        test_time_s: per_fold
            .iter()
            .map(|f| f.report.timing.test_time_s)
            .sum::<f64>()
            / plan.k as f64,
    };
    let converged = per_fold.iter().all(|f| f.converged);

    Ok(CrossValReport {
        label: spec.label(),
        spec_json: serde_json::from_str(&spec.to_json()).expect("spec json"),
        k: plan.k,
        seed: plan.seed,
        fold_plan_fingerprint: plan.fingerprint(),
        per_fold,
        aggregate,
        converged,
    })
}

fn run_fold(
    dataset: &Dataset,
    spec: &ClassifierSpec,
    plan: &FoldPlan,
    fold: usize,
) -> Result<FoldOutcome> {
    let train_idx = plan.complement_indices(fold);
    let test_idx = plan.fold_indices(fold);
    let train = dataset.subset(&train_idx);
    let test = dataset.subset(&test_idx);

    let train_start = Instant::now();
    let fitted = fit(spec, &train)?;
    let train_time_s = train_start.elapsed().as_secs_f64();

    let test_start = Instant::now();
    let predictions: Vec<_> = test
        .samples()
        .iter()
        .map(|s| predict(&fitted.model, &s.features))
        .collect();
    let test_time_s = test_start.elapsed().as_secs_f64();

    let truths: Vec<_> = test.samples().iter().map(|s| s.label).collect();
    let counts = confusion(&predictions, &truths)?;
    let mut report = metrics(&counts)?;
    report.timing = Timing {
        train_time_s,
        test_time_s,
    };

    Ok(FoldOutcome {
        fold,
        report,
        converged: fitted.converged,
        warnings: fitted.warnings,
    })
}
