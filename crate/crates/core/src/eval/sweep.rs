//! Paired sweep experiments: vary one axis of a classifier spec while
//! every run shares the same fold plan.

use serde::{Deserialize, Serialize};

use crate::classify::{ClassifierSpec, Hyperparams, KernelKind, KernelSpec};
use crate::dataset::{stratified_kfold, Dataset};
use crate::error::{Error, Result};
use crate::eval::crossval::{cross_validate_with_plan, CrossValReport};

/// A sweep axis plus its values.
#[derive(Clone, Debug, PartialEq)]
pub enum SweepAxis {
    /// SVM kernel kind, holding C and γ fixed.
    SvmKernel(Vec<KernelKind>),
    /// Neighbor count for KNN.
    KnnK(Vec<usize>),
    /// Number of hidden layers for the neural network, all at the base
    /// spec's first hidden width.
    MlpDepth(Vec<usize>),
}

impl SweepAxis {
    pub fn name(&self) -> &'static str {
        match self {
            SweepAxis::SvmKernel(_) => "svm-kernel",
            SweepAxis::KnnK(_) => "knn-k",
            SweepAxis::MlpDepth(_) => "mlp-depth",
        }
    }

    pub fn value_labels(&self) -> Vec<String> {
        match self {
            SweepAxis::SvmKernel(kinds) => kinds.iter().map(|k| k.name().to_string()).collect(),
            SweepAxis::KnnK(ks) => ks.iter().map(|k| k.to_string()).collect(),
            SweepAxis::MlpDepth(ds) => ds.iter().map(|d| d.to_string()).collect(),
        }
    }

    fn len(&self) -> usize {
        match self {
            SweepAxis::SvmKernel(v) => v.len(),
            SweepAxis::KnnK(v) => v.len(),
            SweepAxis::MlpDepth(v) => v.len(),
        }
    }

    /// Applies the i-th axis value to a copy of the base spec.
    fn apply(&self, base: &ClassifierSpec, i: usize) -> Result<ClassifierSpec> {
        let mut spec = base.clone();
        match (self, &mut spec.hyperparams) {
            (SweepAxis::SvmKernel(kinds), Hyperparams::Svm(p)) => {
                p.kernel = KernelSpec {
                    kind: kinds[i],
                    ..p.kernel
                };
            }
            (SweepAxis::KnnK(ks), Hyperparams::Knn(p)) => {
                p.k = ks[i];
            }
            (SweepAxis::MlpDepth(depths), Hyperparams::Mlp(p)) => {
                let width = p.hidden_layers.first().copied().unwrap_or(30);
                p.hidden_layers = vec![width; depths[i]];
            }
            _ => {
                return Err(Error::InvalidSpec(format!(
                    "axis {} does not apply to family {}",
                    self.name(),
                    base.family().name()
                )))
            }
        }
        spec.validate()?;
        Ok(spec)
    }
}

/// One cross-validation report per axis value, all on identical folds.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub axis_name: String,
    pub axis_values: Vec<String>,
    pub reports: Vec<CrossValReport>,
}

impl SweepResult {
    /// Flat (axis_value, accuracy, recall, precision, f1) rows for
    /// external plotting.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("axis_value,accuracy,recall,precision,f1\n");
        for (value, report) in self.axis_values.iter().zip(&self.reports) {
            let fmt = |m: &crate::eval::MetricValue| {
                m.value()
                    .map(|v| format!("{v:.6}"))
                    .unwrap_or_else(|| "n/a".into())
            };
            out.push_str(&format!(
                "{value},{:.6},{},{},{}\n",
                report.aggregate.accuracy,
                fmt(&report.aggregate.recall),
                fmt(&report.aggregate.precision),
                fmt(&report.aggregate.f1),
            ));
        }
        out
    }
}

/// Runs the sweep. Every run consumes the same fold plan; the shared
/// fingerprint is asserted so paired comparisons stay paired.
pub fn sweep(
    dataset: &Dataset,
    base: &ClassifierSpec,
    axis: &SweepAxis,
    k: usize,
    seed: u64,
) -> Result<SweepResult> {
    if axis.len() == 0 {
        return Err(Error::InvalidSpec("sweep axis has no values".into()));
    }
    let plan = stratified_kfold(dataset, k, seed)?;
    let mut reports = Vec::with_capacity(axis.len());
    for i in 0..axis.len() {
        let spec = axis.apply(base, i)?;
        let report = cross_validate_with_plan(dataset, &spec, &plan)?;
        assert_eq!(
            report.fold_plan_fingerprint,
            plan.fingerprint(),
            "sweep runs must share fold assignments"
        );
        reports.push(report);
    }
    Ok(SweepResult {
        axis_name: axis.name().to_string(),
        axis_values: axis.value_labels(),
        reports,
    })
}
