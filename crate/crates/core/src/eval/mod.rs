//! Evaluation: confusion counts, derived metrics, cross-validation and
//! sweep experiment drivers.

mod correlation;
mod crossval;
mod report;
mod sweep;

pub use correlation::correlation_matrix;
pub use crossval::{cross_validate, CrossValReport, FoldOutcome};
pub use report::{emit_report, parse_report, render_summary, ReportFormat, ReportFile};
pub use sweep::{sweep, SweepAxis, SweepResult};

use serde::{Deserialize, Serialize};

use crate::dataset::Label;
use crate::error::{Error, Result};

/// The four prediction-outcome counts for the binary phishing task.
///
/// `legit_as_legit` / `legit_as_phish` count samples whose true class is
/// legitimate; `phish_as_legit` / `phish_as_phish` count true phishing
/// samples.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionCounts {
    pub legit_as_legit: u64,
    pub legit_as_phish: u64,
    pub phish_as_legit: u64,
    pub phish_as_phish: u64,
}

impl ConfusionCounts {
    pub fn total(&self) -> u64 {
        self.legit_as_legit + self.legit_as_phish + self.phish_as_legit + self.phish_as_phish
    }

    /// Elementwise sum, used to pool folds.
    pub fn add(&self, other: &ConfusionCounts) -> ConfusionCounts {
        ConfusionCounts {
            legit_as_legit: self.legit_as_legit + other.legit_as_legit,
            legit_as_phish: self.legit_as_phish + other.legit_as_phish,
            phish_as_legit: self.phish_as_legit + other.phish_as_legit,
            phish_as_phish: self.phish_as_phish + other.phish_as_phish,
        }
    }

    pub fn record(&mut self, truth: Label, predicted: Label) {
        match (truth, predicted) {
            (Label::Legitimate, Label::Legitimate) => self.legit_as_legit += 1,
            (Label::Legitimate, Label::Phishing) => self.legit_as_phish += 1,
            (Label::Phishing, Label::Legitimate) => self.phish_as_legit += 1,
            (Label::Phishing, Label::Phishing) => self.phish_as_phish += 1,
        }
    }
}

/// Tallies predictions against ground truth.
pub fn confusion(predictions: &[Label], truths: &[Label]) -> Result<ConfusionCounts> {
    if predictions.len() != truths.len() {
        return Err(Error::Dimension {
            expected: truths.len(),
            got: predictions.len(),
        });
    }
    let mut counts = ConfusionCounts::default();
    for (&pred, &truth) in predictions.iter().zip(truths) {
        counts.record(truth, pred);
    }
    Ok(counts)
}

/// A ratio metric that may be undefined when its denominator is zero.
/// Undefined values carry the reason instead of being coerced to 0.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MetricValue {
    Defined(f64),
    Undefined { undefined: String },
}

impl MetricValue {
    pub fn value(&self) -> Option<f64> {
        match self {
            MetricValue::Defined(v) => Some(*v),
            MetricValue::Undefined { .. } => None,
        }
    }

    pub fn unwrap_or_nan(&self) -> f64 {
        self.value().unwrap_or(f64::NAN)
    }
}

/// Accuracy, recall, precision and F1 for one evaluation, plus wall-clock
/// training and testing time. Recall and precision are with respect to the
/// phishing class.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub counts: ConfusionCounts,
    pub accuracy: f64,
    pub recall: MetricValue,
    pub precision: MetricValue,
    pub f1: MetricValue,
    /// Timing lives in its own subtree so deterministic-output comparisons
    /// can drop it wholesale.
    pub timing: Timing,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub train_time_s: f64,
    pub test_time_s: f64,
}

/// Derives the four metrics from confusion counts. Times are zero.
pub fn metrics(counts: &ConfusionCounts) -> Result<MetricsReport> {
    let total = counts.total();
    if total == 0 {
        return Err(Error::EmptyDataset);
    }
    let accuracy = (counts.legit_as_legit + counts.phish_as_phish) as f64 / total as f64;

    let recall_den = counts.phish_as_legit + counts.phish_as_phish;
    let recall = if recall_den == 0 {
        MetricValue::Undefined {
            undefined: "no phishing samples in evaluation set".into(),
        }
    } else {
        MetricValue::Defined(counts.phish_as_phish as f64 / recall_den as f64)
    };

    let precision_den = counts.legit_as_phish + counts.phish_as_phish;
    let precision = if precision_den == 0 {
        MetricValue::Undefined {
            undefined: "no samples predicted as phishing".into(),
        }
    } else {
        MetricValue::Defined(counts.phish_as_phish as f64 / precision_den as f64)
    };

    let f1 = match (precision.value(), recall.value()) {
        (Some(p), Some(r)) if p + r > 0.0 => MetricValue::Defined(2.0 * p * r / (p + r)),
        (Some(_), Some(_)) => MetricValue::Undefined {
            undefined: "precision + recall is zero".into(),
        },
        _ => MetricValue::Undefined {
            undefined: "precision or recall undefined".into(),
        },
    };

    Ok(MetricsReport {
        counts: *counts,
        accuracy,
        recall,
        precision,
        f1,
        timing: Timing::default(),
    })
}
