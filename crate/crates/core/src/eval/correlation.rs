//! Pairwise Pearson correlation over the 30 feature columns plus the
//! label, emitted as data for external plotting.

use serde::{Deserialize, Serialize};

use crate::dataset::{Dataset, FEATURE_COUNT, LABEL_COLUMN};
use crate::error::{Error, Result};

/// Symmetric 31×31 correlation matrix. Entries involving a zero-variance
/// column are absent rather than zeroed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorrelationMatrix {
    pub columns: Vec<String>,
    pub entries: Vec<Vec<Option<f64>>>,
}

impl CorrelationMatrix {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("column");
        for c in &self.columns {
            out.push(',');
            out.push_str(c);
        }
        out.push('\n');
        for (name, row) in self.columns.iter().zip(&self.entries) {
            out.push_str(name);
            for entry in row {
                out.push(',');
                match entry {
                    Some(v) => out.push_str(&format!("{v:.6}")),
                    None => out.push_str("n/a"),
                }
            }
            out.push('\n');
        }
        out
    }
}

/// Computes the 31×31 Pearson correlation matrix (features + label).
pub fn correlation_matrix(dataset: &Dataset) -> Result<CorrelationMatrix> {
    if dataset.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let n = dataset.len();
    let cols = FEATURE_COUNT + 1;

    let value = |row: usize, col: usize| -> f64 {
        if col < FEATURE_COUNT {
            dataset.samples()[row].features.values()[col] as f64
        } else {
            dataset.samples()[row].label.as_f64()
        }
    };

    let mut means = vec![0.0; cols];
    for col in 0..cols {
        means[col] = (0..n).map(|r| value(r, col)).sum::<f64>() / n as f64;
    }
    let mut centered_ss = vec![0.0; cols];
    for col in 0..cols {
        centered_ss[col] = (0..n)
            .map(|r| {
                let d = value(r, col) - means[col];
                d * d
            })
            .sum();
    }

    let mut entries = vec![vec![None; cols]; cols];
    for a in 0..cols {
        for b in a..cols {
            if centered_ss[a] == 0.0 || centered_ss[b] == 0.0 {
                continue;
            }
            if a == b {
                entries[a][a] = Some(1.0);
                continue;
            }
            let cov: f64 = (0..n)
                .map(|r| (value(r, a) - means[a]) * (value(r, b) - means[b]))
                .sum();
            let corr = cov / (centered_ss[a].sqrt() * centered_ss[b].sqrt());
            entries[a][b] = Some(corr.clamp(-1.0, 1.0));
            entries[b][a] = entries[a][b];
        }
    }

    let mut columns: Vec<String> = dataset
        .schema()
        .features()
        .iter()
        .map(|f| f.key.clone())
        .collect();
    columns.push(LABEL_COLUMN.to_string());

    Ok(CorrelationMatrix { columns, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::{FeatureSchema, FeatureVector, Label, LabeledSample};

    fn hand_dataset() -> Dataset {
        // Five rows with feature 0 equal to the label and feature 1
        // anti-correlated with it; feature 2 constant.
        let rows: [(i8, i8, i8); 5] =
            [(1, -1, 1), (1, -1, 1), (-1, 1, -1), (-1, 1, -1), (1, -1, 1)];
        let samples = rows
            .iter()
            .map(|&(a, b, label)| {
                let mut values = [1i8; FEATURE_COUNT];
                values[0] = a;
                values[1] = b;
                values[2] = 1;
                LabeledSample {
                    features: FeatureVector(values),
                    label: Label::from_value(label as i64).unwrap(),
                }
            })
            .collect();
        Dataset::new(FeatureSchema::canonical().clone(), samples, "test").unwrap()
    }

    #[test]
    fn diagonal_is_one_for_varying_columns() {
        let m = correlation_matrix(&hand_dataset()).unwrap();
        assert_eq!(m.entries[0][0], Some(1.0));
        assert_eq!(m.entries[1][1], Some(1.0));
    }

    #[test]
    fn identical_columns_correlate_fully_and_opposites_negate() {
        let m = correlation_matrix(&hand_dataset()).unwrap();
        let r01 = m.entries[0][1].unwrap();
        assert!((r01 + 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_variance_columns_yield_absent_entries() {
        let m = correlation_matrix(&hand_dataset()).unwrap();
        assert_eq!(m.entries[2][2], None);
        assert_eq!(m.entries[0][2], None);
    }

    #[test]
    fn matches_two_pass_oracle() {
        let ds = hand_dataset();
        let m = correlation_matrix(&ds).unwrap();
        // Direct two-pass on (feature 0, label): they are equal column
        // vectors, so correlation is exactly 1.
        let label_col = FEATURE_COUNT;
        assert!((m.entries[0][label_col].unwrap() - 1.0).abs() < 1e-12);
        // Symmetry.
        for a in 0..=FEATURE_COUNT {
            for b in 0..=FEATURE_COUNT {
                assert_eq!(m.entries[a][b], m.entries[b][a]);
            }
        }
    }

    #[test]
    fn empty_dataset_is_rejected() {
        let ds = Dataset::new(FeatureSchema::canonical().clone(), vec![], "test").unwrap();
        assert!(correlation_matrix(&ds).is_err());
    }
}
