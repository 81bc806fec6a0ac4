//! Labeled phishing dataset: schema, CSV ingestion, summary statistics
//! and train/test partitioning.
//!
//! A dataset row is 30 ternary feature values plus a ±1 label (−1 phishing,
//! +1 legitimate). The feature order is fixed by [`FeatureSchema::canonical`]
//! and documented there; CSV headers are matched case-insensitively after
//! stripping spaces, underscores and hyphens so snapshots with divergent
//! header spellings still load.

mod folds;

pub use folds::{holdout_split, stratified_kfold, FoldPlan};

use std::fmt;
use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Number of features in the canonical schema.
pub const FEATURE_COUNT: usize = 30;

/// Name of the label column in CSV files.
pub const LABEL_COLUMN: &str = "Result";

/// Allowed value set for one feature column, always a subset of {-1, 0, 1}.
#[derive(Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueDomain(u8);

impl ValueDomain {
    const NEG: u8 = 0b001;
    const ZERO: u8 = 0b010;
    const POS: u8 = 0b100;

    pub const BINARY: ValueDomain = ValueDomain(Self::NEG | Self::POS);
    pub const TERNARY: ValueDomain = ValueDomain(Self::NEG | Self::ZERO | Self::POS);

    pub fn contains(self, v: i8) -> bool {
        match v {
            -1 => self.0 & Self::NEG != 0,
            0 => self.0 & Self::ZERO != 0,
            1 => self.0 & Self::POS != 0,
            _ => false,
        }
    }

    pub fn values(self) -> Vec<i8> {
        [-1, 0, 1].into_iter().filter(|&v| self.contains(v)).collect()
    }
}

impl fmt::Debug for ValueDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ValueDomain({:?})", self.values())
    }
}

/// Static definition of one feature column.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeatureDef {
    /// Stable snake_case identifier used in CSV headers and JSON keys.
    pub key: String,
    /// Human-readable name used in rendered tables.
    pub display: String,
    pub domain: ValueDomain,
}

/// The 30 features, in canonical column order.
///
/// Columns 1-7 and 11-12 are URL-lexical, 10 and 13-23 are page-content
/// rules, the rest come from third-party evidence. Every column accepts
/// the full ternary domain; several rules only ever emit ±1 in practice.
const CANONICAL_FEATURES: [(&str, &str, ValueDomain); FEATURE_COUNT] = [
    ("having_ip_address", "Having IP Address", ValueDomain::TERNARY),
    ("url_length", "URL Length", ValueDomain::TERNARY),
    ("shortening_service", "Shortening Service", ValueDomain::TERNARY),
    ("having_at_symbol", "Having @ Symbol", ValueDomain::TERNARY),
    ("double_slash_redirecting", "Double Slash Redirecting", ValueDomain::TERNARY),
    ("prefix_suffix", "Prefix Suffix", ValueDomain::TERNARY),
    ("having_sub_domain", "Having Sub Domain", ValueDomain::TERNARY),
    ("ssl_final_state", "SSL Final State", ValueDomain::TERNARY),
    ("domain_reg_length", "Domain Reg Length", ValueDomain::TERNARY),
    ("favicon", "Favicon", ValueDomain::TERNARY),
    ("port", "Port", ValueDomain::TERNARY),
    ("https_token", "HTTPS Token", ValueDomain::TERNARY),
    ("request_url", "Request URL", ValueDomain::TERNARY),
    ("url_of_anchor", "URL of Anchor", ValueDomain::TERNARY),
    ("links_in_tags", "Links in Tags", ValueDomain::TERNARY),
    ("sfh", "SFH", ValueDomain::TERNARY),
    ("submitting_to_email", "Submitting To Email", ValueDomain::TERNARY),
    ("abnormal_url", "Abnormal URL", ValueDomain::TERNARY),
    ("website_redirect_count", "Website Redirect Count", ValueDomain::TERNARY),
    ("on_mouseover", "On Mouse Over", ValueDomain::TERNARY),
    ("right_click", "Right Click", ValueDomain::TERNARY),
    ("popup_window", "PopUp Window", ValueDomain::TERNARY),
    ("iframe", "IFrame", ValueDomain::TERNARY),
    ("age_of_domain", "Age of Domain", ValueDomain::TERNARY),
    ("dns_record", "DNS Record", ValueDomain::TERNARY),
    ("web_traffic", "Web Traffic", ValueDomain::TERNARY),
    ("page_rank", "Page Rank", ValueDomain::TERNARY),
    ("google_index", "Google Index", ValueDomain::TERNARY),
    ("links_pointing_to_page", "Links Pointing to Page", ValueDomain::TERNARY),
    ("statistical_report", "Statistical Report", ValueDomain::TERNARY),
];

/// Alternate header spellings seen in circulating copies of this dataset.
const HEADER_ALIASES: [(&str, &str); 10] = [
    ("shortiningservice", "shortening_service"),
    ("sslfinalstate", "ssl_final_state"),
    ("domainregisterationlength", "domain_reg_length"),
    ("domainregistrationlength", "domain_reg_length"),
    ("redirect", "website_redirect_count"),
    ("popupwidnow", "popup_window"),
    ("rightclick", "right_click"),
    ("onmouseover", "on_mouseover"),
    ("statisticalreport", "statistical_report"),
    ("linkspointingtopage", "links_pointing_to_page"),
];

/// Ordered feature list plus per-column domains.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeatureSchema {
    features: Vec<FeatureDef>,
}

impl FeatureSchema {
    /// The canonical 30-feature schema.
    pub fn canonical() -> &'static FeatureSchema {
        use std::sync::OnceLock;
        static SCHEMA: OnceLock<FeatureSchema> = OnceLock::new();
        SCHEMA.get_or_init(|| FeatureSchema {
            features: CANONICAL_FEATURES
                .iter()
                .map(|(key, display, domain)| FeatureDef {
                    key: key.to_string(),
                    display: display.to_string(),
                    domain: *domain,
                })
                .collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.features.len()
    }

    pub fn is_empty(&self) -> bool {
        self.features.is_empty()
    }

    pub fn features(&self) -> &[FeatureDef] {
        &self.features
    }

    pub fn key(&self, index: usize) -> &str {
        &self.features[index].key
    }

    pub fn display(&self, index: usize) -> &str {
        &self.features[index].display
    }

    pub fn domain(&self, index: usize) -> ValueDomain {
        self.features[index].domain
    }

    /// Index of the feature whose key (or known alias) normalizes to `name`.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        let norm = normalize_header(name);
        let canonical = HEADER_ALIASES
            .iter()
            .find(|(alias, _)| *alias == norm)
            .map(|(_, key)| normalize_header(key))
            .unwrap_or(norm);
        self.features
            .iter()
            .position(|f| normalize_header(&f.key) == canonical || normalize_header(&f.display) == canonical)
    }
}

/// Lowercase and strip separators so header matching tolerates the
/// spelling drift between snapshot copies.
fn normalize_header(s: &str) -> String {
    s.chars()
        .filter(|c| !matches!(c, ' ' | '_' | '-'))
        .flat_map(|c| c.to_lowercase())
        .collect()
}

/// One website observation encoded as 30 ternary indicator values.
#[derive(Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeatureVector(pub [i8; FEATURE_COUNT]);

impl FeatureVector {
    pub fn values(&self) -> &[i8; FEATURE_COUNT] {
        &self.0
    }

    pub fn as_f64(&self) -> [f64; FEATURE_COUNT] {
        let mut out = [0.0; FEATURE_COUNT];
        for (o, v) in out.iter_mut().zip(self.0.iter()) {
            *o = *v as f64;
        }
        out
    }

    /// Builds a vector from a slice, checking length and the global
    /// {-1, 0, 1} value range.
    pub fn from_slice(values: &[i8]) -> Result<FeatureVector> {
        if values.len() != FEATURE_COUNT {
            return Err(Error::Dimension {
                expected: FEATURE_COUNT,
                got: values.len(),
            });
        }
        let mut out = [0i8; FEATURE_COUNT];
        for (i, &v) in values.iter().enumerate() {
            if !(-1..=1).contains(&v) {
                return Err(Error::Schema(format!(
                    "feature value {v} at index {i} outside {{-1, 0, 1}}"
                )));
            }
            out[i] = v;
        }
        Ok(FeatureVector(out))
    }
}

impl fmt::Debug for FeatureVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FeatureVector({:?})", &self.0[..])
    }
}

/// Class label: −1 phishing, +1 legitimate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "i8", into = "i8")]
pub enum Label {
    Phishing,
    Legitimate,
}

impl Label {
    pub fn value(self) -> i8 {
        match self {
            Label::Phishing => -1,
            Label::Legitimate => 1,
        }
    }

    pub fn as_f64(self) -> f64 {
        self.value() as f64
    }

    pub fn from_value(v: i64) -> Result<Label> {
        match v {
            -1 => Ok(Label::Phishing),
            1 => Ok(Label::Legitimate),
            _ => Err(Error::Schema(format!("label {v} outside {{-1, 1}}"))),
        }
    }

    /// Sign of a real-valued score, with the documented tie rule: a score
    /// of exactly zero predicts legitimate.
    pub fn from_score(score: f64) -> Label {
        if score < 0.0 {
            Label::Phishing
        } else {
            Label::Legitimate
        }
    }
}

impl TryFrom<i8> for Label {
    type Error = String;
    fn try_from(v: i8) -> std::result::Result<Self, String> {
        Label::from_value(v as i64).map_err(|e| e.to_string())
    }
}

impl From<Label> for i8 {
    fn from(l: Label) -> i8 {
        l.value()
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Phishing => write!(f, "phishing"),
            Label::Legitimate => write!(f, "legitimate"),
        }
    }
}

/// A feature vector together with its ±1 label.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LabeledSample {
    pub features: FeatureVector,
    pub label: Label,
}

/// An in-memory labeled dataset. Immutable after construction.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Dataset {
    schema: FeatureSchema,
    samples: Vec<LabeledSample>,
    /// Free-text source tag; not part of dataset equality.
    provenance: String,
}

impl PartialEq for Dataset {
    fn eq(&self, other: &Self) -> bool {
        self.schema == other.schema && self.samples == other.samples
    }
}

impl Dataset {
    /// Builds a dataset, validating every sample against the schema domains.
    pub fn new(
        schema: FeatureSchema,
        samples: Vec<LabeledSample>,
        provenance: impl Into<String>,
    ) -> Result<Dataset> {
        for (row, sample) in samples.iter().enumerate() {
            for (col, &v) in sample.features.values().iter().enumerate() {
                if !schema.domain(col).contains(v) {
                    return Err(Error::Cell {
                        row: row + 1,
                        column: schema.key(col).to_string(),
                        message: format!("value {v} outside column domain"),
                    });
                }
            }
        }
        Ok(Dataset {
            schema,
            samples,
            provenance: provenance.into(),
        })
    }

    pub fn schema(&self) -> &FeatureSchema {
        &self.schema
    }

    pub fn samples(&self) -> &[LabeledSample] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    /// Count of samples carrying `label`.
    pub fn class_count(&self, label: Label) -> usize {
        self.samples.iter().filter(|s| s.label == label).count()
    }

    /// New dataset holding the samples at `indices`, in the given order.
    pub fn subset(&self, indices: &[usize]) -> Dataset {
        Dataset {
            schema: self.schema.clone(),
            samples: indices.iter().map(|&i| self.samples[i]).collect(),
            provenance: self.provenance.clone(),
        }
    }
}

/// Loads a dataset from a CSV file: header row, 30 feature columns plus a
/// final `Result` column, every cell an integer in its column's domain.
pub fn load_csv(path: impl AsRef<Path>) -> Result<Dataset> {
    let path = path.as_ref();
    let file = std::fs::File::open(path)?;
    let mut ds = load_csv_reader(file)?;
    ds.provenance = path.display().to_string();
    Ok(ds)
}

/// Same as [`load_csv`] but from any reader. Provenance is left generic.
pub fn load_csv_reader(reader: impl Read) -> Result<Dataset> {
    let schema = FeatureSchema::canonical().clone();
    let mut csv_reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(reader);

    let headers = csv_reader
        .headers()
        .map_err(|e| Error::Schema(format!("cannot read header row: {e}")))?
        .clone();
    if headers.len() != FEATURE_COUNT + 1 {
        return Err(Error::Schema(format!(
            "expected {} columns (30 features + {LABEL_COLUMN}), found {}",
            FEATURE_COUNT + 1,
            headers.len()
        )));
    }

    // Map each file column to its canonical feature index.
    let mut column_map = vec![usize::MAX; FEATURE_COUNT];
    let mut label_col = None;
    for (file_col, name) in headers.iter().enumerate() {
        if normalize_header(name) == normalize_header(LABEL_COLUMN) {
            if label_col.is_some() {
                return Err(Error::Schema("duplicate Result column".into()));
            }
            label_col = Some(file_col);
            continue;
        }
        match schema.index_of(name) {
            Some(idx) => {
                if column_map[idx] != usize::MAX {
                    return Err(Error::Schema(format!("duplicate column '{name}'")));
                }
                column_map[idx] = file_col;
            }
            None => return Err(Error::Schema(format!("unknown column '{name}'"))),
        }
    }
    let label_col =
        label_col.ok_or_else(|| Error::Schema(format!("missing {LABEL_COLUMN} column")))?;
    if let Some(missing) = column_map.iter().position(|&c| c == usize::MAX) {
        return Err(Error::Schema(format!(
            "missing column '{}'",
            schema.key(missing)
        )));
    }

    let mut samples = Vec::new();
    for (row_idx, record) in csv_reader.records().enumerate() {
        let row = row_idx + 1;
        let record = record?;
        if record.len() != FEATURE_COUNT + 1 {
            return Err(Error::Cell {
                row,
                column: "-".into(),
                message: format!(
                    "expected {} cells, found {}",
                    FEATURE_COUNT + 1,
                    record.len()
                ),
            });
        }
        let mut values = [0i8; FEATURE_COUNT];
        for (feat_idx, &file_col) in column_map.iter().enumerate() {
            let cell = record.get(file_col).unwrap_or("").trim();
            let column = schema.key(feat_idx).to_string();
            if cell.is_empty() {
                return Err(Error::Cell {
                    row,
                    column,
                    message: "missing cell".into(),
                });
            }
            let v: i64 = cell.parse().map_err(|_| Error::Cell {
                row,
                column: column.clone(),
                message: format!("non-integer cell '{cell}'"),
            })?;
            if !(-1..=1).contains(&v) {
                return Err(Error::Cell {
                    row,
                    column,
                    message: format!("value {v} outside {{-1, 0, 1}}"),
                });
            }
            if !schema.domain(feat_idx).contains(v as i8) {
                return Err(Error::Cell {
                    row,
                    column,
                    message: format!("value {v} outside column domain"),
                });
            }
            values[feat_idx] = v as i8;
        }
        let label_cell = record.get(label_col).unwrap_or("").trim();
        let label_val: i64 = label_cell.parse().map_err(|_| Error::Cell {
            row,
            column: LABEL_COLUMN.into(),
            message: format!("non-integer cell '{label_cell}'"),
        })?;
        let label = Label::from_value(label_val).map_err(|_| Error::Cell {
            row,
            column: LABEL_COLUMN.into(),
            message: format!("label {label_val} outside {{-1, 1}}"),
        })?;
        samples.push(LabeledSample {
            features: FeatureVector(values),
            label,
        });
    }

    Ok(Dataset {
        schema,
        samples,
        provenance: "csv".into(),
    })
}

/// Writes a dataset as CSV with canonical snake_case headers. A
/// load → save → load round trip yields an equal dataset.
pub fn save_csv(dataset: &Dataset, path: impl AsRef<Path>) -> Result<()> {
    let file = std::fs::File::create(path)?;
    save_csv_writer(dataset, file)
}

pub fn save_csv_writer(dataset: &Dataset, writer: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    let mut header: Vec<&str> = dataset
        .schema
        .features()
        .iter()
        .map(|f| f.key.as_str())
        .collect();
    header.push(LABEL_COLUMN);
    w.write_record(&header)?;
    let mut record = Vec::with_capacity(FEATURE_COUNT + 1);
    for sample in &dataset.samples {
        record.clear();
        for v in sample.features.values() {
            record.push(v.to_string());
        }
        record.push(sample.label.value().to_string());
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}

/// Mean and standard deviation of one column.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ColumnSummary {
    pub key: String,
    pub display: String,
    pub mean: f64,
    pub std: f64,
}

/// Per-column mean and standard deviation for all 30 features plus the
/// label column.
///
/// The standard deviation uses the sample convention (divisor n−1), which
/// is the convention the bundled snapshot's published statistics follow.
/// A single-sample dataset reports a standard deviation of 0.
pub fn summarize(dataset: &Dataset) -> Result<Vec<ColumnSummary>> {
    if dataset.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let n = dataset.len() as f64;
    let mut out = Vec::with_capacity(FEATURE_COUNT + 1);
    for col in 0..=FEATURE_COUNT {
        let value = |s: &LabeledSample| -> f64 {
            if col < FEATURE_COUNT {
                s.features.values()[col] as f64
            } else {
                s.label.as_f64()
            }
        };
        let sum: f64 = dataset.samples.iter().map(|s| value(s)).sum();
        let mean = sum / n;
        let ss: f64 = dataset
            .samples
            .iter()
            .map(|s| {
                let d = value(s) - mean;
                d * d
            })
            .sum();
        let std = if dataset.len() < 2 {
            0.0
        } else {
            (ss / (n - 1.0)).sqrt()
        };
        let (key, display) = if col < FEATURE_COUNT {
            (
                dataset.schema.key(col).to_string(),
                dataset.schema.display(col).to_string(),
            )
        } else {
            (LABEL_COLUMN.to_string(), LABEL_COLUMN.to_string())
        };
        out.push(ColumnSummary {
            key,
            display,
            mean,
            std,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny_csv(rows: &[(&str, i8)]) -> String {
        let schema = FeatureSchema::canonical();
        let mut header: Vec<String> = schema.features().iter().map(|f| f.key.clone()).collect();
        header.push(LABEL_COLUMN.into());
        let mut s = header.join(",");
        s.push('\n');
        for (features, label) in rows {
            s.push_str(features);
            s.push(',');
            s.push_str(&label.to_string());
            s.push('\n');
        }
        s
    }

    fn all_ones_row() -> String {
        vec!["1"; FEATURE_COUNT].join(",")
    }

    #[test]
    fn loads_rows_in_order() {
        let csv = tiny_csv(&[(&all_ones_row(), 1), (&all_ones_row(), -1)]);
        let ds = load_csv_reader(csv.as_bytes()).unwrap();
        assert_eq!(ds.len(), 2);
        assert_eq!(ds.samples()[0].label, Label::Legitimate);
        assert_eq!(ds.samples()[1].label, Label::Phishing);
    }

    #[test]
    fn empty_file_with_header_gives_empty_dataset() {
        let csv = tiny_csv(&[]);
        let ds = load_csv_reader(csv.as_bytes()).unwrap();
        assert_eq!(ds.len(), 0);
    }

    #[test]
    fn value_outside_ternary_range_is_reported_with_position() {
        let mut row: Vec<&str> = vec!["1"; FEATURE_COUNT];
        row[4] = "2";
        let csv = tiny_csv(&[(&row.join(","), 1)]);
        let err = load_csv_reader(csv.as_bytes()).unwrap_err();
        match err {
            Error::Cell { row, column, .. } => {
                assert_eq!(row, 1);
                assert_eq!(column, "double_slash_redirecting");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn bad_label_is_rejected() {
        let csv = tiny_csv(&[(&all_ones_row(), 0)]);
        let err = load_csv_reader(csv.as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Cell { .. }));
    }

    #[test]
    fn missing_cells_are_rejected_not_imputed() {
        let schema = FeatureSchema::canonical();
        let mut header: Vec<String> = schema.features().iter().map(|f| f.key.clone()).collect();
        header.push(LABEL_COLUMN.into());
        let short_row = vec!["1"; FEATURE_COUNT - 3].join(",");
        let csv = format!("{}\n{},1\n", header.join(","), short_row);
        assert!(load_csv_reader(csv.as_bytes()).is_err());
    }

    #[test]
    fn header_matching_is_case_and_separator_insensitive() {
        let headers = [
            "having_IP_Address",
            "URL_Length",
            "Shortining_Service",
            "having_At_Symbol",
            "double-slash-redirecting",
            "Prefix_Suffix",
            "having_Sub_Domain",
            "SSLfinal_State",
            "Domain_registeration_length",
            "Favicon",
            "port",
            "HTTPS_token",
            "Request_URL",
            "URL_of_Anchor",
            "Links_in_tags",
            "SFH",
            "Submitting_to_email",
            "Abnormal_URL",
            "Redirect",
            "on_mouseover",
            "RightClick",
            "popUpWidnow",
            "Iframe",
            "age_of_domain",
            "DNSRecord",
            "web_traffic",
            "Page_Rank",
            "Google_Index",
            "Links_pointing_to_page",
            "Statistical_report",
            "Result",
        ];
        let csv = format!("{}\n{},1\n", headers.join(","), all_ones_row());
        let ds = load_csv_reader(csv.as_bytes()).unwrap();
        assert_eq!(ds.len(), 1);
    }

    #[test]
    fn csv_round_trip_is_identity() {
        let mut row_a: Vec<&str> = vec!["1"; FEATURE_COUNT];
        row_a[1] = "0";
        row_a[7] = "-1";
        let csv = tiny_csv(&[(&row_a.join(","), -1), (&all_ones_row(), 1)]);
        let ds = load_csv_reader(csv.as_bytes()).unwrap();
        let mut buf = Vec::new();
        save_csv_writer(&ds, &mut buf).unwrap();
        let ds2 = load_csv_reader(buf.as_slice()).unwrap();
        assert_eq!(ds, ds2);
    }

    #[test]
    fn summarize_single_sample_has_zero_std() {
        let csv = tiny_csv(&[(&all_ones_row(), 1)]);
        let ds = load_csv_reader(csv.as_bytes()).unwrap();
        let summary = summarize(&ds).unwrap();
        assert_eq!(summary.len(), FEATURE_COUNT + 1);
        for col in &summary {
            assert_eq!(col.mean, 1.0);
            assert_eq!(col.std, 0.0);
        }
    }

    #[test]
    fn summarize_matches_two_pass_oracle() {
        // 60 samples with a mix of values, against a direct two-pass
        // computation carried out independently below.
        let mut rows = Vec::new();
        for i in 0..60i32 {
            let mut row = vec!["1"; FEATURE_COUNT];
            if i % 3 == 0 {
                row[1] = "-1";
            } else if i % 3 == 1 {
                row[1] = "0";
            }
            rows.push((row.join(","), if i % 2 == 0 { 1 } else { -1 }));
        }
        let with_refs: Vec<(&str, i8)> = rows.iter().map(|(r, l)| (r.as_str(), *l)).collect();
        let csv = tiny_csv(&with_refs);
        let ds = load_csv_reader(csv.as_bytes()).unwrap();
        let summary = summarize(&ds).unwrap();

        let col: Vec<f64> = ds
            .samples()
            .iter()
            .map(|s| s.features.values()[1] as f64)
            .collect();
        let mean = col.iter().sum::<f64>() / col.len() as f64;
        let var =
            col.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (col.len() as f64 - 1.0);
        assert!((summary[1].mean - mean).abs() < 1e-12);
        assert!((summary[1].std - var.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn summarize_empty_dataset_errors() {
        let csv = tiny_csv(&[]);
        let ds = load_csv_reader(csv.as_bytes()).unwrap();
        assert!(matches!(summarize(&ds), Err(Error::EmptyDataset)));
    }
}
