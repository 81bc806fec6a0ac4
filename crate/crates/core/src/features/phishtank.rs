//! Ingestion of phishing-feed dumps: a CSV of URLs (first column) is
//! extracted row by row into a dataset of −1-labeled samples.

use std::path::Path;

use rayon::prelude::*;

use crate::dataset::{Dataset, FeatureSchema, LabeledSample, Label};
use crate::error::{Error, Result};
use crate::features::evidence::EvidenceStore;
use crate::features::thresholds::Thresholds;
use crate::features::{extract_all, parse_url, RawWebsiteObservation};

/// Result of an ingestion run: the dataset plus how many rows had to be
/// skipped because their URL did not parse.
#[derive(Debug)]
pub struct IngestOutcome {
    pub dataset: Dataset,
    pub skipped: usize,
}

/// Reads a dump file and extracts every row via the offline evidence
/// table. A leading header row is tolerated; rows whose URL cannot be
/// parsed are skipped and counted. Rows are processed in parallel with
/// output order fixed by input row order.
pub fn ingest_phishtank_dump(
    path: impl AsRef<Path>,
    evidence: &EvidenceStore,
    thresholds: &Thresholds,
) -> Result<IngestOutcome> {
    let path = path.as_ref();
    let file = std::fs::File::open(path)?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(file);

    let mut urls: Vec<String> = Vec::new();
    for record in reader.records() {
        let record = record?;
        let url = record.get(0).unwrap_or("").trim().to_string();
        urls.push(url);
    }

    // Header detection: a first row whose first cell does not look like
    // a URL is treated as a header, not a skipped data row.
    let start = match urls.first() {
        Some(first) if !looks_like_url(first) => 1,
        _ => 0,
    };
    let rows = &urls[start..];
    if rows.is_empty() {
        return Err(Error::NoRows(format!(
            "{}: no data rows found",
            path.display()
        )));
    }

    let schema = FeatureSchema::canonical();
    let extracted: Vec<Option<LabeledSample>> = rows
        .par_iter()
        .map(|url| {
            let parts = parse_url(url).ok()?;
            let ev = evidence.lookup(&parts.host_lower());
            let obs = RawWebsiteObservation::from_url(url.clone());
            let features = extract_all(&obs, &ev, schema, thresholds).ok()?;
            Some(LabeledSample {
                features,
                label: Label::Phishing,
            })
        })
        .collect();

    let skipped = extracted.iter().filter(|s| s.is_none()).count();
    let samples: Vec<LabeledSample> = extracted.into_iter().flatten().collect();
    if samples.is_empty() {
        return Err(Error::NoRows(format!(
            "{}: none of the {} rows had a parsable url",
            path.display(),
            rows.len()
        )));
    }

    Ok(IngestOutcome {
        dataset: Dataset::new(schema.clone(), samples, path.display().to_string())?,
        skipped,
    })
}

fn looks_like_url(cell: &str) -> bool {
    cell.contains("://") || (cell.contains('.') && !cell.eq_ignore_ascii_case("url"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_dump(lines: &[&str]) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        for line in lines {
            writeln!(f, "{line}").unwrap();
        }
        f
    }

    #[test]
    fn three_valid_urls_become_three_phishing_samples() {
        let dump = write_dump(&[
            "url,phish_detail_url",
            "http://evil-one.example.net/login,d1",
            "http://217.102.24.235//pay,d2",
            "http://https-secure-bank.example.org,d3",
        ]);
        let outcome = ingest_phishtank_dump(
            dump.path(),
            &EvidenceStore::default(),
            &Thresholds::default(),
        )
        .unwrap();
        assert_eq!(outcome.dataset.len(), 3);
        assert_eq!(outcome.skipped, 0);
        assert!(outcome
            .dataset
            .samples()
            .iter()
            .all(|s| s.label == Label::Phishing));
    }

    #[test]
    fn malformed_rows_are_skipped_and_counted() {
        let dump = write_dump(&[
            "http://ok.example.net/x,1",
            "http://:///,2",
            "http://ok2.example.net/y,3",
        ]);
        let outcome = ingest_phishtank_dump(
            dump.path(),
            &EvidenceStore::default(),
            &Thresholds::default(),
        )
        .unwrap();
        assert_eq!(outcome.dataset.len(), 2);
        assert_eq!(outcome.skipped, 1);
    }

    #[test]
    fn all_rows_failing_is_an_error() {
        let dump = write_dump(&["http://:///,1", ",2"]);
        let result = ingest_phishtank_dump(
            dump.path(),
            &EvidenceStore::default(),
            &Thresholds::default(),
        );
        assert!(result.is_err());
    }

    #[test]
    fn missing_file_is_an_error() {
        let result = ingest_phishtank_dump(
            "/nonexistent/dump.csv",
            &EvidenceStore::default(),
            &Thresholds::default(),
        );
        assert!(result.is_err());
    }

    #[test]
    fn evidence_feeds_reputation_columns() {
        let mut store = EvidenceStore::default();
        store.insert(
            "example.net",
            crate::features::ExternalEvidence {
                domain_age_days: Some(3),
                ..Default::default()
            },
        );
        let dump = write_dump(&["http://evil-one.example.net/login,d"]);
        let outcome =
            ingest_phishtank_dump(dump.path(), &store, &Thresholds::default()).unwrap();
        let v = outcome.dataset.samples()[0].features;
        assert_eq!(v.values()[crate::features::idx::AGE_OF_DOMAIN], -1);
    }
}
