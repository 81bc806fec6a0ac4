//! Feature extraction: turns a raw website observation (URL, optional
//! HTML, offline evidence) into the 30 ternary indicator values.
//!
//! Sign convention throughout: −1 phishing-indicating, 0 suspicious,
//! +1 legitimate-indicating, matching the ±1 label convention.

mod content;
mod evidence;
mod lexical;
mod phishtank;
mod reputation;
mod thresholds;
mod url;

pub use content::extract_content;
pub use evidence::{registered_domain, EvidenceStore, ExternalEvidence};
pub use lexical::extract_lexical;
pub use phishtank::{ingest_phishtank_dump, IngestOutcome};
pub use reputation::extract_reputation;
pub use thresholds::Thresholds;
pub use url::{parse_url, UrlParts};

use serde::{Deserialize, Serialize};

use crate::dataset::{FeatureSchema, FeatureVector, FEATURE_COUNT};
use crate::error::{Error, Result};

/// Canonical feature indices into the 30-column schema.
pub mod idx {
    pub const HAVING_IP_ADDRESS: usize = 0;
    pub const URL_LENGTH: usize = 1;
    pub const SHORTENING_SERVICE: usize = 2;
    pub const HAVING_AT_SYMBOL: usize = 3;
    pub const DOUBLE_SLASH_REDIRECTING: usize = 4;
    pub const PREFIX_SUFFIX: usize = 5;
    pub const HAVING_SUB_DOMAIN: usize = 6;
    pub const SSL_FINAL_STATE: usize = 7;
    pub const DOMAIN_REG_LENGTH: usize = 8;
    pub const FAVICON: usize = 9;
    pub const PORT: usize = 10;
    pub const HTTPS_TOKEN: usize = 11;
    pub const REQUEST_URL: usize = 12;
    pub const URL_OF_ANCHOR: usize = 13;
    pub const LINKS_IN_TAGS: usize = 14;
    pub const SFH: usize = 15;
    pub const SUBMITTING_TO_EMAIL: usize = 16;
    pub const ABNORMAL_URL: usize = 17;
    pub const WEBSITE_REDIRECT_COUNT: usize = 18;
    pub const ON_MOUSEOVER: usize = 19;
    pub const RIGHT_CLICK: usize = 20;
    pub const POPUP_WINDOW: usize = 21;
    pub const IFRAME: usize = 22;
    pub const AGE_OF_DOMAIN: usize = 23;
    pub const DNS_RECORD: usize = 24;
    pub const WEB_TRAFFIC: usize = 25;
    pub const PAGE_RANK: usize = 26;
    pub const GOOGLE_INDEX: usize = 27;
    pub const LINKS_POINTING_TO_PAGE: usize = 28;
    pub const STATISTICAL_REPORT: usize = 29;
}

/// One ternary indicator value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TernaryValue(i8);

impl TernaryValue {
    pub const PHISHING: TernaryValue = TernaryValue(-1);
    pub const SUSPICIOUS: TernaryValue = TernaryValue(0);
    pub const LEGITIMATE: TernaryValue = TernaryValue(1);

    pub fn value(self) -> i8 {
        self.0
    }
}

/// An unprocessed website observation: the URL, optionally the fetched
/// page, and what is known about its redirect chain.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RawWebsiteObservation {
    pub url: String,
    pub html: Option<String>,
    pub final_url_after_redirects: Option<String>,
    pub redirect_count: Option<u32>,
}

impl RawWebsiteObservation {
    pub fn from_url(url: impl Into<String>) -> RawWebsiteObservation {
        RawWebsiteObservation {
            url: url.into(),
            ..Default::default()
        }
    }
}

/// Runs all three rule groups and assembles the values in schema order.
/// Fails only when the URL itself cannot be parsed; every output cell is
/// checked against its schema domain.
pub fn extract_all(
    obs: &RawWebsiteObservation,
    ev: &ExternalEvidence,
    schema: &FeatureSchema,
    th: &Thresholds,
) -> Result<FeatureVector> {
    if obs.url.is_empty() {
        return Err(Error::UrlParse("observation has an empty url".into()));
    }
    let parts = parse_url(&obs.url)?;

    let mut filled = [false; FEATURE_COUNT];
    let mut values = [0i8; FEATURE_COUNT];
    let groups = [
        extract_lexical(&parts, th),
        extract_content(obs, &parts, th),
        extract_reputation(&parts, ev, th),
    ];
    for group in groups {
        for (index, value) in group {
            debug_assert!(!filled[index], "feature {index} produced twice");
            filled[index] = true;
            values[index] = value.value();
        }
    }
    debug_assert!(filled.iter().all(|&f| f), "not all 30 features produced");

    for (index, &value) in values.iter().enumerate() {
        if !schema.domain(index).contains(value) {
            return Err(Error::Schema(format!(
                "extracted value {value} outside domain of '{}'",
                schema.key(index)
            )));
        }
    }
    Ok(FeatureVector(values))
}
