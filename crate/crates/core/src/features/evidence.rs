//! Offline third-party evidence: WHOIS-style facts keyed by registered
//! domain, loaded from a JSON file instead of live lookups.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Facts about a domain gathered out of band. Every field is optional;
/// absent fields push the consuming rule toward its suspicious default.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExternalEvidence {
    pub domain_age_days: Option<i64>,
    pub domain_registration_length_days: Option<i64>,
    pub has_dns_record: Option<bool>,
    /// Popularity rank; lower is more visited. Must be positive.
    pub traffic_rank: Option<u64>,
    /// Importance score in [0, 1].
    pub page_rank: Option<f64>,
    pub google_indexed: Option<bool>,
    pub links_pointing: Option<u64>,
    pub on_phishing_ip_list: Option<bool>,
    /// Whether the WHOIS identity appears in the URL.
    pub whois_identity_in_url: Option<bool>,
    /// Whether the served certificate chains to a trusted issuer.
    pub trusted_certificate: Option<bool>,
}

impl ExternalEvidence {
    pub fn validate(&self) -> Result<()> {
        if let Some(pr) = self.page_rank {
            if !(0.0..=1.0).contains(&pr) {
                return Err(Error::Evidence(format!(
                    "page_rank {pr} outside [0, 1]"
                )));
            }
        }
        if let Some(0) = self.traffic_rank {
            return Err(Error::Evidence("traffic_rank must be positive".into()));
        }
        Ok(())
    }

    /// Evidence that fully clears a domain; used by fixtures and tests.
    pub fn benign() -> ExternalEvidence {
        ExternalEvidence {
            domain_age_days: Some(3650),
            domain_registration_length_days: Some(730),
            has_dns_record: Some(true),
            traffic_rank: Some(500),
            page_rank: Some(0.9),
            google_indexed: Some(true),
            links_pointing: Some(120),
            on_phishing_ip_list: Some(false),
            whois_identity_in_url: Some(true),
            trusted_certificate: Some(true),
        }
    }
}

/// Evidence records keyed by registered domain. Unknown domains yield
/// all-absent evidence.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct EvidenceStore {
    map: BTreeMap<String, ExternalEvidence>,
}

impl EvidenceStore {
    pub fn load(path: impl AsRef<Path>) -> Result<EvidenceStore> {
        let text = std::fs::read_to_string(path.as_ref())
            .map_err(|e| Error::Evidence(format!("{}: {e}", path.as_ref().display())))?;
        Self::from_json(&text)
    }

    pub fn from_json(json: &str) -> Result<EvidenceStore> {
        let map: BTreeMap<String, ExternalEvidence> =
            serde_json::from_str(json).map_err(|e| Error::Evidence(e.to_string()))?;
        for (domain, ev) in &map {
            ev.validate()
                .map_err(|e| Error::Evidence(format!("{domain}: {e}")))?;
        }
        Ok(EvidenceStore {
            map: map
                .into_iter()
                .map(|(k, v)| (k.to_ascii_lowercase(), v))
                .collect(),
        })
    }

    pub fn insert(&mut self, domain: &str, evidence: ExternalEvidence) {
        self.map.insert(domain.to_ascii_lowercase(), evidence);
    }

    /// Evidence for a host, keyed by its registered domain.
    pub fn lookup(&self, host: &str) -> ExternalEvidence {
        let key = registered_domain(&host.to_ascii_lowercase());
        self.map.get(&key).cloned().unwrap_or_default()
    }
}

/// Country-code second-level suffixes treated as part of the public
/// suffix, so `foo.co.uk` registers at `foo.co.uk`, not `co.uk`.
const MULTI_LABEL_SUFFIXES: [&str; 26] = [
    "co.uk", "org.uk", "ac.uk", "gov.uk", "me.uk", "com.au", "net.au", "org.au", "co.nz",
    "co.jp", "ne.jp", "or.jp", "com.br", "com.mx", "com.ar", "co.in", "net.in", "org.in",
    "co.za", "com.cn", "com.tw", "com.hk", "com.sg", "co.kr", "com.tr", "co.il",
];

/// Registered domain of a host: the public suffix plus one label.
/// IP literals and single-label hosts are returned unchanged.
pub fn registered_domain(host: &str) -> String {
    let host = host.trim_end_matches('.');
    if host.starts_with('[') || is_ipv4(host) {
        return host.to_string();
    }
    let labels: Vec<&str> = host.split('.').collect();
    if labels.len() <= 2 {
        return host.to_string();
    }
    let last_two = labels[labels.len() - 2..].join(".");
    if MULTI_LABEL_SUFFIXES.contains(&last_two.as_str()) && labels.len() >= 3 {
        labels[labels.len() - 3..].join(".")
    } else {
        last_two
    }
}

/// Dotted-quad IPv4 literal check.
pub fn is_ipv4(host: &str) -> bool {
    let octets: Vec<&str> = host.split('.').collect();
    octets.len() == 4
        && octets.iter().all(|o| {
            !o.is_empty()
                && o.len() <= 3
                && o.bytes().all(|b| b.is_ascii_digit())
                && o.parse::<u16>().map_or(false, |v| v <= 255)
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registered_domain_strips_subdomains() {
        assert_eq!(registered_domain("a.b.example.com"), "example.com");
        assert_eq!(registered_domain("example.com"), "example.com");
        assert_eq!(registered_domain("www.shop.example.co.uk"), "example.co.uk");
        assert_eq!(registered_domain("217.102.24.235"), "217.102.24.235");
        assert_eq!(registered_domain("localhost"), "localhost");
    }

    #[test]
    fn unknown_domains_yield_absent_evidence() {
        let store = EvidenceStore::from_json("{}").unwrap();
        assert_eq!(store.lookup("nowhere.example"), ExternalEvidence::default());
    }

    #[test]
    fn lookup_uses_registered_domain_of_host() {
        let mut store = EvidenceStore::default();
        store.insert("example.com", ExternalEvidence::benign());
        let ev = store.lookup("deep.sub.EXAMPLE.com");
        assert_eq!(ev, ExternalEvidence::benign());
    }

    #[test]
    fn page_rank_out_of_range_is_rejected() {
        let err = EvidenceStore::from_json(r#"{"x.com": {"page_rank": 1.5}}"#);
        assert!(err.is_err());
    }

    #[test]
    fn unknown_evidence_keys_are_rejected() {
        let err = EvidenceStore::from_json(r#"{"x.com": {"alexa_rank": 5}}"#);
        assert!(err.is_err());
    }
}
