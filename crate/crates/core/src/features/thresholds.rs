//! The single configuration table holding every tunable rule cutoff, so
//! the extractor can be retuned without code changes. Keys mirror the
//! canonical feature names and unknown keys are rejected.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields, default)]
pub struct Thresholds {
    pub url_length: UrlLengthRule,
    pub shortening_service: ShortenerRule,
    pub having_sub_domain: SubdomainRule,
    pub request_url: RatioRule,
    pub url_of_anchor: AnchorRatioRule,
    pub links_in_tags: RatioRule,
    pub website_redirect_count: RedirectRule,
    pub age_of_domain: MinDaysRule,
    pub domain_reg_length: RegistrationRule,
    pub web_traffic: TrafficRule,
    pub page_rank: PageRankRule,
    pub links_pointing_to_page: LinksPointingRule,
}

impl Thresholds {
    pub fn load(path: impl AsRef<Path>) -> Result<Thresholds> {
        let text = std::fs::read_to_string(path.as_ref())
            .map_err(|e| Error::Thresholds(format!("{}: {e}", path.as_ref().display())))?;
        serde_json::from_str(&text).map_err(|e| Error::Thresholds(e.to_string()))
    }
}

/// URL length: shorter than `short_under` is legitimate, longer than
/// `long_over` phishing, in between suspicious.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct UrlLengthRule {
    pub short_under: usize,
    pub long_over: usize,
}

impl Default for UrlLengthRule {
    fn default() -> Self {
        UrlLengthRule {
            short_under: 54,
            long_over: 75,
        }
    }
}

/// Known URL-shortener domains; membership marks the URL phishing.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ShortenerRule {
    pub domains: Vec<String>,
}

impl Default for ShortenerRule {
    fn default() -> Self {
        ShortenerRule {
            domains: [
                "bit.ly",
                "tinyurl.com",
                "goo.gl",
                "t.co",
                "ow.ly",
                "is.gd",
                "buff.ly",
                "adf.ly",
                "bit.do",
                "cutt.ly",
                "shorte.st",
                "tr.im",
                "cli.gs",
                "u.to",
                "j.mp",
                "rb.gy",
                "rebrand.ly",
                "tiny.cc",
                "lnkd.in",
                "x.co",
                "qr.ae",
                "v.gd",
            ]
            .iter()
            .map(|s| s.to_string())
            .collect(),
        }
    }
}

/// Subdomain depth: dots remaining after stripping `www.` and the public
/// suffix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SubdomainRule {
    /// Exactly this many dots is suspicious.
    pub suspicious_at: usize,
    /// This many or more is phishing.
    pub phishing_at: usize,
}

impl Default for SubdomainRule {
    fn default() -> Self {
        SubdomainRule {
            suspicious_at: 2,
            phishing_at: 3,
        }
    }
}

/// External-resource percentage bands shared by the request-URL and
/// links-in-tags rules.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RatioRule {
    pub legit_under_pct: f64,
    pub phishing_over_pct: f64,
}

impl Default for RatioRule {
    fn default() -> Self {
        RatioRule {
            legit_under_pct: 22.0,
            phishing_over_pct: 61.0,
        }
    }
}

/// Anchor rule bands (the suspicious band is wider than for resources).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AnchorRatioRule {
    pub legit_under_pct: f64,
    pub phishing_over_pct: f64,
}

impl Default for AnchorRatioRule {
    fn default() -> Self {
        AnchorRatioRule {
            legit_under_pct: 31.0,
            phishing_over_pct: 67.0,
        }
    }
}

/// Redirect chain length bands.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RedirectRule {
    /// More than this many redirects is suspicious.
    pub suspicious_over: u32,
    /// More than this many is phishing.
    pub phishing_over: u32,
}

impl Default for RedirectRule {
    fn default() -> Self {
        RedirectRule {
            suspicious_over: 1,
            phishing_over: 4,
        }
    }
}

/// Domain age: younger than `min_days` is phishing.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MinDaysRule {
    pub min_days: i64,
}

impl Default for MinDaysRule {
    fn default() -> Self {
        MinDaysRule { min_days: 30 }
    }
}

/// Registration runway: this many days or fewer left is phishing.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RegistrationRule {
    pub min_days: i64,
}

impl Default for RegistrationRule {
    fn default() -> Self {
        RegistrationRule { min_days: 365 }
    }
}

/// Traffic rank bands: low ranks are popular sites.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TrafficRule {
    pub legit_rank_under: u64,
    pub phishing_rank_over: u64,
}

impl Default for TrafficRule {
    fn default() -> Self {
        TrafficRule {
            legit_rank_under: 100_000,
            phishing_rank_over: 500_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PageRankRule {
    pub min_value: f64,
}

impl Default for PageRankRule {
    fn default() -> Self {
        PageRankRule { min_value: 0.2 }
    }
}

/// Inbound link counts: none is phishing, a couple suspicious.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct LinksPointingRule {
    pub phishing_at_most: u64,
    pub suspicious_at_most: u64,
}

impl Default for LinksPointingRule {
    fn default() -> Self {
        LinksPointingRule {
            phishing_at_most: 0,
            suspicious_at_most: 2,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_round_trip_through_json() {
        let t = Thresholds::default();
        let json = serde_json::to_string(&t).unwrap();
        let back: Thresholds = serde_json::from_str(&json).unwrap();
        assert_eq!(t, back);
    }

    #[test]
    fn partial_config_keeps_other_defaults() {
        let t: Thresholds =
            serde_json::from_str(r#"{"url_length": {"short_under": 40, "long_over": 90}}"#)
                .unwrap();
        assert_eq!(t.url_length.short_under, 40);
        assert_eq!(t.url_length.long_over, 90);
        assert_eq!(t.having_sub_domain, SubdomainRule::default());
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(serde_json::from_str::<Thresholds>(r#"{"url_size": {}}"#).is_err());
        assert!(
            serde_json::from_str::<Thresholds>(r#"{"url_length": {"short": 2}}"#).is_err()
        );
    }
}
