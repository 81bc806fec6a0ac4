//! Rules consuming third-party evidence. Absent evidence defaults each
//! rule to the suspicious value 0; statistical-report and abnormal-URL
//! clear to +1 only on explicit evidence.

use crate::features::evidence::ExternalEvidence;
use crate::features::thresholds::Thresholds;
use crate::features::url::UrlParts;
use crate::features::{idx, TernaryValue};

/// Evaluates the ten evidence-backed rules.
pub fn extract_reputation(
    parts: &UrlParts,
    ev: &ExternalEvidence,
    th: &Thresholds,
) -> Vec<(usize, TernaryValue)> {
    vec![
        (idx::SSL_FINAL_STATE, ssl_state(parts, ev)),
        (idx::DOMAIN_REG_LENGTH, registration_length(ev, th)),
        (idx::ABNORMAL_URL, abnormal_url(ev)),
        (idx::AGE_OF_DOMAIN, age_of_domain(ev, th)),
        (idx::DNS_RECORD, dns_record(ev)),
        (idx::WEB_TRAFFIC, web_traffic(ev, th)),
        (idx::PAGE_RANK, page_rank(ev, th)),
        (idx::GOOGLE_INDEX, google_index(ev)),
        (idx::LINKS_POINTING_TO_PAGE, links_pointing(ev, th)),
        (idx::STATISTICAL_REPORT, statistical_report(ev)),
    ]
}

/// HTTPS with a trusted certificate is legitimate; HTTPS with unknown
/// issuer evidence stays suspicious; anything else is phishing.
/// Certificate-chain validation itself is out of scope — the rule
/// consumes the evidence boolean.
fn ssl_state(parts: &UrlParts, ev: &ExternalEvidence) -> TernaryValue {
    if !parts.scheme.eq_ignore_ascii_case("https") {
        return TernaryValue::PHISHING;
    }
    match ev.trusted_certificate {
        Some(true) => TernaryValue::LEGITIMATE,
        Some(false) => TernaryValue::PHISHING,
        None => TernaryValue::SUSPICIOUS,
    }
}

/// Short registration runways fit throwaway domains.
fn registration_length(ev: &ExternalEvidence, th: &Thresholds) -> TernaryValue {
    match ev.domain_registration_length_days {
        Some(days) if days <= th.domain_reg_length.min_days => TernaryValue::PHISHING,
        Some(_) => TernaryValue::LEGITIMATE,
        None => TernaryValue::SUSPICIOUS,
    }
}

/// WHOIS identity missing from the URL.
fn abnormal_url(ev: &ExternalEvidence) -> TernaryValue {
    match ev.whois_identity_in_url {
        Some(true) => TernaryValue::LEGITIMATE,
        Some(false) => TernaryValue::PHISHING,
        None => TernaryValue::SUSPICIOUS,
    }
}

/// Domains younger than a month.
fn age_of_domain(ev: &ExternalEvidence, th: &Thresholds) -> TernaryValue {
    match ev.domain_age_days {
        Some(days) if days < th.age_of_domain.min_days => TernaryValue::PHISHING,
        Some(_) => TernaryValue::LEGITIMATE,
        None => TernaryValue::SUSPICIOUS,
    }
}

fn dns_record(ev: &ExternalEvidence) -> TernaryValue {
    match ev.has_dns_record {
        Some(true) => TernaryValue::LEGITIMATE,
        Some(false) => TernaryValue::PHISHING,
        None => TernaryValue::SUSPICIOUS,
    }
}

fn web_traffic(ev: &ExternalEvidence, th: &Thresholds) -> TernaryValue {
    match ev.traffic_rank {
        Some(rank) if rank <= th.web_traffic.legit_rank_under => TernaryValue::LEGITIMATE,
        Some(rank) if rank > th.web_traffic.phishing_rank_over => TernaryValue::PHISHING,
        Some(_) => TernaryValue::SUSPICIOUS,
        None => TernaryValue::SUSPICIOUS,
    }
}

fn page_rank(ev: &ExternalEvidence, th: &Thresholds) -> TernaryValue {
    match ev.page_rank {
        Some(pr) if pr < th.page_rank.min_value => TernaryValue::PHISHING,
        Some(_) => TernaryValue::LEGITIMATE,
        None => TernaryValue::SUSPICIOUS,
    }
}

fn google_index(ev: &ExternalEvidence) -> TernaryValue {
    match ev.google_indexed {
        Some(true) => TernaryValue::LEGITIMATE,
        Some(false) => TernaryValue::PHISHING,
        None => TernaryValue::SUSPICIOUS,
    }
}

fn links_pointing(ev: &ExternalEvidence, th: &Thresholds) -> TernaryValue {
    match ev.links_pointing {
        Some(n) if n <= th.links_pointing_to_page.phishing_at_most => TernaryValue::PHISHING,
        Some(n) if n <= th.links_pointing_to_page.suspicious_at_most => TernaryValue::SUSPICIOUS,
        Some(_) => TernaryValue::LEGITIMATE,
        None => TernaryValue::SUSPICIOUS,
    }
}

/// Host IP reported on a top-phishing-IP list; clears only on explicit
/// negative evidence.
fn statistical_report(ev: &ExternalEvidence) -> TernaryValue {
    match ev.on_phishing_ip_list {
        Some(true) => TernaryValue::PHISHING,
        Some(false) => TernaryValue::LEGITIMATE,
        None => TernaryValue::SUSPICIOUS,
    }
}
