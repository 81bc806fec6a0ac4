//! URL-only feature rules: everything computable from the raw string
//! without a page fetch or third-party lookup.

use crate::features::evidence::{is_ipv4, registered_domain};
use crate::features::thresholds::Thresholds;
use crate::features::url::UrlParts;
use crate::features::{idx, TernaryValue};

/// Evaluates the nine URL-lexical rules. Total over any parsed URL.
pub fn extract_lexical(parts: &UrlParts, th: &Thresholds) -> Vec<(usize, TernaryValue)> {
    vec![
        (idx::HAVING_IP_ADDRESS, having_ip(parts)),
        (idx::URL_LENGTH, url_length(parts, th)),
        (idx::SHORTENING_SERVICE, shortening_service(parts, th)),
        (idx::HAVING_AT_SYMBOL, at_symbol(parts)),
        (idx::DOUBLE_SLASH_REDIRECTING, double_slash(parts)),
        (idx::PREFIX_SUFFIX, prefix_suffix(parts)),
        (idx::HAVING_SUB_DOMAIN, sub_domain(parts, th)),
        (idx::PORT, nonstandard_port(parts)),
        (idx::HTTPS_TOKEN, https_token(parts)),
    ]
}

/// An IP literal in place of a domain name.
fn having_ip(parts: &UrlParts) -> TernaryValue {
    let host = parts.host_lower();
    let hexish = host.split('.').count() == 4
        && host
            .split('.')
            .all(|o| o.strip_prefix("0x").map_or(false, |h| !h.is_empty() && h.bytes().all(|b| b.is_ascii_hexdigit())));
    if is_ipv4(&host) || hexish || host.starts_with('[') {
        TernaryValue::PHISHING
    } else {
        TernaryValue::LEGITIMATE
    }
}

/// Long URLs hide the doubtful part in the address bar.
fn url_length(parts: &UrlParts, th: &Thresholds) -> TernaryValue {
    let len = parts.raw.len();
    if len < th.url_length.short_under {
        TernaryValue::LEGITIMATE
    } else if len <= th.url_length.long_over {
        TernaryValue::SUSPICIOUS
    } else {
        TernaryValue::PHISHING
    }
}

/// Host (or its registered domain) is a known shortener.
fn shortening_service(parts: &UrlParts, th: &Thresholds) -> TernaryValue {
    let host = parts.host_lower();
    let registered = registered_domain(&host);
    let listed = th
        .shortening_service
        .domains
        .iter()
        .any(|d| d == &host || d == &registered);
    if listed {
        TernaryValue::PHISHING
    } else {
        TernaryValue::LEGITIMATE
    }
}

/// A literal `@` makes browsers discard everything before it.
fn at_symbol(parts: &UrlParts) -> TernaryValue {
    if parts.raw[parts.after_scheme_offset()..].contains('@') {
        TernaryValue::PHISHING
    } else {
        TernaryValue::LEGITIMATE
    }
}

/// A `//` after the scheme delimiter redirects elsewhere; the mandatory
/// `://` itself does not trigger the rule.
fn double_slash(parts: &UrlParts) -> TernaryValue {
    if parts.raw[parts.after_scheme_offset()..].contains("//") {
        TernaryValue::PHISHING
    } else {
        TernaryValue::LEGITIMATE
    }
}

/// Dashes in the host imitate legitimate brands.
fn prefix_suffix(parts: &UrlParts) -> TernaryValue {
    if parts.host.contains('-') {
        TernaryValue::PHISHING
    } else {
        TernaryValue::LEGITIMATE
    }
}

/// Subdomain depth: dots left after dropping a `www.` prefix and the
/// public suffix. IP hosts keep all their dots and land on phishing.
fn sub_domain(parts: &UrlParts, th: &Thresholds) -> TernaryValue {
    let host = parts.host_lower();
    let trimmed = host.strip_prefix("www.").unwrap_or(&host);
    let registered = registered_domain(trimmed);
    let dots = if is_ipv4(trimmed) || trimmed.starts_with('[') {
        trimmed.matches('.').count()
    } else {
        let suffix_dots = registered.matches('.').count();
        trimmed.matches('.').count().saturating_sub(suffix_dots)
    };
    if dots >= th.having_sub_domain.phishing_at {
        TernaryValue::PHISHING
    } else if dots >= th.having_sub_domain.suspicious_at {
        TernaryValue::SUSPICIOUS
    } else {
        TernaryValue::LEGITIMATE
    }
}

/// An explicit port other than 80/443.
fn nonstandard_port(parts: &UrlParts) -> TernaryValue {
    match parts.port {
        Some(80) | Some(443) | None => TernaryValue::LEGITIMATE,
        Some(_) => TernaryValue::PHISHING,
    }
}

/// A deceptive "https" token inside the host itself.
fn https_token(parts: &UrlParts) -> TernaryValue {
    if parts.host_lower().contains("https") {
        TernaryValue::PHISHING
    } else {
        TernaryValue::LEGITIMATE
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::features::url::parse_url;

    fn lex(url: &str) -> std::collections::HashMap<usize, i8> {
        let parts = parse_url(url).unwrap();
        extract_lexical(&parts, &Thresholds::default())
            .into_iter()
            .map(|(i, v)| (i, v.value()))
            .collect()
    }

    #[test]
    fn ip_host_is_phishing() {
        let v = lex("http://217.102.24.235/sample.html");
        assert_eq!(v[&idx::HAVING_IP_ADDRESS], -1);
    }

    #[test]
    fn shortener_is_phishing() {
        let v = lex("bit.ly/1sSEGTB");
        assert_eq!(v[&idx::SHORTENING_SERVICE], -1);
    }

    #[test]
    fn dashed_host_is_phishing() {
        let v = lex("http://www.Confirme-paypal.com");
        assert_eq!(v[&idx::PREFIX_SUFFIX], -1);
    }

    #[test]
    fn https_token_in_host_is_phishing() {
        let v = lex("http://https-www-mellat-phish.ir");
        assert_eq!(v[&idx::HTTPS_TOKEN], -1);
    }

    #[test]
    fn benign_url_scores_all_legitimate() {
        let v = lex("https://example.com/");
        for (i, value) in v {
            assert_eq!(value, 1, "feature {i} not +1 on benign url");
        }
    }

    #[test]
    fn scheme_slashes_do_not_trip_double_slash() {
        assert_eq!(lex("https://example.com/")[&idx::DOUBLE_SLASH_REDIRECTING], 1);
        assert_eq!(
            lex("http://217.102.24.235//evil.html")[&idx::DOUBLE_SLASH_REDIRECTING],
            -1
        );
    }

    #[test]
    fn url_length_bands() {
        assert_eq!(lex("https://example.com/")[&idx::URL_LENGTH], 1);
        let medium = format!("https://example.com/{}", "a".repeat(40));
        assert_eq!(lex(&medium)[&idx::URL_LENGTH], 0);
        let long = format!("https://example.com/{}", "a".repeat(80));
        assert_eq!(lex(&long)[&idx::URL_LENGTH], -1);
    }

    #[test]
    fn at_symbol_anywhere_after_scheme() {
        assert_eq!(lex("http://user@evil.com")[&idx::HAVING_AT_SYMBOL], -1);
        assert_eq!(lex("http://example.com/a@b")[&idx::HAVING_AT_SYMBOL], -1);
        assert_eq!(lex("http://example.com/ab")[&idx::HAVING_AT_SYMBOL], 1);
    }

    #[test]
    fn subdomain_depth_bands() {
        assert_eq!(lex("https://example.com")[&idx::HAVING_SUB_DOMAIN], 1);
        assert_eq!(lex("https://www.example.com")[&idx::HAVING_SUB_DOMAIN], 1);
        assert_eq!(lex("https://a.b.example.com")[&idx::HAVING_SUB_DOMAIN], 0);
        assert_eq!(lex("https://a.b.c.example.com")[&idx::HAVING_SUB_DOMAIN], -1);
    }

    #[test]
    fn explicit_weird_port_is_phishing() {
        assert_eq!(lex("http://example.com:8080/")[&idx::PORT], -1);
        assert_eq!(lex("http://example.com:443/")[&idx::PORT], 1);
        assert_eq!(lex("http://example.com/")[&idx::PORT], 1);
    }

    #[test]
    fn longer_urls_never_become_more_legitimate() {
        // Monotonicity spot-check on the length rule.
        let mut prev = 1i8;
        for len in [10usize, 53, 54, 75, 76, 200] {
            let path_len = len.saturating_sub("https://ex.co/".len());
            let url = format!("https://ex.co/{}", "a".repeat(path_len));
            let v = lex(&url)[&idx::URL_LENGTH];
            assert!(v <= prev, "length {len} moved toward legitimate");
            prev = v;
        }
    }
}
