//! Page-content rules. HTML is handled with a tolerant tag scanner, so
//! malformed markup degrades to best-effort token scanning instead of
//! failing. Every content rule returns the neutral value 0 when no HTML
//! was captured: absence of evidence must not look legitimate.

use crate::features::evidence::registered_domain;
use crate::features::thresholds::Thresholds;
use crate::features::url::{parse_url, UrlParts};
use crate::features::{idx, RawWebsiteObservation, TernaryValue};

/// Evaluates the eleven content rules for one observation.
pub fn extract_content(
    obs: &RawWebsiteObservation,
    parts: &UrlParts,
    th: &Thresholds,
) -> Vec<(usize, TernaryValue)> {
    let page_domain = registered_domain(&parts.host_lower());

    let html_values = match &obs.html {
        Some(html) => {
            let tags = scan_tags(html);
            let lower = html.to_ascii_lowercase();
            vec![
                (idx::FAVICON, favicon(&tags, &page_domain)),
                (idx::REQUEST_URL, request_url(&tags, &page_domain, th)),
                (idx::URL_OF_ANCHOR, url_of_anchor(&tags, &page_domain, th)),
                (idx::LINKS_IN_TAGS, links_in_tags(&tags, &page_domain, th)),
                (idx::SFH, server_form_handler(&tags, &page_domain)),
                (idx::SUBMITTING_TO_EMAIL, submitting_to_email(&tags, &lower)),
                (idx::ON_MOUSEOVER, status_bar_mouseover(&tags, &lower)),
                (idx::RIGHT_CLICK, right_click_blocked(&tags, &lower)),
                (idx::POPUP_WINDOW, popup_window(&lower)),
                (idx::IFRAME, iframe(&tags)),
            ]
        }
        None => vec![
            (idx::FAVICON, TernaryValue::SUSPICIOUS),
            (idx::REQUEST_URL, TernaryValue::SUSPICIOUS),
            (idx::URL_OF_ANCHOR, TernaryValue::SUSPICIOUS),
            (idx::LINKS_IN_TAGS, TernaryValue::SUSPICIOUS),
            (idx::SFH, TernaryValue::SUSPICIOUS),
            (idx::SUBMITTING_TO_EMAIL, TernaryValue::SUSPICIOUS),
            (idx::ON_MOUSEOVER, TernaryValue::SUSPICIOUS),
            (idx::RIGHT_CLICK, TernaryValue::SUSPICIOUS),
            (idx::POPUP_WINDOW, TernaryValue::SUSPICIOUS),
            (idx::IFRAME, TernaryValue::SUSPICIOUS),
        ],
    };

    let mut out = html_values;
    out.push((idx::WEBSITE_REDIRECT_COUNT, redirect_count(obs, th)));
    out
}

/// More than a few observed redirects marks the chain as hostile.
fn redirect_count(obs: &RawWebsiteObservation, th: &Thresholds) -> TernaryValue {
    match obs.redirect_count {
        None => TernaryValue::SUSPICIOUS,
        Some(n) if n > th.website_redirect_count.phishing_over => TernaryValue::PHISHING,
        Some(n) if n > th.website_redirect_count.suspicious_over => TernaryValue::SUSPICIOUS,
        Some(_) => TernaryValue::LEGITIMATE,
    }
}

// ---------------------------------------------------------------------------
// Tolerant tag scanning.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub(crate) struct Tag {
    pub name: String,
    pub attrs: Vec<(String, String)>,
}

impl Tag {
    pub fn attr(&self, name: &str) -> Option<&str> {
        self.attrs
            .iter()
            .find(|(k, _)| k == name)
            .map(|(_, v)| v.as_str())
    }
}

/// Scans `<tag attr=value ...>` occurrences, lowercasing names and
/// attribute keys. Unterminated or malformed tags are dropped silently.
pub(crate) fn scan_tags(html: &str) -> Vec<Tag> {
    let bytes = html.as_bytes();
    let mut tags = Vec::new();
    let mut i = 0usize;
    while i < bytes.len() {
        if bytes[i] != b'<' {
            i += 1;
            continue;
        }
        let mut j = i + 1;
        if j < bytes.len() && (bytes[j] == b'/' || bytes[j] == b'!') {
            i = j;
            continue;
        }
        let name_start = j;
        while j < bytes.len() && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'-') {
            j += 1;
        }
        if j == name_start {
            i = j;
            continue;
        }
        let name = html[name_start..j].to_ascii_lowercase();
        // Attribute region runs to the closing '>', honoring quotes.
        let mut attrs = Vec::new();
        let mut k = j;
        let mut quote: Option<u8> = None;
        while k < bytes.len() {
            match (quote, bytes[k]) {
                (None, b'>') => break,
                (None, b'"') | (None, b'\'') => quote = Some(bytes[k]),
                (Some(q), c) if c == q => quote = None,
                _ => {}
            }
            k += 1;
        }
        let attr_region = &html[j..k.min(html.len())];
        parse_attrs(attr_region, &mut attrs);
        tags.push(Tag { name, attrs });
        i = k + 1;
    }
    tags
}

fn parse_attrs(region: &str, out: &mut Vec<(String, String)>) {
    let bytes = region.as_bytes();
    let mut i = 0usize;
    while i < bytes.len() {
        while i < bytes.len() && (bytes[i].is_ascii_whitespace() || bytes[i] == b'/') {
            i += 1;
        }
        let key_start = i;
        while i < bytes.len()
            && !bytes[i].is_ascii_whitespace()
            && bytes[i] != b'='
            && bytes[i] != b'/'
        {
            i += 1;
        }
        if i == key_start {
            break;
        }
        let key = region[key_start..i].to_ascii_lowercase();
        while i < bytes.len() && bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        if i < bytes.len() && bytes[i] == b'=' {
            i += 1;
            while i < bytes.len() && bytes[i].is_ascii_whitespace() {
                i += 1;
            }
            let value = if i < bytes.len() && (bytes[i] == b'"' || bytes[i] == b'\'') {
                let q = bytes[i];
                i += 1;
                let start = i;
                while i < bytes.len() && bytes[i] != q {
                    i += 1;
                }
                let v = &region[start..i];
                i = (i + 1).min(bytes.len());
                v
            } else {
                let start = i;
                while i < bytes.len() && !bytes[i].is_ascii_whitespace() {
                    i += 1;
                }
                &region[start..i]
            };
            out.push((key, value.to_string()));
        } else {
            out.push((key, String::new()));
        }
    }
}

/// Classification of a referenced URL relative to the page's domain.
#[derive(PartialEq, Eq, Debug, Clone, Copy)]
enum LinkTarget {
    Internal,
    External,
    /// `#`, `javascript:`, or empty — goes nowhere.
    Void,
}

fn classify_link(href: &str, page_domain: &str) -> LinkTarget {
    let href = href.trim();
    if href.is_empty() || href == "#" || href.starts_with("javascript:") {
        return LinkTarget::Void;
    }
    if href.starts_with("mailto:") || href.starts_with("tel:") {
        return LinkTarget::External;
    }
    let absolute = if let Some(rest) = href.strip_prefix("//") {
        Some(format!("http://{rest}"))
    } else if href.contains("://") {
        Some(href.to_string())
    } else {
        None
    };
    match absolute {
        Some(url) => match parse_url(&url) {
            Ok(parts) => {
                if registered_domain(&parts.host_lower()) == page_domain {
                    LinkTarget::Internal
                } else {
                    LinkTarget::External
                }
            }
            Err(_) => LinkTarget::External,
        },
        None => LinkTarget::Internal,
    }
}

fn band(pct: f64, legit_under: f64, phishing_over: f64) -> TernaryValue {
    if pct < legit_under {
        TernaryValue::LEGITIMATE
    } else if pct <= phishing_over {
        TernaryValue::SUSPICIOUS
    } else {
        TernaryValue::PHISHING
    }
}

/// A favicon loaded from a foreign domain.
fn favicon(tags: &[Tag], page_domain: &str) -> TernaryValue {
    for tag in tags.iter().filter(|t| t.name == "link") {
        let rel = tag.attr("rel").unwrap_or("").to_ascii_lowercase();
        if rel.contains("icon") {
            if let Some(href) = tag.attr("href") {
                if classify_link(href, page_domain) == LinkTarget::External {
                    return TernaryValue::PHISHING;
                }
            }
        }
    }
    TernaryValue::LEGITIMATE
}

const RESOURCE_TAGS: [&str; 6] = ["img", "script", "video", "audio", "embed", "source"];

/// Share of page objects (images, media, scripts) served from other
/// domains.
fn request_url(tags: &[Tag], page_domain: &str, th: &Thresholds) -> TernaryValue {
    let mut total = 0usize;
    let mut external = 0usize;
    for tag in tags {
        if RESOURCE_TAGS.contains(&tag.name.as_str()) {
            if let Some(src) = tag.attr("src") {
                total += 1;
                if classify_link(src, page_domain) == LinkTarget::External {
                    external += 1;
                }
            }
        }
    }
    if total == 0 {
        return TernaryValue::LEGITIMATE;
    }
    let pct = 100.0 * external as f64 / total as f64;
    band(pct, th.request_url.legit_under_pct, th.request_url.phishing_over_pct)
}

/// Share of anchors that leave the domain or go nowhere.
fn url_of_anchor(tags: &[Tag], page_domain: &str, th: &Thresholds) -> TernaryValue {
    let mut total = 0usize;
    let mut hostile = 0usize;
    for tag in tags.iter().filter(|t| t.name == "a") {
        if let Some(href) = tag.attr("href") {
            total += 1;
            match classify_link(href, page_domain) {
                LinkTarget::External | LinkTarget::Void => hostile += 1,
                LinkTarget::Internal => {}
            }
        }
    }
    if total == 0 {
        return TernaryValue::LEGITIMATE;
    }
    let pct = 100.0 * hostile as f64 / total as f64;
    band(pct, th.url_of_anchor.legit_under_pct, th.url_of_anchor.phishing_over_pct)
}

/// Share of meta/script/link references pointing off-domain.
fn links_in_tags(tags: &[Tag], page_domain: &str, th: &Thresholds) -> TernaryValue {
    let mut total = 0usize;
    let mut external = 0usize;
    for tag in tags {
        let reference = match tag.name.as_str() {
            "link" => tag.attr("href"),
            "script" => tag.attr("src"),
            "meta" => tag.attr("content").filter(|c| c.contains("://")),
            _ => None,
        };
        if let Some(href) = reference {
            total += 1;
            if classify_link(href, page_domain) == LinkTarget::External {
                external += 1;
            }
        }
    }
    if total == 0 {
        return TernaryValue::LEGITIMATE;
    }
    let pct = 100.0 * external as f64 / total as f64;
    band(pct, th.links_in_tags.legit_under_pct, th.links_in_tags.phishing_over_pct)
}

/// Server form handler: posting to a foreign domain is phishing; a blank
/// or about:blank action is suspicious.
fn server_form_handler(tags: &[Tag], page_domain: &str) -> TernaryValue {
    let mut verdict = TernaryValue::LEGITIMATE;
    for tag in tags.iter().filter(|t| t.name == "form") {
        match tag.attr("action") {
            None | Some("") => return TernaryValue::SUSPICIOUS,
            Some(action) if action.trim() == "about:blank" => return TernaryValue::SUSPICIOUS,
            Some(action) => {
                if action.starts_with("mailto:") {
                    continue; // handled by the e-mail rule
                }
                if classify_link(action, page_domain) == LinkTarget::External {
                    verdict = TernaryValue::PHISHING;
                }
            }
        }
    }
    verdict
}

/// User information rerouted to a mailbox.
fn submitting_to_email(tags: &[Tag], lower_html: &str) -> TernaryValue {
    let mailto_form = tags
        .iter()
        .filter(|t| t.name == "form")
        .any(|t| t.attr("action").map_or(false, |a| a.starts_with("mailto:")));
    if mailto_form || lower_html.contains("mail(") || lower_html.contains("sendmail(") {
        TernaryValue::PHISHING
    } else {
        TernaryValue::LEGITIMATE
    }
}

/// onMouseOver handlers that rewrite the status bar.
fn status_bar_mouseover(tags: &[Tag], lower_html: &str) -> TernaryValue {
    let in_attr = tags.iter().any(|t| {
        t.attr("onmouseover")
            .map_or(false, |v| v.to_ascii_lowercase().contains("window.status"))
    });
    if in_attr || lower_html.contains("window.status") {
        TernaryValue::PHISHING
    } else {
        TernaryValue::LEGITIMATE
    }
}

/// Context-menu suppression.
fn right_click_blocked(tags: &[Tag], lower_html: &str) -> TernaryValue {
    let attr_blocked = tags.iter().any(|t| {
        t.attr("oncontextmenu")
            .map_or(false, |v| v.to_ascii_lowercase().contains("return false"))
    });
    let script_blocked = lower_html.replace([' ', '\t'], "").contains("event.button==2");
    if attr_blocked || script_blocked {
        TernaryValue::PHISHING
    } else {
        TernaryValue::LEGITIMATE
    }
}

/// Scripted pop-up windows.
fn popup_window(lower_html: &str) -> TernaryValue {
    if lower_html.contains("window.open(") {
        TernaryValue::PHISHING
    } else {
        TernaryValue::LEGITIMATE
    }
}

/// Inline frames showing another page inside this one.
fn iframe(tags: &[Tag]) -> TernaryValue {
    if tags.iter().any(|t| t.name == "iframe" || t.name == "frame") {
        TernaryValue::PHISHING
    } else {
        TernaryValue::LEGITIMATE
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn obs(url: &str, html: Option<&str>) -> RawWebsiteObservation {
        RawWebsiteObservation {
            url: url.to_string(),
            html: html.map(|h| h.to_string()),
            final_url_after_redirects: None,
            redirect_count: Some(0),
        }
    }

    fn content(url: &str, html: Option<&str>) -> std::collections::HashMap<usize, i8> {
        let o = obs(url, html);
        let parts = parse_url(url).unwrap();
        extract_content(&o, &parts, &Thresholds::default())
            .into_iter()
            .map(|(i, v)| (i, v.value()))
            .collect()
    }

    const CLEAN_PAGE: &str = r#"
        <html><head>
        <link rel="icon" href="/favicon.ico">
        <script src="/app.js"></script>
        </head><body>
        <img src="/logo.png">
        <a href="/about">About</a>
        <a href="https://example.com/docs">Docs</a>
        <form action="https://example.com/login" method="post"></form>
        </body></html>"#;

    #[test]
    fn clean_page_is_all_legitimate() {
        let v = content("https://example.com/", Some(CLEAN_PAGE));
        for (i, value) in v {
            assert_eq!(value, 1, "feature {i} not +1 on clean page");
        }
    }

    #[test]
    fn missing_html_returns_neutral_values() {
        let v = content("https://example.com/", None);
        for (i, value) in &v {
            if *i == idx::WEBSITE_REDIRECT_COUNT {
                continue; // driven by redirect_count, present here
            }
            assert_eq!(*value, 0, "feature {i} not 0 without html");
        }
    }

    #[test]
    fn zero_external_resources_is_legitimate() {
        let page = r#"<img src="/a.png"><script src="/b.js"></script>"#;
        let v = content("https://example.com/", Some(page));
        assert_eq!(v[&idx::REQUEST_URL], 1);
    }

    #[test]
    fn mostly_external_resources_is_phishing() {
        let page = r#"
            <img src="http://cdn.evil.net/a.png">
            <img src="http://cdn.evil.net/b.png">
            <img src="http://cdn.evil.net/c.png">
            <img src="/local.png">"#;
        let v = content("https://example.com/", Some(page));
        assert_eq!(v[&idx::REQUEST_URL], -1);
    }

    #[test]
    fn foreign_form_action_is_phishing() {
        let page = r#"<form action="http://collector.evil.net/post"></form>"#;
        let v = content("https://example.com/", Some(page));
        assert_eq!(v[&idx::SFH], -1);
    }

    #[test]
    fn blank_form_action_is_suspicious() {
        let page = r#"<form action=""></form>"#;
        let v = content("https://example.com/", Some(page));
        assert_eq!(v[&idx::SFH], 0);
    }

    #[test]
    fn iframe_tag_is_phishing() {
        let v = content(
            "https://example.com/",
            Some(r#"<iframe src="http://evil.net/x"></iframe>"#),
        );
        assert_eq!(v[&idx::IFRAME], -1);
    }

    #[test]
    fn mailto_form_is_phishing() {
        let page = r#"<form action="mailto:x@evil.net"></form>"#;
        let v = content("https://example.com/", Some(page));
        assert_eq!(v[&idx::SUBMITTING_TO_EMAIL], -1);
    }

    #[test]
    fn anchor_ratio_bands() {
        let half_external = r##"
            <a href="/in1">a</a><a href="/in2">b</a>
            <a href="http://other.net/x">c</a><a href="#">d</a>"##;
        let v = content("https://example.com/", Some(half_external));
        assert_eq!(v[&idx::URL_OF_ANCHOR], 0); // 50% sits in the 31–67 band
    }

    #[test]
    fn status_bar_mouseover_detected() {
        let page = r#"<a onmouseover="window.status='https://bank.com'">x</a>"#;
        let v = content("https://example.com/", Some(page));
        assert_eq!(v[&idx::ON_MOUSEOVER], -1);
    }

    #[test]
    fn right_click_suppression_detected() {
        let page = r#"<body oncontextmenu="return false"></body>"#;
        let v = content("https://example.com/", Some(page));
        assert_eq!(v[&idx::RIGHT_CLICK], -1);
    }

    #[test]
    fn popup_detected() {
        let page = r#"<script>window.open('http://evil.net');</script>"#;
        let v = content("https://example.com/", Some(page));
        assert_eq!(v[&idx::POPUP_WINDOW], -1);
    }

    #[test]
    fn external_favicon_is_phishing() {
        let page = r#"<link rel="shortcut icon" href="http://other.net/f.ico">"#;
        let v = content("https://example.com/", Some(page));
        assert_eq!(v[&idx::FAVICON], -1);
    }

    #[test]
    fn redirect_count_bands() {
        let mut o = obs("https://example.com/", None);
        o.redirect_count = Some(1);
        let parts = parse_url(&o.url).unwrap();
        let get = |o: &RawWebsiteObservation| {
            extract_content(o, &parts, &Thresholds::default())
                .into_iter()
                .find(|(i, _)| *i == idx::WEBSITE_REDIRECT_COUNT)
                .unwrap()
                .1
                .value()
        };
        assert_eq!(get(&o), 1);
        o.redirect_count = Some(3);
        assert_eq!(get(&o), 0);
        o.redirect_count = Some(5);
        assert_eq!(get(&o), -1);
        o.redirect_count = None;
        assert_eq!(get(&o), 0);
    }

    #[test]
    fn malformed_html_degrades_gracefully() {
        let page = "<a href='unterminated <img src=http://e.net/x.png <<<>";
        let v = content("https://example.com/", Some(page));
        assert!(v.values().all(|&x| (-1..=1).contains(&x)));
    }
}
