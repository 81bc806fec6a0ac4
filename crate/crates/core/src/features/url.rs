//! Minimal URL splitting tailored to the lexical feature rules.
//!
//! Components split at the first `://`, the first `/` after the
//! authority, `?`, and `#`. The original string is preserved and
//! reassembling the parts with their delimiters reproduces it exactly.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UrlParts {
    pub raw: String,
    /// Scheme as written, empty when the URL is scheme-less.
    pub scheme: String,
    /// Authority as written: may include userinfo and port.
    pub authority: String,
    /// Path including its leading slash, or empty.
    pub path: String,
    /// Query without the leading `?`.
    pub query: String,
    /// Fragment without the leading `#`.
    pub fragment: String,
    /// Host as written, without userinfo or port.
    pub host: String,
    pub port: Option<u16>,
}

impl UrlParts {
    /// Lowercased host for rule matching.
    pub fn host_lower(&self) -> String {
        self.host.to_ascii_lowercase()
    }

    /// Byte offset just past the `://` delimiter (0 when scheme-less);
    /// lexical rules scan from here.
    pub fn after_scheme_offset(&self) -> usize {
        if self.scheme.is_empty() {
            0
        } else {
            self.scheme.len() + 3
        }
    }

    /// Rebuilds the original string from the parts.
    pub fn reassemble(&self) -> String {
        let mut s = String::new();
        if !self.scheme.is_empty() {
            s.push_str(&self.scheme);
            s.push_str("://");
        }
        s.push_str(&self.authority);
        s.push_str(&self.path);
        let had_query = match (self.raw.find('?'), self.raw.find('#')) {
            (Some(q), Some(h)) => q < h,
            (Some(_), None) => true,
            _ => false,
        };
        if had_query {
            s.push('?');
            s.push_str(&self.query);
        }
        if self.raw.contains('#') {
            s.push('#');
            s.push_str(&self.fragment);
        }
        s
    }
}

/// Splits a URL into parts. Scheme-less inputs (`bit.ly/1sSEGTB`) are
/// treated as starting at the authority.
pub fn parse_url(s: &str) -> Result<UrlParts> {
    if s.is_empty() {
        return Err(Error::UrlParse("empty url".into()));
    }
    let (scheme, rest) = match s.find("://") {
        Some(pos) if pos > 0 && s[..pos].chars().all(valid_scheme_char) => {
            (s[..pos].to_string(), &s[pos + 3..])
        }
        _ => (String::new(), s),
    };

    let authority_end = rest
        .find(['/', '?', '#'])
        .unwrap_or(rest.len());
    let authority = &rest[..authority_end];
    let after = &rest[authority_end..];

    let (path, query, fragment) = split_path_query_fragment(after);

    let (host, port) = split_host_port(authority)?;
    if host.is_empty() || !host.bytes().any(|b| b.is_ascii_alphanumeric()) {
        return Err(Error::UrlParse(format!("no parsable host in '{s}'")));
    }

    Ok(UrlParts {
        raw: s.to_string(),
        scheme,
        authority: authority.to_string(),
        path: path.to_string(),
        query: query.to_string(),
        fragment: fragment.to_string(),
        host,
        port,
    })
}

fn valid_scheme_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '+' | '-' | '.')
}

fn split_path_query_fragment(after: &str) -> (&str, &str, &str) {
    let (before_fragment, fragment) = match after.find('#') {
        Some(h) => (&after[..h], &after[h + 1..]),
        None => (after, ""),
    };
    let (path, query) = match before_fragment.find('?') {
        Some(q) => (&before_fragment[..q], &before_fragment[q + 1..]),
        None => (before_fragment, ""),
    };
    (path, query, fragment)
}

fn split_host_port(authority: &str) -> Result<(String, Option<u16>)> {
    // Userinfo ends at the last '@'.
    let host_port = match authority.rfind('@') {
        Some(at) => &authority[at + 1..],
        None => authority,
    };
    if host_port.starts_with('[') {
        // Bracketed IPv6: [::1] or [::1]:8080
        let close = host_port
            .find(']')
            .ok_or_else(|| Error::UrlParse("unterminated ipv6 host".into()))?;
        let host = host_port[..=close].to_string();
        let rest = &host_port[close + 1..];
        let port = match rest.strip_prefix(':') {
            Some(digits) if !digits.is_empty() => Some(parse_port(digits)?),
            Some(_) => return Err(Error::UrlParse("empty port".into())),
            None => None,
        };
        return Ok((host, port));
    }
    match host_port.rfind(':') {
        Some(colon) => {
            let tail = &host_port[colon + 1..];
            if !tail.is_empty() && tail.bytes().all(|b| b.is_ascii_digit()) {
                Ok((host_port[..colon].to_string(), Some(parse_port(tail)?)))
            } else {
                // Not a numeric port; keep the whole token as host.
                Ok((host_port.to_string(), None))
            }
        }
        None => Ok((host_port.to_string(), None)),
    }
}

fn parse_port(digits: &str) -> Result<u16> {
    digits
        .parse::<u16>()
        .map_err(|_| Error::UrlParse(format!("port '{digits}' out of range")))
}
