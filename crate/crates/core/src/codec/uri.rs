use percent_encoding::{percent_decode_str, utf8_percent_encode, AsciiSet, NON_ALPHANUMERIC};

/// Everything except RFC 3986 unreserved characters is escaped, `%` included,
/// so distinct ids always give distinct URIs.
const ID_ESCAPES: &AsciiSet = &NON_ALPHANUMERIC.remove(b'-').remove(b'.').remove(b'_').remove(b'~');

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum UriError {
    #[error("base `{0}` is not an absolute URI ending in `/`")]
    InvalidBase(String),
    #[error("`{uri}` is not under base `{base}`")]
    NotUnderBase { uri: String, base: String },
    #[error("`{0}` does not decode to UTF-8")]
    NotUtf8(String),
}

/// Appends the percent-encoded record id to `base`.
pub fn mint_uri(record_id: &str, base: &str) -> Result<String, UriError> {
    if !base.ends_with('/') || !is_absolute_iri(base) {
        return Err(UriError::InvalidBase(base.to_string()));
    }
    Ok(format!("{base}{}", utf8_percent_encode(record_id, ID_ESCAPES)))
}

/// Inverse of [`mint_uri`].
pub fn unmint_uri(uri: &str, base: &str) -> Result<String, UriError> {
    let encoded = uri.strip_prefix(base).ok_or_else(|| UriError::NotUnderBase {
        uri: uri.to_string(),
        base: base.to_string(),
    })?;
    percent_decode_str(encoded)
        .decode_utf8()
        .map(|s| s.into_owned())
        .map_err(|_| UriError::NotUtf8(uri.to_string()))
}

/// An absolute URI that can be written as a Turtle IRI reference unchanged.
pub fn is_absolute_iri(s: &str) -> bool {
    const FORBIDDEN: &[char] = &['<', '>', '"', '{', '}', '|', '^', '`', '\\'];
    !s.is_empty()
        && !s.chars().any(|c| c.is_whitespace() || c.is_control() || FORBIDDEN.contains(&c))
        && url::Url::parse(s).is_ok()
}
