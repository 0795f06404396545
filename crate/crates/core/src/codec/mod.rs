//! Wire formats of the five standards.
//!
//! | standard | format |
//! |---|---|
//! | EAD, MODS | XML, default namespace, one wrapper chain per node |
//! | Dublin Core, EDM | Turtle, one triple per line |
//! | Digital Scriptorium | flat JSON object keyed by display field |
//!
//! [`decode`] is tolerant: content it does not recognise becomes nodes under
//! the [`UNKNOWN`] path prefix instead of an error. [`encode`] only writes
//! known paths.

mod ds;
mod model;
mod turtle;
mod uri;
mod xml;

pub use model::{
    vocabulary, Document, MediaKind, TargetModel, TargetNode, CONTEXT_ANNOTATION, IS_SHOWN_BY, ORIGINATION, UNKNOWN,
};
pub use uri::{is_absolute_iri, mint_uri, unmint_uri, UriError};

use crate::crosswalk::Standard;

/// Record URI given to documents that do not carry one.
pub const ANONYMOUS_URI: &str = "urn:x-ch-crosswalk:anonymous";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CodecError {
    #[error("path {0} is not part of the standard's vocabulary")]
    InvalidPath(String),
    #[error("invalid annotation: {0}")]
    InvalidAnnotation(String),
    #[error("invalid value: {0}")]
    InvalidValue(String),
    #[error("`{0}` is not an absolute URI")]
    InvalidUri(String),
    #[error("field {0} appears in more than one run")]
    UngroupedField(String),
    #[error("malformed document: {0}")]
    MalformedDocument(String),
    #[error("not a {expected} document: {reason}")]
    WrongStandard { expected: Standard, reason: String },
}

pub fn encode(model: &TargetModel) -> Result<Document, CodecError> {
    model.check()?;
    let text = match model.standard {
        Standard::Ead | Standard::Mods => xml::encode(model),
        Standard::DublinCore | Standard::Edm => turtle::encode(model),
        Standard::DigitalScriptorium => ds::encode(model),
    };
    Ok(Document::new(model.standard, text))
}

pub fn decode(document: &Document) -> Result<TargetModel, CodecError> {
    if document.media_kind != document.standard.media_kind() {
        return Err(CodecError::WrongStandard {
            expected: document.standard,
            reason: format!("{:?} content cannot hold this standard", document.media_kind),
        });
    }
    match document.standard {
        Standard::Ead | Standard::Mods => xml::decode(document.standard, &document.text),
        Standard::DublinCore | Standard::Edm => turtle::decode(document.standard, &document.text),
        Standard::DigitalScriptorium => ds::decode(&document.text),
    }
}
