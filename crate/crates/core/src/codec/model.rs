use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::{is_absolute_iri, CodecError};
use crate::crosswalk::{builtin_table, ElementPath, Standard};

/// First path segment of content a decoder did not recognise.
pub const UNKNOWN: &str = "unknown";

/// EAD annotation that places a name or place inside `<origination>`.
pub const CONTEXT_ANNOTATION: &str = "context";
pub const ORIGINATION: &str = "origination";

/// EDM link from the provided object to its digitization.
pub const IS_SHOWN_BY: &str = "edm:isShownBy";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MediaKind {
    Xml,
    Turtle,
    Json,
}

impl MediaKind {
    pub fn extension(self) -> &'static str {
        match self {
            MediaKind::Xml => "xml",
            MediaKind::Turtle => "ttl",
            MediaKind::Json => "json",
        }
    }
}

/// A serialized record in one standard's wire format.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub standard: Standard,
    pub media_kind: MediaKind,
    pub text: String,
}

impl Document {
    pub fn new(standard: Standard, text: impl Into<String>) -> Self {
        Document { standard, media_kind: standard.media_kind(), text: text.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetNode {
    pub path: ElementPath,
    pub value: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub annotations: Vec<(String, String)>,
}

impl TargetNode {
    pub fn new(path: ElementPath, value: impl Into<String>) -> Self {
        TargetNode { path, value: value.into(), annotations: Vec::new() }
    }

    pub fn annotated(mut self, name: &str, value: &str) -> Self {
        self.annotations.push((name.to_string(), value.to_string()));
        self
    }

    pub fn annotation(&self, name: &str) -> Option<&str> {
        self.annotations.iter().find(|(n, _)| n == name).map(|(_, v)| v.as_str())
    }

    pub fn is_unknown(&self) -> bool {
        self.path.path.first().map(String::as_str) == Some(UNKNOWN)
    }
}

/// Standard-specific tree between the crosswalk and a wire format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetModel {
    pub standard: Standard,
    pub record_uri: String,
    pub nodes: Vec<TargetNode>,
}

impl TargetModel {
    pub fn new(standard: Standard, record_uri: impl Into<String>) -> Self {
        TargetModel { standard, record_uri: record_uri.into(), nodes: Vec::new() }
    }

    pub fn push(&mut self, node: TargetNode) {
        self.nodes.push(node);
    }

    pub fn values_at<'a>(&'a self, path: &'a [&'a str]) -> impl Iterator<Item = &'a str> + 'a {
        self.nodes
            .iter()
            .filter(move |n| n.path.path.iter().map(String::as_str).eq(path.iter().copied()))
            .map(|n| n.value.as_str())
    }

    /// Checks that the model can be encoded: known paths, non-blank values,
    /// legal annotations (a context annotation first), and for Digital
    /// Scriptorium same-field nodes kept together. A Dublin Core model needs
    /// one node: without a triple the record URI has nowhere to go.
    pub fn check(&self) -> Result<(), CodecError> {
        if !is_absolute_iri(&self.record_uri) {
            return Err(CodecError::InvalidUri(self.record_uri.clone()));
        }
        if self.standard == Standard::DublinCore && self.nodes.is_empty() {
            return Err(CodecError::InvalidValue("Dublin Core model without statements".into()));
        }
        let vocab = vocabulary(self.standard);
        for node in &self.nodes {
            if node.path.standard != self.standard || !vocab.contains(&node.path) {
                return Err(CodecError::InvalidPath(node.path.render()));
            }
            if node.value.trim().is_empty() {
                return Err(CodecError::InvalidValue(format!("blank value at {}", node.path)));
            }
            check_annotations(self.standard, node)?;
            match self.standard.media_kind() {
                MediaKind::Xml if node.value.chars().any(|c| !is_xml_char(c)) => {
                    return Err(CodecError::InvalidValue(format!("character not allowed in XML at {}", node.path)));
                }
                MediaKind::Turtle if node.path.leaf() == IS_SHOWN_BY && !is_absolute_iri(&node.value) => {
                    return Err(CodecError::InvalidUri(node.value.clone()));
                }
                _ => {}
            }
        }
        if self.standard == Standard::DigitalScriptorium {
            for (i, node) in self.nodes.iter().enumerate() {
                let seen_before = self.nodes[..i].iter().any(|n| n.path == node.path);
                if seen_before && self.nodes[i - 1].path != node.path {
                    return Err(CodecError::UngroupedField(node.path.render()));
                }
            }
        }
        Ok(())
    }
}

fn check_annotations(standard: Standard, node: &TargetNode) -> Result<(), CodecError> {
    let bad = |why: &str| Err(CodecError::InvalidAnnotation(format!("{} at {}", why, node.path)));
    if node.annotations.is_empty() {
        return Ok(());
    }
    if standard.media_kind() != MediaKind::Xml {
        return bad("annotations are not representable");
    }
    for (i, (name, value)) in node.annotations.iter().enumerate() {
        if !is_attribute_name(name) {
            return bad("not an attribute name");
        }
        if node.annotations[..i].iter().any(|(n, _)| n == name) {
            return bad("repeated annotation");
        }
        let reserved = vocabulary(standard)
            .iter()
            .any(|p| p.path == node.path.path && p.attributes.iter().any(|(n, _)| n == name));
        if reserved {
            return bad("annotation name is a path attribute");
        }
        if value.chars().any(|c| !is_xml_char(c)) {
            return bad("character not allowed in XML");
        }
        if name == CONTEXT_ANNOTATION {
            let placeable = standard == Standard::Ead
                && node.path.path.len() == 1
                && matches!(node.path.leaf(), "persname" | "corpname" | "geogname");
            if !placeable || value != ORIGINATION || i != 0 {
                return bad("unsupported context");
            }
        }
    }
    Ok(())
}

pub(crate) fn is_attribute_name(name: &str) -> bool {
    let mut chars = name.chars();
    let first_ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_');
    first_ok
        && chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.'))
        && !name.to_ascii_lowercase().starts_with("xml")
}

pub(crate) fn is_xml_char(c: char) -> bool {
    matches!(c, '\t' | '\n' | '\r' | '\u{20}'..='\u{D7FF}' | '\u{E000}'..='\u{FFFD}' | '\u{10000}'..='\u{10FFFF}')
}

/// Every path a standard's codec can write: the crosswalk targets plus the
/// EDM digitization link.
pub fn vocabulary(standard: Standard) -> &'static [ElementPath] {
    static VOCAB: OnceLock<Vec<Vec<ElementPath>>> = OnceLock::new();
    let all = VOCAB.get_or_init(|| {
        let table = builtin_table();
        Standard::ALL
            .into_iter()
            .map(|s| {
                let mut paths: Vec<ElementPath> = Vec::new();
                for rule in table.rules_for(s) {
                    for p in rule.kind.paths() {
                        if !paths.contains(p) {
                            paths.push(p.clone());
                        }
                    }
                }
                if s == Standard::Edm {
                    paths.push(ElementPath::new(Standard::Edm, &[IS_SHOWN_BY]));
                }
                paths
            })
            .collect()
    });
    &all[standard.index()]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(standard: Standard, nodes: Vec<TargetNode>) -> TargetModel {
        TargetModel { standard, record_uri: "https://example.org/ch/x".into(), nodes }
    }

    #[test]
    fn vocabulary_sizes() {
        assert_eq!(vocabulary(Standard::DigitalScriptorium).len(), 11);
        assert!(vocabulary(Standard::Edm).contains(&ElementPath::new(Standard::Edm, &["edm:type"])));
        assert!(vocabulary(Standard::Edm).contains(&ElementPath::new(Standard::Edm, &[IS_SHOWN_BY])));
    }

    #[test]
    fn rejects_unknown_and_foreign_paths() {
        let m = model(Standard::Ead, vec![TargetNode::new(ElementPath::new(Standard::Ead, &["unknown", "foo"]), "x")]);
        assert!(matches!(m.check(), Err(CodecError::InvalidPath(_))));
        let m = model(Standard::Ead, vec![TargetNode::new(ElementPath::new(Standard::Mods, &["titleInfo"]), "x")]);
        assert!(matches!(m.check(), Err(CodecError::InvalidPath(_))));
    }

    #[test]
    fn ds_fields_must_be_grouped() {
        let kw = ElementPath::new(Standard::DigitalScriptorium, &["Keyword(s)"]);
        let title = ElementPath::new(Standard::DigitalScriptorium, &["Title"]);
        let ok = model(Standard::DigitalScriptorium, vec![
            TargetNode::new(kw.clone(), "a"),
            TargetNode::new(kw.clone(), "b"),
            TargetNode::new(title.clone(), "t"),
        ]);
        assert!(ok.check().is_ok());
        let bad = model(Standard::DigitalScriptorium, vec![
            TargetNode::new(kw.clone(), "a"),
            TargetNode::new(title, "t"),
            TargetNode::new(kw, "b"),
        ]);
        assert!(matches!(bad.check(), Err(CodecError::UngroupedField(_))));
    }

    #[test]
    fn annotation_rules() {
        let persname = ElementPath::new(Standard::Ead, &["persname"]);
        let ok = model(Standard::Ead, vec![TargetNode::new(persname.clone(), "x")
            .annotated(CONTEXT_ANNOTATION, ORIGINATION)
            .annotated("role", "Sender")]);
        assert!(ok.check().is_ok());
        let bad = model(Standard::Ead, vec![TargetNode::new(persname, "x").annotated(CONTEXT_ANNOTATION, "did")]);
        assert!(bad.check().is_err());
        let title = ElementPath::new(Standard::Mods, &["titleInfo"]);
        let shadow = model(Standard::Mods, vec![TargetNode::new(title, "x").annotated("type", "alternative")]);
        assert!(matches!(shadow.check(), Err(CodecError::InvalidAnnotation(_))));
        let rdf = model(Standard::Edm, vec![TargetNode::new(ElementPath::new(Standard::Edm, &["dc:title"]), "x")
            .annotated("lang", "de")]);
        assert!(matches!(rdf.check(), Err(CodecError::InvalidAnnotation(_))));
    }
}
