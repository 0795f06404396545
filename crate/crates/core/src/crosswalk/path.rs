use std::fmt;

use serde::{Deserialize, Serialize};

use super::Standard;

/// Where a value lives in a target standard.
///
/// XML standards use element names (`["physdesc", "extent"]`), the RDF
/// standards use prefixed predicate names (`["dcterms:created"]`) and Digital
/// Scriptorium uses display field names (`["Holding Institution"]`).
/// Attributes identify a variant of an element, e.g. `type="alternative"` on
/// a MODS `titleInfo`; they sit on the outermost element of the path.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ElementPath {
    pub standard: Standard,
    pub path: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub attributes: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PathError {
    #[error("element path is empty")]
    Empty,
    #[error("attribute `{0}` repeated")]
    DuplicateAttribute(String),
}

impl ElementPath {
    /// Panics on an invalid path; for paths written in source.
    pub fn new(standard: Standard, segments: &[&str]) -> Self {
        Self::try_new(standard, segments.iter().map(|s| s.to_string()).collect(), Vec::new())
            .expect("static element path is valid")
    }

    pub fn try_new(
        standard: Standard,
        path: Vec<String>,
        attributes: Vec<(String, String)>,
    ) -> Result<Self, PathError> {
        if path.is_empty() || path.iter().any(String::is_empty) {
            return Err(PathError::Empty);
        }
        for (i, (name, _)) in attributes.iter().enumerate() {
            if attributes[..i].iter().any(|(n, _)| n == name) {
                return Err(PathError::DuplicateAttribute(name.clone()));
            }
        }
        Ok(ElementPath { standard, path, attributes })
    }

    pub fn with_attribute(mut self, name: &str, value: &str) -> Self {
        assert!(
            self.attributes.iter().all(|(n, _)| n != name),
            "attribute `{name}` repeated"
        );
        self.attributes.push((name.to_string(), value.to_string()));
        self
    }

    pub fn leaf(&self) -> &str {
        self.path.last().expect("non-empty path")
    }

    /// Segments joined by `/`, without attributes. Used in extension keys.
    pub fn joined(&self) -> String {
        self.path.join("/")
    }

    /// Crosswalk-cell notation: `<physdesc><extent></physdesc>` for XML,
    /// the bare term or field name otherwise.
    pub fn render(&self) -> String {
        if self.standard.media_kind() != crate::codec::MediaKind::Xml {
            return self.path.join("/");
        }
        let mut out = String::new();
        for (i, name) in self.path.iter().enumerate() {
            out.push('<');
            out.push_str(name);
            if i == 0 {
                for (k, v) in &self.attributes {
                    out.push_str(&format!(" {k}=\"{v}\""));
                }
            }
            out.push('>');
        }
        if self.path.len() > 1 {
            out.push_str(&format!("</{}>", self.path[0]));
        }
        out
    }
}

impl fmt::Display for ElementPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
