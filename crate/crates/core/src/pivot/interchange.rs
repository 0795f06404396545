//! JSON interchange form of [`PivotRecord`].
//!
//! ```json
//! {
//!   "id": "NDIGDZS033452",
//!   "digital_counterpart": "https://example.org/scan/1",
//!   "assertions": [
//!     { "property": "Title", "value": "..." },
//!     { "property": "RelatedPerson", "value": "Artist: Oskar Mink" },
//!     { "property": "RelatedDate", "value": "24.01.1878", "qualifier": "Event" }
//!   ],
//!   "extensions": [ { "key": "ju:watermark", "value": "crowned eagle" } ]
//! }
//! ```
//!
//! A value may hold several `;`-separated cell values; each becomes its own
//! assertion. When `qualifier` is absent, a `Label: ` prefix on the value of a
//! related person/date/place is read as the qualifier. An explicit
//! `"qualifier": null` disables that reading.

use serde::{Deserialize, Deserializer, Serialize};

use super::validate::{validate_pivot, ViolationRule, CELL_SEPARATOR};
use super::{Extension, NormalizedValue, PivotProperty, PivotRecord, PropertyAssertion, Qualifier, Violation};

#[derive(Debug, thiserror::Error)]
pub enum PivotError {
    #[error("malformed pivot document: {0}")]
    MalformedDocument(String),
    #[error("schema violation: {0}")]
    SchemaViolation(SchemaError),
    #[error("empty value in assertion #{index} ({property})")]
    EmptyValue { index: usize, property: PivotProperty },
}

#[derive(Debug, thiserror::Error)]
pub enum SchemaError {
    #[error("unknown property `{0}`")]
    UnknownProperty(String),
    #[error("qualifier `{label}` is not allowed on {property}")]
    IllegalQualifier { property: PivotProperty, label: String },
    #[error("{}", join_violations(.0))]
    Invalid(Vec<Violation>),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

#[derive(Serialize, Deserialize)]
struct DocumentDto {
    id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    digital_counterpart: Option<String>,
    assertions: Vec<AssertionDto>,
    #[serde(default)]
    extensions: Vec<Extension>,
}

#[derive(Serialize, Deserialize)]
struct AssertionDto {
    property: String,
    value: String,
    #[serde(default, deserialize_with = "present", skip_serializing_if = "Option::is_none")]
    qualifier: Option<Option<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    normalized: Option<NormalizedValue>,
}

/// Distinguishes an explicit `null` from an absent key.
fn present<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Option<String>>, D::Error> {
    Option::<String>::deserialize(d).map(Some)
}

pub fn parse_pivot(document: &str) -> Result<PivotRecord, PivotError> {
    let dto: DocumentDto =
        serde_json::from_str(document).map_err(|e| PivotError::MalformedDocument(e.to_string()))?;

    let mut assertions = Vec::with_capacity(dto.assertions.len());
    for a in dto.assertions {
        let property: PivotProperty = a
            .property
            .parse()
            .map_err(|_| PivotError::SchemaViolation(SchemaError::UnknownProperty(a.property.clone())))?;

        let explicit = match &a.qualifier {
            Some(Some(label)) => {
                let q = Qualifier::from_label(property, label).ok_or_else(|| {
                    PivotError::SchemaViolation(SchemaError::IllegalQualifier { property, label: label.clone() })
                })?;
                Some(Some(q))
            }
            Some(None) => Some(None),
            None => None,
        };

        for piece in a.value.split(CELL_SEPARATOR) {
            let piece = piece.trim();
            if piece.is_empty() {
                return Err(PivotError::EmptyValue { index: assertions.len(), property });
            }
            let (qualifier, value) = match &explicit {
                Some(q) => (q.clone(), piece),
                None => match Qualifier::split_prefix(property, piece) {
                    Some((q, rest)) => (Some(q), rest),
                    None => (None, piece),
                },
            };
            if value.is_empty() {
                return Err(PivotError::EmptyValue { index: assertions.len(), property });
            }
            assertions.push(PropertyAssertion {
                property,
                value: value.to_string(),
                qualifier,
                normalized: a.normalized.clone(),
            });
        }
    }

    let record = PivotRecord {
        record_id: dto.id,
        assertions,
        digital_counterpart: dto.digital_counterpart,
        extensions: dto.extensions,
    };

    let violations = validate_pivot(&record);
    if let Some(empty) = violations.iter().find(|v| v.rule == ViolationRule::EmptyValue) {
        if let Some(index) = empty.assertion_index() {
            return Err(PivotError::EmptyValue { index, property: record.assertions[index].property });
        }
    }
    if !violations.is_empty() {
        return Err(PivotError::SchemaViolation(SchemaError::Invalid(violations)));
    }
    Ok(record)
}

/// Pretty-printed, newline-terminated interchange JSON.
pub fn serialize_pivot(record: &PivotRecord) -> String {
    let dto = DocumentDto {
        id: record.record_id.clone(),
        digital_counterpart: record.digital_counterpart.clone(),
        assertions: record
            .assertions
            .iter()
            .map(|a| AssertionDto {
                property: a.property.canonical_name().to_string(),
                value: a.value.clone(),
                qualifier: match &a.qualifier {
                    Some(q) => Some(Some(q.label().to_string())),
                    // pin the value so a colon in it is not read back as a prefix
                    None if Qualifier::split_prefix(a.property, &a.value).is_some() => Some(None),
                    None => None,
                },
                normalized: a.normalized.clone(),
            })
            .collect(),
        extensions: record.extensions.clone(),
    };
    let mut text = serde_json::to_string_pretty(&dto).expect("pivot DTO always serializes");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pivot::{AgentRole, DateKind};

    #[test]
    fn minimal_document() {
        let r = parse_pivot(
            r#"{"id":"Y","assertions":[{"property":"Title","value":"X"},{"property":"Identifier","value":"Y"}]}"#,
        )
        .unwrap();
        assert_eq!(r, PivotRecord::minimal("X", "Y"));
        assert!(r.assertions.iter().all(|a| a.qualifier.is_none()));
    }

    #[test]
    fn prefix_becomes_qualifier() {
        let r = parse_pivot(
            r#"{"id":"Y","assertions":[
                {"property":"Title","value":"X"},{"property":"Identifier","value":"Y"},
                {"property":"RelatedPerson","value":"Deceased: Chodźko, Alexander (1804-1891)"}]}"#,
        )
        .unwrap();
        assert_eq!(r.assertions[2].qualifier, Some(Qualifier::AgentRole(AgentRole::Deceased)));
        assert_eq!(r.assertions[2].value, "Chodźko, Alexander (1804-1891)");
    }

    #[test]
    fn explicit_qualifier_and_null() {
        let r = parse_pivot(
            r#"{"id":"Y","assertions":[
                {"property":"Title","value":"X"},{"property":"Identifier","value":"Y"},
                {"property":"RelatedDate","value":"19.12.1891","qualifier":"Date of death"},
                {"property":"RelatedPerson","value":"Sender: literally","qualifier":null}]}"#,
        )
        .unwrap();
        assert_eq!(r.assertions[2].qualifier, Some(Qualifier::DateKind(DateKind::DateOfDeath)));
        assert_eq!(r.assertions[3].qualifier, None);
        assert_eq!(r.assertions[3].value, "Sender: literally");
        assert_eq!(parse_pivot(&serialize_pivot(&r)).unwrap(), r);
    }

    #[test]
    fn cells_split_on_separator() {
        let r = parse_pivot(
            r#"{"id":"Y","assertions":[
                {"property":"Title","value":"X"},{"property":"Identifier","value":"Y"},
                {"property":"PhysicalExtent","value":"4 pages; 27 cm"}]}"#,
        )
        .unwrap();
        let values: Vec<_> = r.values_of(PivotProperty::PhysicalExtent).map(|a| a.value.as_str()).collect();
        assert_eq!(values, ["4 pages", "27 cm"]);
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_pivot("{"), Err(PivotError::MalformedDocument(_))));
        assert!(matches!(parse_pivot(r#"{"assertions":[]}"#), Err(PivotError::MalformedDocument(_))));
        assert!(matches!(
            parse_pivot(r#"{"id":"Y","assertions":[{"property":"Colour","value":"red"}]}"#),
            Err(PivotError::SchemaViolation(SchemaError::UnknownProperty(_)))
        ));
        assert!(matches!(
            parse_pivot(
                r#"{"id":"Y","assertions":[{"property":"Title","value":"X"},{"property":"Title","value":"Z"},{"property":"Identifier","value":"Y"}]}"#
            ),
            Err(PivotError::SchemaViolation(SchemaError::Invalid(_)))
        ));
        assert!(matches!(
            parse_pivot(
                r#"{"id":"Y","assertions":[{"property":"Title","value":"X","qualifier":"Sender"},{"property":"Identifier","value":"Y"}]}"#
            ),
            Err(PivotError::SchemaViolation(SchemaError::IllegalQualifier { .. }))
        ));
        assert!(matches!(
            parse_pivot(r#"{"id":"Y","assertions":[{"property":"Title","value":" "},{"property":"Identifier","value":"Y"}]}"#),
            Err(PivotError::EmptyValue { index: 0, .. })
        ));
        assert!(matches!(
            parse_pivot(r#"{"id":"Y","assertions":[{"property":"Title","value":"X"},{"property":"Identifier","value":"Y"},{"property":"Keywords","value":"a;"}]}"#),
            Err(PivotError::EmptyValue { index: 3, .. })
        ));
    }

    #[test]
    fn extension_round_trip() {
        let mut r = PivotRecord::minimal("X", "Y");
        r.extensions.push(Extension::new("ju:watermark", "crowned eagle"));
        r.digital_counterpart = Some("https://example.org/scan/1".into());
        let text = serialize_pivot(&r);
        assert!(text.ends_with('\n'));
        assert_eq!(parse_pivot(&text).unwrap(), r);
    }
}
