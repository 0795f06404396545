use std::fmt;

use serde::{Deserialize, Serialize};

use super::{DateKind, NormalizedValue, PivotProperty, PivotRecord, PlaceKind, Qualifier};
use crate::codec::is_absolute_iri;

/// Separator between values inside one catalog cell.
pub const CELL_SEPARATOR: char = ';';

/// The record invariant a [`Violation`] breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ViolationRule {
    /// Exactly one Title assertion per record.
    TitleCardinality,
    /// Exactly one Identifier assertion per record.
    IdentifierCardinality,
    /// The record id mirrors the Identifier value.
    RecordIdMismatch,
    /// Qualifiers only on related person/date/place, with the matching kind.
    QualifierPlacement,
    /// `Other` qualifier labels are non-empty and not a closed label.
    OpenQualifierLabel,
    EmptyValue,
    /// Values are trimmed and hold a single cell value.
    ValueForm,
    /// Normalized data only on properties that have a normal form.
    NormalizedPlacement,
    /// Normalized data agrees with the raw value.
    NormalizedMismatch,
    DigitalCounterpartUrl,
    /// Extension keys are `prefix:local`.
    ExtensionKey,
}

impl ViolationRule {
    pub fn describe(self) -> &'static str {
        match self {
            ViolationRule::TitleCardinality => "a record has exactly one Title",
            ViolationRule::IdentifierCardinality => "a record has exactly one Identifier",
            ViolationRule::RecordIdMismatch => "record id must equal the Identifier value",
            ViolationRule::QualifierPlacement => {
                "qualifiers are allowed only on RelatedPerson, RelatedDate and RelatedPlace, with the matching kind"
            }
            ViolationRule::OpenQualifierLabel => "open qualifier labels must be non-empty and not shadow a closed label",
            ViolationRule::EmptyValue => "values must not be empty",
            ViolationRule::ValueForm => "values must be trimmed and must not contain the ';' cell separator",
            ViolationRule::NormalizedPlacement => "normalized data does not fit this property",
            ViolationRule::NormalizedMismatch => "normalized data contradicts the raw value",
            ViolationRule::DigitalCounterpartUrl => "digital counterpart must be an absolute URL",
            ViolationRule::ExtensionKey => "extension keys must be namespace-qualified (prefix:name)",
        }
    }
}

impl fmt::Display for ViolationRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.describe())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Location {
    Record,
    Assertion(usize),
    Extension(usize),
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Record => f.write_str("record"),
            Location::Assertion(i) => write!(f, "assertion #{i}"),
            Location::Extension(i) => write!(f, "extension #{i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub location: Location,
    pub rule: ViolationRule,
}

impl Violation {
    pub fn assertion_index(&self) -> Option<usize> {
        match self.location {
            Location::Assertion(i) => Some(i),
            _ => None,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.rule)
    }
}

/// Checks every record invariant. An empty result means the record is valid.
pub fn validate_pivot(record: &PivotRecord) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut push = |location, rule| out.push(Violation { location, rule });

    for (property, rule) in [
        (PivotProperty::Title, ViolationRule::TitleCardinality),
        (PivotProperty::Identifier, ViolationRule::IdentifierCardinality),
    ] {
        let positions: Vec<usize> = record
            .assertions
            .iter()
            .enumerate()
            .filter(|(_, a)| a.property == property)
            .map(|(i, _)| i)
            .collect();
        match positions.as_slice() {
            [] => push(Location::Record, rule),
            [_] => {}
            [_, second, ..] => push(Location::Assertion(*second), rule),
        }
    }

    if let Some(id) = record.first_value(PivotProperty::Identifier) {
        if id != record.record_id {
            push(Location::Record, ViolationRule::RecordIdMismatch);
        }
    }

    for (i, a) in record.assertions.iter().enumerate() {
        let at = Location::Assertion(i);
        if a.value.trim().is_empty() {
            push(at, ViolationRule::EmptyValue);
        } else if a.value.trim() != a.value || a.value.contains(CELL_SEPARATOR) {
            push(at, ViolationRule::ValueForm);
        }

        if let Some(q) = &a.qualifier {
            if q.property() != a.property {
                push(at, ViolationRule::QualifierPlacement);
            } else if !open_label_ok(q) {
                push(at, ViolationRule::OpenQualifierLabel);
            }
        }

        if let Some(n) = &a.normalized {
            let placed = matches!(
                (n, a.property),
                (NormalizedValue::IsoDate(_), PivotProperty::CreationDate | PivotProperty::RelatedDate)
                    | (NormalizedValue::LanguageCode(_), PivotProperty::Language)
                    | (NormalizedValue::CorporateBody, PivotProperty::Author)
            );
            if !placed {
                push(at, ViolationRule::NormalizedPlacement);
            } else if !normalized_agrees(n, &a.value) {
                push(at, ViolationRule::NormalizedMismatch);
            }
        }
    }

    if let Some(url) = &record.digital_counterpart {
        if !is_absolute_iri(url) {
            push(Location::Record, ViolationRule::DigitalCounterpartUrl);
        }
    }

    for (i, ext) in record.extensions.iter().enumerate() {
        if !is_qualified_key(&ext.key) {
            push(Location::Extension(i), ViolationRule::ExtensionKey);
        }
        if ext.value.is_empty() {
            push(Location::Extension(i), ViolationRule::EmptyValue);
        }
    }

    out
}

fn open_label_ok(q: &Qualifier) -> bool {
    let label = match q {
        Qualifier::DateKind(DateKind::Other(l)) => l,
        Qualifier::PlaceKind(PlaceKind::Other(l)) => l,
        _ => return true,
    };
    let shadows = DateKind::CLOSED.iter().any(|k| k.label() == label)
        || PlaceKind::CLOSED.iter().any(|k| k.label() == label);
    !label.is_empty() && label.trim() == label && !shadows
}

fn normalized_agrees(n: &NormalizedValue, raw: &str) -> bool {
    match n {
        NormalizedValue::IsoDate(d) => raw.contains(&format!("{:04}", d.year())),
        NormalizedValue::LanguageCode(code) => code.len() == 2 && code.bytes().all(|b| b.is_ascii_lowercase()),
        NormalizedValue::CorporateBody => true,
    }
}

/// `prefix:local` with both sides non-empty and no whitespace in the prefix.
pub fn is_qualified_key(key: &str) -> bool {
    match key.split_once(':') {
        Some((prefix, local)) => {
            !prefix.is_empty() && !local.is_empty() && !prefix.chars().any(char::is_whitespace)
        }
        None => false,
    }
}
