use std::fmt;

use serde::{Deserialize, Serialize};

use super::{PivotProperty, Qualifier};

/// A calendar date of year, year-month or year-month-day precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct IsoDate {
    year: u16,
    month: Option<u8>,
    day: Option<u8>,
}

impl IsoDate {
    /// Returns `None` unless the components name a real calendar day
    /// (or month, or year in `1..=9999`).
    pub fn new(year: u16, month: Option<u8>, day: Option<u8>) -> Option<Self> {
        if !(1..=9999).contains(&year) {
            return None;
        }
        match (month, day) {
            (None, None) => {}
            (Some(m), None) if (1..=12).contains(&m) => {}
            (Some(m), Some(d)) => {
                chrono::NaiveDate::from_ymd_opt(year.into(), m.into(), d.into())?;
            }
            _ => return None,
        }
        Some(IsoDate { year, month, day })
    }

    pub fn year(&self) -> u16 {
        self.year
    }

    pub fn month(&self) -> Option<u8> {
        self.month
    }

    pub fn day(&self) -> Option<u8> {
        self.day
    }

    pub fn parse(text: &str) -> Option<Self> {
        let mut parts = text.split('-');
        let year = parts.next().filter(|y| y.len() == 4)?;
        let month = parts.next();
        let day = parts.next();
        if parts.next().is_some() {
            return None;
        }
        let num = |s: &str, len: usize| -> Option<u16> {
            (s.len() == len && s.bytes().all(|b| b.is_ascii_digit())).then(|| s.parse().ok()).flatten()
        };
        let year = num(year, 4)?;
        let month = match month {
            Some(m) => Some(num(m, 2)? as u8),
            None => None,
        };
        let day = match day {
            Some(d) => Some(num(d, 2)? as u8),
            None => None,
        };
        IsoDate::new(year, month, day)
    }
}

impl fmt::Display for IsoDate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:04}", self.year)?;
        if let Some(m) = self.month {
            write!(f, "-{m:02}")?;
        }
        if let Some(d) = self.day {
            write!(f, "-{d:02}")?;
        }
        Ok(())
    }
}

impl From<IsoDate> for String {
    fn from(d: IsoDate) -> String {
        d.to_string()
    }
}

impl TryFrom<String> for IsoDate {
    type Error = String;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        IsoDate::parse(&s).ok_or_else(|| format!("invalid ISO date `{s}`"))
    }
}

/// Machine-readable reading of a raw value. The raw value stays authoritative.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormalizedValue {
    IsoDate(IsoDate),
    /// ISO 639-1 code.
    LanguageCode(String),
    /// Marks an author as a corporate body rather than a person.
    CorporateBody,
}

/// A single statement about a record.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PropertyAssertion {
    pub property: PivotProperty,
    pub value: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub qualifier: Option<Qualifier>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normalized: Option<NormalizedValue>,
}

impl PropertyAssertion {
    pub fn new(property: PivotProperty, value: impl Into<String>) -> Self {
        PropertyAssertion {
            property,
            value: value.into(),
            qualifier: None,
            normalized: None,
        }
    }

    pub fn qualified(property: PivotProperty, qualifier: Qualifier, value: impl Into<String>) -> Self {
        PropertyAssertion {
            qualifier: Some(qualifier),
            ..PropertyAssertion::new(property, value)
        }
    }

    pub fn with_normalized(mut self, normalized: NormalizedValue) -> Self {
        self.normalized = Some(normalized);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Extension {
    pub key: String,
    pub value: String,
}

impl Extension {
    pub fn new(key: impl Into<String>, value: impl Into<String>) -> Self {
        Extension {
            key: key.into(),
            value: value.into(),
        }
    }
}

/// One cultural-heritage object described in the pivot schema.
///
/// `digital_counterpart` points at the digitization of the object. It is kept
/// apart from [`PivotProperty::ExternalLink`] assertions, which relate the
/// physical object to other resources.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PivotRecord {
    pub record_id: String,
    pub assertions: Vec<PropertyAssertion>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub digital_counterpart: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub extensions: Vec<Extension>,
}

impl PivotRecord {
    /// A record holding only its title and identifier.
    pub fn minimal(title: impl Into<String>, identifier: impl Into<String>) -> Self {
        let identifier = identifier.into();
        PivotRecord {
            record_id: identifier.clone(),
            assertions: vec![
                PropertyAssertion::new(PivotProperty::Title, title),
                PropertyAssertion::new(PivotProperty::Identifier, identifier),
            ],
            digital_counterpart: None,
            extensions: Vec::new(),
        }
    }

    pub fn values_of(&self, property: PivotProperty) -> impl Iterator<Item = &PropertyAssertion> {
        self.assertions.iter().filter(move |a| a.property == property)
    }

    pub fn first_value(&self, property: PivotProperty) -> Option<&str> {
        self.values_of(property).next().map(|a| a.value.as_str())
    }
}
