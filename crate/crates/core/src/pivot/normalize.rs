use std::collections::BTreeMap;

use super::{IsoDate, NormalizedValue, PivotProperty, PivotRecord};

/// Annotates creation and related dates written as `DD.MM.YYYY` or `YYYY`.
///
/// Other forms are left without annotation. Raw values are never modified.
pub fn normalize_dates(record: &PivotRecord) -> PivotRecord {
    let mut out = record.clone();
    for a in &mut out.assertions {
        if matches!(a.property, PivotProperty::CreationDate | PivotProperty::RelatedDate) {
            if let Some(date) = parse_catalog_date(&a.value) {
                a.normalized = Some(NormalizedValue::IsoDate(date));
            }
        }
    }
    out
}

/// Reads `DD.MM.YYYY` or `YYYY`; anything else, including impossible
/// calendar days, yields `None`.
pub fn parse_catalog_date(raw: &str) -> Option<IsoDate> {
    let digits = |s: &str, n: usize| s.len() == n && s.bytes().all(|b| b.is_ascii_digit());
    match raw.split('.').collect::<Vec<_>>().as_slice() {
        [year] if digits(year, 4) => IsoDate::new(year.parse().ok()?, None, None),
        [day, month, year] if digits(day, 2) && digits(month, 2) && digits(year, 4) => {
            IsoDate::new(year.parse().ok()?, Some(month.parse().ok()?), Some(day.parse().ok()?))
        }
        _ => None,
    }
}

/// Language-name to ISO 639-1 lookup, case-insensitive on the name.
#[derive(Debug, Clone)]
pub struct LanguageLookup {
    codes: BTreeMap<String, String>,
}

impl Default for LanguageLookup {
    fn default() -> Self {
        LanguageLookup::empty()
            .with("German", "de")
            .with("Polish", "pl")
            .with("French", "fr")
    }
}

impl LanguageLookup {
    pub fn empty() -> Self {
        LanguageLookup { codes: BTreeMap::new() }
    }

    pub fn with(mut self, name: &str, code: &str) -> Self {
        self.codes.insert(name.to_lowercase(), code.to_string());
        self
    }

    pub fn code(&self, name: &str) -> Option<&str> {
        self.codes.get(&name.trim().to_lowercase()).map(String::as_str)
    }
}

/// Annotates Language assertions whose label is known to `lookup`.
/// Unknown labels pass through unannotated.
pub fn normalize_languages(record: &PivotRecord, lookup: &LanguageLookup) -> PivotRecord {
    let mut out = record.clone();
    for a in &mut out.assertions {
        if a.property == PivotProperty::Language {
            if let Some(code) = lookup.code(&a.value) {
                a.normalized = Some(NormalizedValue::LanguageCode(code.to_string()));
            }
        }
    }
    out
}

/// Dates and languages with the default lookup.
pub fn normalize(record: &PivotRecord) -> PivotRecord {
    normalize_languages(&normalize_dates(record), &LanguageLookup::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pivot::PropertyAssertion;

    fn date_record(raw: &str) -> PivotRecord {
        let mut r = PivotRecord::minimal("X", "Y");
        r.assertions.push(PropertyAssertion::new(PivotProperty::CreationDate, raw));
        r
    }

    fn normalized_of(raw: &str) -> Option<NormalizedValue> {
        normalize_dates(&date_record(raw)).assertions[2].normalized.clone()
    }

    #[test]
    fn catalog_date_forms() {
        assert_eq!(
            normalized_of("28.12.1852"),
            Some(NormalizedValue::IsoDate(IsoDate::new(1852, Some(12), Some(28)).unwrap()))
        );
        assert_eq!(
            normalized_of("1878"),
            Some(NormalizedValue::IsoDate(IsoDate::new(1878, None, None).unwrap()))
        );
        assert_eq!(normalized_of("circa 1850"), None);
        assert_eq!(normalized_of("31.02.1850"), None);
        assert_eq!(normalized_of("1.2.1850"), None);
    }

    #[test]
    fn raw_value_untouched_and_idempotent() {
        let r = date_record("19.12.1891");
        let once = normalize_dates(&r);
        assert_eq!(once.assertions[2].value, "19.12.1891");
        assert_eq!(normalize_dates(&once), once);
    }

    #[test]
    fn only_date_properties() {
        let mut r = PivotRecord::minimal("1878", "1878");
        r.record_id = "1878".into();
        let out = normalize_dates(&r);
        assert!(out.assertions.iter().all(|a| a.normalized.is_none()));
    }

    #[test]
    fn languages() {
        let mut r = PivotRecord::minimal("X", "Y");
        r.assertions.push(PropertyAssertion::new(PivotProperty::Language, "German"));
        r.assertions.push(PropertyAssertion::new(PivotProperty::Language, "Latin"));
        let out = normalize_languages(&r, &LanguageLookup::default());
        assert_eq!(out.assertions[2].normalized, Some(NormalizedValue::LanguageCode("de".into())));
        assert_eq!(out.assertions[3].normalized, None);

        let out = normalize_languages(&r, &LanguageLookup::default().with("latin", "la"));
        assert_eq!(out.assertions[3].normalized, Some(NormalizedValue::LanguageCode("la".into())));
    }
}
