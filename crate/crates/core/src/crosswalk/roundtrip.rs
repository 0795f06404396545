use serde::Serialize;

use super::backward::{map_backward, Ambiguity};
use super::forward::{map_forward_with, CrosswalkError, ForwardOptions};
use super::{CrosswalkTable, LossReport, MappingKind, Standard};
use crate::codec::{decode, encode, CodecError, Document};
use crate::pivot::{PivotProperty, PivotRecord};

/// Properties expected to survive pivot → `standard` → pivot unchanged:
/// an Exact rule read back, on a path no other rule of the standard emits.
pub fn exact_round_trip_properties(table: &CrosswalkTable, standard: Standard) -> Vec<PivotProperty> {
    let rules: Vec<_> = table.rules_for(standard).collect();
    rules
        .iter()
        .filter_map(|r| match &r.kind {
            MappingKind::Exact(path) if !r.forward_only => {
                let shared = rules.iter().any(|o| o.property != r.property && o.kind.paths().contains(&path));
                (!shared).then_some(r.property)
            }
            _ => None,
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FieldDiff {
    pub property: PivotProperty,
    pub expected: Vec<String>,
    pub actual: Vec<String>,
}

/// Per-property differences in value lists, order included. Qualifiers are
/// not compared: only EAD has somewhere to put them.
pub fn field_diff(original: &PivotRecord, recovered: &PivotRecord, properties: &[PivotProperty]) -> Vec<FieldDiff> {
    let values = |r: &PivotRecord, p| r.values_of(p).map(|a| a.value.clone()).collect::<Vec<_>>();
    properties
        .iter()
        .filter_map(|&property| {
            let expected = values(original, property);
            let actual = values(recovered, property);
            (expected != actual).then_some(FieldDiff { property, expected, actual })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RoundTripError {
    #[error(transparent)]
    Crosswalk(#[from] CrosswalkError),
    #[error(transparent)]
    Codec(#[from] CodecError),
}

#[derive(Debug, Clone)]
pub struct RoundTrip {
    pub document: Document,
    pub report: LossReport,
    pub recovered: PivotRecord,
    pub ambiguities: Vec<Ambiguity>,
    pub checked: Vec<PivotProperty>,
    pub diff: Vec<FieldDiff>,
}

/// Pivot → wire document → pivot, compared on the exact round-trip subset.
pub fn round_trip(
    record: &PivotRecord,
    standard: Standard,
    table: &CrosswalkTable,
    options: &ForwardOptions,
) -> Result<RoundTrip, RoundTripError> {
    let (model, report) = map_forward_with(record, standard, table, options)?;
    let document = encode(&model)?;
    let decoded = decode(&document)?;
    let (recovered, ambiguities) = map_backward(&decoded, standard, table);
    let checked = exact_round_trip_properties(table, standard);
    let diff = field_diff(record, &recovered, &checked);
    Ok(RoundTrip { document, report, recovered, ambiguities, checked, diff })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crosswalk::builtin_table;

    #[test]
    fn shared_paths_are_excluded() {
        let t = builtin_table();
        let ead = exact_round_trip_properties(&t, Standard::Ead);
        assert!(ead.contains(&PivotProperty::Title));
        assert!(!ead.contains(&PivotProperty::RelatedPerson));
        assert!(!ead.contains(&PivotProperty::PlaceOfOrigin));
        assert!(ead.contains(&PivotProperty::MaterialInformation));
        let dc = exact_round_trip_properties(&t, Standard::DublinCore);
        assert!(!dc.contains(&PivotProperty::Author));
        let mods = exact_round_trip_properties(&t, Standard::Mods);
        assert!(!mods.contains(&PivotProperty::PlaceOfOrigin));
        assert!(mods.contains(&PivotProperty::AlternativeTitle));
    }

    #[test]
    fn minimal_record_round_trips_through_mods() {
        let r = PivotRecord::minimal("T", "I");
        let rt = round_trip(&r, Standard::Mods, &builtin_table(), &ForwardOptions::default()).unwrap();
        assert!(rt.diff.is_empty());
        assert_eq!(rt.recovered, r);
    }
}
