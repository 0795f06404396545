use serde::{Deserialize, Serialize};

use super::forward::{EDM_TYPE, ROLE_ANNOTATION};
use super::{CrosswalkTable, ElementPath, MappingKind, Resolver, Standard};
use crate::codec::{TargetModel, TargetNode, CONTEXT_ANNOTATION, IS_SHOWN_BY, ORIGINATION};
use crate::pivot::{
    Extension, IsoDate, NormalizedValue, PivotProperty, PivotRecord, PropertyAssertion, Qualifier, CELL_SEPARATOR,
};

/// A node that more than one property could claim, or whose reading needed
/// a guess.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ambiguity {
    pub node_index: usize,
    pub path: ElementPath,
    pub chosen: PivotProperty,
    pub alternatives: Vec<PivotProperty>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Reads a target model back into a pivot record.
///
/// Each node goes to the highest-priority property whose rule can emit its
/// path (declaration order of [`PivotProperty`]); in EAD, names and places
/// inside `<origination>` go to Author and PlaceOfOrigin, all others to the
/// related-entity properties. Rules marked forward-only are skipped. Nodes no
/// rule claims become extensions keyed `x-<standard>:<path>`, with the
/// `unknown` marker of undecoded content removed.
pub fn map_backward(model: &TargetModel, standard: Standard, table: &CrosswalkTable) -> (PivotRecord, Vec<Ambiguity>) {
    let claims = claims(table, standard);
    let prefix = standard.extension_prefix();
    let mut record = PivotRecord::default();
    let mut ambiguities = Vec::new();

    for (node_index, node) in model.nodes.iter().enumerate() {
        let leaf = node.path.path.as_slice();
        let extension = |key_path: &[String]| Extension::new(format!("{prefix}{}", key_path.join("/")), node.value.clone());
        if node.is_unknown() {
            record.extensions.push(extension(&leaf[1..]));
            continue;
        }
        if standard == Standard::Edm && node.path.path == [IS_SHOWN_BY] && record.digital_counterpart.is_none() {
            record.digital_counterpart = Some(node.value.clone());
            continue;
        }
        let candidates: Vec<(PivotProperty, &MappingKind)> = if is_derived(&node.path) {
            Vec::new()
        } else {
            claims.iter().filter(|(_, _, p)| **p == node.path).map(|(prop, kind, _)| (*prop, *kind)).collect()
        };
        let Some(&(first, _)) = candidates.first() else {
            record.extensions.push(extension(leaf));
            continue;
        };

        let chosen = if standard == Standard::Ead {
            let in_origination = node.annotation(CONTEXT_ANNOTATION) == Some(ORIGINATION);
            let preferred: &[PivotProperty] = if in_origination {
                &[PivotProperty::Author, PivotProperty::PlaceOfOrigin]
            } else {
                &[PivotProperty::RelatedPerson, PivotProperty::RelatedPlace]
            };
            candidates.iter().map(|(p, _)| *p).find(|p| preferred.contains(p)).unwrap_or(first)
        } else {
            first
        };
        let kind = candidates.iter().find(|(p, _)| *p == chosen).map(|(_, k)| *k).expect("chosen is a candidate");
        let mut notes: Vec<String> = Vec::new();

        let qualifier = match node.annotation(ROLE_ANNOTATION) {
            Some(label) if standard == Standard::Ead => {
                let q = Qualifier::from_label(chosen, label);
                if q.is_none() {
                    notes.push(format!("role `{label}` not recognised for {chosen}"));
                }
                q
            }
            _ => match kind {
                MappingKind::Alternative { resolver: Resolver::ByQualifier(roles), .. } => {
                    roles.sole_qualifier_for(&node.path).cloned()
                }
                _ => None,
            },
        };
        let normalized = normalized_from(node, chosen);

        let mut emitted = 0;
        for value in node.value.split(CELL_SEPARATOR).map(str::trim).filter(|v| !v.is_empty()) {
            record.assertions.push(PropertyAssertion {
                property: chosen,
                value: value.to_string(),
                qualifier: qualifier.clone(),
                normalized: normalized.clone().filter(|n| fits(n, value)),
            });
            emitted += 1;
        }
        if emitted > 1 {
            notes.push(format!("value split into {emitted} assertions"));
        }

        let alternatives: Vec<PivotProperty> = candidates.iter().map(|(p, _)| *p).filter(|p| *p != chosen).collect();
        if !alternatives.is_empty() || !notes.is_empty() {
            ambiguities.push(Ambiguity {
                node_index,
                path: node.path.clone(),
                chosen,
                alternatives,
                note: (!notes.is_empty()).then(|| notes.join("; ")),
            });
        }
    }

    record.record_id = record
        .first_value(PivotProperty::Identifier)
        .map_or_else(|| model.record_uri.clone(), str::to_string);
    (record, ambiguities)
}

/// Paths written from record-level data rather than from one assertion. Read
/// back as extensions so the next forward pass writes them unchanged.
fn is_derived(path: &ElementPath) -> bool {
    path.standard == Standard::Edm && path.path == [EDM_TYPE] && path.attributes.is_empty()
}

/// Whether reading `path` back yields an extension, so an extension holding
/// it can be written to the target without changing on a round trip.
pub(crate) fn reads_back_as_extension(table: &CrosswalkTable, path: &ElementPath) -> bool {
    if path.standard == Standard::Edm && path.path == [IS_SHOWN_BY] {
        return false;
    }
    is_derived(path) || !claims(table, path.standard).iter().any(|(_, _, p)| *p == path)
}

/// (property, rule kind, path) for every path a read-back rule can emit, in
/// priority order.
fn claims(table: &CrosswalkTable, standard: Standard) -> Vec<(PivotProperty, &MappingKind, &ElementPath)> {
    table
        .rules_for(standard)
        .filter(|r| !r.forward_only)
        .flat_map(|r| r.kind.paths().into_iter().map(move |p| (r.property, &r.kind, p)))
        .collect()
}

fn normalized_from(node: &TargetNode, property: PivotProperty) -> Option<NormalizedValue> {
    if node.path.standard != Standard::Ead {
        return None;
    }
    match property {
        PivotProperty::CreationDate => node.annotation("normal").and_then(IsoDate::parse).map(NormalizedValue::IsoDate),
        PivotProperty::Language => node
            .annotation("langcode")
            .filter(|c| c.len() == 2 && c.bytes().all(|b| b.is_ascii_lowercase()))
            .map(|c| NormalizedValue::LanguageCode(c.to_string())),
        PivotProperty::Author if node.path.path == ["corpname"] => Some(NormalizedValue::CorporateBody),
        _ => None,
    }
}

/// Normalized data that does not contradict `raw`.
fn fits(normalized: &NormalizedValue, raw: &str) -> bool {
    match normalized {
        NormalizedValue::IsoDate(d) => raw.contains(&format!("{:04}", d.year())),
        _ => true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crosswalk::builtin_table;

    fn node(standard: Standard, segs: &[&str], value: &str) -> TargetNode {
        TargetNode::new(ElementPath::new(standard, segs), value)
    }

    #[test]
    fn edm_title_and_identifier() {
        let mut m = TargetModel::new(Standard::Edm, "https://example.org/ch/I");
        m.push(node(Standard::Edm, &["dc:title"], "T"));
        m.push(node(Standard::Edm, &["dc:identifier"], "I"));
        let (r, amb) = map_backward(&m, Standard::Edm, &builtin_table());
        assert_eq!(r, PivotRecord::minimal("T", "I"));
        assert!(amb.is_empty());
    }

    #[test]
    fn geogname_outside_and_inside_origination() {
        let mut m = TargetModel::new(Standard::Ead, "https://example.org/ch/I");
        m.push(node(Standard::Ead, &["geogname"], "Dresden").annotated(CONTEXT_ANNOTATION, ORIGINATION));
        m.push(node(Standard::Ead, &["geogname"], "Paris"));
        let (r, amb) = map_backward(&m, Standard::Ead, &builtin_table());
        assert_eq!(r.assertions[0].property, PivotProperty::PlaceOfOrigin);
        assert_eq!(r.assertions[1].property, PivotProperty::RelatedPlace);
        assert_eq!(amb[0].alternatives, [PivotProperty::RelatedPlace]);
        assert_eq!(amb[1].alternatives, [PivotProperty::PlaceOfOrigin]);
        assert_eq!(r.record_id, "https://example.org/ch/I");
    }

    #[test]
    fn role_and_normal_annotations() {
        let mut m = TargetModel::new(Standard::Ead, "https://example.org/ch/I");
        m.push(node(Standard::Ead, &["persname"], "Preuss").annotated(ROLE_ANNOTATION, "Receiver"));
        m.push(node(Standard::Ead, &["persname"], "X").annotated(ROLE_ANNOTATION, "Ghost"));
        m.push(node(Standard::Ead, &["unitdate"], "28.12.1852").annotated("normal", "1852-12-28"));
        let (r, amb) = map_backward(&m, Standard::Ead, &builtin_table());
        assert_eq!(r.assertions[0].qualifier.as_ref().map(Qualifier::label), Some("Receiver"));
        assert_eq!(r.assertions[1].qualifier, None);
        assert!(amb[1].note.as_deref().unwrap().contains("Ghost"));
        assert_eq!(r.assertions[2].normalized, Some(NormalizedValue::IsoDate(IsoDate::parse("1852-12-28").unwrap())));
    }

    #[test]
    fn sole_qualifier_restored_in_edm() {
        let mut m = TargetModel::new(Standard::Edm, "https://example.org/ch/I");
        m.push(node(Standard::Edm, &["edm:isRepresentationOf"], "Someone"));
        m.push(node(Standard::Edm, &["edm:happenedAt"], "Cracow"));
        let (r, _) = map_backward(&m, Standard::Edm, &builtin_table());
        assert_eq!(r.assertions[0].qualifier.as_ref().map(Qualifier::label), Some("Depicted"));
        assert_eq!(r.assertions[1].qualifier.as_ref().map(Qualifier::label), Some("Event place"));
    }

    #[test]
    fn unclaimed_nodes_become_extensions() {
        let mut m = TargetModel::new(Standard::Ead, "https://example.org/ch/I");
        m.push(node(Standard::Ead, &["bibref"], "cited"));
        m.push(node(Standard::Ead, &["unknown", "eadheader"], "h"));
        let (r, amb) = map_backward(&m, Standard::Ead, &builtin_table());
        assert!(r.assertions.is_empty() && amb.is_empty());
        assert_eq!(r.extensions, [Extension::new("x-ead:bibref", "cited"), Extension::new("x-ead:eadheader", "h")]);
    }

    #[test]
    fn derived_edm_type_is_an_extension() {
        let mut m = TargetModel::new(Standard::Edm, "https://example.org/ch/I");
        m.push(node(Standard::Edm, &["edm:type"], "TEXT"));
        let (r, _) = map_backward(&m, Standard::Edm, &builtin_table());
        assert!(r.assertions.is_empty());
        assert_eq!(r.extensions, [Extension::new("x-edm:edm:type", "TEXT")]);
    }

    #[test]
    fn shared_dc_creator_prefers_author() {
        let mut m = TargetModel::new(Standard::DublinCore, "https://example.org/ch/I");
        m.push(node(Standard::DublinCore, &["dc:creator"], "Aster; Preuss"));
        let (r, amb) = map_backward(&m, Standard::DublinCore, &builtin_table());
        assert_eq!(r.assertions.len(), 2);
        assert!(r.assertions.iter().all(|a| a.property == PivotProperty::Author));
        assert_eq!(amb[0].alternatives, [PivotProperty::RelatedPerson]);
        assert!(amb[0].note.is_some());
    }
}
