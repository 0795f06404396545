#![allow(dead_code)]

use ch_crosswalk::codec::{vocabulary, TargetModel, TargetNode, CONTEXT_ANNOTATION, IS_SHOWN_BY, ORIGINATION};
use ch_crosswalk::crosswalk::{ElementPath, Standard};
use ch_crosswalk::pivot::{
    normalize, validate_pivot, AgentRole, DateKind, Extension, NormalizedValue, PivotProperty, PivotRecord,
    PlaceKind, PropertyAssertion, Qualifier,
};
use proptest::prelude::*;
use proptest::sample::select;

/// Trimmed, non-empty, no `;`. Mixes markup-significant characters,
/// non-ASCII letters and the occasional line break.
pub fn value() -> impl Strategy<Value = String> {
    prop_oneof![
        4 => "[A-Za-z0-9 ,.()\\[\\]'\"&<>/?!-]{1,24}",
        2 => "[a-zßäöüąćęłńóśźżéèàç]{1,12}( [A-ZĆŁŚŻ][a-zęółąś]{1,8}){0,2}",
        1 => "[A-Za-z]{1,8}[\n\t\r][A-Za-z]{1,8}",
        1 => "[A-Z][a-z]{2,8}: [a-z ]{1,10}",
        1 => "\\\\[a-z]{1,4}\\{[0-9]{1,3}\\}",
    ]
    .prop_map(|s| s.trim().to_string())
    .prop_filter("non-empty", |s| !s.is_empty())
}

fn open_label() -> impl Strategy<Value = String> {
    "[A-Z][a-z]{2,8}( [a-z]{2,6})?".prop_filter("not a closed label", |l| {
        !DateKind::CLOSED.iter().any(|k| k.label() == l) && !PlaceKind::CLOSED.iter().any(|k| k.label() == l)
    })
}

fn qualifier_for(property: PivotProperty) -> BoxedStrategy<Option<Qualifier>> {
    match property {
        PivotProperty::RelatedPerson => {
            proptest::option::of(select(AgentRole::ALL.to_vec()).prop_map(Qualifier::AgentRole)).boxed()
        }
        PivotProperty::RelatedDate => proptest::option::of(prop_oneof![
            3 => select(DateKind::CLOSED.to_vec()).prop_map(Qualifier::DateKind),
            1 => open_label().prop_map(|l| Qualifier::DateKind(DateKind::Other(l))),
        ])
        .boxed(),
        PivotProperty::RelatedPlace => proptest::option::of(prop_oneof![
            3 => select(PlaceKind::CLOSED.to_vec()).prop_map(Qualifier::PlaceKind),
            1 => open_label().prop_map(|l| Qualifier::PlaceKind(PlaceKind::Other(l))),
        ])
        .boxed(),
        _ => Just(None).boxed(),
    }
}

fn assertion() -> impl Strategy<Value = PropertyAssertion> {
    let properties: Vec<PivotProperty> = PivotProperty::ALL
        .into_iter()
        .filter(|p| !matches!(p, PivotProperty::Title | PivotProperty::Identifier))
        .collect();
    select(properties).prop_flat_map(|property| {
        let value = match property {
            PivotProperty::CreationDate | PivotProperty::RelatedDate => prop_oneof![
                "(0[1-9]|1[0-9]|2[0-8])\\.(0[1-9]|1[0-2])\\.1[5-9][0-9][0-9]",
                "1[5-9][0-9][0-9]",
                value(),
            ]
            .boxed(),
            PivotProperty::Language => prop_oneof![select(vec!["German", "Polish", "French"]).prop_map(String::from), value()].boxed(),
            _ => value().boxed(),
        };
        let corporate = property == PivotProperty::Author;
        (value, qualifier_for(property), any::<bool>()).prop_map(move |(value, qualifier, corp)| PropertyAssertion {
            property,
            value,
            qualifier,
            normalized: (corporate && corp).then_some(NormalizedValue::CorporateBody),
        })
    })
}

fn extension() -> impl Strategy<Value = Extension> {
    prop_oneof![
        ("x-[a-z]{1,5}", "[a-z]{1,8}(/[a-z]{1,6})?").prop_map(|(p, l)| format!("{p}:{l}")),
        Just("x-edm:edm:type".to_string()),
        Just("x-ead:bibref".to_string()),
        Just("x-mods:titleInfo".to_string()),
    ]
    .prop_flat_map(|key| value().prop_map(move |v| Extension::new(key.clone(), v)))
}

/// Valid pivot records: one Title, one Identifier at a random position, up
/// to `max_extra` further assertions, optional digital counterpart and
/// extensions, normalized half of the time.
pub fn record_with(max_extra: usize) -> impl Strategy<Value = PivotRecord> {
    (
        value(),
        "[A-Za-z0-9][A-Za-z0-9 ,._%/-]{0,20}[A-Za-z0-9]",
        proptest::collection::vec(assertion(), 0..=max_extra),
        any::<prop::sample::Index>(),
        proptest::option::of("https://example\\.org/scan/[a-z0-9]{1,8}"),
        proptest::collection::vec(extension(), 0..3),
        any::<bool>(),
    )
        .prop_map(|(title, id, mut rest, at, counterpart, extensions, normalized)| {
            rest.insert(0, PropertyAssertion::new(PivotProperty::Title, title));
            let pos = at.index(rest.len() + 1);
            rest.insert(pos, PropertyAssertion::new(PivotProperty::Identifier, id.clone()));
            let record = PivotRecord { record_id: id, assertions: rest, digital_counterpart: counterpart, extensions };
            if normalized {
                normalize(&record)
            } else {
                record
            }
        })
        .prop_filter("valid record", |r| validate_pivot(r).is_empty())
}

pub fn record() -> impl Strategy<Value = PivotRecord> {
    record_with(14)
}

/// Drops open place qualifiers, which EDM's role resolver cannot place.
pub fn edm_placeable(mut r: PivotRecord) -> PivotRecord {
    for a in &mut r.assertions {
        if matches!(a.qualifier, Some(Qualifier::PlaceKind(PlaceKind::Other(_)))) {
            a.qualifier = None;
        }
    }
    r
}

fn xml_annotation_value() -> impl Strategy<Value = String> {
    "[A-Za-z0-9 &<>\"'\t\n-]{0,12}"
}

/// Random nodes over `standard`'s vocabulary, valid for encoding.
pub fn target_model(standard: Standard) -> impl Strategy<Value = TargetModel> {
    let paths: Vec<ElementPath> = vocabulary(standard).to_vec();
    let node = (select(paths), value(), any::<bool>(), proptest::collection::vec(("[a-z]{1,6}", xml_annotation_value()), 0..3))
        .prop_map(move |(path, value, context, extra)| {
            let value = if path.path == [IS_SHOWN_BY] {
                format!("https://example.org/img/{}", value.len())
            } else {
                value
            };
            let mut node = TargetNode::new(path, value);
            if standard == Standard::Ead && context && matches!(node.path.leaf(), "persname" | "corpname" | "geogname") {
                node.annotations.push((CONTEXT_ANNOTATION.to_string(), ORIGINATION.to_string()));
            }
            if matches!(standard, Standard::Ead | Standard::Mods) {
                for (name, v) in extra {
                    let taken = node.annotations.iter().any(|(n, _)| *n == name)
                        || node.path.attributes.iter().any(|(n, _)| *n == name)
                        || name.starts_with("xml")
                        || name == CONTEXT_ANNOTATION;
                    if !taken {
                        node.annotations.push((name, v));
                    }
                }
            }
            node
        });
    (proptest::collection::vec(node, 0..16), "[a-z0-9]{1,10}").prop_map(move |(mut nodes, id)| {
        if standard == Standard::DigitalScriptorium {
            let mut order: Vec<ElementPath> = Vec::new();
            for n in &nodes {
                if !order.contains(&n.path) {
                    order.push(n.path.clone());
                }
            }
            nodes.sort_by_key(|n| order.iter().position(|p| *p == n.path));
        }
        let record_uri = format!("https://example.org/ch/{id}");
        nodes.retain(|n| {
            let mut single = TargetModel::new(standard, record_uri.clone());
            single.push(n.clone());
            single.check().is_ok()
        });
        TargetModel { standard, record_uri, nodes }
    })
    .prop_filter("encodable", |m| m.check().is_ok())
}

/// Properties whose rule in `standard` is Exact, read back, and on a path no
/// other rule of the standard writes. Computed from the table rows here
/// rather than through the library's own helper.
pub fn exact_subset(standard: Standard) -> Vec<PivotProperty> {
    use ch_crosswalk::crosswalk::{builtin_table, MappingKind};
    let table = builtin_table();
    let mut out = Vec::new();
    for p in PivotProperty::ALL {
        let rule = table.rule(p, standard);
        let MappingKind::Exact(path) = &rule.kind else { continue };
        if rule.forward_only {
            continue;
        }
        let mut writers = 0;
        for q in PivotProperty::ALL {
            if table.rule(q, standard).kind.paths().into_iter().any(|x| x == path) {
                writers += 1;
            }
        }
        if writers == 1 {
            out.push(p);
        }
    }
    out
}

pub fn values(r: &PivotRecord, p: PivotProperty) -> Vec<String> {
    r.values_of(p).map(|a| a.value.clone()).collect()
}

pub fn qualified_values(r: &PivotRecord, p: PivotProperty) -> Vec<(String, Option<Qualifier>)> {
    r.values_of(p).map(|a| (a.value.clone(), a.qualifier.clone())).collect()
}
