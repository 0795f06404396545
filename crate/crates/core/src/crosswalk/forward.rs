use super::backward::reads_back_as_extension;
use super::loss::{ApproximatedAssertion, DropReason, DroppedAssertion, LossReport, RecordLevelLoss, ResolvedAssertion};
use super::{CrosswalkTable, ElementPath, KindTag, MappingKind, MappingRule, Standard};
use crate::codec::{
    mint_uri, vocabulary, TargetModel, TargetNode, UriError, CONTEXT_ANNOTATION, IS_SHOWN_BY, ORIGINATION,
};
use crate::pivot::{NormalizedValue, PivotProperty, PivotRecord, PropertyAssertion};

pub const DEFAULT_BASE_URI: &str = "https://example.org/ch/";

/// EDM term for the controlled `edm:type` value.
pub const EDM_TYPE: &str = "edm:type";

/// EAD attribute carrying a related person's or place's qualifier.
pub const ROLE_ANNOTATION: &str = "role";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CrosswalkError {
    #[error("assertion {index} ({property}): no target for qualifier `{label}`")]
    UnknownQualifier { index: usize, property: PivotProperty, label: String },
    #[error(transparent)]
    Uri(#[from] UriError),
}

/// Maps document types to EDM's controlled `edm:type` vocabulary.
/// Labels compare case-insensitively; unlisted labels take the default.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdmTypeLookup {
    entries: Vec<(String, String)>,
    default: String,
}

impl EdmTypeLookup {
    pub fn new(default: &str) -> Self {
        EdmTypeLookup { entries: Vec::new(), default: default.to_string() }
    }

    pub fn with(mut self, label: &str, edm_type: &str) -> Self {
        self.entries.push((label.to_lowercase(), edm_type.to_string()));
        self
    }

    pub fn edm_type(&self, label: &str) -> &str {
        let key = label.to_lowercase();
        self.entries.iter().find(|(l, _)| *l == key).map_or(&self.default, |(_, t)| t)
    }
}

impl Default for EdmTypeLookup {
    fn default() -> Self {
        ["letter", "placard", "obituary", "hourglass", "leaflet"]
            .into_iter()
            .fold(EdmTypeLookup::new("TEXT"), |l, label| l.with(label, "TEXT"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForwardOptions {
    /// Absolute URI ending in `/`; the record id is appended to it.
    pub base_uri: String,
    pub edm_types: EdmTypeLookup,
}

impl Default for ForwardOptions {
    fn default() -> Self {
        ForwardOptions { base_uri: DEFAULT_BASE_URI.to_string(), edm_types: EdmTypeLookup::default() }
    }
}

/// What produced a node of a forward conversion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeOrigin {
    Assertion(usize),
    /// The controlled `edm:type` derived from the document types.
    EdmType,
    DigitalCounterpart,
    Extension(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForwardOutput {
    pub model: TargetModel,
    pub report: LossReport,
    /// Parallel to `model.nodes`.
    pub origins: Vec<NodeOrigin>,
}

pub fn map_forward(
    record: &PivotRecord,
    standard: Standard,
    table: &CrosswalkTable,
) -> Result<(TargetModel, LossReport), CrosswalkError> {
    map_forward_with(record, standard, table, &ForwardOptions::default())
}

pub fn map_forward_with(
    record: &PivotRecord,
    standard: Standard,
    table: &CrosswalkTable,
    options: &ForwardOptions,
) -> Result<(TargetModel, LossReport), CrosswalkError> {
    map_forward_traced(record, standard, table, options).map(|out| (out.model, out.report))
}

/// [`map_forward_with`], also reporting where each node came from.
pub fn map_forward_traced(
    record: &PivotRecord,
    standard: Standard,
    table: &CrosswalkTable,
    options: &ForwardOptions,
) -> Result<ForwardOutput, CrosswalkError> {
    let record_uri = mint_uri(&record.record_id, &options.base_uri)?;
    let mut report = LossReport::new(&record.record_id, standard, record.assertions.len());
    let mut nodes: Vec<(TargetNode, NodeOrigin)> = Vec::new();

    for (index, assertion) in record.assertions.iter().enumerate() {
        let rule = table.rule(assertion.property, standard);
        let mut emit = |path: &ElementPath| {
            nodes.push((TargetNode { path: path.clone(), value: assertion.value.clone(), annotations: annotations(rule, assertion) }, NodeOrigin::Assertion(index)));
        };
        match &rule.kind {
            MappingKind::Exact(path) => {
                emit(path);
                report.converted.push(index);
            }
            MappingKind::Composite(parts) => {
                parts.iter().for_each(&mut emit);
                report.converted.push(index);
            }
            MappingKind::Approximate { path, note } => {
                emit(path);
                report.approximated.push(ApproximatedAssertion {
                    index,
                    assertion: assertion.clone(),
                    rule: KindTag::Approximate,
                    chosen: path.clone(),
                    note: note.clone(),
                });
            }
            MappingKind::Alternative { options: choices, resolver } => {
                let resolution = MappingRule::resolve_alternative(choices, resolver, assertion).map_err(|e| {
                    CrosswalkError::UnknownQualifier { index, property: assertion.property, label: e.0 }
                })?;
                emit(&resolution.path);
                match resolution.note {
                    Some(note) => report.approximated.push(ApproximatedAssertion {
                        index,
                        assertion: assertion.clone(),
                        rule: KindTag::Alternative,
                        chosen: resolution.path,
                        note,
                    }),
                    None => report.alternative_resolved.push(ResolvedAssertion {
                        index,
                        assertion: assertion.clone(),
                        chosen: resolution.path,
                        options: choices.clone(),
                    }),
                }
            }
            MappingKind::Unmappable => report.dropped.push(DroppedAssertion {
                index,
                assertion: assertion.clone(),
                reason: DropReason::Unmappable,
            }),
        }
    }

    let extension_prefix = standard.extension_prefix();
    let edm_type_key = format!("{extension_prefix}{EDM_TYPE}");
    if standard == Standard::Edm && !record.extensions.iter().any(|e| e.key == edm_type_key) {
        let mut types: Vec<&str> = Vec::new();
        for a in record.values_of(PivotProperty::TypeOfDocument) {
            let t = options.edm_types.edm_type(&a.value);
            if !types.contains(&t) {
                types.push(t);
            }
        }
        for t in types {
            nodes.push((TargetNode::new(ElementPath::new(Standard::Edm, &[EDM_TYPE]), t), NodeOrigin::EdmType));
        }
    }

    if let Some(url) = &record.digital_counterpart {
        if standard == Standard::Edm {
            nodes.push((
                TargetNode::new(ElementPath::new(Standard::Edm, &[IS_SHOWN_BY]), url.clone()),
                NodeOrigin::DigitalCounterpart,
            ));
        } else {
            report.record_level.push(RecordLevelLoss::DigitalCounterpart { url: url.clone() });
        }
    }

    for (i, ext) in record.extensions.iter().enumerate() {
        let node = ext
            .key
            .strip_prefix(&extension_prefix)
            .and_then(|rest| ElementPath::try_new(standard, rest.split('/').map(str::to_string).collect(), Vec::new()).ok())
            .map(|path| TargetNode::new(path, ext.value.clone()))
            .filter(|node| reads_back_as_extension(table, &node.path) && encodable(standard, &record_uri, node));
        match node {
            Some(node) => nodes.push((node, NodeOrigin::Extension(i))),
            None => report.record_level.push(RecordLevelLoss::Extension { key: ext.key.clone(), value: ext.value.clone() }),
        }
    }

    if standard == Standard::DigitalScriptorium {
        group_by_path(&mut nodes);
    }
    let (nodes, origins) = nodes.into_iter().unzip();
    Ok(ForwardOutput { model: TargetModel { standard, record_uri, nodes }, report, origins })
}

/// EAD attributes carrying what the element name alone cannot.
fn annotations(rule: &MappingRule, assertion: &PropertyAssertion) -> Vec<(String, String)> {
    if rule.standard != Standard::Ead {
        return Vec::new();
    }
    let mut out = Vec::new();
    if matches!(assertion.property, PivotProperty::Author | PivotProperty::PlaceOfOrigin) {
        out.push((CONTEXT_ANNOTATION.to_string(), ORIGINATION.to_string()));
    }
    if let Some(q) = &assertion.qualifier {
        out.push((ROLE_ANNOTATION.to_string(), q.label().to_string()));
    }
    match (&assertion.normalized, assertion.property) {
        (Some(NormalizedValue::IsoDate(d)), PivotProperty::CreationDate) => out.push(("normal".into(), d.to_string())),
        (Some(NormalizedValue::LanguageCode(c)), PivotProperty::Language) => out.push(("langcode".into(), c.clone())),
        _ => {}
    }
    out
}

fn encodable(standard: Standard, record_uri: &str, node: &TargetNode) -> bool {
    vocabulary(standard).contains(&node.path)
        && TargetModel { standard, record_uri: record_uri.to_string(), nodes: vec![node.clone()] }.check().is_ok()
}

/// Stable grouping: each path's nodes move up to its first occurrence.
fn group_by_path(nodes: &mut [(TargetNode, NodeOrigin)]) {
    let mut order: Vec<ElementPath> = Vec::new();
    for (n, _) in nodes.iter() {
        if !order.contains(&n.path) {
            order.push(n.path.clone());
        }
    }
    nodes.sort_by_key(|(n, _)| order.iter().position(|p| *p == n.path));
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crosswalk::builtin_table;
    use crate::pivot::{AgentRole, Extension, Qualifier};

    #[test]
    fn minimal_record_to_dc() {
        let r = PivotRecord::minimal("T", "I");
        let (m, report) = map_forward(&r, Standard::DublinCore, &builtin_table()).unwrap();
        let got: Vec<(String, &str)> = m.nodes.iter().map(|n| (n.path.joined(), n.value.as_str())).collect();
        assert_eq!(got, [("dc:title".into(), "T"), ("dc:identifier".into(), "I")]);
        assert_eq!(report.converted, [0, 1]);
        assert!(report.dropped.is_empty() && report.approximated.is_empty() && report.alternative_resolved.is_empty());
        assert_eq!(m.record_uri, "https://example.org/ch/I");
    }

    #[test]
    fn ead_annotations() {
        let mut r = PivotRecord::minimal("T", "I");
        r.assertions.push(PropertyAssertion::new(PivotProperty::Author, "A"));
        r.assertions.push(PropertyAssertion::qualified(
            PivotProperty::RelatedPerson,
            Qualifier::AgentRole(AgentRole::Receiver),
            "B",
        ));
        let (m, _) = map_forward(&r, Standard::Ead, &builtin_table()).unwrap();
        assert_eq!(m.nodes[2].annotation(CONTEXT_ANNOTATION), Some(ORIGINATION));
        assert_eq!(m.nodes[3].annotation(ROLE_ANNOTATION), Some("Receiver"));
        assert!(m.check().is_ok());
    }

    #[test]
    fn corporate_author_goes_to_corpname() {
        let mut r = PivotRecord::minimal("T", "I");
        r.assertions.push(PropertyAssertion::new(PivotProperty::Author, "Verlag").with_normalized(NormalizedValue::CorporateBody));
        let (m, report) = map_forward(&r, Standard::Ead, &builtin_table()).unwrap();
        assert_eq!(m.nodes[2].path.path, ["corpname"]);
        assert_eq!(report.alternative_resolved[0].options.len(), 2);
    }

    #[test]
    fn edm_record_level_nodes() {
        let mut r = PivotRecord::minimal("T", "I");
        r.assertions.push(PropertyAssertion::new(PivotProperty::TypeOfDocument, "Obituary"));
        r.assertions.push(PropertyAssertion::new(PivotProperty::TypeOfDocument, "Leaflet"));
        r.digital_counterpart = Some("https://example.org/scan/1".into());
        r.extensions.push(Extension::new("x-edm:edm:type", "IMAGE"));
        r.extensions.push(Extension::new("x-edm:dc:title", "claimed by Title"));
        r.extensions.push(Extension::new("x-mods:note", "kept out"));
        let out = map_forward_traced(&r, Standard::Edm, &builtin_table(), &ForwardOptions::default()).unwrap();
        let edm_types: Vec<&str> = out.model.values_at(&["edm:type"]).collect();
        assert_eq!(edm_types, ["IMAGE"]);
        assert_eq!(out.model.values_at(&[IS_SHOWN_BY]).count(), 1);
        assert_eq!(out.model.values_at(&["dc:title"]).count(), 1);
        assert_eq!(out.report.record_level.len(), 2);
        assert!(out.report.record_level.contains(&RecordLevelLoss::Extension { key: "x-mods:note".into(), value: "kept out".into() }));

        r.extensions.clear();
        let (derived, _) = map_forward(&r, Standard::Edm, &builtin_table()).unwrap();
        assert_eq!(derived.values_at(&["edm:type"]).collect::<Vec<_>>(), ["TEXT"]);
        assert_eq!(out.origins.len(), out.model.nodes.len());

        let (_, dc) = map_forward(&r, Standard::DublinCore, &builtin_table()).unwrap();
        assert!(dc.record_level.contains(&RecordLevelLoss::DigitalCounterpart { url: "https://example.org/scan/1".into() }));
    }

    #[test]
    fn ds_groups_repeated_fields() {
        let mut r = PivotRecord::minimal("T", "I");
        r.assertions.insert(1, PropertyAssertion::new(PivotProperty::Keywords, "a"));
        r.assertions.push(PropertyAssertion::new(PivotProperty::Keywords, "b"));
        let (m, _) = map_forward(&r, Standard::DigitalScriptorium, &builtin_table()).unwrap();
        let fields: Vec<String> = m.nodes.iter().map(|n| n.path.joined()).collect();
        assert_eq!(fields, ["Title", "Keyword(s)", "Keyword(s)", "Shelfmark"]);
        assert!(m.check().is_ok());
    }

    #[test]
    fn bad_base_uri() {
        let opts = ForwardOptions { base_uri: "nope".into(), ..ForwardOptions::default() };
        assert!(matches!(
            map_forward_with(&PivotRecord::minimal("T", "I"), Standard::Ead, &builtin_table(), &opts),
            Err(CrosswalkError::Uri(_))
        ));
    }
}
