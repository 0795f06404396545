use serde::{Deserialize, Serialize};

use super::rule::{MappingKind, MappingRule, Resolution, Resolver, RoleResolver};
use super::{ElementPath, Standard};
use crate::pivot::{AgentRole, PivotProperty, PlaceKind, Qualifier};

pub const SENDER_NOTE: &str = "sender rendered as creator of the letter";
pub const RECEIVER_NOTE: &str = "receiver rendered as a person the letter has met";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TableError {
    #[error("no rule for {0} / {1}")]
    Missing(PivotProperty, Standard),
    #[error("more than one rule for {0} / {1}")]
    Duplicate(PivotProperty, Standard),
    #[error("{0} / {1}: {2}")]
    Malformed(PivotProperty, Standard, &'static str),
}

/// The full property × standard crosswalk: exactly one rule per pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrosswalkTable {
    rules: Vec<MappingRule>,
}

impl CrosswalkTable {
    /// Orders `rules` by property then standard and checks the table
    /// invariants.
    pub fn from_rules(rules: Vec<MappingRule>) -> Result<Self, TableError> {
        let mut slots: Vec<Option<MappingRule>> = vec![None; PivotProperty::ALL.len() * Standard::ALL.len()];
        for rule in rules {
            check_rule(&rule)?;
            let slot = &mut slots[slot_of(rule.property, rule.standard)];
            if slot.is_some() {
                return Err(TableError::Duplicate(rule.property, rule.standard));
            }
            *slot = Some(rule);
        }
        let mut ordered = Vec::with_capacity(slots.len());
        for (i, slot) in slots.into_iter().enumerate() {
            let property = PivotProperty::ALL[i / Standard::ALL.len()];
            let standard = Standard::ALL[i % Standard::ALL.len()];
            ordered.push(slot.ok_or(TableError::Missing(property, standard))?);
        }
        Ok(CrosswalkTable { rules: ordered })
    }

    pub fn rule(&self, property: PivotProperty, standard: Standard) -> &MappingRule {
        &self.rules[slot_of(property, standard)]
    }

    pub fn rules(&self) -> &[MappingRule] {
        &self.rules
    }

    pub fn rules_for(&self, standard: Standard) -> impl Iterator<Item = &MappingRule> {
        self.rules.iter().filter(move |r| r.standard == standard)
    }

    /// A copy with one rule swapped out.
    pub fn with_rule(&self, rule: MappingRule) -> Result<Self, TableError> {
        check_rule(&rule)?;
        let mut next = self.clone();
        let slot = slot_of(rule.property, rule.standard);
        next.rules[slot] = rule;
        Ok(next)
    }
}

fn slot_of(property: PivotProperty, standard: Standard) -> usize {
    property.index() * Standard::ALL.len() + standard.index()
}

fn check_rule(rule: &MappingRule) -> Result<(), TableError> {
    let bad = |why| Err(TableError::Malformed(rule.property, rule.standard, why));
    if rule.kind.paths().iter().any(|p| p.standard != rule.standard) {
        return bad("path belongs to another standard");
    }
    match &rule.kind {
        MappingKind::Approximate { note, .. } if note.trim().is_empty() => bad("approximate mapping without a note"),
        MappingKind::Composite(parts) if parts.len() < 2 => bad("composite mapping needs at least two parts"),
        MappingKind::Alternative { options, resolver } => {
            if options.len() < 2 {
                return bad("alternative mapping needs at least two options");
            }
            match resolver {
                Resolver::FixedPriority(i) if *i >= options.len() => bad("priority index out of range"),
                Resolver::ByNameForm { personal, corporate }
                    if *personal >= options.len() || *corporate >= options.len() =>
                {
                    bad("name-form index out of range")
                }
                Resolver::ByQualifier(roles) => {
                    let targets = roles.entries.iter().map(|(_, r)| &r.path).chain([&roles.default.path]);
                    for t in targets {
                        if !options.contains(t) {
                            return bad("role resolver targets a path outside the options");
                        }
                    }
                    if !roles.is_total_for(rule.property) {
                        return bad("role resolver does not cover every closed qualifier");
                    }
                    Ok(())
                }
                _ => Ok(()),
            }
        }
        _ => Ok(()),
    }
}

/// The built-in crosswalk between the pivot schema and the five standards.
pub fn builtin_table() -> CrosswalkTable {
    use MappingKind::{Unmappable as U};
    use PivotProperty as P;
    use Standard::{DigitalScriptorium as Ds, DublinCore as Dc, Ead, Edm, Mods};

    let path = |s: Standard, segs: &[&str]| ElementPath::new(s, segs);
    let exact = |s: Standard, segs: &[&str]| MappingKind::Exact(ElementPath::new(s, segs));
    let approx = |s: Standard, segs: &[&str], note: &str| MappingKind::Approximate {
        path: ElementPath::new(s, segs),
        note: note.to_string(),
    };
    let alt_fixed = |s: Standard, opts: &[&[&str]], preferred: usize| MappingKind::Alternative {
        options: opts.iter().map(|o| ElementPath::new(s, o)).collect(),
        resolver: Resolver::FixedPriority(preferred),
    };

    let mut rules = Vec::new();
    let mut row = |p: PivotProperty, cells: [MappingKind; 5]| {
        for (s, kind) in Standard::ALL.into_iter().zip(cells) {
            rules.push(MappingRule::new(p, s, kind));
        }
    };

    row(P::Title, [
        exact(Dc, &["dc:title"]),
        exact(Ead, &["unittitle"]),
        exact(Mods, &["titleInfo"]),
        exact(Edm, &["dc:title"]),
        exact(Ds, &["Title"]),
    ]);
    row(P::AlternativeTitle, [
        exact(Dc, &["dcterms:alternative"]),
        U,
        MappingKind::Exact(path(Mods, &["titleInfo"]).with_attribute("type", "alternative")),
        exact(Edm, &["dcterms:alternative"]),
        U,
    ]);
    row(P::Author, [
        exact(Dc, &["dc:creator"]),
        MappingKind::Alternative {
            options: vec![path(Ead, &["persname"]), path(Ead, &["corpname"])],
            resolver: Resolver::ByNameForm { personal: 0, corporate: 1 },
        },
        exact(Mods, &["name"]),
        exact(Edm, &["dc:creator"]),
        exact(Ds, &["Author"]),
    ]);
    row(P::TypeOfDocument, [
        exact(Dc, &["dc:type"]),
        exact(Ead, &["controlaccess", "genreform"]),
        exact(Mods, &["typeOfResource"]),
        alt_fixed(Edm, &[&["dc:type"], &["edm:hasType"], &["edm:type"]], 0),
        U,
    ]);
    row(P::Language, [
        exact(Dc, &["dc:language"]),
        exact(Ead, &["langmaterial", "language"]),
        exact(Mods, &["language"]),
        exact(Edm, &["dc:language"]),
        exact(Ds, &["Language"]),
    ]);
    row(P::Identifier, [
        exact(Dc, &["dc:identifier"]),
        exact(Ead, &["unitid"]),
        exact(Mods, &["identifier"]),
        exact(Edm, &["dc:identifier"]),
        exact(Ds, &["Shelfmark"]),
    ]);
    row(P::PhysicalExtent, [
        exact(Dc, &["dc:format"]),
        exact(Ead, &["physdesc", "extent"]),
        exact(Mods, &["physicalDescription"]),
        exact(Edm, &["dcterms:extent"]),
        exact(Ds, &["Physical Description"]),
    ]);
    row(P::MaterialInformation, [U, exact(Ead, &["physdesc"]), U, U, U]);
    row(P::PlaceOfOrigin, [
        U,
        exact(Ead, &["geogname"]),
        exact(Mods, &["originInfo", "place"]),
        approx(Edm, &["edm:hasMet"], "place of origin rendered as a place the object has merely been in"),
        exact(Ds, &["Place"]),
    ]);
    row(P::CreationDate, [
        exact(Dc, &["dcterms:created"]),
        exact(Ead, &["unitdate"]),
        exact(Mods, &["originInfo", "dateCreated"]),
        exact(Edm, &["dcterms:created"]),
        exact(Ds, &["Date"]),
    ]);
    row(P::CurrentLocation, [
        U,
        exact(Ead, &["physloc"]),
        approx(Mods, &["originInfo", "place"], "current location carried as an origin place"),
        exact(Edm, &["edm:currentLocation"]),
        exact(Ds, &["Holding Institution"]),
    ]);
    row(P::CustodyHistory, [
        exact(Dc, &["dcterms:provenance"]),
        exact(Ead, &["custodhist"]),
        approx(Mods, &["originInfo"], "custody history carried as origin information text"),
        exact(Edm, &["dcterms:provenance"]),
        U,
    ]);
    row(P::Publisher, [
        exact(Dc, &["dc:publisher"]),
        approx(Ead, &["bibref"], "publisher recorded as a bibliographic reference"),
        exact(Mods, &["originInfo", "publisher"]),
        exact(Edm, &["dc:publisher"]),
        U,
    ]);
    row(P::OtherEditions, [
        alt_fixed(Dc, &[&["dcterms:hasVersion"], &["dcterms:isVersionOf"]], 0),
        approx(Ead, &["bibliography"], "other editions recorded as a bibliography entry"),
        exact(Mods, &["originInfo", "edition"]),
        alt_fixed(Edm, &[&["dcterms:hasVersion"], &["dcterms:isVersionOf"]], 0),
        U,
    ]);
    row(P::RelatedDate, [
        approx(Dc, &["dcterms:temporal"], "date kind is not representable"),
        U,
        approx(Mods, &["subject", "temporal"], "date kind is not representable"),
        approx(Edm, &["edm:hasMet"], "dated event rendered as something the object has met; date kind lost"),
        U,
    ]);

    let spatial = path(Edm, &["dcterms:spatial"]);
    let happened_at = path(Edm, &["edm:happenedAt"]);
    row(P::RelatedPlace, [
        approx(Dc, &["dcterms:spatial"], "place kind is not representable"),
        exact(Ead, &["geogname"]),
        U,
        MappingKind::Alternative {
            options: vec![spatial.clone(), happened_at.clone()],
            resolver: Resolver::ByQualifier(RoleResolver {
                entries: vec![
                    (Qualifier::PlaceKind(PlaceKind::SenderLocation), Resolution::plain(spatial.clone())),
                    (Qualifier::PlaceKind(PlaceKind::EventPlace), Resolution::plain(happened_at)),
                ],
                default: Resolution::plain(spatial),
            }),
        },
        U,
    ]);

    let dc_contributor = path(Dc, &["dc:contributor"]);
    let dc_creator = path(Dc, &["dc:creator"]);
    let dc_person = RoleResolver {
        entries: AgentRole::ALL
            .into_iter()
            .map(|role| {
                let resolution = match role {
                    AgentRole::Sender => Resolution::approximate(dc_creator.clone(), SENDER_NOTE),
                    AgentRole::Creator => Resolution::plain(dc_creator.clone()),
                    _ => Resolution::plain(dc_contributor.clone()),
                };
                (Qualifier::AgentRole(role), resolution)
            })
            .collect(),
        default: Resolution::plain(dc_contributor.clone()),
    };
    let edm_contributor = path(Edm, &["dc:contributor"]);
    let edm_creator = path(Edm, &["dc:creator"]);
    let has_met = path(Edm, &["edm:hasMet"]);
    let represents = path(Edm, &["edm:isRepresentationOf"]);
    let edm_person = RoleResolver {
        entries: AgentRole::ALL
            .into_iter()
            .map(|role| {
                let resolution = match role {
                    AgentRole::Sender => Resolution::approximate(edm_creator.clone(), SENDER_NOTE),
                    AgentRole::Creator => Resolution::plain(edm_creator.clone()),
                    AgentRole::Receiver => Resolution::approximate(has_met.clone(), RECEIVER_NOTE),
                    AgentRole::Artist => Resolution::plain(edm_contributor.clone()),
                    AgentRole::Deceased | AgentRole::Mentioned => Resolution::plain(has_met.clone()),
                    AgentRole::Depicted => Resolution::plain(represents.clone()),
                };
                (Qualifier::AgentRole(role), resolution)
            })
            .collect(),
        default: Resolution::plain(edm_contributor.clone()),
    };
    row(P::RelatedPerson, [
        MappingKind::Alternative {
            options: vec![dc_contributor, dc_creator],
            resolver: Resolver::ByQualifier(dc_person),
        },
        exact(Ead, &["persname"]),
        U,
        MappingKind::Alternative {
            options: vec![edm_contributor, edm_creator, has_met, represents],
            resolver: Resolver::ByQualifier(edm_person),
        },
        U,
    ]);
    row(P::ExternalLink, [
        exact(Dc, &["dc:relation"]),
        U,
        exact(Mods, &["location", "url"]),
        alt_fixed(Edm, &[&["dc:relation"], &["edm:isRelatedTo"]], 0),
        exact(Ds, &["Institutional Record"]),
    ]);
    row(P::DescriptionNotes, [
        exact(Dc, &["dc:description"]),
        exact(Ead, &["scopecontent"]),
        alt_fixed(Mods, &[&["abstract"], &["note"], &["tableOfContents"]], 1),
        exact(Edm, &["dc:description"]),
        exact(Ds, &["Note"]),
    ]);
    row(P::TypographyNote, [U, U, U, U, U]);
    row(P::Keywords, [
        exact(Dc, &["dc:subject"]),
        exact(Ead, &["controlaccess", "subject"]),
        alt_fixed(Mods, &[&["subject"], &["classification"]], 0),
        exact(Edm, &["dc:subject"]),
        exact(Ds, &["Keyword(s)"]),
    ]);

    for (p, s) in [(P::Publisher, Ead), (P::OtherEditions, Ead)] {
        let r = rules.iter_mut().find(|r| r.property == p && r.standard == s).expect("rule present");
        r.forward_only = true;
    }

    CrosswalkTable::from_rules(rules).expect("built-in crosswalk is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crosswalk::KindTag;

    #[test]
    fn total_and_ordered() {
        let t = builtin_table();
        assert_eq!(t.rules().len(), 105);
        for p in PivotProperty::ALL {
            for s in Standard::ALL {
                let r = t.rule(p, s);
                assert_eq!((r.property, r.standard), (p, s));
            }
        }
    }

    #[test]
    fn cells_from_the_comparison() {
        let t = builtin_table();
        assert_eq!(
            t.rule(PivotProperty::Title, Standard::DublinCore).kind,
            MappingKind::Exact(ElementPath::new(Standard::DublinCore, &["dc:title"]))
        );
        assert_eq!(t.rule(PivotProperty::TypographyNote, Standard::Edm).kind, MappingKind::Unmappable);
        match &t.rule(PivotProperty::PlaceOfOrigin, Standard::Edm).kind {
            MappingKind::Approximate { path, note } => {
                assert_eq!(path.path, ["edm:hasMet"]);
                assert!(note.contains("merely been in"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn typography_and_material_rows() {
        let t = builtin_table();
        for s in Standard::ALL {
            assert_eq!(t.rule(PivotProperty::TypographyNote, s).kind.tag(), KindTag::Unmappable);
            let material = t.rule(PivotProperty::MaterialInformation, s).kind.tag();
            assert_eq!(material == KindTag::Unmappable, s != Standard::Ead);
        }
    }

    #[test]
    fn forward_only_cells() {
        let t = builtin_table();
        let flagged: Vec<_> = t.rules().iter().filter(|r| r.forward_only).map(|r| (r.property, r.standard)).collect();
        assert_eq!(flagged, [(PivotProperty::Publisher, Standard::Ead), (PivotProperty::OtherEditions, Standard::Ead)]);
    }

    #[test]
    fn rejects_malformed_tables() {
        let t = builtin_table();
        let mut rules = t.rules().to_vec();
        let dup = rules[0].clone();
        rules.push(dup);
        assert_eq!(
            CrosswalkTable::from_rules(rules),
            Err(TableError::Duplicate(PivotProperty::Title, Standard::DublinCore))
        );
        assert_eq!(
            CrosswalkTable::from_rules(t.rules()[1..].to_vec()),
            Err(TableError::Missing(PivotProperty::Title, Standard::DublinCore))
        );
        let lonely = MappingRule::new(
            PivotProperty::Title,
            Standard::Ead,
            MappingKind::Composite(vec![ElementPath::new(Standard::Ead, &["unittitle"])]),
        );
        assert!(t.with_rule(lonely).is_err());
        let foreign = MappingRule::new(
            PivotProperty::Title,
            Standard::Ead,
            MappingKind::Exact(ElementPath::new(Standard::Mods, &["titleInfo"])),
        );
        assert!(t.with_rule(foreign).is_err());
    }
}
