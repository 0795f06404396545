use serde::{Deserialize, Serialize};

use super::{ElementPath, Standard};
use crate::pivot::{AgentRole, DateKind, PivotProperty, PlaceKind, PropertyAssertion, Qualifier};

/// Target chosen for one assertion, with a note when the choice bends the
/// assertion's meaning.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Resolution {
    pub path: ElementPath,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Resolution {
    pub fn plain(path: ElementPath) -> Self {
        Resolution { path, note: None }
    }

    pub fn approximate(path: ElementPath, note: &str) -> Self {
        Resolution { path, note: Some(note.to_string()) }
    }
}

/// Chooses a target by qualifier. Unqualified assertions take `default`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoleResolver {
    pub entries: Vec<(Qualifier, Resolution)>,
    pub default: Resolution,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("no target for qualifier `{0}`")]
pub struct UnknownQualifier(pub String);

impl RoleResolver {
    pub fn resolve(&self, qualifier: Option<&Qualifier>) -> Result<&Resolution, UnknownQualifier> {
        match qualifier {
            None => Ok(&self.default),
            Some(q) => self
                .entries
                .iter()
                .find(|(k, _)| k == q)
                .map(|(_, r)| r)
                .ok_or_else(|| UnknownQualifier(q.label().to_string())),
        }
    }

    /// Every closed qualifier kind of `property` has an entry.
    pub fn is_total_for(&self, property: PivotProperty) -> bool {
        let closed: Vec<Qualifier> = match property {
            PivotProperty::RelatedPerson => AgentRole::ALL.into_iter().map(Qualifier::AgentRole).collect(),
            PivotProperty::RelatedDate => DateKind::CLOSED.into_iter().map(Qualifier::DateKind).collect(),
            PivotProperty::RelatedPlace => PlaceKind::CLOSED.into_iter().map(Qualifier::PlaceKind).collect(),
            _ => return false,
        };
        closed.iter().all(|q| self.entries.iter().any(|(k, _)| k == q))
    }

    /// The qualifier that is the only way to reach `path`, if there is one.
    /// Used to restore qualifiers when reading a standard back.
    pub fn sole_qualifier_for(&self, path: &ElementPath) -> Option<&Qualifier> {
        if self.default.path == *path {
            return None;
        }
        let mut hits = self.entries.iter().filter(|(_, r)| r.path == *path);
        match (hits.next(), hits.next()) {
            (Some((q, _)), None) => Some(q),
            _ => None,
        }
    }
}

/// How an [`MappingKind::Alternative`] picks among its options.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Resolver {
    /// Always the option at this index.
    FixedPriority(usize),
    ByQualifier(RoleResolver),
    /// Personal names to one option, corporate bodies to the other.
    ByNameForm { personal: usize, corporate: usize },
}

/// How a pivot property lands in a standard.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MappingKind {
    /// Same meaning, one target.
    Exact(ElementPath),
    /// One target whose meaning only approximates the property.
    Approximate { path: ElementPath, note: String },
    /// Several candidate targets; exactly one is chosen per assertion.
    Alternative { options: Vec<ElementPath>, resolver: Resolver },
    /// Every part receives the value.
    Composite(Vec<ElementPath>),
    Unmappable,
}

impl MappingKind {
    pub fn tag(&self) -> KindTag {
        match self {
            MappingKind::Exact(_) => KindTag::Exact,
            MappingKind::Approximate { .. } => KindTag::Approximate,
            MappingKind::Alternative { .. } => KindTag::Alternative,
            MappingKind::Composite(_) => KindTag::Composite,
            MappingKind::Unmappable => KindTag::Unmappable,
        }
    }

    /// Every path this kind can emit, in cell order.
    pub fn paths(&self) -> Vec<&ElementPath> {
        match self {
            MappingKind::Exact(p) => vec![p],
            MappingKind::Approximate { path, .. } => vec![path],
            MappingKind::Alternative { options, .. } => options.iter().collect(),
            MappingKind::Composite(parts) => parts.iter().collect(),
            MappingKind::Unmappable => vec![],
        }
    }

    /// Crosswalk-cell notation, `--` when unmappable.
    pub fn render(&self) -> String {
        match self {
            MappingKind::Unmappable => "--".to_string(),
            MappingKind::Composite(parts) => parts.iter().map(ElementPath::render).collect::<Vec<_>>().join(" + "),
            other => other.paths().iter().map(|p| p.render()).collect::<Vec<_>>().join(" or "),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum KindTag {
    Exact,
    Approximate,
    Alternative,
    Composite,
    Unmappable,
}

/// One cell of the crosswalk.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MappingRule {
    pub property: PivotProperty,
    pub standard: Standard,
    pub kind: MappingKind,
    /// The target cannot be read back reliably, so the backward direction
    /// ignores this rule.
    #[serde(default)]
    pub forward_only: bool,
}

impl MappingRule {
    pub fn new(property: PivotProperty, standard: Standard, kind: MappingKind) -> Self {
        MappingRule { property, standard, kind, forward_only: false }
    }

    pub fn forward_only(mut self) -> Self {
        self.forward_only = true;
        self
    }

    /// Picks the target for `assertion` under an alternative rule.
    pub fn resolve_alternative(
        options: &[ElementPath],
        resolver: &Resolver,
        assertion: &PropertyAssertion,
    ) -> Result<Resolution, UnknownQualifier> {
        match resolver {
            Resolver::FixedPriority(i) => Ok(Resolution::plain(options[*i].clone())),
            Resolver::ByQualifier(roles) => roles.resolve(assertion.qualifier.as_ref()).cloned(),
            Resolver::ByNameForm { personal, corporate } => {
                let corporate_body = matches!(assertion.normalized, Some(crate::pivot::NormalizedValue::CorporateBody));
                let i = if corporate_body { *corporate } else { *personal };
                Ok(Resolution::plain(options[i].clone()))
            }
        }
    }
}
