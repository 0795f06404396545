use std::fmt;

use serde::{Deserialize, Serialize};

use super::PivotProperty;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum AgentRole {
    Sender,
    Receiver,
    Creator,
    Artist,
    Deceased,
    Mentioned,
    Depicted,
}

impl AgentRole {
    pub const ALL: [AgentRole; 7] = [
        AgentRole::Sender,
        AgentRole::Receiver,
        AgentRole::Creator,
        AgentRole::Artist,
        AgentRole::Deceased,
        AgentRole::Mentioned,
        AgentRole::Depicted,
    ];

    pub fn label(self) -> &'static str {
        match self {
            AgentRole::Sender => "Sender",
            AgentRole::Receiver => "Receiver",
            AgentRole::Creator => "Creator",
            AgentRole::Artist => "Artist",
            AgentRole::Deceased => "Deceased",
            AgentRole::Mentioned => "Mentioned",
            AgentRole::Depicted => "Depicted",
        }
    }

    pub fn from_label(label: &str) -> Option<Self> {
        AgentRole::ALL.into_iter().find(|r| r.label() == label)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum DateKind {
    Event,
    DateOfDeath,
    DateOfFuneral,
    Other(String),
}

impl DateKind {
    pub const CLOSED: [DateKind; 3] = [DateKind::Event, DateKind::DateOfDeath, DateKind::DateOfFuneral];

    pub fn label(&self) -> &str {
        match self {
            DateKind::Event => "Event",
            DateKind::DateOfDeath => "Date of death",
            DateKind::DateOfFuneral => "Date of funeral",
            DateKind::Other(label) => label,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PlaceKind {
    SenderLocation,
    EventPlace,
    Other(String),
}

impl PlaceKind {
    pub const CLOSED: [PlaceKind; 2] = [PlaceKind::SenderLocation, PlaceKind::EventPlace];

    pub fn label(&self) -> &str {
        match self {
            PlaceKind::SenderLocation => "Sender location",
            PlaceKind::EventPlace => "Event place",
            PlaceKind::Other(label) => label,
        }
    }
}

/// Refines the meaning of a related person, date or place assertion.
///
/// Catalogers write qualifiers as a prefix before a colon, e.g.
/// `Sender: Aster, Karl Heinrich` or `Date of death: 19.12.1891`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Qualifier {
    AgentRole(AgentRole),
    DateKind(DateKind),
    PlaceKind(PlaceKind),
}

impl Qualifier {
    pub fn label(&self) -> &str {
        match self {
            Qualifier::AgentRole(r) => r.label(),
            Qualifier::DateKind(k) => k.label(),
            Qualifier::PlaceKind(k) => k.label(),
        }
    }

    /// The only property this kind of qualifier may be attached to.
    pub fn property(&self) -> PivotProperty {
        match self {
            Qualifier::AgentRole(_) => PivotProperty::RelatedPerson,
            Qualifier::DateKind(_) => PivotProperty::RelatedDate,
            Qualifier::PlaceKind(_) => PivotProperty::RelatedPlace,
        }
    }

    pub fn is_open(&self) -> bool {
        matches!(
            self,
            Qualifier::DateKind(DateKind::Other(_)) | Qualifier::PlaceKind(PlaceKind::Other(_))
        )
    }

    /// Reads a qualifier label in the context of `property`.
    ///
    /// Closed labels are matched exactly. Related dates and places also accept
    /// any other non-empty label as `Other`; related persons do not.
    pub fn from_label(property: PivotProperty, label: &str) -> Option<Qualifier> {
        match property {
            PivotProperty::RelatedPerson => AgentRole::from_label(label).map(Qualifier::AgentRole),
            PivotProperty::RelatedDate => {
                let kind = DateKind::CLOSED
                    .into_iter()
                    .find(|k| k.label() == label)
                    .or_else(|| (!label.trim().is_empty()).then(|| DateKind::Other(label.to_string())))?;
                Some(Qualifier::DateKind(kind))
            }
            PivotProperty::RelatedPlace => {
                let kind = PlaceKind::CLOSED
                    .into_iter()
                    .find(|k| k.label() == label)
                    .or_else(|| (!label.trim().is_empty()).then(|| PlaceKind::Other(label.to_string())))?;
                Some(Qualifier::PlaceKind(kind))
            }
            _ => None,
        }
    }

    /// Splits a `Label: value` prefix off a raw cell value.
    ///
    /// Open labels are only recognised when they look like a label (letters
    /// and spaces, at most 40 characters), so values such as
    /// `Red seal and postage stamp: "Sachsen..."` are not misread.
    pub fn split_prefix(property: PivotProperty, raw: &str) -> Option<(Qualifier, &str)> {
        if !property.accepts_qualifier() {
            return None;
        }
        let (label, rest) = raw.split_once(": ")?;
        let label_like = !label.is_empty()
            && label.chars().count() <= 40
            && label.chars().all(|c| c.is_alphabetic() || c == ' ')
            && label.trim() == label;
        if !label_like {
            return None;
        }
        let qualifier = Qualifier::from_label(property, label)?;
        Some((qualifier, rest.trim()))
    }
}

impl fmt::Display for Qualifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}
