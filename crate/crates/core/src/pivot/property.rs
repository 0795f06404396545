use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// The closed set of descriptive properties of the pivot schema.
///
/// Declaration order is significant: it is the row order of the crosswalk
/// table and the priority order used when a foreign element could be read
/// back as more than one property.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PivotProperty {
    Title,
    AlternativeTitle,
    Author,
    TypeOfDocument,
    Language,
    Identifier,
    PhysicalExtent,
    MaterialInformation,
    PlaceOfOrigin,
    CreationDate,
    CurrentLocation,
    CustodyHistory,
    Publisher,
    OtherEditions,
    RelatedDate,
    RelatedPlace,
    RelatedPerson,
    ExternalLink,
    DescriptionNotes,
    TypographyNote,
    Keywords,
}

impl PivotProperty {
    pub const ALL: [PivotProperty; 21] = [
        PivotProperty::Title,
        PivotProperty::AlternativeTitle,
        PivotProperty::Author,
        PivotProperty::TypeOfDocument,
        PivotProperty::Language,
        PivotProperty::Identifier,
        PivotProperty::PhysicalExtent,
        PivotProperty::MaterialInformation,
        PivotProperty::PlaceOfOrigin,
        PivotProperty::CreationDate,
        PivotProperty::CurrentLocation,
        PivotProperty::CustodyHistory,
        PivotProperty::Publisher,
        PivotProperty::OtherEditions,
        PivotProperty::RelatedDate,
        PivotProperty::RelatedPlace,
        PivotProperty::RelatedPerson,
        PivotProperty::ExternalLink,
        PivotProperty::DescriptionNotes,
        PivotProperty::TypographyNote,
        PivotProperty::Keywords,
    ];

    /// UpperCamelCase name used in the interchange format.
    pub fn canonical_name(self) -> &'static str {
        match self {
            PivotProperty::Title => "Title",
            PivotProperty::AlternativeTitle => "AlternativeTitle",
            PivotProperty::Author => "Author",
            PivotProperty::TypeOfDocument => "TypeOfDocument",
            PivotProperty::Language => "Language",
            PivotProperty::Identifier => "Identifier",
            PivotProperty::PhysicalExtent => "PhysicalExtent",
            PivotProperty::MaterialInformation => "MaterialInformation",
            PivotProperty::PlaceOfOrigin => "PlaceOfOrigin",
            PivotProperty::CreationDate => "CreationDate",
            PivotProperty::CurrentLocation => "CurrentLocation",
            PivotProperty::CustodyHistory => "CustodyHistory",
            PivotProperty::Publisher => "Publisher",
            PivotProperty::OtherEditions => "OtherEditions",
            PivotProperty::RelatedDate => "RelatedDate",
            PivotProperty::RelatedPlace => "RelatedPlace",
            PivotProperty::RelatedPerson => "RelatedPerson",
            PivotProperty::ExternalLink => "ExternalLink",
            PivotProperty::DescriptionNotes => "DescriptionNotes",
            PivotProperty::TypographyNote => "TypographyNote",
            PivotProperty::Keywords => "Keywords",
        }
    }

    /// Human-readable label, as catalogers write it.
    pub fn label(self) -> &'static str {
        match self {
            PivotProperty::Title => "Title",
            PivotProperty::AlternativeTitle => "Alternative title",
            PivotProperty::Author => "Author",
            PivotProperty::TypeOfDocument => "Type of document",
            PivotProperty::Language => "Language",
            PivotProperty::Identifier => "Identifier",
            PivotProperty::PhysicalExtent => "Physical extent",
            PivotProperty::MaterialInformation => "Material information",
            PivotProperty::PlaceOfOrigin => "Place of origin",
            PivotProperty::CreationDate => "Creation Date",
            PivotProperty::CurrentLocation => "Current location",
            PivotProperty::CustodyHistory => "Custody history",
            PivotProperty::Publisher => "Publisher",
            PivotProperty::OtherEditions => "Other editions",
            PivotProperty::RelatedDate => "Related date",
            PivotProperty::RelatedPlace => "Related place",
            PivotProperty::RelatedPerson => "Related person",
            PivotProperty::ExternalLink => "External link",
            PivotProperty::DescriptionNotes => "Description / Notes",
            PivotProperty::TypographyNote => "Typography note",
            PivotProperty::Keywords => "Keywords",
        }
    }

    /// Whether assertions of this property may carry a [`Qualifier`](super::Qualifier).
    pub fn accepts_qualifier(self) -> bool {
        matches!(
            self,
            PivotProperty::RelatedPerson | PivotProperty::RelatedDate | PivotProperty::RelatedPlace
        )
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for PivotProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.canonical_name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown pivot property `{0}`")]
pub struct UnknownProperty(pub String);

impl FromStr for PivotProperty {
    type Err = UnknownProperty;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PivotProperty::ALL
            .iter()
            .copied()
            .find(|p| p.canonical_name() == s)
            .ok_or_else(|| UnknownProperty(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_set_of_21() {
        assert_eq!(PivotProperty::ALL.len(), 21);
        for (i, p) in PivotProperty::ALL.iter().enumerate() {
            assert_eq!(p.index(), i);
            assert_eq!(p.canonical_name().parse::<PivotProperty>().unwrap(), *p);
        }
    }

    #[test]
    fn labels_are_not_names() {
        assert!("Alternative title".parse::<PivotProperty>().is_err());
        assert!("title".parse::<PivotProperty>().is_err());
    }
}
