use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::codec::MediaKind;

/// The five target metadata standards, in crosswalk column order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Standard {
    DublinCore,
    Ead,
    Mods,
    Edm,
    DigitalScriptorium,
}

impl Standard {
    pub const ALL: [Standard; 5] = [
        Standard::DublinCore,
        Standard::Ead,
        Standard::Mods,
        Standard::Edm,
        Standard::DigitalScriptorium,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    /// Short lowercase name, used on the command line and in extension keys.
    pub fn slug(self) -> &'static str {
        match self {
            Standard::DublinCore => "dc",
            Standard::Ead => "ead",
            Standard::Mods => "mods",
            Standard::Edm => "edm",
            Standard::DigitalScriptorium => "ds",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Standard::DublinCore => "DublinCore",
            Standard::Ead => "EAD",
            Standard::Mods => "MODS",
            Standard::Edm => "EDM",
            Standard::DigitalScriptorium => "Digital Scriptorium",
        }
    }

    pub fn csv_column(self) -> &'static str {
        match self {
            Standard::DublinCore => "dublin_core",
            Standard::Ead => "ead",
            Standard::Mods => "mods",
            Standard::Edm => "edm",
            Standard::DigitalScriptorium => "digital_scriptorium",
        }
    }

    pub fn media_kind(self) -> MediaKind {
        match self {
            Standard::Ead | Standard::Mods => MediaKind::Xml,
            Standard::DublinCore | Standard::Edm => MediaKind::Turtle,
            Standard::DigitalScriptorium => MediaKind::Json,
        }
    }

    /// Prefix of extension keys holding content this standard could not place.
    pub fn extension_prefix(self) -> String {
        format!("x-{}:", self.slug())
    }
}

impl fmt::Display for Standard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown standard `{0}` (expected one of dc, ead, mods, edm, ds)")]
pub struct UnknownStandard(pub String);

impl FromStr for Standard {
    type Err = UnknownStandard;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_lowercase().replace([' ', '-'], "_");
        Standard::ALL
            .into_iter()
            .find(|st| {
                key == st.slug() || key == st.csv_column() || key == st.label().to_ascii_lowercase().replace(' ', "_")
            })
            .ok_or_else(|| UnknownStandard(s.to_string()))
    }
}
