//! The three catalog records used throughout the tests and demos: a letter
//! (manuscript), a circus placard and a printed obituary.

use crate::pivot::{parse_pivot, PivotRecord};

pub const MANUSCRIPT_JSON: &str = include_str!("../fixtures/manuscript.json");
pub const PLACARD_JSON: &str = include_str!("../fixtures/placard.json");
pub const OBITUARY_JSON: &str = include_str!("../fixtures/obituary.json");

pub const NAMES: [&str; 3] = ["manuscript", "placard", "obituary"];

pub fn json(name: &str) -> Option<&'static str> {
    match name {
        "manuscript" => Some(MANUSCRIPT_JSON),
        "placard" => Some(PLACARD_JSON),
        "obituary" => Some(OBITUARY_JSON),
        _ => None,
    }
}

pub fn manuscript() -> PivotRecord {
    parse_pivot(MANUSCRIPT_JSON).expect("manuscript fixture parses")
}

pub fn placard() -> PivotRecord {
    parse_pivot(PLACARD_JSON).expect("placard fixture parses")
}

pub fn obituary() -> PivotRecord {
    parse_pivot(OBITUARY_JSON).expect("obituary fixture parses")
}

/// All three, in catalog order.
pub fn all() -> Vec<(&'static str, PivotRecord)> {
    vec![("manuscript", manuscript()), ("placard", placard()), ("obituary", obituary())]
}
