use serde::{Deserialize, Serialize};

use super::{ElementPath, KindTag, Standard};
use crate::pivot::PropertyAssertion;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DropReason {
    Unmappable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DroppedAssertion {
    pub index: usize,
    pub assertion: PropertyAssertion,
    pub reason: DropReason,
}

/// Placed under a target whose meaning only approximates the assertion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApproximatedAssertion {
    pub index: usize,
    pub assertion: PropertyAssertion,
    /// `Approximate`, or `Alternative` when the chosen option carries a note.
    pub rule: KindTag,
    pub chosen: ElementPath,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolvedAssertion {
    pub index: usize,
    pub assertion: PropertyAssertion,
    pub chosen: ElementPath,
    pub options: Vec<ElementPath>,
}

/// Record data outside the assertion list that the target could not hold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum RecordLevelLoss {
    DigitalCounterpart { url: String },
    Extension { key: String, value: String },
}

/// Audit trail of one forward conversion.
///
/// Every input assertion index appears in exactly one of `converted`,
/// `dropped`, `approximated` and `alternative_resolved`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LossReport {
    pub record_id: String,
    pub standard: Standard,
    pub total_assertions: usize,
    /// Indices of assertions placed without loss.
    pub converted: Vec<usize>,
    pub dropped: Vec<DroppedAssertion>,
    pub approximated: Vec<ApproximatedAssertion>,
    pub alternative_resolved: Vec<ResolvedAssertion>,
    #[serde(default)]
    pub record_level: Vec<RecordLevelLoss>,
}

impl LossReport {
    pub fn new(record_id: impl Into<String>, standard: Standard, total_assertions: usize) -> Self {
        LossReport {
            record_id: record_id.into(),
            standard,
            total_assertions,
            converted: Vec::new(),
            dropped: Vec::new(),
            approximated: Vec::new(),
            alternative_resolved: Vec::new(),
            record_level: Vec::new(),
        }
    }

    /// The condition strict mode fails on.
    pub fn has_dropped(&self) -> bool {
        !self.dropped.is_empty()
    }

    pub fn accounted(&self) -> usize {
        self.converted.len() + self.dropped.len() + self.approximated.len() + self.alternative_resolved.len()
    }

    /// Each assertion index `0..total_assertions` is accounted for exactly once.
    pub fn is_conserved(&self) -> bool {
        let mut seen = vec![0u8; self.total_assertions];
        let indices = self
            .converted
            .iter()
            .copied()
            .chain(self.dropped.iter().map(|d| d.index))
            .chain(self.approximated.iter().map(|a| a.index))
            .chain(self.alternative_resolved.iter().map(|r| r.index));
        for i in indices {
            match seen.get_mut(i) {
                Some(slot) => *slot += 1,
                None => return false,
            }
        }
        seen.iter().all(|&n| n == 1)
    }
}
