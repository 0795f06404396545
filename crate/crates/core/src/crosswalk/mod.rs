//! The crosswalk between the pivot schema and the five standards: the rule
//! table, both mapping directions, loss accounting and the coverage matrix.

mod backward;
mod forward;
mod loss;
mod matrix;
mod path;
mod roundtrip;
mod rule;
mod standard;
mod table;

pub use backward::{map_backward, Ambiguity};
pub use forward::{
    map_forward, map_forward_traced, map_forward_with, CrosswalkError, EdmTypeLookup, ForwardOptions, ForwardOutput,
    NodeOrigin, DEFAULT_BASE_URI, EDM_TYPE, ROLE_ANNOTATION,
};
pub use loss::{ApproximatedAssertion, DropReason, DroppedAssertion, LossReport, RecordLevelLoss, ResolvedAssertion};
pub use matrix::{coverage_matrix, CoverageMatrix, MatrixCell, MatrixRow, CSV_HEADER};
pub use path::{ElementPath, PathError};
pub use roundtrip::{exact_round_trip_properties, field_diff, round_trip, FieldDiff, RoundTrip, RoundTripError};
pub use rule::{KindTag, MappingKind, MappingRule, Resolution, Resolver, RoleResolver, UnknownQualifier};
pub use standard::{Standard, UnknownStandard};
pub use table::{builtin_table, CrosswalkTable, TableError, RECEIVER_NOTE, SENDER_NOTE};
