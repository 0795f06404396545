//! Bidirectional metadata crosswalk for cultural-heritage records.
//!
//! Records are described once in a 21-property pivot schema ([`pivot`]) and
//! converted to and from Dublin Core, EAD, MODS, EDM and Digital Scriptorium
//! through a rule table ([`crosswalk`]). Each conversion yields a
//! [`crosswalk::LossReport`] listing what was dropped or bent. [`codec`]
//! reads and writes the wire formats and [`report`] renders and aggregates
//! loss reports.

pub mod codec;
pub mod crosswalk;
pub mod fixtures;
pub mod pivot;
pub mod report;
