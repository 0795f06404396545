//! The pivot schema: 21 descriptive properties, qualified assertions and the
//! records that hold them.

mod interchange;
mod normalize;
mod property;
mod qualifier;
mod record;
mod validate;

pub use interchange::{parse_pivot, serialize_pivot, PivotError, SchemaError};
pub use normalize::{normalize, normalize_dates, normalize_languages, parse_catalog_date, LanguageLookup};
pub use property::{PivotProperty, UnknownProperty};
pub use qualifier::{AgentRole, DateKind, PlaceKind, Qualifier};
pub use record::{Extension, IsoDate, NormalizedValue, PivotRecord, PropertyAssertion};
pub use validate::{is_qualified_key, validate_pivot, Location, Violation, ViolationRule, CELL_SEPARATOR};
