use std::fmt;

use ch_crosswalk::codec::CodecError;
use ch_crosswalk::crosswalk::CrosswalkError;
use ch_crosswalk::pivot::PivotError;

/// Process exit statuses. Each failure class has its own code so scripts can
/// tell an unreadable file from a lossy conversion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    /// `roundtrip` found differences.
    Differs = 1,
    Usage = 2,
    Parse = 3,
    /// Invariant violations, or a record the crosswalk cannot place.
    Schema = 4,
    /// `--strict` and the loss report has dropped assertions.
    StrictLoss = 5,
    Io = 6,
}

impl Status {
    pub fn code(self) -> i32 {
        self as i32
    }

    /// Batch runs report the most severe per-file failure: I/O first, then
    /// parse, schema and strict loss.
    pub fn severity(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Differs => 1,
            Status::StrictLoss => 2,
            Status::Schema => 3,
            Status::Parse => 4,
            Status::Usage => 5,
            Status::Io => 6,
        }
    }
}

#[derive(Debug)]
pub struct CliError {
    pub status: Status,
    pub message: String,
}

impl CliError {
    pub fn new(status: Status, message: impl Into<String>) -> Self {
        CliError { status, message: message.into() }
    }

    pub fn io(path: &std::path::Path, e: std::io::Error) -> Self {
        CliError::new(Status::Io, format!("{}: {e}", path.display()))
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<PivotError> for CliError {
    fn from(e: PivotError) -> Self {
        let status = match e {
            PivotError::MalformedDocument(_) => Status::Parse,
            PivotError::SchemaViolation(_) | PivotError::EmptyValue { .. } => Status::Schema,
        };
        CliError::new(status, e.to_string())
    }
}

impl From<CodecError> for CliError {
    fn from(e: CodecError) -> Self {
        let status = match e {
            CodecError::MalformedDocument(_) | CodecError::WrongStandard { .. } => Status::Parse,
            _ => Status::Schema,
        };
        CliError::new(status, e.to_string())
    }
}

impl From<CrosswalkError> for CliError {
    fn from(e: CrosswalkError) -> Self {
        let status = match e {
            CrosswalkError::Uri(_) => Status::Usage,
            _ => Status::Schema,
        };
        CliError::new(status, e.to_string())
    }
}
