use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use ch_crosswalk::codec::{decode, encode, Document};
use ch_crosswalk::crosswalk::{map_backward, map_forward_with, Ambiguity, CrosswalkTable, ForwardOptions, LossReport, Standard};
use ch_crosswalk::pivot::{parse_pivot, serialize_pivot, validate_pivot, PivotRecord};
use ch_crosswalk::report::{render_loss, ReportFormat};
use rayon::prelude::*;

use crate::status::{CliError, Status};

/// One end of a conversion: the pivot interchange form or a standard.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Pivot,
    Standard(Standard),
}

impl FromStr for Side {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("pivot") {
            return Ok(Side::Pivot);
        }
        s.parse().map(Side::Standard).map_err(|e: ch_crosswalk::crosswalk::UnknownStandard| format!("{e}, or pivot"))
    }
}

impl Side {
    /// File extension used for batch input filtering and output naming.
    pub fn extension(self) -> &'static str {
        match self {
            Side::Pivot => "json",
            Side::Standard(s) => s.media_kind().extension(),
        }
    }
}

pub struct Conversion {
    pub output: String,
    /// Present when the conversion ends in a standard.
    pub report: Option<LossReport>,
    /// Present when the conversion starts from a standard.
    pub ambiguities: Vec<Ambiguity>,
}

pub fn read_record(text: &str, from: Side, table: &CrosswalkTable) -> Result<(PivotRecord, Vec<Ambiguity>), CliError> {
    match from {
        Side::Pivot => Ok((parse_pivot(text)?, Vec::new())),
        Side::Standard(s) => {
            let model = decode(&Document::new(s, text))?;
            let (record, ambiguities) = map_backward(&model, s, table);
            let violations = validate_pivot(&record);
            if !violations.is_empty() {
                let list: Vec<String> = violations.iter().map(ToString::to_string).collect();
                return Err(CliError::new(Status::Schema, format!("document reads back as an invalid record: {}", list.join("; "))));
            }
            Ok((record, ambiguities))
        }
    }
}

/// Routes through the pivot when neither side is the pivot.
pub fn convert_text(
    text: &str,
    from: Side,
    to: Side,
    table: &CrosswalkTable,
    options: &ForwardOptions,
) -> Result<Conversion, CliError> {
    let (record, ambiguities) = read_record(text, from, table)?;
    match to {
        Side::Pivot => Ok(Conversion { output: serialize_pivot(&record), report: None, ambiguities }),
        Side::Standard(s) => {
            let (model, report) = map_forward_with(&record, s, table, options)?;
            let document = encode(&model)?;
            Ok(Conversion { output: document.text, report: Some(report), ambiguities })
        }
    }
}

/// Writes through a temporary file in the target directory, then renames,
/// so readers never see a partial file.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| CliError::io(path, e))?;
    tmp.write_all(contents.as_bytes()).map_err(|e| CliError::io(path, e))?;
    tmp.persist(path).map_err(|e| CliError::io(path, e.error))?;
    Ok(())
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

pub struct BatchJob<'a> {
    pub from: Side,
    pub to: Side,
    pub input: &'a Path,
    pub output: &'a Path,
    pub loss_dir: Option<&'a Path>,
    pub format: ReportFormat,
    pub strict: bool,
    pub table: &'a CrosswalkTable,
    pub options: &'a ForwardOptions,
}

pub struct FileOutcome {
    pub input: PathBuf,
    pub report: Option<LossReport>,
    pub result: Result<(), CliError>,
}

pub fn report_file_name(stem: &str, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => format!("{stem}.loss.json"),
        ReportFormat::Text => format!("{stem}.loss.txt"),
    }
}

/// Converts every file in `input` carrying the source extension, in
/// parallel. Files are independent: one failure does not stop the others.
pub fn run_batch(job: &BatchJob<'_>) -> Result<Vec<FileOutcome>, CliError> {
    let mut inputs: Vec<PathBuf> = fs::read_dir(job.input)
        .map_err(|e| CliError::io(job.input, e))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == job.from.extension()))
        .collect();
    inputs.sort();
    fs::create_dir_all(job.output).map_err(|e| CliError::io(job.output, e))?;
    if let Some(dir) = job.loss_dir {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }

    Ok(inputs.into_par_iter().map(|input| convert_file(job, input)).collect())
}

fn convert_file(job: &BatchJob<'_>, input: PathBuf) -> FileOutcome {
    let stem = input.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let conversion = read_text(&input).and_then(|text| convert_text(&text, job.from, job.to, job.table, job.options));
    let conversion = match conversion {
        Ok(c) => c,
        Err(e) => return FileOutcome { input, report: None, result: Err(e) },
    };
    let mut result = Ok(());
    if let (Some(dir), Some(report)) = (job.loss_dir, &conversion.report) {
        result = write_atomic(&dir.join(report_file_name(&stem, job.format)), &render_loss(report, job.format));
    }
    let lossy = conversion.report.as_ref().is_some_and(LossReport::has_dropped);
    if result.is_ok() {
        result = if job.strict && lossy {
            Err(CliError::new(Status::StrictLoss, "dropped assertions under --strict; output not written"))
        } else {
            write_atomic(&job.output.join(format!("{stem}.{}", job.to.extension())), &conversion.output)
        };
    }
    FileOutcome { input, report: conversion.report, result }
}
