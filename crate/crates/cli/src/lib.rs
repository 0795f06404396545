//! `ch-crosswalk` command line: convert records between the pivot form and
//! the five standards, validate them, print the coverage matrix and check
//! round trips.
//!
//! Exit statuses are listed on [`Status`].

mod convert;
mod status;

use std::io::Write;
use std::path::{Path, PathBuf};

use ch_crosswalk::crosswalk::{builtin_table, coverage_matrix, round_trip, ForwardOptions, Standard, DEFAULT_BASE_URI};
use ch_crosswalk::pivot::{parse_pivot, validate_pivot, PivotError, SchemaError};
use ch_crosswalk::report::{render_diff, render_loss, render_summary, summarize, ReportFormat};
use clap::{Parser, Subcommand, ValueEnum};

pub use convert::{convert_text, write_atomic, Side};
pub use status::{CliError, Status};

#[derive(Debug, Parser)]
#[command(name = "ch-crosswalk", version, about = "Cultural-heritage metadata crosswalk with loss reports")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum LossFormat {
    Json,
    Text,
}

impl From<LossFormat> for ReportFormat {
    fn from(f: LossFormat) -> Self {
        match f {
            LossFormat::Json => ReportFormat::Json,
            LossFormat::Text => ReportFormat::Text,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MatrixFormat {
    Csv,
    Markdown,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Convert one file, or every file of a directory, between two forms.
    Convert {
        /// `pivot` or a standard: dc, ead, mods, edm, ds.
        #[arg(long, default_value = "pivot")]
        from: Side,
        #[arg(long)]
        to: Side,
        /// A file, or a directory for batch mode.
        #[arg(long)]
        input: PathBuf,
        /// Output file (stdout when absent), or directory in batch mode.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Loss report file, or directory in batch mode.
        #[arg(long)]
        loss_report: Option<PathBuf>,
        /// Loss report and batch summary format.
        #[arg(long, value_enum, default_value = "json")]
        format: LossFormat,
        /// Base for record URIs; the percent-encoded record id is appended.
        #[arg(long, env = "CH_CROSSWALK_BASE_URI", default_value = DEFAULT_BASE_URI)]
        base_uri: String,
        /// Fail, and skip the output, when any assertion is dropped.
        #[arg(long)]
        strict: bool,
    },
    /// Check a record against the pivot invariants.
    Validate {
        #[arg(long, default_value = "pivot")]
        from: Side,
        #[arg(long)]
        input: PathBuf,
    },
    /// Print the property-by-standard coverage matrix.
    Matrix {
        #[arg(long, value_enum, default_value = "csv")]
        format: MatrixFormat,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Convert a pivot record to a standard and back, and diff the fields
    /// that should survive unchanged.
    Roundtrip {
        #[arg(long, alias = "to")]
        via: Standard,
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: LossFormat,
        #[arg(long, env = "CH_CROSSWALK_BASE_URI", default_value = DEFAULT_BASE_URI)]
        base_uri: String,
    },
}

/// Parses `args` (program name first) and runs the command, returning the
/// exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() { Status::Usage } else { Status::Ok };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return status.code();
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(status) => status.code(),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.status.code()
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<Status, CliError> {
    let table = builtin_table();
    match command {
        Command::Convert { from, to, input, output, loss_report, format, base_uri, strict } => {
            let options = ForwardOptions { base_uri, ..ForwardOptions::default() };
            if from == to {
                return Err(CliError::new(Status::Usage, "--from and --to name the same form"));
            }
            if loss_report.is_some() && to == Side::Pivot {
                return Err(CliError::new(Status::Usage, "--loss-report needs a standard as --to"));
            }
            if input.is_dir() {
                let Some(output) = output else {
                    return Err(CliError::new(Status::Usage, "batch mode needs --output <directory>"));
                };
                let job = convert::BatchJob {
                    from,
                    to,
                    input: &input,
                    output: &output,
                    loss_dir: loss_report.as_deref(),
                    format: format.into(),
                    strict,
                    table: &table,
                    options: &options,
                };
                batch(&job, out, err)
            } else {
                single(from, to, &input, output.as_deref(), loss_report.as_deref(), format.into(), strict, &table, &options, out, err)
            }
        }
        Command::Validate { from, input } => validate(from, &input, &table, out),
        Command::Matrix { format, output } => {
            let matrix = coverage_matrix(&table);
            let text = match format {
                MatrixFormat::Csv => matrix.to_csv(),
                MatrixFormat::Markdown => matrix.to_markdown(),
                MatrixFormat::Json => matrix.to_json(),
            };
            emit(output.as_deref(), &text, out)?;
            Ok(Status::Ok)
        }
        Command::Roundtrip { via, input, format, base_uri } => {
            let record = parse_pivot(&convert::read_text(&input)?)?;
            let options = ForwardOptions { base_uri, ..ForwardOptions::default() };
            let rt = round_trip(&record, via, &table, &options).map_err(|e| match e {
                ch_crosswalk::crosswalk::RoundTripError::Crosswalk(e) => CliError::from(e),
                ch_crosswalk::crosswalk::RoundTripError::Codec(e) => CliError::from(e),
            })?;
            let _ = write!(out, "{}", render_diff(&rt.diff, format.into()));
            for a in &rt.ambiguities {
                let _ = writeln!(err, "note: {} read as {} (could also be {:?})", a.path, a.chosen, a.alternatives);
            }
            Ok(if rt.diff.is_empty() { Status::Ok } else { Status::Differs })
        }
    }
}

fn emit(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(p) => write_atomic(p, text),
        None => out.write_all(text.as_bytes()).map_err(|e| CliError::io(Path::new("<stdout>"), e)),
    }
}

#[allow(clippy::too_many_arguments)]
fn single(
    from: Side,
    to: Side,
    input: &Path,
    output: Option<&Path>,
    loss_report: Option<&Path>,
    format: ReportFormat,
    strict: bool,
    table: &ch_crosswalk::crosswalk::CrosswalkTable,
    options: &ForwardOptions,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<Status, CliError> {
    let text = convert::read_text(input)?;
    let conversion = convert_text(&text, from, to, table, options)?;
    for a in &conversion.ambiguities {
        let _ = writeln!(err, "note: {} read as {} (could also be {:?})", a.path, a.chosen, a.alternatives);
    }
    if let (Some(path), Some(report)) = (loss_report, &conversion.report) {
        write_atomic(path, &render_loss(report, format))?;
    }
    if strict && conversion.report.as_ref().is_some_and(|r| r.has_dropped()) {
        let n = conversion.report.as_ref().map_or(0, |r| r.dropped.len());
        return Err(CliError::new(Status::StrictLoss, format!("{n} assertion(s) dropped under --strict; output not written")));
    }
    emit(output, &conversion.output, out)?;
    Ok(Status::Ok)
}

fn batch(job: &convert::BatchJob<'_>, out: &mut dyn Write, err: &mut dyn Write) -> Result<Status, CliError> {
    let outcomes = convert::run_batch(job)?;
    let mut status = Status::Ok;
    let mut reports = Vec::new();
    for o in outcomes {
        if let Err(e) = &o.result {
            let _ = writeln!(err, "error: {}: {e}", o.input.display());
            if e.status.severity() > status.severity() {
                status = e.status;
            }
        }
        reports.extend(o.report);
    }
    if job.to != Side::Pivot {
        let _ = write!(out, "{}", render_summary(&summarize(&reports), job.format));
    }
    Ok(status)
}

fn validate(from: Side, input: &Path, table: &ch_crosswalk::crosswalk::CrosswalkTable, out: &mut dyn Write) -> Result<Status, CliError> {
    let text = convert::read_text(input)?;
    let violations = match from {
        Side::Pivot => match parse_pivot(&text) {
            Ok(record) => validate_pivot(&record),
            Err(PivotError::SchemaViolation(SchemaError::Invalid(v))) => v,
            Err(e) => return Err(e.into()),
        },
        Side::Standard(_) => match convert::read_record(&text, from, table) {
            Ok(_) => Vec::new(),
            Err(e) => return Err(e),
        },
    };
    if violations.is_empty() {
        let _ = writeln!(out, "valid");
        return Ok(Status::Ok);
    }
    for v in &violations {
        let _ = writeln!(out, "{v}");
    }
    Ok(Status::Schema)
}
