//! Human- and machine-readable renderings of loss reports, round-trip diffs
//! and batch statistics.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::crosswalk::{FieldDiff, LossReport, RecordLevelLoss, Standard};
use crate::pivot::PropertyAssertion;

/// Text renderings stay within this many columns.
pub const TEXT_WIDTH: usize = 80;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Text,
}

/// JSON: the report's fields plus `strict_failure`, true when strict mode
/// would reject the conversion. Text: one table per section.
pub fn render_loss(report: &LossReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut value = serde_json::to_value(report).expect("loss report serializes");
            value
                .as_object_mut()
                .expect("report is an object")
                .insert("strict_failure".into(), report.has_dropped().into());
            let mut text = serde_json::to_string_pretty(&value).expect("JSON value serializes");
            text.push('\n');
            text
        }
        ReportFormat::Text => render_loss_text(report),
    }
}

/// Reads back the JSON rendering; `strict_failure` is derived, so ignored.
pub fn parse_loss_json(text: &str) -> Result<LossReport, serde_json::Error> {
    serde_json::from_str(text)
}

fn render_loss_text(r: &LossReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", clip(&format!("Loss report: {} -> {}", r.record_id, r.standard), TEXT_WIDTH));
    let _ = writeln!(
        out,
        "assertions {}  converted {}  dropped {}  approximated {}  alternative {}",
        r.total_assertions,
        r.converted.len(),
        r.dropped.len(),
        r.approximated.len(),
        r.alternative_resolved.len()
    );
    let _ = writeln!(out, "strict: {}", if r.has_dropped() { "fail" } else { "pass" });

    section(&mut out, "DROPPED", r.dropped.iter().map(|d| (d.index, &d.assertion, "Unmappable".to_string(), None)));
    section(
        &mut out,
        "APPROXIMATED",
        r.approximated
            .iter()
            .map(|a| (a.index, &a.assertion, format!("{:?} -> {}", a.rule, a.chosen), Some(a.note.as_str()))),
    );
    section(
        &mut out,
        "ALTERNATIVE RESOLVED",
        r.alternative_resolved
            .iter()
            .map(|a| (a.index, &a.assertion, format!("Alternative -> {} (of {})", a.chosen, a.options.len()), None)),
    );
    if !r.record_level.is_empty() {
        out.push_str("\nRECORD LEVEL\n");
        for loss in &r.record_level {
            let line = match loss {
                RecordLevelLoss::DigitalCounterpart { url } => format!("  digital counterpart {url}"),
                RecordLevelLoss::Extension { key, value } => format!("  extension {key} = {value}"),
            };
            let _ = writeln!(out, "{}", clip(&line, TEXT_WIDTH));
        }
    }
    out
}

fn section<'a>(
    out: &mut String,
    title: &str,
    rows: impl Iterator<Item = (usize, &'a PropertyAssertion, String, Option<&'a str>)>,
) {
    let _ = writeln!(out, "\n{title}");
    let mut any = false;
    for (index, assertion, rule, note) in rows {
        any = true;
        let qualifier = assertion.qualifier.as_ref().map(|q| format!(" [{}]", q.label())).unwrap_or_default();
        let head = format!("  #{index:<3} {}{qualifier}  {rule}", assertion.property);
        let _ = writeln!(out, "{}", clip(&head, TEXT_WIDTH));
        let _ = writeln!(out, "{}", clip(&format!("       value: {}", assertion.value), TEXT_WIDTH));
        if let Some(note) = note {
            let _ = writeln!(out, "{}", clip(&format!("       note: {note}"), TEXT_WIDTH));
        }
    }
    if !any {
        out.push_str("  (none)\n");
    }
}

fn clip(line: &str, width: usize) -> String {
    if line.chars().count() <= width {
        return line.to_string();
    }
    let mut s: String = line.chars().take(width - 3).collect();
    s.push_str("...");
    s
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counters {
    pub records: usize,
    pub assertions_converted: usize,
    pub dropped: usize,
    pub approximated: usize,
    pub alternative_resolved: usize,
}

impl Counters {
    fn add(&mut self, r: &LossReport) {
        self.records += 1;
        self.assertions_converted += r.converted.len();
        self.dropped += r.dropped.len();
        self.approximated += r.approximated.len();
        self.alternative_resolved += r.alternative_resolved.len();
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchSummary {
    /// All five standards, zero when no report targets one.
    pub per_standard: BTreeMap<Standard, Counters>,
    /// Dropped assertions per record id over all its reports, most first,
    /// ties by id.
    pub worst_records: Vec<(String, usize)>,
}

pub fn summarize(reports: &[LossReport]) -> BatchSummary {
    let mut per_standard: BTreeMap<Standard, Counters> = Standard::ALL.into_iter().map(|s| (s, Counters::default())).collect();
    let mut dropped: BTreeMap<&str, usize> = BTreeMap::new();
    for r in reports {
        per_standard.get_mut(&r.standard).expect("every standard present").add(r);
        *dropped.entry(&r.record_id).or_default() += r.dropped.len();
    }
    let mut worst_records: Vec<(String, usize)> = dropped.into_iter().map(|(id, n)| (id.to_string(), n)).collect();
    worst_records.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    BatchSummary { per_standard, worst_records }
}

pub fn render_summary(summary: &BatchSummary, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut text = serde_json::to_string_pretty(summary).expect("summary serializes");
            text.push('\n');
            text
        }
        ReportFormat::Text => {
            let mut out = format!(
                "{:<20} {:>7} {:>9} {:>7} {:>7} {:>11}\n",
                "standard", "records", "converted", "dropped", "approx", "alternative"
            );
            for (s, c) in &summary.per_standard {
                let _ = writeln!(
                    out,
                    "{:<20} {:>7} {:>9} {:>7} {:>7} {:>11}",
                    s.label(),
                    c.records,
                    c.assertions_converted,
                    c.dropped,
                    c.approximated,
                    c.alternative_resolved
                );
            }
            if !summary.worst_records.is_empty() {
                out.push_str("\nmost dropped\n");
                for (id, n) in &summary.worst_records {
                    let _ = writeln!(out, "{}", clip(&format!("{n:>5}  {id}"), TEXT_WIDTH));
                }
            }
            out
        }
    }
}

/// Round-trip differences; empty input renders as a single "no differences"
/// line in text form and `[]` in JSON.
pub fn render_diff(diff: &[FieldDiff], format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut text = serde_json::to_string_pretty(diff).expect("diff serializes");
            text.push('\n');
            text
        }
        ReportFormat::Text => {
            if diff.is_empty() {
                return "no differences\n".to_string();
            }
            let show = |vals: &[String]| vals.join(" | ");
            let mut out = String::new();
            for d in diff {
                let _ = writeln!(out, "{}", d.property);
                let _ = writeln!(out, "{}", clip(&format!("  - {}", show(&d.expected)), TEXT_WIDTH));
                let _ = writeln!(out, "{}", clip(&format!("  + {}", show(&d.actual)), TEXT_WIDTH));
            }
            out
        }
    }
}
