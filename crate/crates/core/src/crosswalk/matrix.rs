use serde::Serialize;

use super::{CrosswalkTable, KindTag, Standard};
use crate::pivot::PivotProperty;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatrixCell {
    pub standard: Standard,
    pub kind: KindTag,
    /// Crosswalk-cell notation, `--` when unmappable.
    pub rendered: String,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub forward_only: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatrixRow {
    pub property: PivotProperty,
    pub label: &'static str,
    pub cells: Vec<MatrixCell>,
}

/// Property × standard grid summarising a crosswalk table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverageMatrix {
    pub rows: Vec<MatrixRow>,
}

pub const CSV_HEADER: [&str; 6] = ["property", "dublin_core", "ead", "mods", "edm", "digital_scriptorium"];

pub fn coverage_matrix(table: &CrosswalkTable) -> CoverageMatrix {
    let rows = PivotProperty::ALL
        .into_iter()
        .map(|property| MatrixRow {
            property,
            label: property.label(),
            cells: Standard::ALL
                .into_iter()
                .map(|standard| {
                    let rule = table.rule(property, standard);
                    MatrixCell {
                        standard,
                        kind: rule.kind.tag(),
                        rendered: rule.kind.render(),
                        forward_only: rule.forward_only,
                    }
                })
                .collect(),
        })
        .collect();
    CoverageMatrix { rows }
}

impl CoverageMatrix {
    pub fn cell(&self, property: PivotProperty, standard: Standard) -> &MatrixCell {
        &self.rows[property.index()].cells[standard.index()]
    }

    /// RFC 4180 CSV with `\n` line ends.
    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        w.write_record(CSV_HEADER).expect("write to memory");
        for row in &self.rows {
            let mut record = vec![row.label];
            record.extend(row.cells.iter().map(|c| c.rendered.as_str()));
            w.write_record(&record).expect("write to memory");
        }
        String::from_utf8(w.into_inner().expect("flush to memory")).expect("CSV of UTF-8 input is UTF-8")
    }

    /// GitHub-flavoured Markdown table; cells in code spans, `|` escaped.
    pub fn to_markdown(&self) -> String {
        let mut out = String::from("| Property |");
        for s in Standard::ALL {
            out.push_str(&format!(" {} |", s.label()));
        }
        out.push_str("\n|---|");
        out.push_str(&"---|".repeat(Standard::ALL.len()));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&format!("| {} |", row.label));
            for c in &row.cells {
                out.push_str(&format!(" `{}` |", c.rendered.replace('|', "\\|")));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("matrix serializes");
        text.push('\n');
        text
    }

    /// (property, standard) pairs whose rendered cells differ.
    pub fn diff(&self, other: &CoverageMatrix) -> Vec<(PivotProperty, Standard)> {
        let mut out = Vec::new();
        for (a, b) in self.rows.iter().zip(&other.rows) {
            for (ca, cb) in a.cells.iter().zip(&b.cells) {
                if ca.rendered != cb.rendered {
                    out.push((a.property, ca.standard));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crosswalk::{builtin_table, MappingKind, MappingRule};

    #[test]
    fn keywords_ead_cell() {
        let m = coverage_matrix(&builtin_table());
        assert_eq!(m.cell(PivotProperty::Keywords, Standard::Ead).rendered, "<controlaccess><subject></controlaccess>");
        let typography = &m.rows[PivotProperty::TypographyNote.index()];
        assert_eq!(typography.cells.iter().filter(|c| c.kind == KindTag::Unmappable).count(), 5);
    }

    #[test]
    fn one_flipped_rule_changes_one_cell() {
        let t = builtin_table();
        let flipped = t
            .with_rule(MappingRule::new(PivotProperty::Title, Standard::Mods, MappingKind::Unmappable))
            .unwrap();
        let diff = coverage_matrix(&t).diff(&coverage_matrix(&flipped));
        assert_eq!(diff, [(PivotProperty::Title, Standard::Mods)]);
    }

    #[test]
    fn renderings() {
        let m = coverage_matrix(&builtin_table());
        let csv = m.to_csv();
        assert!(csv.starts_with("property,dublin_core,ead,mods,edm,digital_scriptorium\nTitle,dc:title,<unittitle>,"));
        assert_eq!(csv.lines().count(), 22);
        let md = m.to_markdown();
        assert!(md.starts_with("| Property | DublinCore | EAD | MODS | EDM | Digital Scriptorium |\n"));
        let json: serde_json::Value = serde_json::from_str(&m.to_json()).unwrap();
        assert_eq!(json["rows"].as_array().unwrap().len(), 21);
    }
}
