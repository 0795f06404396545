//! Browser bindings for the crosswalk: convert a record, show the coverage
//! matrix, validate a pivot record. Each export has a plain Rust twin in
//! [`ops`] that the native tests call; the exports only translate errors.

use wasm_bindgen::prelude::*;

pub mod ops {
    use ch_crosswalk::codec::{decode, encode, Document};
    use ch_crosswalk::crosswalk::{builtin_table, coverage_matrix, map_backward, map_forward_with, ForwardOptions, Standard};
    use ch_crosswalk::fixtures;
    use ch_crosswalk::pivot::{parse_pivot, serialize_pivot, validate_pivot, PivotError, SchemaError};
    use ch_crosswalk::report::{render_loss, ReportFormat};
    use serde_json::{json, Value};

    fn side(name: &str) -> Result<Option<Standard>, String> {
        if name.eq_ignore_ascii_case("pivot") {
            Ok(None)
        } else {
            name.parse().map(Some).map_err(|e| format!("{e}"))
        }
    }

    /// Converts `input` between `from` and `to` (`pivot` or a standard).
    /// Returns JSON `{output, loss_report, ambiguities}`; `loss_report` is
    /// null when the target is the pivot form.
    pub fn convert(input: &str, from: &str, to: &str, base_uri: &str) -> Result<String, String> {
        let table = builtin_table();
        let (from, to) = (side(from)?, side(to)?);
        let (record, ambiguities) = match from {
            None => (parse_pivot(input).map_err(|e| e.to_string())?, Vec::new()),
            Some(s) => {
                let model = decode(&Document::new(s, input)).map_err(|e| e.to_string())?;
                map_backward(&model, s, &table)
            }
        };
        let (output, report) = match to {
            None => (serialize_pivot(&record), Value::Null),
            Some(s) => {
                let options = ForwardOptions { base_uri: base_uri.to_string(), ..ForwardOptions::default() };
                let (model, report) = map_forward_with(&record, s, &table, &options).map_err(|e| e.to_string())?;
                let doc = encode(&model).map_err(|e| e.to_string())?;
                let report: Value =
                    serde_json::from_str(&render_loss(&report, ReportFormat::Json)).map_err(|e| e.to_string())?;
                (doc.text, report)
            }
        };
        Ok(json!({ "output": output, "loss_report": report, "ambiguities": ambiguities }).to_string())
    }

    /// The coverage matrix as `csv`, `markdown` or `json`.
    pub fn matrix(format: &str) -> Result<String, String> {
        let m = coverage_matrix(&builtin_table());
        match format {
            "csv" => Ok(m.to_csv()),
            "markdown" => Ok(m.to_markdown()),
            "json" => Ok(m.to_json()),
            other => Err(format!("unknown matrix format `{other}` (csv, markdown, json)")),
        }
    }

    /// JSON `{valid, violations: [{location, rule}]}`; parse errors other
    /// than invariant violations are returned as `Err`.
    pub fn validate(input: &str) -> Result<String, String> {
        let violations = match parse_pivot(input) {
            Ok(record) => validate_pivot(&record),
            Err(PivotError::SchemaViolation(SchemaError::Invalid(v))) => v,
            Err(e) => return Err(e.to_string()),
        };
        let list: Vec<Value> = violations
            .iter()
            .map(|v| json!({ "location": v.location.to_string(), "rule": v.rule.describe() }))
            .collect();
        Ok(json!({ "valid": list.is_empty(), "violations": list }).to_string())
    }

    pub fn fixture(name: &str) -> Result<String, String> {
        fixtures::json(name).map(str::to_string).ok_or_else(|| format!("no fixture `{name}`"))
    }
}

#[wasm_bindgen]
pub fn convert(input: &str, from: &str, to: &str, base_uri: &str) -> Result<String, JsValue> {
    ops::convert(input, from, to, base_uri).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn matrix(format: &str) -> Result<String, JsValue> {
    ops::matrix(format).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn validate(input: &str) -> Result<String, JsValue> {
    ops::validate(input).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn fixture(name: &str) -> Result<String, JsValue> {
    ops::fixture(name).map_err(|e| JsValue::from_str(&e))
}
