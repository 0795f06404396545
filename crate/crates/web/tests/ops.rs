use ch_crosswalk_web::ops;
use serde_json::Value;

const BASE: &str = "https://example.org/ch/";

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn convert_fixture_to_edm() {
    let placard = ops::fixture("placard").unwrap();
    let out = parse(&ops::convert(&placard, "pivot", "edm", BASE).unwrap());
    assert!(out["output"].as_str().unwrap().contains("edm:currentLocation \"Cracow\""));
    assert_eq!(out["loss_report"]["standard"], "edm");
    assert_eq!(out["loss_report"]["strict_failure"], false);

    let obituary = ops::fixture("obituary").unwrap();
    let out = parse(&ops::convert(&obituary, "pivot", "ds", BASE).unwrap());
    assert_eq!(out["loss_report"]["strict_failure"], true);
}

#[test]
fn convert_back_to_pivot() {
    let manuscript = ops::fixture("manuscript").unwrap();
    let ead = parse(&ops::convert(&manuscript, "pivot", "ead", BASE).unwrap());
    let back = parse(&ops::convert(ead["output"].as_str().unwrap(), "ead", "pivot", BASE).unwrap());
    assert!(back["loss_report"].is_null());
    assert!(back["output"].as_str().unwrap().contains("\"id\": \"SA, Aster, Karl Heinrich_2.2\""));
}

#[test]
fn convert_errors_are_messages() {
    assert!(ops::convert("{", "pivot", "dc", BASE).is_err());
    assert!(ops::convert("{}", "pivot", "marc", BASE).unwrap_err().contains("marc"));
    let placard = ops::fixture("placard").unwrap();
    assert!(ops::convert(&placard, "pivot", "dc", "relative/").is_err());
}

#[test]
fn matrix_formats() {
    assert!(ops::matrix("csv").unwrap().starts_with("property,dublin_core"));
    assert!(ops::matrix("markdown").unwrap().starts_with("| Property |"));
    assert_eq!(parse(&ops::matrix("json").unwrap())["rows"].as_array().unwrap().len(), 21);
    assert!(ops::matrix("xlsx").is_err());
}

#[test]
fn validate_lists_violations() {
    let ok = parse(&ops::validate(&ops::fixture("obituary").unwrap()).unwrap());
    assert_eq!(ok["valid"], true);
    let bad = r#"{"id":"Y","assertions":[{"property":"Title","value":"X"},{"property":"Identifier","value":"Z"}]}"#;
    let out = parse(&ops::validate(bad).unwrap());
    assert_eq!(out["valid"], false);
    assert_eq!(out["violations"][0]["rule"], "record id must equal the Identifier value");
    assert!(ops::fixture("atlas").is_err());
}
