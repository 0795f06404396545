use serde_json::{Map, Value};

use super::{vocabulary, CodecError, TargetModel, TargetNode, ANONYMOUS_URI, UNKNOWN};
use crate::crosswalk::{ElementPath, Standard};

/// Key holding the record URI.
pub const ID_KEY: &str = "@id";

pub(super) fn encode(model: &TargetModel) -> String {
    let mut object = Map::new();
    object.insert(ID_KEY.to_string(), Value::String(model.record_uri.clone()));
    let mut i = 0;
    while i < model.nodes.len() {
        let field = &model.nodes[i].path;
        let run: Vec<Value> = model.nodes[i..]
            .iter()
            .take_while(|n| &n.path == field)
            .map(|n| Value::String(n.value.clone()))
            .collect();
        i += run.len();
        let value = if run.len() == 1 { run.into_iter().next().expect("one value") } else { Value::Array(run) };
        object.insert(field.path[0].clone(), value);
    }
    let mut text = serde_json::to_string_pretty(&Value::Object(object)).expect("JSON values serialize");
    text.push('\n');
    text
}

pub(super) fn decode(text: &str) -> Result<TargetModel, CodecError> {
    let value: Value = serde_json::from_str(text).map_err(|e| CodecError::MalformedDocument(e.to_string()))?;
    let Value::Object(object) = value else {
        return Err(CodecError::WrongStandard {
            expected: Standard::DigitalScriptorium,
            reason: "top level is not a JSON object".to_string(),
        });
    };
    let vocab = vocabulary(Standard::DigitalScriptorium);
    let mut model = TargetModel::new(Standard::DigitalScriptorium, ANONYMOUS_URI);
    for (key, value) in object {
        if key == ID_KEY {
            if let Value::String(uri) = value {
                model.record_uri = uri;
                continue;
            }
        }
        let known = ElementPath::new(Standard::DigitalScriptorium, &[key.as_str()]);
        let unknown = ElementPath::new(Standard::DigitalScriptorium, &[UNKNOWN, key.as_str()]);
        let field = if vocab.contains(&known) { known } else { unknown.clone() };
        let items = match value {
            Value::Array(items) => items,
            single => vec![single],
        };
        for item in items {
            let (path, text) = match item {
                Value::String(s) => (field.clone(), s),
                Value::Null => continue,
                other => (unknown.clone(), other.to_string()),
            };
            if !text.trim().is_empty() {
                model.push(TargetNode::new(path, text));
            }
        }
    }
    Ok(model)
}
