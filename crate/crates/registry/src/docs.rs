//! Dual-format documentation emission.
//!
//! YAML (for LLM context) and JSON (for system-level validation) encode the
//! identical spec tree in registry insertion order.

use serde_json::{json, Map, Value};

use crate::Registry;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DocFormat {
    Yaml,
    Json,
}

/// The docs tree as a JSON value: `{"functions": [...]}`.
pub fn docs_value(registry: &Registry) -> Value {
    let functions: Vec<Value> = registry
        .functions()
        .iter()
        .map(|f| {
            let params: Vec<Value> = f
                .params
                .iter()
                .map(|p| {
                    json!({
                        "name": p.name,
                        "type": p.param_type.name(),
                        "required": p.required,
                        "description": p.description,
                    })
                })
                .collect();
            let mut obj = Map::new();
            obj.insert("name".into(), Value::String(f.name.clone()));
            obj.insert("description".into(), Value::String(f.description.clone()));
            obj.insert("params".into(), Value::Array(params));
            obj.insert(
                "returns".into(),
                json!({
                    "type": f.returns.return_type,
                    "description": f.returns.description,
                }),
            );
            obj.insert("example".into(), Value::String(f.example.clone()));
            Value::Object(obj)
        })
        .collect();
    json!({ "functions": functions })
}

/// Emit the registry documentation in the requested format.
pub fn emit_docs(registry: &Registry, format: DocFormat) -> String {
    let tree = docs_value(registry);
    match format {
        DocFormat::Json => serde_json::to_string_pretty(&tree).expect("valid tree") + "\n",
        DocFormat::Yaml => serde_yaml::to_string(&tree).expect("valid tree"),
    }
}
