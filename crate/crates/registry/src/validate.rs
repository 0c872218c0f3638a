//! Call validation: structural and type checks before anything executes.
//!
//! Violations are data, not exceptions, so the orchestrator can hand them
//! back to the planner as observations. Typing is strict: `"5"` is not a
//! number.

use std::collections::HashMap;

use geoagent_model::FileMetadata;
use serde_json::Value;

use crate::spec::ParamType;
use crate::{FunctionCall, Registry};

/// Metadata for workspace files, keyed by the path string as it appears in
/// call arguments. Field-typed parameters validate against it when present.
pub type MetadataIndex = HashMap<String, FileMetadata>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationCode {
    UnknownFunction,
    UnknownArgument,
    MissingRequired,
    TypeMismatch,
    UnknownField,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub code: ViolationCode,
    pub param: Option<String>,
    pub message: String,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.message)
    }
}

/// Validate a call. Empty result = valid. Never panics regardless of the
/// argument values.
pub fn validate_call(
    registry: &Registry,
    call: &FunctionCall,
    metadata: Option<&MetadataIndex>,
) -> Vec<Violation> {
    let mut out = Vec::new();
    let Some(spec) = registry.get(&call.name) else {
        return vec![Violation {
            code: ViolationCode::UnknownFunction,
            param: None,
            message: format!("unknown function {:?}", call.name),
        }];
    };

    for arg_name in call.arguments.keys() {
        if spec.param(arg_name).is_none() {
            out.push(Violation {
                code: ViolationCode::UnknownArgument,
                param: Some(arg_name.clone()),
                message: format!("unknown argument {arg_name:?} for {}", spec.name),
            });
        }
    }

    for param in &spec.params {
        let value = call.arguments.get(&param.name);
        match value {
            None => {
                if param.required {
                    out.push(Violation {
                        code: ViolationCode::MissingRequired,
                        param: Some(param.name.clone()),
                        message: format!("missing: {}", param.name),
                    });
                }
            }
            Some(v) => {
                if let Some(message) = type_mismatch(param.param_type, v) {
                    out.push(Violation {
                        code: ViolationCode::TypeMismatch,
                        param: Some(param.name.clone()),
                        message: format!("{}: {message}", param.name),
                    });
                } else if param.param_type == ParamType::Field {
                    if let Some(index) = metadata {
                        check_field_against_metadata(call, index, param, v, &mut out);
                    }
                }
            }
        }
    }
    out
}

/// A field argument must name a column of at least one referenced input
/// file, when metadata for any referenced file is available.
fn check_field_against_metadata(
    call: &FunctionCall,
    index: &MetadataIndex,
    param: &crate::spec::ParamSpec,
    value: &Value,
    out: &mut Vec<Violation>,
) {
    let Some(field) = value.as_str() else { return };
    let mut known_any = false;
    let mut found = false;
    for arg in call.arguments.values() {
        let Some(path) = arg.as_str() else { continue };
        if let Some(meta) = index.get(path) {
            known_any = true;
            if meta.property_schema.contains_key(field) {
                found = true;
            }
        }
    }
    if known_any && !found {
        out.push(Violation {
            code: ViolationCode::UnknownField,
            param: Some(param.name.clone()),
            message: format!(
                "{}: field {field:?} not present in any referenced input",
                param.name
            ),
        });
    }
}

/// `Some(reason)` when the value does not satisfy the declared type.
fn type_mismatch(t: ParamType, v: &Value) -> Option<String> {
    match t {
        ParamType::String | ParamType::Path | ParamType::Field => {
            if v.is_string() {
                None
            } else {
                Some(format!("expected a string, got {}", kind(v)))
            }
        }
        ParamType::Number => {
            if v.is_number() {
                None
            } else {
                Some(format!("expected a number, got {}", kind(v)))
            }
        }
        ParamType::Integer => match v.as_f64() {
            Some(n) if n.fract() == 0.0 => None,
            Some(_) => Some("expected an integer, got a fraction".into()),
            None => Some(format!("expected an integer, got {}", kind(v))),
        },
        ParamType::Boolean => {
            if v.is_boolean() {
                None
            } else {
                Some(format!("expected a boolean, got {}", kind(v)))
            }
        }
        ParamType::Expression => match v.as_str() {
            Some(src) => match geoagent_expr::parse_expression(src) {
                Ok(_) => None,
                Err(e) => Some(format!("invalid expression: {e}")),
            },
            None => Some(format!("expected an expression string, got {}", kind(v))),
        },
        ParamType::Crs => match v.as_str() {
            Some("none") => None,
            Some(name) => match geoagent_model::CrsRef::parse_name(name) {
                Ok(_) => None,
                Err(_) => Some(format!("unsupported CRS {name:?}")),
            },
            None => Some(format!("expected a CRS string, got {}", kind(v))),
        },
        ParamType::NumberList => match v.as_array() {
            Some(items) if items.iter().all(|i| i.is_number()) => None,
            Some(_) => Some("expected an array of numbers".into()),
            None => Some(format!("expected an array of numbers, got {}", kind(v))),
        },
        ParamType::StringList => match v.as_array() {
            Some(items) if items.iter().all(|i| i.is_string()) => None,
            Some(_) => Some("expected an array of strings".into()),
            None => Some(format!("expected an array of strings, got {}", kind(v))),
        },
    }
}

fn kind(v: &Value) -> &'static str {
    match v {
        Value::Null => "null",
        Value::Bool(_) => "boolean",
        Value::Number(_) => "number",
        Value::String(_) => "string",
        Value::Array(_) => "array",
        Value::Object(_) => "object",
    }
}
