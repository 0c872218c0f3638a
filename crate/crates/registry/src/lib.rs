//! Machine-readable catalog of the 40 library operations: documentation
//! emission (YAML + JSON), call validation and sandboxed dispatch.

mod catalog;
mod dispatch;
mod docs;
mod spec;
mod validate;
mod workspace;

pub use catalog::{builtin_registry, name_checksum, NAME_CHECKSUMS};
pub use dispatch::{dispatch, CallError, CallResult, CallStatus, DispatchEnv, Output, OutputKind};
pub use docs::{emit_docs, DocFormat};
pub use spec::{FunctionSpec, ParamSpec, ParamType, ReturnSpec};
pub use validate::{validate_call, MetadataIndex, Violation, ViolationCode};
pub use workspace::Workspace;

use serde_json::{Map, Value};

/// The ordered function catalog.
#[derive(Debug, Clone)]
pub struct Registry {
    functions: Vec<FunctionSpec>,
}

impl Registry {
    pub fn new(functions: Vec<FunctionSpec>) -> Self {
        Registry { functions }
    }

    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }

    pub fn functions(&self) -> &[FunctionSpec] {
        &self.functions
    }

    pub fn get(&self, name: &str) -> Option<&FunctionSpec> {
        self.functions.iter().find(|f| f.name == name)
    }
}

/// A single structured call: `{"name": ..., "arguments": {...}}`.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionCall {
    pub name: String,
    pub arguments: Map<String, Value>,
}

impl FunctionCall {
    pub fn new(name: impl Into<String>) -> Self {
        FunctionCall {
            name: name.into(),
            arguments: Map::new(),
        }
    }

    pub fn arg(mut self, name: impl Into<String>, value: impl Into<Value>) -> Self {
        self.arguments.insert(name.into(), value.into());
        self
    }

    /// Parse the wire form.
    pub fn from_value(value: &Value) -> Option<FunctionCall> {
        let obj = value.as_object()?;
        let name = obj.get("name")?.as_str()?.to_string();
        let arguments = match obj.get("arguments") {
            Some(Value::Object(m)) => m.clone(),
            None => Map::new(),
            _ => return None,
        };
        Some(FunctionCall { name, arguments })
    }

    pub fn to_value(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("name".into(), Value::String(self.name.clone()));
        obj.insert("arguments".into(), Value::Object(self.arguments.clone()));
        Value::Object(obj)
    }
}
