/// Declared type of one call parameter. Validation is strict: no coercion
/// (a JSON string `"5"` never passes as a number).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamType {
    String,
    Number,
    Integer,
    Boolean,
    /// A workspace-relative file path.
    Path,
    /// A property/column name, checked against file metadata when available.
    Field,
    /// An attribute expression in the filter/compute language.
    Expression,
    /// A CRS name: `EPSG:<code>` or `none`.
    Crs,
    NumberList,
    StringList,
}

impl ParamType {
    pub fn name(&self) -> &'static str {
        match self {
            ParamType::String => "string",
            ParamType::Number => "number",
            ParamType::Integer => "integer",
            ParamType::Boolean => "boolean",
            ParamType::Path => "path",
            ParamType::Field => "field",
            ParamType::Expression => "expression",
            ParamType::Crs => "crs",
            ParamType::NumberList => "number_list",
            ParamType::StringList => "string_list",
        }
    }

    pub fn parse(s: &str) -> Option<ParamType> {
        Some(match s {
            "string" => ParamType::String,
            "number" => ParamType::Number,
            "integer" => ParamType::Integer,
            "boolean" => ParamType::Boolean,
            "path" => ParamType::Path,
            "field" => ParamType::Field,
            "expression" => ParamType::Expression,
            "crs" => ParamType::Crs,
            "number_list" => ParamType::NumberList,
            "string_list" => ParamType::StringList,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone)]
pub struct ParamSpec {
    pub name: String,
    pub param_type: ParamType,
    pub required: bool,
    pub description: String,
}

#[derive(Debug, Clone)]
pub struct ReturnSpec {
    pub return_type: String,
    pub description: String,
}

/// One catalog entry: name, prose, parameters, return shape and a worked
/// call example.
#[derive(Debug, Clone)]
pub struct FunctionSpec {
    pub name: String,
    pub description: String,
    pub params: Vec<ParamSpec>,
    pub returns: ReturnSpec,
    pub example: String,
}

impl FunctionSpec {
    pub fn param(&self, name: &str) -> Option<&ParamSpec> {
        self.params.iter().find(|p| p.name == name)
    }
}
