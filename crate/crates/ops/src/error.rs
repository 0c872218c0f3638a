use thiserror::Error;

/// Errors surfaced by library operations.
#[derive(Debug, Error)]
pub enum OpError {
    #[error(transparent)]
    Model(#[from] geoagent_model::ModelError),

    #[error("expression error: {0}")]
    ExprParse(#[from] geoagent_expr::ParseError),

    #[error("expression evaluation failed at row {row}: {source}")]
    ExprEval {
        row: usize,
        source: geoagent_expr::EvalError,
    },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },

    #[error("HTTP error: {0}")]
    Http(String),

    #[error("HTTP status {status} for {url}")]
    HttpStatus { status: u16, url: String },

    #[error("response exceeds the {limit_bytes}-byte size cap")]
    SizeExceeded { limit_bytes: u64 },

    #[error("unsupported file extension: {0}")]
    UnsupportedExtension(String),

    #[error("geometry kind mismatch: {0}")]
    KindMismatch(String),

    #[error("field {0:?} not found")]
    MissingField(String),

    #[error("field {0:?} already exists (pass overwrite to replace it)")]
    FieldCollision(String),

    #[error("column {0:?} mixes numbers and strings")]
    MixedTypeColumn(String),

    #[error("column {0:?} is not numeric")]
    NonNumericColumn(String),

    #[error("index {0} out of range (collection has {1} features)")]
    IndexOutOfRange(usize, usize),

    #[error("no feature with id {0:?}")]
    UnknownId(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("geographic CRS (degrees): reproject to a metric CRS first or pass allow_geographic")]
    GeographicCrs,

    #[error("empty input: {0}")]
    EmptyInput(String),

    #[error("not implemented: {0}")]
    NotImplemented(String),
}

impl From<std::io::Error> for OpError {
    fn from(e: std::io::Error) -> Self {
        OpError::Io {
            path: "<buffer>".into(),
            source: e,
        }
    }
}

impl OpError {
    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        OpError::Io {
            path: path.into(),
            source,
        }
    }

    /// Stable machine-readable code used in call results and transcripts.
    pub fn code(&self) -> &'static str {
        match self {
            OpError::Model(_) => "model",
            OpError::ExprParse(_) => "expr_parse",
            OpError::ExprEval { .. } => "expr_eval",
            OpError::Io { .. } => "io",
            OpError::Http(_) => "http",
            OpError::HttpStatus { .. } => "http_status",
            OpError::SizeExceeded { .. } => "size_exceeded",
            OpError::UnsupportedExtension(_) => "unsupported_extension",
            OpError::KindMismatch(_) => "kind_mismatch",
            OpError::MissingField(_) => "missing_field",
            OpError::FieldCollision(_) => "field_collision",
            OpError::MixedTypeColumn(_) => "mixed_type_column",
            OpError::NonNumericColumn(_) => "non_numeric_column",
            OpError::IndexOutOfRange(_, _) => "index_out_of_range",
            OpError::UnknownId(_) => "unknown_id",
            OpError::InvalidArgument(_) => "invalid_argument",
            OpError::GeographicCrs => "geographic_crs",
            OpError::EmptyInput(_) => "empty_input",
            OpError::NotImplemented(_) => "not_implemented",
        }
    }
}
