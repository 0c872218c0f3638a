use thiserror::Error;

/// Errors produced while parsing, validating or projecting model values.
#[derive(Debug, Error)]
pub enum ModelError {
    /// The input was not well-formed JSON.
    #[error("JSON syntax error at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },

    /// The input was valid JSON but not valid GeoJSON per this crate's rules.
    #[error("schema error: {0}")]
    Schema(String),

    /// A coordinate was NaN or infinite.
    #[error("non-finite coordinate in {0}")]
    NonFinite(String),

    /// The CRS is not one of the supported EPSG codes.
    #[error("unsupported CRS: {0}")]
    UnsupportedCrs(String),

    /// A point lies outside the valid domain of the requested projection.
    #[error("coordinate out of projection domain: {0}")]
    OutOfDomain(String),

    /// An operation that needs a concrete CRS was given a cleared/absent one.
    #[error("coordinate reference system is not set")]
    CrsNone,
}
