//! GeoJSON data model and coordinate machinery.
//!
//! Everything downstream (the operation library, the function registry, the
//! orchestrator) moves [`FeatureCollection`] values around. This crate owns
//! parsing and serialization of those values, the supported coordinate
//! reference systems, the projection engine, and per-file metadata
//! extraction.

mod crs;
mod error;
mod feature;
mod geometry;
mod metadata;
mod parse;
mod project;
mod serialize;

pub use crs::CrsRef;
pub use error::ModelError;
pub use feature::{AttributeValue, Feature, FeatureCollection, FeatureId, Properties};
pub use geometry::{BBox, Geometry, GeometryKind, Pos, Ring};
pub use metadata::{collection_metadata, FileMetadata, PropertyType};
pub use parse::parse_geojson;
pub use project::{project_point, WEB_MERCATOR_MAX_LAT};
pub use serialize::serialize_geojson;

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, ModelError>;

/// Default coordinate-equality tolerance for geographic (degree) units.
pub const TOL_DEGREES: f64 = 1e-9;
/// Default coordinate-equality tolerance for projected (meter) units.
pub const TOL_METERS: f64 = 1e-6;
