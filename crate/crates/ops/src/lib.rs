//! The GeoJSON spatial-analysis operation library.
//!
//! Every operation is a pure function over [`FeatureCollection`] values (or
//! paths for the I/O group). Planar computations use the collection's CRS
//! units directly; metric operations refuse geographic (degree) coordinates
//! unless explicitly allowed.

mod error;
mod table;

pub mod buffer;
pub mod fields;
pub mod geom;
pub mod io;
pub mod join;
pub mod measure;
pub mod overlay;
pub mod render;
pub mod reshape;
pub mod shapefile;
pub mod wkt;

pub use error::OpError;
pub use table::TabularData;

use geoagent_model::FeatureCollection;

pub type Result<T> = std::result::Result<T, OpError>;

/// Boolean overlay mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OverlayMode {
    Intersection,
    Union,
    Difference,
    SymmetricDifference,
}

impl OverlayMode {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "intersection" => OverlayMode::Intersection,
            "union" => OverlayMode::Union,
            "difference" => OverlayMode::Difference,
            "symmetric_difference" => OverlayMode::SymmetricDifference,
            other => {
                return Err(OpError::InvalidArgument(format!(
                    "unknown overlay mode {other:?}"
                )))
            }
        })
    }
}

/// Spatial-join predicate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JoinPredicate {
    Intersects,
    Within,
    Contains,
}

impl JoinPredicate {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "intersects" => JoinPredicate::Intersects,
            "within" => JoinPredicate::Within,
            "contains" => JoinPredicate::Contains,
            other => {
                return Err(OpError::InvalidArgument(format!(
                    "unknown join predicate {other:?}"
                )))
            }
        })
    }
}

/// Centroid flavor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CentroidMode {
    Centroid,
    RepresentativePoint,
}

/// Minimum-bounding-geometry flavor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundingKind {
    RotatedRectangle,
    ConvexHull,
}

/// Sort direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SortOrder {
    Asc,
    Desc,
}

/// Report for operations that write files.
#[derive(Debug, Clone, PartialEq)]
pub struct WrittenFileReport {
    /// Every file written (a shapefile write reports its whole triplet).
    pub paths: Vec<String>,
    pub feature_count: usize,
    /// DBF field renames forced by the 10-byte limit: (original, stored).
    pub truncated_fields: Vec<(String, String)>,
}

/// Guard shared by the metric operations.
pub(crate) fn require_planar(fc: &FeatureCollection, allow_geographic: bool) -> Result<bool> {
    let geographic = fc.crs.is_geographic() || fc.crs == geoagent_model::CrsRef::None;
    if geographic && !allow_geographic {
        return Err(OpError::GeographicCrs);
    }
    Ok(geographic)
}
