use std::collections::BTreeSet;

use indexmap::IndexMap;

use crate::feature::{AttributeValue, FeatureCollection};
use crate::geometry::{BBox, GeometryKind};
use crate::CrsRef;

/// Inferred type of one property column across a collection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PropertyType {
    Number,
    String,
    Boolean,
    /// Every observed value was null.
    Null,
    /// Conflicting non-null types were observed.
    Mixed,
}

impl PropertyType {
    pub fn name(&self) -> &'static str {
        match self {
            PropertyType::Number => "number",
            PropertyType::String => "string",
            PropertyType::Boolean => "boolean",
            PropertyType::Null => "null",
            PropertyType::Mixed => "mixed",
        }
    }

    fn of(value: &AttributeValue) -> PropertyType {
        match value {
            AttributeValue::Null => PropertyType::Null,
            AttributeValue::Bool(_) => PropertyType::Boolean,
            AttributeValue::Number(_) => PropertyType::Number,
            AttributeValue::String(_) => PropertyType::String,
        }
    }

    /// Null is compatible with anything; conflicting concrete types → Mixed.
    fn union(self, other: PropertyType) -> PropertyType {
        match (self, other) {
            (PropertyType::Null, t) | (t, PropertyType::Null) => t,
            (a, b) if a == b => a,
            _ => PropertyType::Mixed,
        }
    }
}

/// Summary of one file, used as planner/validator context.
#[derive(Debug, Clone, PartialEq)]
pub struct FileMetadata {
    pub path: String,
    pub feature_count: usize,
    pub geometry_kinds: BTreeSet<GeometryKind>,
    pub property_schema: IndexMap<String, PropertyType>,
    pub crs: CrsRef,
    /// `None` marks the empty-collection case.
    pub bbox: Option<BBox>,
    pub altitude_dropped: bool,
}

/// Compute [`FileMetadata`] for a collection.
pub fn collection_metadata(fc: &FeatureCollection, path: &str) -> FileMetadata {
    let mut kinds = BTreeSet::new();
    let mut schema: IndexMap<String, PropertyType> = IndexMap::new();
    for f in &fc.features {
        if let Some(g) = &f.geometry {
            kinds.insert(g.kind());
        }
        for (name, value) in f.properties.iter() {
            let t = PropertyType::of(value);
            schema
                .entry(name.clone())
                .and_modify(|cur| *cur = cur.union(t))
                .or_insert(t);
        }
    }
    FileMetadata {
        path: path.to_string(),
        feature_count: fc.features.len(),
        geometry_kinds: kinds,
        property_schema: schema,
        crs: fc.crs,
        bbox: fc.bbox(),
        altitude_dropped: fc.altitude_dropped,
    }
}
