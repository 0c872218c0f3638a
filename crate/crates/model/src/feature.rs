use indexmap::IndexMap;

use crate::{CrsRef, Geometry};

/// A property value. Numbers are always finite f64; integers are
/// canonicalized to floats on parse.
#[derive(Debug, Clone, PartialEq)]
pub enum AttributeValue {
    Null,
    Bool(bool),
    Number(f64),
    String(String),
}

impl AttributeValue {
    pub fn as_number(&self) -> Option<f64> {
        match self {
            AttributeValue::Number(n) => Some(*n),
            _ => None,
        }
    }

    pub fn as_str(&self) -> Option<&str> {
        match self {
            AttributeValue::String(s) => Some(s),
            _ => None,
        }
    }

    pub fn is_null(&self) -> bool {
        matches!(self, AttributeValue::Null)
    }

    pub fn type_name(&self) -> &'static str {
        match self {
            AttributeValue::Null => "null",
            AttributeValue::Bool(_) => "boolean",
            AttributeValue::Number(_) => "number",
            AttributeValue::String(_) => "string",
        }
    }
}

impl From<f64> for AttributeValue {
    fn from(v: f64) -> Self {
        AttributeValue::Number(v)
    }
}

impl From<bool> for AttributeValue {
    fn from(v: bool) -> Self {
        AttributeValue::Bool(v)
    }
}

impl From<&str> for AttributeValue {
    fn from(v: &str) -> Self {
        AttributeValue::String(v.to_string())
    }
}

impl From<String> for AttributeValue {
    fn from(v: String) -> Self {
        AttributeValue::String(v)
    }
}

/// An ordered name → value map. Equality is order-sensitive: two property
/// maps with the same entries in different order are different.
#[derive(Debug, Clone, Default)]
pub struct Properties(pub IndexMap<String, AttributeValue>);

impl Properties {
    pub fn new() -> Self {
        Properties(IndexMap::new())
    }

    pub fn get(&self, name: &str) -> Option<&AttributeValue> {
        self.0.get(name)
    }

    pub fn insert(&mut self, name: impl Into<String>, value: impl Into<AttributeValue>) {
        self.0.insert(name.into(), value.into());
    }

    pub fn contains(&self, name: &str) -> bool {
        self.0.contains_key(name)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &AttributeValue)> {
        self.0.iter()
    }
}

impl PartialEq for Properties {
    fn eq(&self, other: &Self) -> bool {
        self.0.len() == other.0.len() && self.0.iter().eq(other.0.iter())
    }
}

impl FromIterator<(String, AttributeValue)> for Properties {
    fn from_iter<T: IntoIterator<Item = (String, AttributeValue)>>(iter: T) -> Self {
        Properties(iter.into_iter().collect())
    }
}

/// Feature identifier, a scalar per RFC 7946: string or number.
#[derive(Debug, Clone, PartialEq)]
pub enum FeatureId {
    String(String),
    Number(f64),
}

/// One GeoJSON feature.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Feature {
    pub id: Option<FeatureId>,
    pub properties: Properties,
    pub geometry: Option<Geometry>,
    /// Unknown members preserved verbatim for round-tripping.
    pub foreign: IndexMap<String, serde_json::Value>,
}

impl Feature {
    pub fn new(geometry: Geometry) -> Self {
        Feature {
            id: None,
            properties: Properties::new(),
            geometry: Some(geometry),
            foreign: IndexMap::new(),
        }
    }

    pub fn with_properties(geometry: Geometry, properties: Properties) -> Self {
        Feature {
            id: None,
            properties,
            geometry: Some(geometry),
            foreign: IndexMap::new(),
        }
    }
}

/// A parsed GeoJSON feature collection: the universal value flowing between
/// operations. All features share the collection's CRS interpretation.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FeatureCollection {
    pub features: Vec<Feature>,
    pub crs: CrsRef,
    /// Unknown collection-level members preserved verbatim.
    pub foreign: IndexMap<String, serde_json::Value>,
    /// Set when a third (altitude) coordinate was dropped during parsing.
    pub altitude_dropped: bool,
}

impl FeatureCollection {
    pub fn new(crs: CrsRef) -> Self {
        FeatureCollection {
            features: Vec::new(),
            crs,
            foreign: IndexMap::new(),
            altitude_dropped: false,
        }
    }

    pub fn from_features(features: Vec<Feature>, crs: CrsRef) -> Self {
        FeatureCollection {
            features,
            crs,
            foreign: IndexMap::new(),
            altitude_dropped: false,
        }
    }

    pub fn len(&self) -> usize {
        self.features.len()
    }

    pub fn is_empty(&self) -> bool {
        self.features.is_empty()
    }

    /// Union bounding box over all geometries; `None` when there are none.
    pub fn bbox(&self) -> Option<crate::BBox> {
        let mut out: Option<crate::BBox> = None;
        for f in &self.features {
            if let Some(b) = f.geometry.as_ref().and_then(|g| g.bbox()) {
                match &mut out {
                    Some(acc) => acc.merge(&b),
                    None => out = Some(b),
                }
            }
        }
        out
    }

    /// Normalize every geometry in place (ring closing + orientation).
    pub fn normalize(&mut self) -> crate::Result<()> {
        for f in &mut self.features {
            if let Some(g) = &mut f.geometry {
                g.normalize()?;
            }
        }
        Ok(())
    }
}
