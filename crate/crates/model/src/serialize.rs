use serde_json::{json, Map, Value};

use crate::feature::{AttributeValue, Feature, FeatureCollection, FeatureId};
use crate::geometry::{Geometry, Pos};
use crate::CrsRef;

/// Serialize a collection to RFC 7946 GeoJSON text.
///
/// Key order is deterministic: `type` first, then the CRS marker (for an
/// explicit EPSG tag), preserved foreign members in insertion order, and
/// `features` last. A cleared CRS serializes as an absent crs member.
/// Numbers are printed in their shortest round-trip decimal form.
pub fn serialize_geojson(fc: &FeatureCollection) -> String {
    let mut obj = Map::new();
    obj.insert("type".into(), Value::String("FeatureCollection".into()));
    if let CrsRef::Epsg(_) = fc.crs {
        obj.insert("crs".into(), crs_value(&fc.crs));
    }
    for (k, v) in &fc.foreign {
        obj.insert(k.clone(), v.clone());
    }
    obj.insert(
        "features".into(),
        Value::Array(fc.features.iter().map(feature_value).collect()),
    );
    Value::Object(obj).to_string()
}

fn crs_value(crs: &CrsRef) -> Value {
    match crs.name() {
        Some(name) => json!({"type": "name", "properties": {"name": name}}),
        None => Value::Null,
    }
}

fn feature_value(f: &Feature) -> Value {
    let mut obj = Map::new();
    obj.insert("type".into(), Value::String("Feature".into()));
    if let Some(id) = &f.id {
        obj.insert(
            "id".into(),
            match id {
                FeatureId::String(s) => Value::String(s.clone()),
                FeatureId::Number(n) => number_value(*n),
            },
        );
    }
    for (k, v) in &f.foreign {
        obj.insert(k.clone(), v.clone());
    }
    let mut props = Map::new();
    for (name, value) in f.properties.iter() {
        props.insert(name.clone(), attribute_value(value));
    }
    obj.insert("properties".into(), Value::Object(props));
    obj.insert(
        "geometry".into(),
        match &f.geometry {
            Some(g) => geometry_value(g),
            None => Value::Null,
        },
    );
    Value::Object(obj)
}

fn attribute_value(v: &AttributeValue) -> Value {
    match v {
        AttributeValue::Null => Value::Null,
        AttributeValue::Bool(b) => Value::Bool(*b),
        AttributeValue::Number(n) => number_value(*n),
        AttributeValue::String(s) => Value::String(s.clone()),
    }
}

fn number_value(n: f64) -> Value {
    // Valid collections only hold finite numbers.
    Value::Number(serde_json::Number::from_f64(n).expect("finite number"))
}

fn pos_value(p: &Pos) -> Value {
    Value::Array(vec![number_value(p.x), number_value(p.y)])
}

fn line_value(ps: &[Pos]) -> Value {
    Value::Array(ps.iter().map(pos_value).collect())
}

fn rings_value(rings: &[Vec<Pos>]) -> Value {
    Value::Array(rings.iter().map(|r| line_value(r)).collect())
}

fn geometry_value(g: &Geometry) -> Value {
    let (ty, coords) = match g {
        Geometry::Point(p) => ("Point", pos_value(p)),
        Geometry::MultiPoint(ps) => ("MultiPoint", line_value(ps)),
        Geometry::LineString(ps) => ("LineString", line_value(ps)),
        Geometry::MultiLineString(ls) => ("MultiLineString", rings_value(ls)),
        Geometry::Polygon(rings) => ("Polygon", rings_value(rings)),
        Geometry::MultiPolygon(polys) => (
            "MultiPolygon",
            Value::Array(polys.iter().map(|p| rings_value(p)).collect()),
        ),
    };
    let mut obj = Map::new();
    obj.insert("type".into(), Value::String(ty.into()));
    obj.insert("coordinates".into(), coords);
    Value::Object(obj)
}
