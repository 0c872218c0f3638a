use indexmap::IndexMap;
use serde_json::Value;

use crate::feature::{AttributeValue, Feature, FeatureCollection, FeatureId, Properties};
use crate::geometry::{Geometry, Pos};
use crate::{CrsRef, ModelError, Result};

/// Parse GeoJSON text into a normalized [`FeatureCollection`].
///
/// Bare `Feature` or geometry inputs are wrapped into a one-element
/// collection. Polygon rings are closed and reoriented (exterior CCW, holes
/// CW). Unknown members on the collection and on features are preserved
/// verbatim. An absent or `null` crs member parses as [`CrsRef::None`]; the
/// legacy `{"type":"name","properties":{"name":"EPSG:<code>"}}` member is
/// honored. A third (altitude) coordinate element is dropped and flagged.
pub fn parse_geojson(text: &str) -> Result<FeatureCollection> {
    let value: Value = serde_json::from_str(text).map_err(|e| ModelError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    collection_from_value(value)
}

struct AltitudeFlag(bool);

fn collection_from_value(value: Value) -> Result<FeatureCollection> {
    let mut alt = AltitudeFlag(false);
    let obj = match value {
        Value::Object(o) => o,
        other => {
            return Err(ModelError::Schema(format!(
                "top-level GeoJSON value must be an object, got {}",
                json_type_name(&other)
            )))
        }
    };
    let ty = member_str(&obj, "type")?;
    let mut fc = match ty {
        "FeatureCollection" => {
            let mut fc = FeatureCollection::new(CrsRef::None);
            let mut saw_features = false;
            for (key, val) in obj {
                match key.as_str() {
                    "type" => {}
                    "features" => {
                        saw_features = true;
                        let arr = as_array(val, "features")?;
                        for item in arr {
                            fc.features.push(feature_from_value(item, &mut alt)?);
                        }
                    }
                    "crs" => fc.crs = parse_crs_member(&val)?,
                    "bbox" => {} // recomputed from geometry, not stored
                    _ => {
                        fc.foreign.insert(key, val);
                    }
                }
            }
            if !saw_features {
                return Err(ModelError::Schema(
                    "FeatureCollection without a \"features\" member".into(),
                ));
            }
            fc
        }
        "Feature" => {
            let feature = feature_from_map(obj, &mut alt)?;
            FeatureCollection::from_features(vec![feature], CrsRef::None)
        }
        "Point" | "MultiPoint" | "LineString" | "MultiLineString" | "Polygon"
        | "MultiPolygon" => {
            let geometry = geometry_from_map(obj, &mut alt)?;
            FeatureCollection::from_features(vec![Feature::new(geometry)], CrsRef::None)
        }
        other => {
            return Err(ModelError::Schema(format!(
                "unsupported GeoJSON type \"{other}\""
            )))
        }
    };
    fc.altitude_dropped = alt.0;
    fc.normalize()?;
    Ok(fc)
}

fn parse_crs_member(value: &Value) -> Result<CrsRef> {
    if value.is_null() {
        return Ok(CrsRef::None);
    }
    let name = value
        .get("properties")
        .and_then(|p| p.get("name"))
        .and_then(|n| n.as_str())
        .ok_or_else(|| {
            ModelError::Schema("crs member must be null or a named-CRS object".into())
        })?;
    CrsRef::parse_name(name)
}

fn feature_from_value(value: Value, alt: &mut AltitudeFlag) -> Result<Feature> {
    match value {
        Value::Object(o) => {
            let ty = member_str(&o, "type")?;
            if ty != "Feature" {
                return Err(ModelError::Schema(format!(
                    "features array holds a \"{ty}\", expected \"Feature\""
                )));
            }
            feature_from_map(o, alt)
        }
        other => Err(ModelError::Schema(format!(
            "feature must be an object, got {}",
            json_type_name(&other)
        ))),
    }
}

fn feature_from_map(
    obj: serde_json::Map<String, Value>,
    alt: &mut AltitudeFlag,
) -> Result<Feature> {
    let mut feature = Feature {
        id: None,
        properties: Properties::new(),
        geometry: None,
        foreign: IndexMap::new(),
    };
    for (key, val) in obj {
        match key.as_str() {
            "type" => {}
            "id" => {
                feature.id = Some(match val {
                    Value::String(s) => FeatureId::String(s),
                    Value::Number(n) => FeatureId::Number(number_to_f64(&n)?),
                    other => {
                        return Err(ModelError::Schema(format!(
                            "feature id must be a string or number, got {}",
                            json_type_name(&other)
                        )))
                    }
                });
            }
            "properties" => {
                feature.properties = match val {
                    Value::Null => Properties::new(),
                    Value::Object(map) => {
                        let mut props = Properties::new();
                        for (name, v) in map {
                            props.0.insert(name, attribute_from_value(v)?);
                        }
                        props
                    }
                    other => {
                        return Err(ModelError::Schema(format!(
                            "properties must be an object or null, got {}",
                            json_type_name(&other)
                        )))
                    }
                };
            }
            "geometry" => {
                feature.geometry = match val {
                    Value::Null => None,
                    Value::Object(g) => Some(geometry_from_map(g, alt)?),
                    other => {
                        return Err(ModelError::Schema(format!(
                            "geometry must be an object or null, got {}",
                            json_type_name(&other)
                        )))
                    }
                };
            }
            "bbox" => {}
            _ => {
                feature.foreign.insert(key, val);
            }
        }
    }
    Ok(feature)
}

fn attribute_from_value(value: Value) -> Result<AttributeValue> {
    Ok(match value {
        Value::Null => AttributeValue::Null,
        Value::Bool(b) => AttributeValue::Bool(b),
        Value::Number(n) => AttributeValue::Number(number_to_f64(&n)?),
        Value::String(s) => AttributeValue::String(s),
        other => {
            return Err(ModelError::Schema(format!(
                "property values must be scalar (string/number/boolean/null), got {}",
                json_type_name(&other)
            )))
        }
    })
}

fn geometry_from_map(
    obj: serde_json::Map<String, Value>,
    alt: &mut AltitudeFlag,
) -> Result<Geometry> {
    let ty = member_str(&obj, "type")?.to_string();
    let coords = obj
        .get("coordinates")
        .ok_or_else(|| ModelError::Schema(format!("{ty} geometry without coordinates")))?;
    Ok(match ty.as_str() {
        "Point" => Geometry::Point(position(coords, alt)?),
        "MultiPoint" => Geometry::MultiPoint(positions(coords, alt)?),
        "LineString" => Geometry::LineString(positions(coords, alt)?),
        "MultiLineString" => Geometry::MultiLineString(position_lists(coords, alt)?),
        "Polygon" => Geometry::Polygon(position_lists(coords, alt)?),
        "MultiPolygon" => {
            let arr = coords.as_array().ok_or_else(|| {
                ModelError::Schema("MultiPolygon coordinates must be an array".into())
            })?;
            Geometry::MultiPolygon(
                arr.iter()
                    .map(|p| position_lists(p, alt))
                    .collect::<Result<Vec<_>>>()?,
            )
        }
        "GeometryCollection" => {
            return Err(ModelError::Schema(
                "GeometryCollection is not supported".into(),
            ))
        }
        other => {
            return Err(ModelError::Schema(format!(
                "unsupported geometry type \"{other}\""
            )))
        }
    })
}

fn position(value: &Value, alt: &mut AltitudeFlag) -> Result<Pos> {
    let arr = value
        .as_array()
        .ok_or_else(|| ModelError::Schema("position must be an array".into()))?;
    if arr.len() < 2 {
        return Err(ModelError::Schema(format!(
            "position with {} elements (need at least 2)",
            arr.len()
        )));
    }
    if arr.len() > 2 {
        alt.0 = true;
    }
    let x = arr[0]
        .as_f64()
        .ok_or_else(|| ModelError::Schema("position elements must be numbers".into()))?;
    let y = arr[1]
        .as_f64()
        .ok_or_else(|| ModelError::Schema("position elements must be numbers".into()))?;
    let p = Pos::new(x, y);
    if !p.is_finite() {
        return Err(ModelError::NonFinite(format!("position [{x}, {y}]")));
    }
    Ok(p)
}

fn positions(value: &Value, alt: &mut AltitudeFlag) -> Result<Vec<Pos>> {
    let arr = value
        .as_array()
        .ok_or_else(|| ModelError::Schema("coordinate list must be an array".into()))?;
    arr.iter().map(|v| position(v, alt)).collect()
}

fn position_lists(value: &Value, alt: &mut AltitudeFlag) -> Result<Vec<Vec<Pos>>> {
    let arr = value
        .as_array()
        .ok_or_else(|| ModelError::Schema("coordinate list must be an array".into()))?;
    arr.iter().map(|v| positions(v, alt)).collect()
}

fn number_to_f64(n: &serde_json::Number) -> Result<f64> {
    let v = n
        .as_f64()
        .ok_or_else(|| ModelError::NonFinite(format!("number {n}")))?;
    if !v.is_finite() {
        return Err(ModelError::NonFinite(format!("number {n}")));
    }
    Ok(v)
}

fn member_str<'a>(obj: &'a serde_json::Map<String, Value>, key: &str) -> Result<&'a str> {
    obj.get(key)
        .and_then(|v| v.as_str())
        .ok_or_else(|| ModelError::Schema(format!("object without a string \"{key}\" member")))
}

fn as_array(value: Value, what: &str) -> Result<Vec<Value>> {
    match value {
        Value::Array(a) => Ok(a),
        other => Err(ModelError::Schema(format!(
            "{what} must be an array, got {}",
            json_type_name(&other)
        ))),
    }
}

fn json_type_name(v: &Value) -> &'static str {
    match v {
        Value::Null => "null",
        Value::Bool(_) => "boolean",
        Value::Number(_) => "number",
        Value::String(_) => "string",
        Value::Array(_) => "array",
        Value::Object(_) => "object",
    }
}
