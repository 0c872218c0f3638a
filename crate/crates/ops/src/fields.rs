//! Attribute-level operations: computed fields, renames, coordinate fields,
//! row selection, filtering and sorting.

use geoagent_expr::{evaluate, Expr};
use geoagent_model::{AttributeValue, FeatureCollection, FeatureId, Geometry, Properties};
use indexmap::IndexMap;

use crate::{OpError, Result, SortOrder};

/// Value source for [`add_field`].
pub enum FieldValue {
    Constant(AttributeValue),
    Expression(Expr),
}

/// Add a field to every feature. An existing field of the same name is an
/// error unless `overwrite` is set.
pub fn add_field(
    fc: &FeatureCollection,
    name: &str,
    value: &FieldValue,
    overwrite: bool,
) -> Result<FeatureCollection> {
    if name.is_empty() {
        return Err(OpError::InvalidArgument("field name is empty".into()));
    }
    let mut out = fc.clone();
    for (row, f) in out.features.iter_mut().enumerate() {
        if f.properties.contains(name) && !overwrite {
            return Err(OpError::FieldCollision(name.to_string()));
        }
        let v = match value {
            FieldValue::Constant(c) => c.clone(),
            FieldValue::Expression(e) => {
                evaluate(e, &f.properties).map_err(|source| OpError::ExprEval { row, source })?
            }
        };
        f.properties.insert(name, v);
    }
    Ok(out)
}

/// Rename fields atomically: `{a→b, b→a}` swaps values. Property order is
/// preserved; values are untouched.
pub fn rename_fields(
    fc: &FeatureCollection,
    mapping: &IndexMap<String, String>,
) -> Result<FeatureCollection> {
    // validate against the union of property names
    let mut known: Vec<&String> = Vec::new();
    for f in &fc.features {
        for (name, _) in f.properties.iter() {
            if !known.contains(&name) {
                known.push(name);
            }
        }
    }
    for old in mapping.keys() {
        if !known.iter().any(|n| *n == old) {
            return Err(OpError::MissingField(old.clone()));
        }
    }
    // collision check: post-rename names must be unique
    let renamed: Vec<String> = known
        .iter()
        .map(|n| mapping.get(*n).cloned().unwrap_or_else(|| (*n).clone()))
        .collect();
    for (i, a) in renamed.iter().enumerate() {
        if renamed[..i].contains(a) {
            return Err(OpError::FieldCollision(a.clone()));
        }
    }
    let mut out = fc.clone();
    for f in &mut out.features {
        let new_props: Properties = f
            .properties
            .iter()
            .map(|(name, value)| {
                let new_name = mapping.get(name).cloned().unwrap_or_else(|| name.clone());
                (new_name, value.clone())
            })
            .collect();
        f.properties = new_props;
    }
    Ok(out)
}

/// Add POINT_X / POINT_Y fields to point features.
pub fn add_xy_fields(fc: &FeatureCollection) -> Result<FeatureCollection> {
    let mut out = fc.clone();
    for f in &mut out.features {
        let Some(Geometry::Point(p)) = &f.geometry else {
            return Err(OpError::KindMismatch(
                "add_xy_fields requires Point geometry".into(),
            ));
        };
        let (x, y) = (p.x, p.y);
        f.properties.insert("POINT_X", x);
        f.properties.insert("POINT_Y", y);
    }
    Ok(out)
}

/// Which rows [`select_rows`] takes.
pub enum RowSelector {
    Indices(Vec<usize>),
    Ids(Vec<AttributeValue>),
}

/// Subset features in request order.
pub fn select_rows(fc: &FeatureCollection, selector: &RowSelector) -> Result<FeatureCollection> {
    let mut out = FeatureCollection::new(fc.crs);
    out.foreign = fc.foreign.clone();
    match selector {
        RowSelector::Indices(indices) => {
            for &i in indices {
                let f = fc
                    .features
                    .get(i)
                    .ok_or(OpError::IndexOutOfRange(i, fc.features.len()))?;
                out.features.push(f.clone());
            }
        }
        RowSelector::Ids(ids) => {
            for id in ids {
                let matched = fc.features.iter().find(|f| match (&f.id, id) {
                    (Some(FeatureId::String(s)), AttributeValue::String(q)) => s == q,
                    (Some(FeatureId::Number(n)), AttributeValue::Number(q)) => n == q,
                    _ => false,
                });
                match matched {
                    Some(f) => out.features.push(f.clone()),
                    None => {
                        return Err(OpError::UnknownId(crate::io::format_attr(id)))
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Keep rows whose predicate evaluates to true; false and null drop the row.
pub fn filter_rows(fc: &FeatureCollection, predicate: &Expr) -> Result<FeatureCollection> {
    let mut out = FeatureCollection::new(fc.crs);
    out.foreign = fc.foreign.clone();
    for (row, f) in fc.features.iter().enumerate() {
        let v = evaluate(predicate, &f.properties)
            .map_err(|source| OpError::ExprEval { row, source })?;
        match v {
            AttributeValue::Bool(true) => out.features.push(f.clone()),
            AttributeValue::Bool(false) | AttributeValue::Null => {}
            other => {
                return Err(OpError::ExprEval {
                    row,
                    source: geoagent_expr::EvalError::Type(format!(
                        "filter predicate produced {}, need boolean",
                        other.type_name()
                    )),
                })
            }
        }
    }
    Ok(out)
}

/// Stable sort by one field. Numbers sort numerically, strings
/// lexicographically; a column mixing the two is rejected. Nulls and rows
/// missing the field go last.
pub fn sort_by_field(
    fc: &FeatureCollection,
    field: &str,
    order: SortOrder,
) -> Result<FeatureCollection> {
    let mut saw_number = false;
    let mut saw_string = false;
    let mut any = false;
    for f in &fc.features {
        match f.properties.get(field) {
            Some(AttributeValue::Number(_)) => {
                saw_number = true;
                any = true;
            }
            Some(AttributeValue::String(_)) => {
                saw_string = true;
                any = true;
            }
            Some(AttributeValue::Bool(_)) => {
                return Err(OpError::MixedTypeColumn(field.to_string()))
            }
            Some(AttributeValue::Null) | None => {}
        }
        if f.properties.contains(field) {
            any = true;
        }
    }
    if !any {
        return Err(OpError::MissingField(field.to_string()));
    }
    if saw_number && saw_string {
        return Err(OpError::MixedTypeColumn(field.to_string()));
    }
    let mut out = fc.clone();
    out.features.sort_by(|a, b| {
        let ka = sort_key(a.properties.get(field));
        let kb = sort_key(b.properties.get(field));
        match (ka, kb) {
            (None, None) => std::cmp::Ordering::Equal,
            (None, Some(_)) => std::cmp::Ordering::Greater, // nulls last either way
            (Some(_), None) => std::cmp::Ordering::Less,
            (Some(x), Some(y)) => {
                let ord = x.partial_cmp(&y).unwrap_or(std::cmp::Ordering::Equal);
                match order {
                    SortOrder::Asc => ord,
                    SortOrder::Desc => ord.reverse(),
                }
            }
        }
    });
    Ok(out)
}

#[derive(PartialEq, PartialOrd)]
enum SortKey {
    Number(f64),
    Text(String),
}

fn sort_key(v: Option<&AttributeValue>) -> Option<SortKey> {
    match v {
        Some(AttributeValue::Number(n)) => Some(SortKey::Number(*n)),
        Some(AttributeValue::String(s)) => Some(SortKey::Text(s.clone())),
        _ => None,
    }
}
