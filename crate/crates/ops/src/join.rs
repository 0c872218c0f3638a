//! Joins, aggregation, counting and nearest-neighbor operations.

use geoagent_model::{AttributeValue, Feature, FeatureCollection, Geometry, Pos};
use indexmap::IndexMap;

use crate::geom::alg;
use crate::measure::{point_features, polygonal_only, require_points};
use crate::table::TabularData;
use crate::{JoinPredicate, OpError, Result};

/// Left spatial join: every left feature keeps its geometry; matched right
/// attributes are appended (collision-suffixed). Unmatched left rows are
/// kept with nulls; one output row per (left, match) pair.
pub fn spatial_join(
    left: &FeatureCollection,
    right: &FeatureCollection,
    predicate: JoinPredicate,
) -> Result<FeatureCollection> {
    let mut out = FeatureCollection::new(left.crs);
    out.foreign = left.foreign.clone();
    let right_columns: Vec<String> = column_union(right);
    for lf in &left.features {
        let lg = lf.geometry.as_ref();
        let mut matches: Vec<&Feature> = Vec::new();
        if let Some(lg) = lg {
            for rf in &right.features {
                let Some(rg) = &rf.geometry else { continue };
                let hit = match predicate {
                    JoinPredicate::Intersects => alg::geometries_intersect(lg, rg),
                    JoinPredicate::Within => alg::geometry_within(lg, rg),
                    JoinPredicate::Contains => alg::geometry_within(rg, lg),
                };
                if hit {
                    matches.push(rf);
                }
            }
        }
        if matches.is_empty() {
            let mut nf = lf.clone();
            for col in &right_columns {
                let key = if lf.properties.contains(col) {
                    format!("{col}_2")
                } else {
                    col.clone()
                };
                nf.properties.insert(key, AttributeValue::Null);
            }
            out.features.push(nf);
        } else {
            for rf in matches {
                let mut nf = lf.clone();
                for col in &right_columns {
                    let key = if lf.properties.contains(col) {
                        format!("{col}_2")
                    } else {
                        col.clone()
                    };
                    let v = rf.properties.get(col).cloned().unwrap_or(AttributeValue::Null);
                    nf.properties.insert(key, v);
                }
                out.features.push(nf);
            }
        }
    }
    Ok(out)
}

fn column_union(fc: &FeatureCollection) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for f in &fc.features {
        for (name, _) in f.properties.iter() {
            if !out.contains(name) {
                out.push(name.clone());
            }
        }
    }
    out
}

/// Left join on attribute equality; the first table match wins. Returns the
/// joined collection and the number of duplicate-key rows in the table.
pub fn attribute_join(
    geo: &FeatureCollection,
    table: &TabularData,
    key_geo: &str,
    key_tab: &str,
) -> Result<(FeatureCollection, usize)> {
    if !geo.features.iter().any(|f| f.properties.contains(key_geo)) && !geo.features.is_empty() {
        return Err(OpError::MissingField(key_geo.to_string()));
    }
    if !table.columns.iter().any(|c| c == key_tab) {
        return Err(OpError::MissingField(key_tab.to_string()));
    }
    // first-wins index over the table, counting duplicates
    let mut index: IndexMap<String, &IndexMap<String, AttributeValue>> = IndexMap::new();
    let mut duplicates = 0usize;
    for row in &table.rows {
        let key = row.get(key_tab).map(crate::io::format_attr).unwrap_or_default();
        if index.contains_key(&key) {
            duplicates += 1;
        } else {
            index.insert(key, row);
        }
    }
    let value_columns: Vec<&String> = table.columns.iter().filter(|c| *c != key_tab).collect();
    let mut out = geo.clone();
    for f in &mut out.features {
        let key = f.properties.get(key_geo).map(crate::io::format_attr).unwrap_or_default();
        let row = index.get(&key);
        for col in &value_columns {
            let target = if f.properties.contains(col.as_str()) {
                format!("{col}_2")
            } else {
                (*col).clone()
            };
            let v = row
                .and_then(|r| r.get(col.as_str()).cloned())
                .unwrap_or(AttributeValue::Null);
            f.properties.insert(target, v);
        }
    }
    Ok((out, duplicates))
}

/// Aggregation functions for [`group_aggregate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AggFn {
    Sum,
    Mean,
    Min,
    Max,
    Count,
}

impl AggFn {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "sum" => AggFn::Sum,
            "mean" => AggFn::Mean,
            "min" => AggFn::Min,
            "max" => AggFn::Max,
            "count" => AggFn::Count,
            other => {
                return Err(OpError::InvalidArgument(format!(
                    "unknown aggregation {other:?}"
                )))
            }
        })
    }

    fn column_name(&self, field: &str) -> String {
        let tag = match self {
            AggFn::Sum => "sum",
            AggFn::Mean => "mean",
            AggFn::Min => "min",
            AggFn::Max => "max",
            AggFn::Count => "count",
        };
        format!("{field}_{tag}")
    }
}

/// Group rows by one field and aggregate others. One output row per
/// distinct key, sorted ascending; nulls are excluded from aggregates and
/// reported in a `<field>_nulls` column.
pub fn group_aggregate(
    fc: &FeatureCollection,
    by: &str,
    aggs: &[(String, AggFn)],
) -> Result<TabularData> {
    let mut columns = vec![by.to_string()];
    for (field, agg) in aggs {
        columns.push(agg.column_name(field));
        columns.push(format!("{field}_nulls"));
    }
    let mut table = TabularData::new(columns);
    if fc.features.is_empty() {
        return Ok(table);
    }
    if !fc.features.iter().any(|f| f.properties.contains(by)) {
        return Err(OpError::MissingField(by.to_string()));
    }
    for (field, agg) in aggs {
        if *agg != AggFn::Count {
            for f in &fc.features {
                if let Some(v) = f.properties.get(field) {
                    if !matches!(v, AttributeValue::Number(_) | AttributeValue::Null) {
                        return Err(OpError::NonNumericColumn(field.clone()));
                    }
                }
            }
        }
    }

    // grouping keys in sorted order; numeric keys sort numerically
    let mut groups: Vec<(Option<AttributeValue>, Vec<&Feature>)> = Vec::new();
    for f in &fc.features {
        let key = f.properties.get(by).cloned();
        let key = match key {
            Some(AttributeValue::Null) | None => None,
            Some(v) => Some(v),
        };
        match groups.iter_mut().find(|(k, _)| k == &key) {
            Some((_, members)) => members.push(f),
            None => groups.push((key, vec![f])),
        }
    }
    groups.sort_by(|(a, _), (b, _)| match (a, b) {
        (None, None) => std::cmp::Ordering::Equal,
        (None, Some(_)) => std::cmp::Ordering::Greater,
        (Some(_), None) => std::cmp::Ordering::Less,
        (Some(x), Some(y)) => compare_attrs(x, y),
    });

    for (key, members) in groups {
        let mut row = vec![key.unwrap_or(AttributeValue::Null)];
        for (field, agg) in aggs {
            let values: Vec<f64> = members
                .iter()
                .filter_map(|f| f.properties.get(field).and_then(|v| v.as_number()))
                .collect();
            let nulls = members
                .iter()
                .filter(|f| {
                    matches!(f.properties.get(field), Some(AttributeValue::Null) | None)
                })
                .count();
            let value = match agg {
                AggFn::Count => AttributeValue::Number(values.len() as f64),
                AggFn::Sum => AttributeValue::Number(values.iter().sum()),
                AggFn::Mean => {
                    if values.is_empty() {
                        AttributeValue::Null
                    } else {
                        AttributeValue::Number(values.iter().sum::<f64>() / values.len() as f64)
                    }
                }
                AggFn::Min => values
                    .iter()
                    .copied()
                    .fold(None::<f64>, |acc, v| Some(acc.map_or(v, |a| a.min(v))))
                    .map(AttributeValue::Number)
                    .unwrap_or(AttributeValue::Null),
                AggFn::Max => values
                    .iter()
                    .copied()
                    .fold(None::<f64>, |acc, v| Some(acc.map_or(v, |a| a.max(v))))
                    .map(AttributeValue::Number)
                    .unwrap_or(AttributeValue::Null),
            };
            row.push(value);
            row.push(AttributeValue::Number(nulls as f64));
        }
        table.push_row(row);
    }
    Ok(table)
}

fn compare_attrs(a: &AttributeValue, b: &AttributeValue) -> std::cmp::Ordering {
    use AttributeValue as V;
    match (a, b) {
        (V::Number(x), V::Number(y)) => x.partial_cmp(y).unwrap_or(std::cmp::Ordering::Equal),
        (V::String(x), V::String(y)) => x.cmp(y),
        (V::Bool(x), V::Bool(y)) => x.cmp(y),
        // stable cross-type order: numbers, strings, bools
        (V::Number(_), _) => std::cmp::Ordering::Less,
        (_, V::Number(_)) => std::cmp::Ordering::Greater,
        (V::String(_), _) => std::cmp::Ordering::Less,
        (_, V::String(_)) => std::cmp::Ordering::Greater,
        _ => std::cmp::Ordering::Equal,
    }
}

/// Count points per region (boundary counts as inside). Regions gain
/// `out_field`; each point counts once per containing region.
pub fn count_in_regions(
    points: &FeatureCollection,
    regions: &FeatureCollection,
    out_field: &str,
) -> Result<FeatureCollection> {
    let pts = require_points(points)?;
    polygonal_only(regions, "count_in_regions")?;
    let mut out = regions.clone();
    for f in &mut out.features {
        let count = match &f.geometry {
            Some(g) => pts.iter().filter(|p| alg::point_in_geometry(**p, g)).count(),
            None => 0,
        };
        f.properties.insert(out_field, count as f64);
    }
    Ok(out)
}

/// Single-linkage clustering with a hop threshold; adds `cluster_id`
/// (0-based, ordered by first member's input index).
pub fn cluster_points(fc: &FeatureCollection, threshold: f64) -> Result<FeatureCollection> {
    if threshold <= 0.0 || !threshold.is_finite() {
        return Err(OpError::InvalidArgument(format!(
            "threshold must be positive, got {threshold}"
        )));
    }
    let pts = require_points(fc)?;
    let n = pts.len();
    let mut labels: Vec<Option<usize>> = vec![None; n];
    let mut next = 0usize;
    for start in 0..n {
        if labels[start].is_some() {
            continue;
        }
        // breadth-first flood over the threshold graph
        let mut queue = std::collections::VecDeque::from([start]);
        labels[start] = Some(next);
        while let Some(i) = queue.pop_front() {
            for j in 0..n {
                if labels[j].is_none() && pts[i].dist(&pts[j]) <= threshold {
                    labels[j] = Some(next);
                    queue.push_back(j);
                }
            }
        }
        next += 1;
    }
    let mut out = fc.clone();
    for (f, label) in out.features.iter_mut().zip(&labels) {
        f.properties.insert("cluster_id", label.unwrap() as f64);
    }
    Ok(out)
}

/// For each source point: nearest target feature (point or line). Adds
/// NEAR_ID, NEAR_DIST, NEAR_X, NEAR_Y. Ties go to the lowest target index.
pub fn nearest_join(
    source: &FeatureCollection,
    target: &FeatureCollection,
) -> Result<FeatureCollection> {
    let src = point_features(source)?;
    if target.features.is_empty() {
        return Err(OpError::EmptyInput("empty nearest-join target".into()));
    }
    let mut out = source.clone();
    for ((_, p, _), f) in src.iter().zip(out.features.iter_mut()) {
        let mut best: Option<(usize, f64, Pos)> = None;
        for (ti, tf) in target.features.iter().enumerate() {
            let Some(tg) = &tf.geometry else { continue };
            let (d, q) = nearest_on_geometry(*p, tg);
            let better = match best {
                None => true,
                Some((_, bd, _)) => d < bd,
            };
            if better {
                best = Some((ti, d, q));
            }
        }
        let (ti, d, q) =
            best.ok_or_else(|| OpError::EmptyInput("nearest-join target has no geometry".into()))?;
        f.properties.insert("NEAR_ID", ti as f64);
        f.properties.insert("NEAR_DIST", d);
        f.properties.insert("NEAR_X", q.x);
        f.properties.insert("NEAR_Y", q.y);
    }
    Ok(out)
}

/// Closest point of a geometry to `p` and its distance.
pub(crate) fn nearest_on_geometry(p: Pos, g: &Geometry) -> (f64, Pos) {
    match g {
        Geometry::Point(q) => (p.dist(q), *q),
        Geometry::MultiPoint(qs) => qs
            .iter()
            .map(|q| (p.dist(q), *q))
            .min_by(|a, b| a.0.partial_cmp(&b.0).unwrap())
            .unwrap_or((f64::INFINITY, p)),
        _ => {
            let segs = alg::geometry_segments(g);
            segs.iter()
                .map(|&(a, b)| {
                    let (d, q, _) = alg::point_segment_distance(p, a, b);
                    (d, q)
                })
                .min_by(|a, b| a.0.partial_cmp(&b.0).unwrap())
                .unwrap_or((f64::INFINITY, p))
        }
    }
}

/// Per-group (or global) min/max/mean/count of a numeric field.
pub fn summarize_nearest(
    fc: &FeatureCollection,
    dist_field: &str,
    group_field: Option<&str>,
) -> Result<TabularData> {
    let mut columns = Vec::new();
    if let Some(g) = group_field {
        columns.push(g.to_string());
    }
    columns.extend(["min", "max", "mean", "count"].map(String::from));
    let mut table = TabularData::new(columns);
    if fc.features.is_empty() {
        return Ok(table);
    }
    if !fc.features.iter().any(|f| f.properties.contains(dist_field)) {
        return Err(OpError::MissingField(dist_field.to_string()));
    }
    for f in &fc.features {
        if let Some(v) = f.properties.get(dist_field) {
            if !matches!(v, AttributeValue::Number(_) | AttributeValue::Null) {
                return Err(OpError::NonNumericColumn(dist_field.to_string()));
            }
        }
    }
    let mut groups: Vec<(Option<AttributeValue>, Vec<f64>)> = Vec::new();
    for f in &fc.features {
        let key = group_field.and_then(|g| f.properties.get(g).cloned());
        let key = match key {
            Some(AttributeValue::Null) => None,
            other => other,
        };
        let value = f.properties.get(dist_field).and_then(|v| v.as_number());
        let slot = match groups.iter_mut().find(|(k, _)| k == &key) {
            Some((_, vs)) => vs,
            None => {
                groups.push((key, Vec::new()));
                &mut groups.last_mut().unwrap().1
            }
        };
        if let Some(v) = value {
            slot.push(v);
        }
    }
    groups.sort_by(|(a, _), (b, _)| match (a, b) {
        (None, None) => std::cmp::Ordering::Equal,
        (None, Some(_)) => std::cmp::Ordering::Greater,
        (Some(_), None) => std::cmp::Ordering::Less,
        (Some(x), Some(y)) => compare_attrs(x, y),
    });
    for (key, values) in groups {
        let mut row = Vec::new();
        if group_field.is_some() {
            row.push(key.unwrap_or(AttributeValue::Null));
        }
        if values.is_empty() {
            row.extend([AttributeValue::Null, AttributeValue::Null, AttributeValue::Null]);
            row.push(AttributeValue::Number(0.0));
        } else {
            let min = values.iter().copied().fold(f64::INFINITY, f64::min);
            let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let mean = values.iter().sum::<f64>() / values.len() as f64;
            row.push(AttributeValue::Number(min));
            row.push(AttributeValue::Number(max));
            row.push(AttributeValue::Number(mean));
            row.push(AttributeValue::Number(values.len() as f64));
        }
        table.push_row(row);
    }
    Ok(table)
}

/// Join the single globally closest pair of points with a 2-point line.
/// Ties resolve to the lexicographically lowest index pair.
pub fn connect_nearest_pair(fc: &FeatureCollection) -> Result<FeatureCollection> {
    let pts = require_points(fc)?;
    if pts.len() < 2 {
        return Err(OpError::EmptyInput("need at least 2 points".into()));
    }
    let mut best: Option<(usize, usize, f64)> = None;
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            let d = pts[i].dist(&pts[j]);
            if best.is_none() || d < best.unwrap().2 {
                best = Some((i, j, d));
            }
        }
    }
    let (i, j, d) = best.unwrap();
    let mut out = FeatureCollection::new(fc.crs);
    let mut f = Feature::new(Geometry::LineString(vec![pts[i], pts[j]]));
    f.properties.insert("from_id", i as f64);
    f.properties.insert("to_id", j as f64);
    f.properties.insert("distance", d);
    out.features.push(f);
    Ok(out)
}

/// For each source point: orthogonal projection onto the nearest line
/// segment (clamped). Carries source attributes plus NEAR_DIST.
pub fn nearest_point_on_line(
    points: &FeatureCollection,
    lines: &FeatureCollection,
) -> Result<FeatureCollection> {
    let src = point_features(points)?;
    let segs: Vec<(Pos, Pos)> = lines
        .features
        .iter()
        .filter_map(|f| f.geometry.as_ref())
        .filter(|g| g.kind().is_line_like())
        .flat_map(|g| alg::geometry_segments(g))
        .collect();
    if segs.is_empty() {
        return Err(OpError::EmptyInput("no line segments".into()));
    }
    let mut out = FeatureCollection::new(points.crs);
    out.foreign = points.foreign.clone();
    for (_, p, f) in src {
        let (d, q) = segs
            .iter()
            .map(|&(a, b)| {
                let (d, q, _) = alg::point_segment_distance(p, a, b);
                (d, q)
            })
            .min_by(|a, b| a.0.partial_cmp(&b.0).unwrap())
            .unwrap();
        let mut nf = f.clone();
        nf.geometry = Some(Geometry::Point(q));
        nf.properties.insert("NEAR_DIST", d);
        out.features.push(nf);
    }
    Ok(out)
}

/// Build 2-point lines from (POINT_X, POINT_Y) to (NEAR_X, NEAR_Y) fields.
/// Zero-length rows are allowed and flagged `degenerate`.
pub fn coord_pairs_to_lines(fc: &FeatureCollection) -> Result<FeatureCollection> {
    let mut out = FeatureCollection::new(fc.crs);
    out.foreign = fc.foreign.clone();
    for f in &fc.features {
        let get = |name: &str| -> Result<f64> {
            f.properties
                .get(name)
                .and_then(|v| v.as_number())
                .ok_or_else(|| OpError::MissingField(name.to_string()))
        };
        let a = Pos::new(get("POINT_X")?, get("POINT_Y")?);
        let b = Pos::new(get("NEAR_X")?, get("NEAR_Y")?);
        let mut nf = f.clone();
        let degenerate = a == b;
        nf.properties.insert("degenerate", degenerate);
        nf.geometry = Some(Geometry::LineString(vec![a, b]));
        out.features.push(nf);
    }
    Ok(out)
}

