//! Length, centroid and distance measures.

use geoagent_model::{AttributeValue, Feature, FeatureCollection, Geometry, Pos};

use crate::geom::alg;
use crate::{CentroidMode, OpError, Result, TabularData};

/// Add a numeric `length` field (perimeter for polygons) in CRS units.
/// Returns the collection and whether a geographic-units warning applies.
pub fn geometry_length(fc: &FeatureCollection) -> Result<(FeatureCollection, bool)> {
    if fc
        .features
        .iter()
        .filter_map(|f| f.geometry.as_ref())
        .all(|g| g.kind().is_point_like())
        && !fc.features.is_empty()
    {
        return Err(OpError::KindMismatch(
            "length needs line or polygon geometry".into(),
        ));
    }
    let geographic = fc.crs.is_geographic() || fc.crs == geoagent_model::CrsRef::None;
    let mut out = fc.clone();
    for f in &mut out.features {
        let len = f.geometry.as_ref().map(alg::geometry_length).unwrap_or(0.0);
        f.properties.insert("length", len);
    }
    Ok((out, geographic))
}

/// Replace every geometry by its centroid or an interior representative
/// point; attributes are preserved.
pub fn centroid_points(fc: &FeatureCollection, mode: CentroidMode) -> Result<FeatureCollection> {
    let mut out = FeatureCollection::new(fc.crs);
    out.foreign = fc.foreign.clone();
    for f in &fc.features {
        let Some(g) = &f.geometry else {
            return Err(OpError::EmptyInput("feature without geometry".into()));
        };
        let p = match mode {
            CentroidMode::Centroid => alg::geometry_centroid(g)
                .ok_or_else(|| OpError::EmptyInput("degenerate geometry".into()))?,
            CentroidMode::RepresentativePoint => representative_of(g)
                .ok_or_else(|| OpError::EmptyInput("degenerate geometry".into()))?,
        };
        let mut nf = f.clone();
        nf.geometry = Some(Geometry::Point(p));
        out.features.push(nf);
    }
    Ok(out)
}

fn representative_of(g: &Geometry) -> Option<Pos> {
    match g {
        Geometry::Polygon(rings) => alg::representative_point(rings),
        Geometry::MultiPolygon(polys) => {
            // largest part carries the representative point
            polys
                .iter()
                .max_by(|a, b| {
                    alg::polygon_area(a)
                        .partial_cmp(&alg::polygon_area(b))
                        .unwrap()
                })
                .and_then(|rings| alg::representative_point(rings))
        }
        Geometry::LineString(ps) => ps.get(ps.len() / 2).copied(),
        Geometry::MultiLineString(ls) => ls.first().and_then(|ps| ps.get(ps.len() / 2)).copied(),
        other => alg::geometry_centroid(other),
    }
}

/// All pairwise point distances as rows `(i, j, distance)` for i < j.
pub fn pairwise_distances(fc: &FeatureCollection) -> Result<TabularData> {
    let points = require_points(fc)?;
    if points.len() < 2 {
        return Err(OpError::EmptyInput("need at least 2 points".into()));
    }
    let mut table = TabularData::new(vec!["i".into(), "j".into(), "distance".into()]);
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            table.push_row(vec![
                AttributeValue::Number(i as f64),
                AttributeValue::Number(j as f64),
                AttributeValue::Number(points[i].dist(&points[j])),
            ]);
        }
    }
    Ok(table)
}

/// Perpendicular (clamped) distance from every point to every line feature.
pub fn point_line_distance(
    points: &FeatureCollection,
    lines: &FeatureCollection,
) -> Result<TabularData> {
    let pts = require_points(points)?;
    if pts.is_empty() {
        return Err(OpError::EmptyInput("no points".into()));
    }
    let line_features: Vec<(usize, Vec<(Pos, Pos)>)> = lines
        .features
        .iter()
        .enumerate()
        .filter_map(|(i, f)| {
            let g = f.geometry.as_ref()?;
            if g.kind().is_line_like() {
                Some((i, alg::geometry_segments(g)))
            } else {
                None
            }
        })
        .collect();
    if line_features.is_empty() {
        return Err(OpError::EmptyInput("no line features".into()));
    }
    let mut table = TabularData::new(vec![
        "point_id".into(),
        "line_id".into(),
        "distance".into(),
    ]);
    for (pi, p) in pts.iter().enumerate() {
        for (li, segs) in &line_features {
            let d = segs
                .iter()
                .map(|&(a, b)| alg::point_segment_distance(*p, a, b).0)
                .fold(f64::INFINITY, f64::min);
            table.push_row(vec![
                AttributeValue::Number(pi as f64),
                AttributeValue::Number(*li as f64),
                AttributeValue::Number(d),
            ]);
        }
    }
    Ok(table)
}

pub(crate) fn require_points(fc: &FeatureCollection) -> Result<Vec<Pos>> {
    let mut out = Vec::new();
    for f in &fc.features {
        match &f.geometry {
            Some(Geometry::Point(p)) => out.push(*p),
            Some(g) => {
                return Err(OpError::KindMismatch(format!(
                    "expected Point geometry, found {}",
                    g.kind().name()
                )))
            }
            None => {
                return Err(OpError::KindMismatch(
                    "expected Point geometry, found empty feature".into(),
                ))
            }
        }
    }
    Ok(out)
}

pub(crate) fn point_features(fc: &FeatureCollection) -> Result<Vec<(usize, Pos, &Feature)>> {
    let mut out = Vec::new();
    for (i, f) in fc.features.iter().enumerate() {
        match &f.geometry {
            Some(Geometry::Point(p)) => out.push((i, *p, f)),
            _ => {
                return Err(OpError::KindMismatch(
                    "expected Point geometry".into(),
                ))
            }
        }
    }
    Ok(out)
}

pub(crate) fn polygonal_only(fc: &FeatureCollection, what: &str) -> Result<()> {
    for f in &fc.features {
        if let Some(g) = &f.geometry {
            if !g.kind().is_polygon_like() {
                return Err(OpError::KindMismatch(format!(
                    "{what} requires polygonal geometry, found {}",
                    g.kind().name()
                )));
            }
        }
    }
    Ok(())
}

