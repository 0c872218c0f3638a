//! Geometry reshaping: boundaries, vertices, polygonization, splitting,
//! Voronoi cells, bounding geometry and orientation.

use geoagent_model::{BBox, Feature, FeatureCollection, Geometry, Pos, Ring};

use crate::geom::alg;
use crate::geom::noding::{extract_faces, node_segments, TaggedSegment};
use crate::measure::{polygonal_only, require_points};
use crate::{BoundingKind, OpError, Result};

/// Polygons become boundary LineStrings (one feature per ring, with a
/// `ring_index` field); lines pass through; attributes are copied.
pub fn features_to_lines(fc: &FeatureCollection) -> Result<FeatureCollection> {
    let mut out = FeatureCollection::new(fc.crs);
    out.foreign = fc.foreign.clone();
    for f in &fc.features {
        let Some(g) = &f.geometry else { continue };
        match g {
            Geometry::Point(_) | Geometry::MultiPoint(_) => {
                return Err(OpError::KindMismatch(
                    "features_to_lines requires line or polygon input".into(),
                ))
            }
            Geometry::LineString(_) | Geometry::MultiLineString(_) => {
                out.features.push(f.clone());
            }
            Geometry::Polygon(rings) => {
                push_ring_lines(&mut out, f, rings, 0);
            }
            Geometry::MultiPolygon(polys) => {
                let mut base = 0usize;
                for rings in polys {
                    push_ring_lines(&mut out, f, rings, base);
                    base += rings.len();
                }
            }
        }
    }
    Ok(out)
}

fn push_ring_lines(out: &mut FeatureCollection, f: &Feature, rings: &[Ring], ring_base: usize) {
    for (i, ring) in rings.iter().enumerate() {
        let mut nf = f.clone();
        nf.properties.insert("ring_index", (ring_base + i) as f64);
        nf.geometry = Some(Geometry::LineString(ring.clone()));
        out.features.push(nf);
    }
}

/// One point per vertex; ring closures are emitted once. Adds
/// `vertex_index`; attributes are copied.
pub fn vertices_to_points(fc: &FeatureCollection) -> Result<FeatureCollection> {
    let mut out = FeatureCollection::new(fc.crs);
    out.foreign = fc.foreign.clone();
    for f in &fc.features {
        let Some(g) = &f.geometry else { continue };
        if g.kind().is_point_like() {
            return Err(OpError::KindMismatch(
                "vertices_to_points requires line or polygon input".into(),
            ));
        }
        let mut vertices: Vec<Pos> = Vec::new();
        match g {
            Geometry::LineString(ps) => vertices.extend(ps),
            Geometry::MultiLineString(ls) => ls.iter().for_each(|ps| vertices.extend(ps)),
            Geometry::Polygon(rings) => {
                for ring in rings {
                    vertices.extend(&ring[..ring.len() - 1]);
                }
            }
            Geometry::MultiPolygon(polys) => {
                for rings in polys {
                    for ring in rings {
                        vertices.extend(&ring[..ring.len() - 1]);
                    }
                }
            }
            _ => unreachable!(),
        }
        for (vi, p) in vertices.into_iter().enumerate() {
            let mut nf = f.clone();
            nf.properties.insert("vertex_index", vi as f64);
            nf.geometry = Some(Geometry::Point(p));
            out.features.push(nf);
        }
    }
    Ok(out)
}

/// Planar-node all input lines and polygonize the enclosed faces. Each
/// face's attributes come from its longest contributing line.
pub fn lines_to_polygons(fc: &FeatureCollection) -> Result<FeatureCollection> {
    let mut segments: Vec<TaggedSegment> = Vec::new();
    for (i, f) in fc.features.iter().enumerate() {
        let Some(g) = &f.geometry else { continue };
        if !g.kind().is_line_like() {
            return Err(OpError::KindMismatch(
                "lines_to_polygons requires line input".into(),
            ));
        }
        for (a, b) in alg::geometry_segments(g) {
            segments.push(TaggedSegment { a, b, source: i });
        }
    }
    let noded = node_segments(&segments);
    let faces = extract_faces(&noded);
    if faces.is_empty() {
        return Err(OpError::EmptyInput("no closed face found".into()));
    }
    let mut out = FeatureCollection::new(fc.crs);
    out.foreign = fc.foreign.clone();
    for face in faces {
        // longest contributing line wins the attributes
        let mut contrib: Vec<(usize, f64)> = Vec::new();
        for (k, w) in face.ring.windows(2).enumerate() {
            let len = w[0].dist(&w[1]);
            let src = face.sources[k];
            match contrib.iter_mut().find(|(s, _)| *s == src) {
                Some((_, acc)) => *acc += len,
                None => contrib.push((src, len)),
            }
        }
        let winner = contrib
            .iter()
            .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .map(|(s, _)| *s)
            .unwrap_or(0);
        let mut nf = fc.features[winner].clone();
        nf.geometry = Some(Geometry::Polygon(vec![face.ring]));
        out.features.push(nf);
    }
    out.normalize()?;
    Ok(out)
}

/// Split polygons by line features: faces of the noded boundary+lines
/// graph that lie inside the parent polygon. Parent attributes are copied
/// and a `part_index` is added. A line that misses a polygon leaves it
/// unchanged (one part).
pub fn split_polygon_by_line(
    polygons: &FeatureCollection,
    lines: &FeatureCollection,
) -> Result<FeatureCollection> {
    polygonal_only(polygons, "split_polygon_by_line")?;
    let line_segments: Vec<(Pos, Pos)> = lines
        .features
        .iter()
        .filter_map(|f| f.geometry.as_ref())
        .filter(|g| g.kind().is_line_like())
        .flat_map(|g| alg::geometry_segments(g))
        .collect();

    let mut out = FeatureCollection::new(polygons.crs);
    out.foreign = polygons.foreign.clone();
    for f in &polygons.features {
        let Some(g) = &f.geometry else { continue };
        let mut segments: Vec<TaggedSegment> = Vec::new();
        for (a, b) in alg::geometry_segments(g) {
            segments.push(TaggedSegment { a, b, source: 0 });
        }
        for &(a, b) in &line_segments {
            segments.push(TaggedSegment { a, b, source: 1 });
        }
        let noded = node_segments(&segments);
        let faces = extract_faces(&noded);
        let mut parts: Vec<Ring> = Vec::new();
        for face in faces {
            let Some(inside_probe) = alg::representative_point(&[face.ring.clone()]) else {
                continue;
            };
            if alg::point_in_geometry(inside_probe, g) {
                parts.push(face.ring);
            }
        }
        if parts.is_empty() {
            // no crossing: the polygon passes through unchanged
            let mut nf = f.clone();
            nf.properties.insert("part_index", 0.0);
            out.features.push(nf);
            continue;
        }
        for (i, ring) in parts.into_iter().enumerate() {
            let mut nf = f.clone();
            nf.properties.insert("part_index", i as f64);
            nf.geometry = Some(Geometry::Polygon(vec![ring]));
            out.features.push(nf);
        }
    }
    out.normalize()?;
    Ok(out)
}

/// Voronoi (Thiessen) cells, one per input point, clipped to the input
/// bounding box expanded by 10% of its diagonal on every side. Cells carry
/// their seed's attributes.
pub fn voronoi(fc: &FeatureCollection) -> Result<FeatureCollection> {
    let pts = require_points(fc)?;
    let mut distinct: Vec<Pos> = Vec::new();
    for p in &pts {
        if !distinct.contains(p) {
            distinct.push(*p);
        }
    }
    if distinct.len() < 2 {
        return Err(OpError::EmptyInput(
            "voronoi needs at least 2 distinct points".into(),
        ));
    }
    if distinct.len() != pts.len() {
        return Err(OpError::InvalidArgument(
            "voronoi input contains duplicate points".into(),
        ));
    }
    let bbox = fc.bbox().expect("points exist");
    let diag = (bbox.width().powi(2) + bbox.height().powi(2)).sqrt();
    let pad = diag * 0.1;
    let clip = BBox {
        minx: bbox.minx - pad,
        miny: bbox.miny - pad,
        maxx: bbox.maxx + pad,
        maxy: bbox.maxy + pad,
    };
    let clip_ring: Vec<Pos> = vec![
        Pos::new(clip.minx, clip.miny),
        Pos::new(clip.maxx, clip.miny),
        Pos::new(clip.maxx, clip.maxy),
        Pos::new(clip.minx, clip.maxy),
    ];

    let mut out = FeatureCollection::new(fc.crs);
    out.foreign = fc.foreign.clone();
    for (i, &seed) in pts.iter().enumerate() {
        let mut cell = clip_ring.clone();
        for (j, &other) in pts.iter().enumerate() {
            if i == j {
                continue;
            }
            cell = halfplane_clip(&cell, seed, other);
            if cell.len() < 3 {
                break;
            }
        }
        if cell.len() < 3 {
            continue;
        }
        let mut ring = cell;
        ring.push(ring[0]);
        let mut nf = fc.features[i].clone();
        nf.geometry = Some(Geometry::Polygon(vec![ring]));
        out.features.push(nf);
    }
    out.normalize()?;
    Ok(out)
}

/// Clip an open convex polygon to the half-plane of points closer to
/// `seed` than to `other` (Sutherland–Hodgman against the bisector).
fn halfplane_clip(poly: &[Pos], seed: Pos, other: Pos) -> Vec<Pos> {
    // inside: (other - seed) . p <= (other - seed) . midpoint
    let nx = other.x - seed.x;
    let ny = other.y - seed.y;
    let c = nx * (seed.x + other.x) / 2.0 + ny * (seed.y + other.y) / 2.0;
    let side = |p: Pos| nx * p.x + ny * p.y - c;
    let mut out: Vec<Pos> = Vec::new();
    for i in 0..poly.len() {
        let cur = poly[i];
        let nxt = poly[(i + 1) % poly.len()];
        let s_cur = side(cur);
        let s_nxt = side(nxt);
        if s_cur <= 0.0 {
            out.push(cur);
        }
        if (s_cur < 0.0 && s_nxt > 0.0) || (s_cur > 0.0 && s_nxt < 0.0) {
            let t = s_cur / (s_cur - s_nxt);
            out.push(Pos::new(
                cur.x + t * (nxt.x - cur.x),
                cur.y + t * (nxt.y - cur.y),
            ));
        }
    }
    out
}

/// Convex hull or minimum rotated rectangle over each feature's points.
/// Collinear inputs yield a degenerate result flagged `degenerate`.
pub fn min_bounding_geometry(
    fc: &FeatureCollection,
    kind: BoundingKind,
) -> Result<FeatureCollection> {
    let pts = require_points(fc)?;
    if pts.len() < 2 {
        return Err(OpError::EmptyInput(
            "bounding geometry needs at least 2 points".into(),
        ));
    }
    let mut out = FeatureCollection::new(fc.crs);
    out.foreign = fc.foreign.clone();
    let mut feature = Feature::new(Geometry::Point(pts[0]));
    match kind {
        BoundingKind::ConvexHull => {
            let hull = alg::convex_hull(&pts);
            let degenerate = hull.len() < 3;
            feature.properties.insert("degenerate", degenerate);
            if degenerate {
                feature.geometry = Some(Geometry::LineString(hull));
            } else {
                let mut ring = hull;
                ring.push(ring[0]);
                feature.geometry = Some(Geometry::Polygon(vec![ring]));
            }
        }
        BoundingKind::RotatedRectangle => {
            let rect = alg::min_rotated_rect(&pts)
                .ok_or_else(|| OpError::EmptyInput("no points".into()))?;
            feature.properties.insert("degenerate", rect.degenerate);
            feature.properties.insert("area", rect.area);
            if rect.degenerate {
                feature.geometry = Some(Geometry::LineString(vec![
                    rect.corners[0],
                    rect.corners[1],
                ]));
            } else {
                let mut ring = rect.corners.to_vec();
                ring.push(ring[0]);
                feature.geometry = Some(Geometry::Polygon(vec![ring]));
            }
        }
    }
    out.features.push(feature);
    out.normalize()?;
    Ok(out)
}

/// Add a `Direction` field: the angle of the longer side of each polygon's
/// minimum rotated rectangle, degrees CCW from +x in [0, 180).
pub fn main_direction(fc: &FeatureCollection) -> Result<FeatureCollection> {
    polygonal_only(fc, "main_direction")?;
    let mut out = fc.clone();
    for f in &mut out.features {
        let Some(g) = &f.geometry else {
            return Err(OpError::EmptyInput("feature without geometry".into()));
        };
        let mut pts: Vec<Pos> = Vec::new();
        g.each_pos(|p| pts.push(p));
        let rect = alg::min_rotated_rect(&pts)
            .filter(|r| !r.degenerate)
            .ok_or_else(|| OpError::KindMismatch("degenerate polygon".into()))?;
        f.properties.insert("Direction", rect.direction_deg);
    }
    Ok(out)
}
