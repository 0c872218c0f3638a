//! Clip, overlay and reprojection.

use geoagent_model::{project_point, CrsRef, FeatureCollection, Geometry, Pos};

use crate::geom::alg;
use crate::geom::boolops::{self, BoolOp, Shapes};
use crate::measure::polygonal_only;
use crate::{OpError, OverlayMode, Result};

/// Reproject a collection. `to == None` clears the tag without touching
/// coordinates; any other target maps every coordinate.
pub fn reproject(fc: &FeatureCollection, to: CrsRef) -> Result<FeatureCollection> {
    let mut out = fc.clone();
    if to == CrsRef::None {
        out.crs = CrsRef::None;
        return Ok(out);
    }
    if fc.crs == CrsRef::None {
        return Err(OpError::Model(geoagent_model::ModelError::CrsNone));
    }
    for f in &mut out.features {
        if let Some(g) = &f.geometry {
            f.geometry = Some(g.try_map_pos(|p| project_point(fc.crs, to, p))?);
        }
    }
    out.crs = to;
    out.normalize()?;
    Ok(out)
}

/// Clip target features to the union of the mask's polygons. Attributes are
/// preserved; features that fall entirely outside are dropped.
pub fn clip(target: &FeatureCollection, mask: &FeatureCollection) -> Result<FeatureCollection> {
    polygonal_only(mask, "clip mask")?;
    let mask_shapes: Shapes = mask
        .features
        .iter()
        .filter_map(|f| f.geometry.as_ref())
        .flat_map(boolops::geometry_to_shapes)
        .collect();
    if mask_shapes.is_empty() {
        return Err(OpError::EmptyInput("clip mask has no polygons".into()));
    }
    let mask_polys: Vec<(usize, &Geometry)> = mask
        .features
        .iter()
        .enumerate()
        .filter_map(|(i, f)| f.geometry.as_ref().map(|g| (i, g)))
        .collect();

    let mut out = FeatureCollection::new(target.crs);
    out.foreign = target.foreign.clone();
    for f in &target.features {
        let Some(g) = &f.geometry else { continue };
        let clipped: Option<Geometry> = match g {
            Geometry::Point(p) => mask_polys
                .iter()
                .any(|(_, mg)| alg::point_in_geometry(*p, mg))
                .then(|| g.clone()),
            Geometry::MultiPoint(ps) => {
                let kept: Vec<Pos> = ps
                    .iter()
                    .filter(|p| mask_polys.iter().any(|(_, mg)| alg::point_in_geometry(**p, mg)))
                    .copied()
                    .collect();
                (!kept.is_empty()).then_some(Geometry::MultiPoint(kept))
            }
            Geometry::LineString(ps) => {
                let parts = boolops::clip_path(ps, &mask_shapes);
                lines_geometry(parts)
            }
            Geometry::MultiLineString(ls) => {
                let mut parts = Vec::new();
                for ps in ls {
                    parts.extend(boolops::clip_path(ps, &mask_shapes));
                }
                lines_geometry(parts)
            }
            Geometry::Polygon(_) | Geometry::MultiPolygon(_) => {
                let subject = boolops::geometry_to_shapes(g);
                let polys = boolops::polygon_boolean(&subject, &mask_shapes, BoolOp::Intersection);
                polygons_geometry(polys)
            }
        };
        if let Some(geometry) = clipped {
            let mut nf = f.clone();
            nf.geometry = Some(geometry);
            out.features.push(nf);
        }
    }
    out.normalize()?;
    Ok(out)
}

fn lines_geometry(mut parts: Vec<Vec<Pos>>) -> Option<Geometry> {
    parts.retain(|p| p.len() >= 2);
    match parts.len() {
        0 => None,
        1 => Some(Geometry::LineString(parts.pop().unwrap())),
        _ => Some(Geometry::MultiLineString(parts)),
    }
}

fn polygons_geometry(mut polys: Vec<Vec<Vec<Pos>>>) -> Option<Geometry> {
    match polys.len() {
        0 => None,
        1 => Some(Geometry::Polygon(polys.pop().unwrap())),
        _ => Some(Geometry::MultiPolygon(polys)),
    }
}

/// Pairwise boolean overlay of two polygonal layers. Output rows carry the
/// attributes of the contributing inputs; name collisions get `_1` / `_2`
/// suffixes.
pub fn overlay(
    a: &FeatureCollection,
    b: &FeatureCollection,
    mode: OverlayMode,
) -> Result<FeatureCollection> {
    polygonal_only(a, "overlay")?;
    polygonal_only(b, "overlay")?;
    let op = match mode {
        OverlayMode::Intersection => BoolOp::Intersection,
        OverlayMode::Union => BoolOp::Union,
        OverlayMode::Difference => BoolOp::Difference,
        OverlayMode::SymmetricDifference => BoolOp::SymmetricDifference,
    };
    let mut out = FeatureCollection::new(a.crs);

    match mode {
        OverlayMode::Intersection => {
            // one output row per intersecting input pair
            for fa in &a.features {
                let Some(ga) = &fa.geometry else { continue };
                let sa = boolops::geometry_to_shapes(ga);
                for fb in &b.features {
                    let Some(gb) = &fb.geometry else { continue };
                    let sb = boolops::geometry_to_shapes(gb);
                    let polys = boolops::polygon_boolean(&sa, &sb, BoolOp::Intersection);
                    if let Some(geometry) = polygons_geometry(polys) {
                        let mut nf = geoagent_model::Feature::new(geometry);
                        nf.properties = merged_properties(fa, fb);
                        out.features.push(nf);
                    }
                }
            }
        }
        _ => {
            // layer-level combination: single output row with merged layers
            let sa: Shapes = a
                .features
                .iter()
                .filter_map(|f| f.geometry.as_ref())
                .flat_map(boolops::geometry_to_shapes)
                .collect();
            let sb: Shapes = b
                .features
                .iter()
                .filter_map(|f| f.geometry.as_ref())
                .flat_map(boolops::geometry_to_shapes)
                .collect();
            let polys = boolops::polygon_boolean(&sa, &sb, op);
            for rings in polys {
                out.features
                    .push(geoagent_model::Feature::new(Geometry::Polygon(rings)));
            }
        }
    }
    out.normalize()?;
    Ok(out)
}

fn merged_properties(
    fa: &geoagent_model::Feature,
    fb: &geoagent_model::Feature,
) -> geoagent_model::Properties {
    let mut props = geoagent_model::Properties::new();
    for (name, value) in fa.properties.iter() {
        let key = if fb.properties.contains(name) {
            format!("{name}_1")
        } else {
            name.clone()
        };
        props.insert(key, value.clone());
    }
    for (name, value) in fb.properties.iter() {
        let key = if fa.properties.contains(name) {
            format!("{name}_2")
        } else {
            name.clone()
        };
        props.insert(key, value.clone());
    }
    props
}
