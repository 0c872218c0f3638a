//! Polygon boolean operations and line-by-polygon clipping.
//!
//! The kernel is `i_overlay`; this module converts between the model's
//! ring representation and the kernel's contour form and renormalizes
//! orientation on the way out.

use geoagent_model::{Geometry, Pos, Ring};
use i_overlay::core::fill_rule::FillRule;
use i_overlay::core::overlay_rule::OverlayRule;
use i_overlay::float::clip::FloatClip;
use i_overlay::float::single::SingleFloatOverlay;
use i_overlay::string::clip::ClipRule;

use super::alg::ring_area;

pub type Shapes = Vec<Vec<Vec<[f64; 2]>>>;

fn ring_to_contour(ring: &Ring) -> Vec<[f64; 2]> {
    // drop the closing duplicate; the kernel treats contours as closed
    ring[..ring.len() - 1].iter().map(|p| [p.x, p.y]).collect()
}

/// Collect every polygon of a geometry into kernel shapes.
pub fn geometry_to_shapes(g: &Geometry) -> Shapes {
    match g {
        Geometry::Polygon(rings) => vec![rings.iter().map(ring_to_contour).collect()],
        Geometry::MultiPolygon(polys) => polys
            .iter()
            .map(|rings| rings.iter().map(ring_to_contour).collect())
            .collect(),
        _ => Vec::new(),
    }
}

/// Convert kernel output back to closed, orientation-normalized rings.
pub fn shapes_to_polygons(shapes: Shapes) -> Vec<Vec<Ring>> {
    let mut out = Vec::new();
    for shape in shapes {
        let mut rings: Vec<Ring> = Vec::new();
        for (i, contour) in shape.into_iter().enumerate() {
            if contour.len() < 3 {
                continue;
            }
            let mut ring: Ring = contour.into_iter().map(|[x, y]| Pos::new(x, y)).collect();
            ring.push(ring[0]);
            let ccw = ring_area(&ring) >= 0.0;
            let want_ccw = i == 0;
            if ccw != want_ccw {
                ring.reverse();
            }
            rings.push(ring);
        }
        if !rings.is_empty() {
            out.push(rings);
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoolOp {
    Intersection,
    Union,
    Difference,
    SymmetricDifference,
}

/// Boolean operation between two polygon sets.
pub fn polygon_boolean(a: &Shapes, b: &Shapes, op: BoolOp) -> Vec<Vec<Ring>> {
    let rule = match op {
        BoolOp::Intersection => OverlayRule::Intersect,
        BoolOp::Union => OverlayRule::Union,
        BoolOp::Difference => OverlayRule::Difference,
        BoolOp::SymmetricDifference => OverlayRule::Xor,
    };
    // the i64 engine keeps the float-to-integer snapping error far below
    // the 1e-9 relative tolerances the oracles assert
    let result = a.overlay_as::<i64>(b, rule, FillRule::NonZero);
    shapes_to_polygons(result)
}

/// Resolve self-intersections of a single raw contour into clean polygons.
pub fn clean_contour(contour: Vec<[f64; 2]>) -> Vec<Vec<Ring>> {
    let empty: Shapes = Vec::new();
    let result = contour.overlay_as::<i64>(&empty, OverlayRule::Subject, FillRule::NonZero);
    shapes_to_polygons(result)
}

/// Clip an open path to the inside of a polygon set (boundary included).
pub fn clip_path(path: &[Pos], mask: &Shapes) -> Vec<Vec<Pos>> {
    let line: Vec<[f64; 2]> = path.iter().map(|p| [p.x, p.y]).collect();
    let rule = ClipRule {
        invert: false,
        boundary_included: true,
    };
    line.clip_by_as::<i64>(mask, FillRule::NonZero, rule)
        .into_iter()
        .map(|part| part.into_iter().map(|[x, y]| Pos::new(x, y)).collect())
        .collect()
}
