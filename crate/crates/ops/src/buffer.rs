//! Multi-ring buffering.

use geoagent_model::{FeatureCollection, Geometry};

use crate::geom::offset;
use crate::{require_planar, OpError, Result};

/// Buffer every feature at each distance. Distances must be strictly
/// ascending and positive; ring k > 1 is the annulus between distance k-1
/// and k. Output features carry a `distance` field.
pub fn buffer(
    fc: &FeatureCollection,
    distances: &[f64],
    allow_geographic: bool,
) -> Result<FeatureCollection> {
    if distances.is_empty() {
        return Err(OpError::InvalidArgument("no buffer distances".into()));
    }
    for d in distances {
        if *d <= 0.0 || !d.is_finite() {
            return Err(OpError::InvalidArgument(format!(
                "buffer distance must be positive, got {d}"
            )));
        }
    }
    if distances.windows(2).any(|w| w[0] >= w[1]) {
        return Err(OpError::InvalidArgument(
            "buffer distances must be strictly ascending".into(),
        ));
    }
    require_planar(fc, allow_geographic)?;

    let mut out = FeatureCollection::new(fc.crs);
    out.foreign = fc.foreign.clone();
    for f in &fc.features {
        let Some(g) = &f.geometry else {
            continue;
        };
        let mut previous: Option<Vec<Vec<geoagent_model::Pos>>> = None;
        for &d in distances {
            let polys = offset::buffer_geometry(g, d);
            let geometry = if let Some(inner) = &previous {
                annulus(&polys, inner)
            } else {
                polygons_to_geometry(&polys)
            };
            let mut nf = f.clone();
            nf.properties.insert("distance", d);
            nf.geometry = Some(geometry);
            out.features.push(nf);
            previous = Some(polys.into_iter().flatten().collect());
        }
    }
    out.normalize()?;
    Ok(out)
}

fn polygons_to_geometry(polys: &[Vec<Vec<geoagent_model::Pos>>]) -> Geometry {
    if polys.len() == 1 {
        Geometry::Polygon(polys[0].clone())
    } else {
        Geometry::MultiPolygon(polys.to_vec())
    }
}

/// Outer shell minus the previous ring: previous exterior rings become
/// holes (they are nested inside the new shell by construction).
fn annulus(
    outer: &[Vec<Vec<geoagent_model::Pos>>],
    inner_rings: &[Vec<geoagent_model::Pos>],
) -> Geometry {
    let mut polys = outer.to_vec();
    if let Some(first) = polys.first_mut() {
        for ring in inner_rings {
            // only exterior rings of the previous buffer become holes
            if crate::geom::alg::ring_area(ring) > 0.0 {
                let mut hole = ring.clone();
                hole.reverse();
                first.push(hole);
            }
        }
    }
    polygons_to_geometry(&polys)
}
