//! Well-known-text output for geometry columns in CSV exports.

use geoagent_model::{Geometry, Pos};

pub fn geometry_to_wkt(g: &Geometry) -> String {
    match g {
        Geometry::Point(p) => format!("POINT ({})", coord(p)),
        Geometry::MultiPoint(ps) => format!("MULTIPOINT ({})", coords(ps)),
        Geometry::LineString(ps) => format!("LINESTRING ({})", coords(ps)),
        Geometry::MultiLineString(ls) => format!(
            "MULTILINESTRING ({})",
            ls.iter()
                .map(|ps| format!("({})", coords(ps)))
                .collect::<Vec<_>>()
                .join(", ")
        ),
        Geometry::Polygon(rings) => format!("POLYGON ({})", rings_text(rings)),
        Geometry::MultiPolygon(polys) => format!(
            "MULTIPOLYGON ({})",
            polys
                .iter()
                .map(|rings| format!("({})", rings_text(rings)))
                .collect::<Vec<_>>()
                .join(", ")
        ),
    }
}

fn rings_text(rings: &[Vec<Pos>]) -> String {
    rings
        .iter()
        .map(|r| format!("({})", coords(r)))
        .collect::<Vec<_>>()
        .join(", ")
}

fn coords(ps: &[Pos]) -> String {
    ps.iter().map(coord).collect::<Vec<_>>().join(", ")
}

fn coord(p: &Pos) -> String {
    format!("{} {}", p.x, p.y)
}
