//! Shared fixtures: the canonical shapes the contracts are written against.

use geoagent_model::{
    AttributeValue, CrsRef, Feature, FeatureCollection, Geometry, Pos, Properties,
};

/// US: unit-square polygon (0,0)–(1,1).
pub fn unit_square() -> FeatureCollection {
    polygon_collection(vec![vec![
        Pos::new(0.0, 0.0),
        Pos::new(1.0, 0.0),
        Pos::new(1.0, 1.0),
        Pos::new(0.0, 1.0),
        Pos::new(0.0, 0.0),
    ]])
}

/// L1: segment (0,0)→(1,0).
pub fn l1() -> FeatureCollection {
    let mut fc = FeatureCollection::new(CrsRef::Epsg(3857));
    fc.features.push(Feature::new(Geometry::LineString(vec![
        Pos::new(0.0, 0.0),
        Pos::new(1.0, 0.0),
    ])));
    fc
}

/// PTS4: the four corners of the unit square.
pub fn pts4() -> FeatureCollection {
    points(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)])
}

/// TRI: points {(0,0),(1,0),(0,1)}.
pub fn tri() -> FeatureCollection {
    points(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)])
}

pub fn points(coords: &[(f64, f64)]) -> FeatureCollection {
    let mut fc = FeatureCollection::new(CrsRef::Epsg(3857));
    for (i, (x, y)) in coords.iter().enumerate() {
        let mut f = Feature::new(Geometry::Point(Pos::new(*x, *y)));
        f.properties.insert("id", i as f64);
        fc.features.push(f);
    }
    fc
}

pub fn polygon_collection(rings: Vec<Vec<Pos>>) -> FeatureCollection {
    let mut fc = FeatureCollection::new(CrsRef::Epsg(3857));
    fc.features.push(Feature::new(Geometry::Polygon(rings)));
    fc.normalize().unwrap();
    fc
}

pub fn rect(minx: f64, miny: f64, maxx: f64, maxy: f64) -> Geometry {
    Geometry::Polygon(vec![vec![
        Pos::new(minx, miny),
        Pos::new(maxx, miny),
        Pos::new(maxx, maxy),
        Pos::new(minx, maxy),
        Pos::new(minx, miny),
    ]])
}

pub fn rect_collection(minx: f64, miny: f64, maxx: f64, maxy: f64) -> FeatureCollection {
    let mut fc = FeatureCollection::new(CrsRef::Epsg(3857));
    fc.features.push(Feature::new(rect(minx, miny, maxx, maxy)));
    fc.normalize().unwrap();
    fc
}

pub fn props(pairs: &[(&str, AttributeValue)]) -> Properties {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

pub fn num(v: f64) -> AttributeValue {
    AttributeValue::Number(v)
}

pub fn total_area(fc: &FeatureCollection) -> f64 {
    fc.features
        .iter()
        .filter_map(|f| f.geometry.as_ref())
        .map(geoagent_ops::geom::alg::geometry_area)
        .sum()
}

pub fn assert_close(got: f64, want: f64, tol: f64, what: &str) {
    assert!(
        (got - want).abs() <= tol,
        "{what}: got {got}, want {want} (tolerance {tol})"
    );
}

pub fn assert_rel_close(got: f64, want: f64, rel: f64, what: &str) {
    let denom = want.abs().max(1e-300);
    assert!(
        ((got - want) / denom).abs() <= rel,
        "{what}: got {got}, want {want} (relative tolerance {rel})"
    );
}
