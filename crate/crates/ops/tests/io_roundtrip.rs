//! File I/O: GeoJSON goldens, shapefile round trips through the minimal
//! reader, CSV exports against vertex-count oracles, and transport-injected
//! fetching.

mod support;

use geoagent_model::{AttributeValue, CrsRef, Feature, FeatureCollection, Geometry, Pos};
use geoagent_ops::io::{self, CannedTransport, FetchOptions};
use geoagent_ops::shapefile::reader::read_shapefile;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use support::*;

#[test]
fn save_geojson_is_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let p1 = dir.path().join("a.geojson");
    let p2 = dir.path().join("b.geojson");
    io::save_result(&unit_square(), &p1).unwrap();
    io::save_result(&unit_square(), &p2).unwrap();
    assert_eq!(std::fs::read(&p1).unwrap(), std::fs::read(&p2).unwrap());
    let text = std::fs::read_to_string(&p1).unwrap();
    assert!(text.starts_with(r#"{"type":"FeatureCollection""#));
}

#[test]
fn written_then_read_collection_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sq.geojson");
    let mut fc = unit_square();
    fc.features[0].properties.insert("name", "square");
    io::save_result(&fc, &path).unwrap();
    let back = io::read_collection(&path).unwrap();
    assert_eq!(back, fc);
}

#[test]
fn missing_file_is_an_io_error() {
    assert!(matches!(
        io::read_collection(std::path::Path::new("/nonexistent/x.geojson")),
        Err(geoagent_ops::OpError::Io { .. })
    ));
}

#[test]
fn unsupported_extension_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    assert!(matches!(
        io::save_result(&unit_square(), &dir.path().join("out.xlsx")),
        Err(geoagent_ops::OpError::UnsupportedExtension(_))
    ));
}

// ---------------------------------------------------------- shapefile

#[test]
fn square_shapefile_round_trips_through_minimal_reader() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("us.shp");
    let mut fc = unit_square();
    fc.features[0].properties.insert("name", "unit");
    fc.features[0].properties.insert("value", 42.0);
    let report = io::save_result(&fc, &path).unwrap();
    assert_eq!(report.paths.len(), 3, "shp/shx/dbf triplet");
    assert_eq!(report.feature_count, 1);
    for p in &report.paths {
        assert!(std::path::Path::new(p).exists(), "{p} missing");
    }
    let back = read_shapefile(&path).unwrap();
    assert_eq!(back.features.len(), 1);
    let Some(Geometry::Polygon(rings)) = &back.features[0].geometry else {
        panic!("expected polygon");
    };
    let Some(Geometry::Polygon(orig)) = &fc.features[0].geometry else {
        panic!();
    };
    // same ring vertex set within 1e-9
    assert_eq!(rings.len(), orig.len());
    let mut got: Vec<(f64, f64)> = rings[0][..rings[0].len() - 1]
        .iter()
        .map(|p| (p.x, p.y))
        .collect();
    let mut want: Vec<(f64, f64)> = orig[0][..orig[0].len() - 1]
        .iter()
        .map(|p| (p.x, p.y))
        .collect();
    got.sort_by(|a, b| a.partial_cmp(b).unwrap());
    want.sort_by(|a, b| a.partial_cmp(b).unwrap());
    for (g, w) in got.iter().zip(&want) {
        assert!((g.0 - w.0).abs() <= 1e-9 && (g.1 - w.1).abs() <= 1e-9);
    }
    assert_eq!(
        back.features[0].properties.get("name").and_then(|v| v.as_str()),
        Some("unit")
    );
    assert_eq!(
        back.features[0].properties.get("value").and_then(|v| v.as_number()),
        Some(42.0)
    );
}

#[test]
fn random_collections_round_trip_through_shapefile() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x54f3);
    let dir = tempfile::tempdir().unwrap();
    for case in 0..10 {
        let kind = rng.gen_range(0..3);
        let mut fc = FeatureCollection::new(CrsRef::Epsg(3857));
        let n = rng.gen_range(1..6);
        for i in 0..n {
            let g = match kind {
                0 => Geometry::Point(Pos::new(
                    rng.gen_range(-100.0..100.0),
                    rng.gen_range(-100.0..100.0),
                )),
                1 => Geometry::LineString(
                    (0..rng.gen_range(2..6))
                        .map(|_| {
                            Pos::new(rng.gen_range(-100.0..100.0), rng.gen_range(-100.0..100.0))
                        })
                        .collect(),
                ),
                _ => {
                    let cx: f64 = rng.gen_range(-50.0..50.0);
                    let cy: f64 = rng.gen_range(-50.0..50.0);
                    let r: f64 = rng.gen_range(1.0..10.0);
                    rect(cx - r, cy - r, cx + r, cy + r)
                }
            };
            let mut f = Feature::new(g);
            f.properties.insert("idx", i as f64);
            f.properties.insert("frac", i as f64 + 0.25);
            f.properties.insert("label", format!("row {i}"));
            fc.features.push(f);
        }
        fc.normalize().unwrap();
        let path = dir.path().join(format!("case{case}.shp"));
        io::save_result(&fc, &path).unwrap();
        let back = read_shapefile(&path).unwrap();
        assert_eq!(back.features.len(), fc.features.len());
        for (orig, read) in fc.features.iter().zip(&back.features) {
            let mut orig_pos = Vec::new();
            orig.geometry.as_ref().unwrap().each_pos(|p| orig_pos.push(p));
            let mut read_pos = Vec::new();
            read.geometry.as_ref().unwrap().each_pos(|p| read_pos.push(p));
            assert_eq!(orig_pos.len(), read_pos.len());
            let key = |v: &Vec<Pos>| {
                let mut k: Vec<(i64, i64)> = v
                    .iter()
                    .map(|p| ((p.x * 1e9).round() as i64, (p.y * 1e9).round() as i64))
                    .collect();
                k.sort();
                k
            };
            assert_eq!(key(&orig_pos), key(&read_pos), "coordinates within 1e-9");
            assert_eq!(
                orig.properties.get("idx"),
                read.properties.get("idx"),
                "integer field survives"
            );
            let orig_frac = orig.properties.get("frac").unwrap().as_number().unwrap();
            let read_frac = read.properties.get("frac").unwrap().as_number().unwrap();
            assert!((orig_frac - read_frac).abs() <= 1e-6, "decimal field survives");
            assert_eq!(orig.properties.get("label"), read.properties.get("label"));
        }
    }
}

#[test]
fn long_field_names_are_truncated_with_report() {
    let dir = tempfile::tempdir().unwrap();
    let mut fc = unit_square();
    fc.features[0]
        .properties
        .insert("a_very_long_field_name", 1.0);
    fc.features[0]
        .properties
        .insert("a_very_long_field_name2", 2.0);
    let report = io::save_result(&fc, &dir.path().join("t.shp")).unwrap();
    assert_eq!(report.truncated_fields.len(), 2);
    let stored: Vec<&String> = report.truncated_fields.iter().map(|(_, s)| s).collect();
    assert!(stored.iter().all(|s| s.len() <= 10));
    assert_ne!(stored[0], stored[1], "deduplicated");
}

#[test]
fn mixed_kinds_cannot_be_written_to_shapefile() {
    let mut fc = unit_square();
    fc.features
        .push(Feature::new(Geometry::Point(Pos::new(0.0, 0.0))));
    let dir = tempfile::tempdir().unwrap();
    assert!(io::save_result(&fc, &dir.path().join("m.shp")).is_err());
}

// ---------------------------------------------------------------- csv

#[test]
fn csv_export_writes_wkt_and_attributes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tri.csv");
    let mut fc = tri();
    for (f, p) in fc.features.iter_mut().zip([10.0, 20.0, 30.0]) {
        f.properties.insert("p", p);
    }
    io::save_result(&fc, &path).unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "id,p,geometry");
    assert_eq!(lines.len(), 4);
    assert!(lines[1].ends_with("POINT (0 0)"));
    assert!(!text.contains('\r'), "LF line endings only");
}

#[test]
fn export_coordinates_row_counts_match_the_raw_coordinate_oracle() {
    let dir = tempfile::tempdir().unwrap();

    let sq = dir.path().join("sq.csv");
    io::export_coordinates(&unit_square(), &sq).unwrap();
    let text = std::fs::read_to_string(&sq).unwrap();
    assert_eq!(text.lines().count(), 1 + 5, "header + ring closure kept");

    let pt = dir.path().join("pt.csv");
    io::export_coordinates(&points(&[(1.0, 2.0)]), &pt).unwrap();
    assert_eq!(std::fs::read_to_string(&pt).unwrap().lines().count(), 2);

    // oracle: total raw coordinate count over a random mixed collection
    let mut rng = ChaCha8Rng::seed_from_u64(0xe4c0);
    let mut fc = FeatureCollection::new(CrsRef::Epsg(3857));
    let mut want = 0usize;
    for _ in 0..20 {
        match rng.gen_range(0..3) {
            0 => {
                fc.features.push(Feature::new(Geometry::Point(Pos::new(
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(-1.0..1.0),
                ))));
                want += 1;
            }
            1 => {
                let n = rng.gen_range(2..7);
                fc.features.push(Feature::new(Geometry::LineString(
                    (0..n)
                        .map(|_| Pos::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                        .collect(),
                )));
                want += n;
            }
            _ => {
                fc.features
                    .push(Feature::new(rect(0.0, 0.0, 1.0, 1.0)));
                want += 5;
            }
        }
    }
    fc.normalize().unwrap();
    let mixed = dir.path().join("mixed.csv");
    io::export_coordinates(&fc, &mixed).unwrap();
    assert_eq!(
        std::fs::read_to_string(&mixed).unwrap().lines().count(),
        want + 1
    );
}

// ---------------------------------------------------------- convert

#[test]
fn convert_geojson_to_shapefile_has_one_record() {
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("us.geojson");
    io::save_result(&unit_square(), &src).unwrap();
    let report = io::convert_format(&src, &dir.path().join("us.shp")).unwrap();
    assert_eq!(report.feature_count, 1);
    let back = read_shapefile(&dir.path().join("us.shp")).unwrap();
    assert_eq!(back.features.len(), 1);
}

#[test]
fn convert_geojson_to_geojson_is_identity_modulo_normalization() {
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("in.geojson");
    io::save_result(&unit_square(), &src).unwrap();
    io::convert_format(&src, &dir.path().join("out.geojson")).unwrap();
    let a = io::read_collection(&src).unwrap();
    let b = io::read_collection(&dir.path().join("out.geojson")).unwrap();
    assert_eq!(a, b);
}

#[test]
fn convert_rejects_non_geojson_input() {
    let dir = tempfile::tempdir().unwrap();
    assert!(io::convert_format(&dir.path().join("in.shp"), &dir.path().join("out.geojson")).is_err());
}

// ------------------------------------------------------------- fetch

#[test]
fn canned_transport_serves_empty_collection() {
    let transport = CannedTransport::new();
    transport.insert(
        "http://example.test/empty.geojson",
        200,
        br#"{"type":"FeatureCollection","features":[]}"#.to_vec(),
    );
    let fc = io::fetch_remote_collection(
        "http://example.test/empty.geojson",
        &transport,
        &FetchOptions::default(),
    )
    .unwrap();
    assert!(fc.features.is_empty());
}

#[test]
fn canned_404_surfaces_status_error() {
    let transport = CannedTransport::new();
    transport.insert("http://example.test/missing.geojson", 404, Vec::new());
    let err = io::fetch_remote_collection(
        "http://example.test/missing.geojson",
        &transport,
        &FetchOptions::default(),
    );
    assert!(matches!(
        err,
        Err(geoagent_ops::OpError::HttpStatus { status: 404, .. })
    ));
}

#[test]
fn fetched_body_round_trips_the_fixture() {
    let mut fc = unit_square();
    fc.features[0].properties.insert("name", "fixture");
    let body = geoagent_model::serialize_geojson(&fc).into_bytes();
    let transport = CannedTransport::new();
    transport.insert("https://example.test/fixture.geojson", 200, body);
    let got = io::fetch_remote_collection(
        "https://example.test/fixture.geojson",
        &transport,
        &FetchOptions::default(),
    )
    .unwrap();
    assert_eq!(got, fc);
}

#[test]
fn size_cap_is_enforced() {
    let transport = CannedTransport::new();
    transport.insert(
        "http://example.test/big.geojson",
        200,
        vec![b' '; 1024],
    );
    let err = io::fetch_remote_collection(
        "http://example.test/big.geojson",
        &transport,
        &FetchOptions {
            timeout_ms: 1000,
            size_cap_bytes: 512,
        },
    );
    assert!(matches!(err, Err(geoagent_ops::OpError::SizeExceeded { .. })));
}

#[test]
fn non_http_url_is_rejected() {
    let transport = CannedTransport::new();
    assert!(io::fetch_remote_collection("file:///etc/passwd", &transport, &FetchOptions::default())
        .is_err());
}

#[test]
fn fixture_root_transport_resolves_basenames() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("data.geojson"),
        r#"{"type":"FeatureCollection","features":[]}"#,
    )
    .unwrap();
    let transport = CannedTransport::with_fixture_root(dir.path());
    let fc = io::fetch_remote_collection(
        "http://fixtures.local/data.geojson",
        &transport,
        &FetchOptions::default(),
    )
    .unwrap();
    assert!(fc.features.is_empty());
    let missing = io::fetch_remote_collection(
        "http://fixtures.local/absent.geojson",
        &transport,
        &FetchOptions::default(),
    );
    assert!(matches!(
        missing,
        Err(geoagent_ops::OpError::HttpStatus { status: 404, .. })
    ));
}

#[test]
fn attribute_values_render_to_csv_cells() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("vals.csv");
    let mut fc = points(&[(0.0, 0.0)]);
    fc.features[0].properties.insert("s", "text, with comma");
    fc.features[0].properties.insert("b", true);
    fc.features[0].properties.insert("n", AttributeValue::Null);
    io::save_result(&fc, &path).unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("\"text, with comma\""), "RFC 4180 quoting");
    assert!(text.contains("true"));
}
