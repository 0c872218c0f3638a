//! Brute-force oracles for every join-like operation, plus the grouping,
//! sorting, filtering and field-manipulation contracts.

mod support;

use geoagent_model::{AttributeValue, CrsRef, Feature, FeatureCollection, Geometry, Pos};
use geoagent_ops::join::{self, AggFn};
use geoagent_ops::{fields, measure, JoinPredicate, SortOrder, TabularData};
use indexmap::IndexMap;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use support::*;

// ------------------------------------------------------------ spatial join

/// Independent point-in-polygon for the oracle: winding number from summed
/// signed angles (a different construction from the ray cast inside the
/// implementation).
fn oracle_pip(p: Pos, ring: &[Pos]) -> bool {
    // boundary first
    for w in ring.windows(2) {
        let (a, b) = (w[0], w[1]);
        let cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
        let dot = (p.x - a.x) * (p.x - b.x) + (p.y - a.y) * (p.y - b.y);
        if cross.abs() < 1e-12 && dot <= 1e-12 {
            return true;
        }
    }
    let mut angle = 0.0f64;
    for w in ring.windows(2) {
        let a = Pos::new(w[0].x - p.x, w[0].y - p.y);
        let b = Pos::new(w[1].x - p.x, w[1].y - p.y);
        angle += (a.x * b.y - a.y * b.x).atan2(a.x * b.x + a.y * b.y);
    }
    angle.abs() > std::f64::consts::PI
}

#[test]
fn point_in_square_joins_within() {
    let mut left = points(&[(0.5, 0.5)]);
    left.features[0].properties.insert("pt", "inside");
    let mut right = unit_square();
    right.features[0].properties.insert("zone", "Z1");
    let out = join::spatial_join(&left, &right, JoinPredicate::Within).unwrap();
    assert_eq!(out.features.len(), 1);
    assert_eq!(
        out.features[0].properties.get("zone").and_then(|v| v.as_str()),
        Some("Z1")
    );
}

#[test]
fn disjoint_left_rows_keep_nulls() {
    let left = points(&[(9.0, 9.0)]);
    let mut right = unit_square();
    right.features[0].properties.insert("zone", "Z1");
    let out = join::spatial_join(&left, &right, JoinPredicate::Within).unwrap();
    assert_eq!(out.features.len(), 1);
    assert_eq!(
        out.features[0].properties.get("zone"),
        Some(&AttributeValue::Null)
    );
}

#[test]
fn spatial_join_matches_brute_force_on_random_points_and_polygons() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5151);
    for _ in 0..10 {
        let pts: Vec<(f64, f64)> = (0..60)
            .map(|_| (rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0)))
            .collect();
        let left = points(&pts);
        let mut right = FeatureCollection::new(CrsRef::Epsg(3857));
        let mut rects: Vec<(f64, f64, f64, f64)> = Vec::new();
        for k in 0..8 {
            let x0: f64 = rng.gen_range(-5.0..4.0);
            let y0: f64 = rng.gen_range(-5.0..4.0);
            let w: f64 = rng.gen_range(0.5..3.0);
            let h: f64 = rng.gen_range(0.5..3.0);
            rects.push((x0, y0, x0 + w, y0 + h));
            let mut f = Feature::new(rect(x0, y0, x0 + w, y0 + h));
            f.properties.insert("region", k as f64);
            right.features.push(f);
        }
        right.normalize().unwrap();

        let out = join::spatial_join(&left, &right, JoinPredicate::Within).unwrap();

        // oracle: O(n*m) winding-number containment
        let mut expected: Vec<(usize, Option<usize>)> = Vec::new();
        for (i, (px, py)) in pts.iter().enumerate() {
            let p = Pos::new(*px, *py);
            let mut hits = false;
            for (k, (x0, y0, x1, y1)) in rects.iter().enumerate() {
                let ring = [
                    Pos::new(*x0, *y0),
                    Pos::new(*x1, *y0),
                    Pos::new(*x1, *y1),
                    Pos::new(*x0, *y1),
                    Pos::new(*x0, *y0),
                ];
                if oracle_pip(p, &ring) {
                    expected.push((i, Some(k)));
                    hits = true;
                }
            }
            if !hits {
                expected.push((i, None));
            }
        }
        let got: Vec<(usize, Option<usize>)> = out
            .features
            .iter()
            .map(|f| {
                let id = f.properties.get("id").unwrap().as_number().unwrap() as usize;
                let region = match f.properties.get("region") {
                    Some(AttributeValue::Number(k)) => Some(*k as usize),
                    _ => None,
                };
                (id, region)
            })
            .collect();
        assert_eq!(got, expected, "join rows differ from the brute-force oracle");
    }
}

// ------------------------------------------------------------ nearest join

#[test]
fn nearest_join_onto_l1() {
    let src = points(&[(0.5, 1.0)]);
    let out = join::nearest_join(&src, &l1()).unwrap();
    let p = &out.features[0].properties;
    assert_eq!(p.get("NEAR_X").and_then(|v| v.as_number()), Some(0.5));
    assert_eq!(p.get("NEAR_Y").and_then(|v| v.as_number()), Some(0.0));
    assert_eq!(p.get("NEAR_DIST").and_then(|v| v.as_number()), Some(1.0));
    assert_eq!(p.get("NEAR_ID").and_then(|v| v.as_number()), Some(0.0));
}

#[test]
fn nearest_join_ties_resolve_to_lowest_index() {
    let src = points(&[(0.0, 0.0)]);
    let targets = points(&[(1.0, 0.0), (-1.0, 0.0)]);
    let out = join::nearest_join(&src, &targets).unwrap();
    assert_eq!(
        out.features[0].properties.get("NEAR_ID").and_then(|v| v.as_number()),
        Some(0.0)
    );
}

#[test]
fn nearest_join_matches_brute_force_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x4ea6);
    let src_pts: Vec<(f64, f64)> = (0..50)
        .map(|_| (rng.gen_range(-9.0..9.0), rng.gen_range(-9.0..9.0)))
        .collect();
    let tgt_pts: Vec<(f64, f64)> = (0..30)
        .map(|_| (rng.gen_range(-9.0..9.0), rng.gen_range(-9.0..9.0)))
        .collect();
    let out = join::nearest_join(&points(&src_pts), &points(&tgt_pts)).unwrap();
    for (f, (sx, sy)) in out.features.iter().zip(&src_pts) {
        let mut best = (f64::INFINITY, usize::MAX);
        for (k, (tx, ty)) in tgt_pts.iter().enumerate() {
            let d = ((sx - tx).powi(2) + (sy - ty).powi(2)).sqrt();
            if d < best.0 {
                best = (d, k);
            }
        }
        assert_eq!(
            f.properties.get("NEAR_ID").and_then(|v| v.as_number()),
            Some(best.1 as f64)
        );
        assert_close(
            f.properties.get("NEAR_DIST").unwrap().as_number().unwrap(),
            best.0,
            1e-12,
            "NEAR_DIST",
        );
    }
}

// -------------------------------------------------------- count in regions

#[test]
fn tri_counts_in_unit_square_with_boundary_inside() {
    // all three TRI points lie on the square's boundary: closed-set counts
    let out = join::count_in_regions(&tri(), &unit_square(), "n").unwrap();
    assert_eq!(
        out.features[0].properties.get("n").and_then(|v| v.as_number()),
        Some(3.0)
    );
    // a point exactly on an edge midpoint also counts
    let out = join::count_in_regions(&points(&[(0.5, 0.0)]), &unit_square(), "n").unwrap();
    assert_eq!(
        out.features[0].properties.get("n").and_then(|v| v.as_number()),
        Some(1.0)
    );
}

#[test]
fn count_in_regions_matches_containment_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc072);
    let pts: Vec<(f64, f64)> = (0..200)
        .map(|_| (rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0)))
        .collect();
    let mut regions = FeatureCollection::new(CrsRef::Epsg(3857));
    let mut rect_list = Vec::new();
    for _ in 0..6 {
        let x0: f64 = rng.gen_range(-5.0..3.0);
        let y0: f64 = rng.gen_range(-5.0..3.0);
        let w: f64 = rng.gen_range(1.0..4.0);
        let h: f64 = rng.gen_range(1.0..4.0);
        rect_list.push((x0, y0, x0 + w, y0 + h));
        regions.features.push(Feature::new(rect(x0, y0, x0 + w, y0 + h)));
    }
    regions.normalize().unwrap();
    let out = join::count_in_regions(&points(&pts), &regions, "count").unwrap();
    for (f, (x0, y0, x1, y1)) in out.features.iter().zip(&rect_list) {
        let want = pts
            .iter()
            .filter(|(px, py)| px >= x0 && px <= x1 && py >= y0 && py <= y1)
            .count() as f64;
        assert_eq!(
            f.properties.get("count").and_then(|v| v.as_number()),
            Some(want)
        );
    }
}

// ------------------------------------------------------------- clustering

#[test]
fn two_points_cluster_by_threshold() {
    let pts = points(&[(0.0, 0.0), (1.0, 0.0)]);
    let near = join::cluster_points(&pts, 2.0).unwrap();
    assert_eq!(cluster_ids(&near), vec![0, 0]);
    let far = join::cluster_points(&pts, 0.5).unwrap();
    assert_eq!(cluster_ids(&far), vec![0, 1]);
}

fn cluster_ids(fc: &FeatureCollection) -> Vec<usize> {
    fc.features
        .iter()
        .map(|f| f.properties.get("cluster_id").unwrap().as_number().unwrap() as usize)
        .collect()
}

/// Union-find oracle over all pairs.
fn oracle_clusters(pts: &[Pos], threshold: f64) -> Vec<usize> {
    let n = pts.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let root = find(parent, parent[i]);
            parent[i] = root;
        }
        parent[i]
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if pts[i].dist(&pts[j]) <= threshold {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    let (lo, hi) = if ri < rj { (ri, rj) } else { (rj, ri) };
                    parent[hi] = lo;
                }
            }
        }
    }
    // relabel roots by first-member order
    let mut label_of_root: IndexMap<usize, usize> = IndexMap::new();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let root = find(&mut parent, i);
        let next = label_of_root.len();
        let label = *label_of_root.entry(root).or_insert(next);
        out.push(label);
    }
    out
}

#[test]
fn clustering_matches_union_find_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc1057e5);
    for _ in 0..10 {
        let pts: Vec<(f64, f64)> = (0..120)
            .map(|_| (rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0)))
            .collect();
        let pos: Vec<Pos> = pts.iter().map(|(x, y)| Pos::new(*x, *y)).collect();
        let threshold = rng.gen_range(0.5..3.0);
        let got = cluster_ids(&join::cluster_points(&points(&pts), threshold).unwrap());
        let want = oracle_clusters(&pos, threshold);
        assert_eq!(got, want, "threshold {threshold}");
    }
}

#[test]
fn cluster_rejects_nonpositive_threshold() {
    assert!(join::cluster_points(&tri(), 0.0).is_err());
}

// --------------------------------------------------------- nearest pair

#[test]
fn tri_nearest_pair_tie_resolves_to_lowest_index_pair() {
    let out = join::connect_nearest_pair(&tri()).unwrap();
    assert_eq!(out.features.len(), 1);
    let p = &out.features[0].properties;
    assert_eq!(p.get("from_id").and_then(|v| v.as_number()), Some(0.0));
    assert_eq!(p.get("to_id").and_then(|v| v.as_number()), Some(1.0));
    assert_eq!(p.get("distance").and_then(|v| v.as_number()), Some(1.0));
}

#[test]
fn nearest_pair_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x9a12);
    for _ in 0..10 {
        let pts: Vec<(f64, f64)> = (0..70)
            .map(|_| (rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0)))
            .collect();
        let out = join::connect_nearest_pair(&points(&pts)).unwrap();
        let mut best = (f64::INFINITY, 0usize, 0usize);
        for i in 0..pts.len() {
            for j in (i + 1)..pts.len() {
                let d = ((pts[i].0 - pts[j].0).powi(2) + (pts[i].1 - pts[j].1).powi(2)).sqrt();
                if d < best.0 {
                    best = (d, i, j);
                }
            }
        }
        let p = &out.features[0].properties;
        assert_eq!(p.get("from_id").and_then(|v| v.as_number()), Some(best.1 as f64));
        assert_eq!(p.get("to_id").and_then(|v| v.as_number()), Some(best.2 as f64));
    }
}

// ----------------------------------------------- nearest point on line

#[test]
fn projection_onto_l1_clamps_at_segment_ends() {
    let out = join::nearest_point_on_line(&points(&[(0.5, 1.0)]), &l1()).unwrap();
    let Some(Geometry::Point(p)) = out.features[0].geometry else {
        panic!("expected point");
    };
    assert_eq!(p, Pos::new(0.5, 0.0));
    assert_eq!(
        out.features[0].properties.get("NEAR_DIST").and_then(|v| v.as_number()),
        Some(1.0)
    );

    let out = join::nearest_point_on_line(&points(&[(2.0, 1.0)]), &l1()).unwrap();
    let Some(Geometry::Point(p)) = out.features[0].geometry else {
        panic!("expected point");
    };
    assert_eq!(p, Pos::new(1.0, 0.0));
    assert_close(
        out.features[0].properties.get("NEAR_DIST").unwrap().as_number().unwrap(),
        2f64.sqrt(),
        1e-12,
        "clamped distance",
    );
}

#[test]
fn projection_agrees_with_dense_sampling_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xd15c);
    // a wiggly polyline
    let line_pts: Vec<Pos> = (0..8)
        .map(|i| Pos::new(i as f64, rng.gen_range(-2.0..2.0)))
        .collect();
    let mut lines = FeatureCollection::new(CrsRef::Epsg(3857));
    lines
        .features
        .push(Feature::new(Geometry::LineString(line_pts.clone())));
    for _ in 0..30 {
        let q = (rng.gen_range(-1.0..8.0), rng.gen_range(-3.0..3.0));
        let out = join::nearest_point_on_line(&points(&[q]), &lines).unwrap();
        let got = out.features[0].properties.get("NEAR_DIST").unwrap().as_number().unwrap();
        // dense sampling along the line: coarse pass, then a refined pass
        // around the best parameter (a bare coarse grid cannot reach 1e-6)
        let sample = |w: &[Pos], t: f64| -> f64 {
            let x = w[0].x + t * (w[1].x - w[0].x);
            let y = w[0].y + t * (w[1].y - w[0].y);
            ((q.0 - x).powi(2) + (q.1 - y).powi(2)).sqrt()
        };
        let mut best = f64::INFINITY;
        for w in line_pts.windows(2) {
            let mut best_t = 0.0;
            for k in 0..=1000 {
                let t = k as f64 / 1000.0;
                let d = sample(w, t);
                if d < best {
                    best = d;
                }
                if d <= sample(w, best_t) {
                    best_t = t;
                }
            }
            for k in 0..=2000 {
                let t = (best_t - 1e-3 + k as f64 * 1e-6).clamp(0.0, 1.0);
                best = best.min(sample(w, t));
            }
        }
        assert!(
            got <= best + 1e-12,
            "projection {got} must not exceed any sampled distance {best}"
        );
        assert!(
            (got - best).abs() <= 1e-6,
            "projected distance {got} vs sampled {best}"
        );
    }
}

// -------------------------------------------------- coord pairs to lines

#[test]
fn coord_pairs_build_segments_and_flag_degenerates() {
    let mut fc = points(&[(0.0, 0.0)]);
    fc.features[0].properties.insert("POINT_X", 0.0);
    fc.features[0].properties.insert("POINT_Y", 0.0);
    fc.features[0].properties.insert("NEAR_X", 1.0);
    fc.features[0].properties.insert("NEAR_Y", 1.0);
    let out = join::coord_pairs_to_lines(&fc).unwrap();
    assert_eq!(
        out.features[0].geometry,
        Some(Geometry::LineString(vec![Pos::new(0.0, 0.0), Pos::new(1.0, 1.0)]))
    );
    assert_eq!(
        out.features[0].properties.get("degenerate"),
        Some(&AttributeValue::Bool(false))
    );

    let mut z = points(&[(2.0, 2.0)]);
    z.features[0].properties.insert("POINT_X", 2.0);
    z.features[0].properties.insert("POINT_Y", 2.0);
    z.features[0].properties.insert("NEAR_X", 2.0);
    z.features[0].properties.insert("NEAR_Y", 2.0);
    let out = join::coord_pairs_to_lines(&z).unwrap();
    assert_eq!(
        out.features[0].properties.get("degenerate"),
        Some(&AttributeValue::Bool(true))
    );
}

#[test]
fn add_xy_then_nearest_then_lines_reproduces_join_geometry() {
    // pipeline oracle: add_xy_fields → nearest_join → coord_pairs_to_lines
    let src = points(&[(0.25, 0.75), (0.9, 0.4)]);
    let with_xy = fields::add_xy_fields(&src).unwrap();
    let joined = join::nearest_join(&with_xy, &l1()).unwrap();
    let lines = join::coord_pairs_to_lines(&joined).unwrap();
    for (line, src_f) in lines.features.iter().zip(&joined.features) {
        let Some(Geometry::LineString(ps)) = &line.geometry else {
            panic!("expected line");
        };
        let near = Pos::new(
            src_f.properties.get("NEAR_X").unwrap().as_number().unwrap(),
            src_f.properties.get("NEAR_Y").unwrap().as_number().unwrap(),
        );
        let Some(Geometry::Point(origin)) = src_f.geometry else {
            panic!()
        };
        assert_eq!(ps[0], origin);
        assert_eq!(ps[1], near);
    }
}

#[test]
fn coord_pairs_missing_field_is_an_error() {
    let fc = points(&[(0.0, 0.0)]);
    assert!(matches!(
        join::coord_pairs_to_lines(&fc),
        Err(geoagent_ops::OpError::MissingField(_))
    ));
}

// ---------------------------------------------------------- summarize

#[test]
fn summarize_basic_stats() {
    let mut fc = points(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)]);
    for (f, d) in fc.features.iter_mut().zip([1.0, 2.0, 3.0]) {
        f.properties.insert("NEAR_DIST", d);
    }
    let table = join::summarize_nearest(&fc, "NEAR_DIST", None).unwrap();
    assert_eq!(table.rows.len(), 1);
    assert_eq!(table.cell(0, "min"), Some(&num(1.0)));
    assert_eq!(table.cell(0, "max"), Some(&num(3.0)));
    assert_eq!(table.cell(0, "mean"), Some(&num(2.0)));
    assert_eq!(table.cell(0, "count"), Some(&num(3.0)));
}

#[test]
fn grouped_summary_matches_per_group_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x9009);
    let n = 60;
    let mut fc = points(&(0..n).map(|i| (i as f64, 0.0)).collect::<Vec<_>>());
    let mut per_group: IndexMap<String, Vec<f64>> = IndexMap::new();
    for f in fc.features.iter_mut() {
        let group = format!("g{}", rng.gen_range(0..4));
        let d: f64 = rng.gen_range(0.0..100.0);
        f.properties.insert("grp", group.clone());
        f.properties.insert("NEAR_DIST", d);
        per_group.entry(group).or_default().push(d);
    }
    let table = join::summarize_nearest(&fc, "NEAR_DIST", Some("grp")).unwrap();
    assert_eq!(table.rows.len(), per_group.len());
    for row in &table.rows {
        let g = row.get("grp").unwrap().as_str().unwrap().to_string();
        let values = &per_group[&g];
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let mean = values.iter().sum::<f64>() / values.len() as f64;
        assert_eq!(row.get("min"), Some(&num(min)));
        assert_eq!(row.get("max"), Some(&num(max)));
        assert_close(row.get("mean").unwrap().as_number().unwrap(), mean, 1e-12, "mean");
        assert_eq!(row.get("count"), Some(&num(values.len() as f64)));
    }
}

#[test]
fn summarize_empty_collection_gives_empty_table() {
    let fc = FeatureCollection::new(CrsRef::Epsg(3857));
    let table = join::summarize_nearest(&fc, "NEAR_DIST", None).unwrap();
    assert!(table.is_empty());
}

// ---------------------------------------------------------- aggregation

#[test]
fn group_sums_match_hand_arithmetic() {
    let mut fc = points(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0), (3.0, 0.0)]);
    let data = [("a", 10.0), ("b", 5.0), ("a", 32.0), ("b", 0.5)];
    for (f, (idx, p)) in fc.features.iter_mut().zip(data) {
        f.properties.insert("index", idx);
        f.properties.insert("p", p);
    }
    let table =
        join::group_aggregate(&fc, "index", &[("p".to_string(), AggFn::Sum)]).unwrap();
    assert_eq!(table.rows.len(), 2);
    assert_eq!(table.cell(0, "index"), Some(&AttributeValue::String("a".into())));
    assert_eq!(table.cell(0, "p_sum"), Some(&num(42.0)));
    assert_eq!(table.cell(1, "index"), Some(&AttributeValue::String("b".into())));
    assert_eq!(table.cell(1, "p_sum"), Some(&num(5.5)));
}

#[test]
fn single_group_aggregates_everything() {
    let mut fc = points(&[(0.0, 0.0), (1.0, 0.0)]);
    for f in fc.features.iter_mut() {
        f.properties.insert("g", "only");
        f.properties.insert("v", 2.5);
    }
    let table = join::group_aggregate(
        &fc,
        "g",
        &[
            ("v".to_string(), AggFn::Sum),
            ("v".to_string(), AggFn::Mean),
            ("v".to_string(), AggFn::Min),
            ("v".to_string(), AggFn::Max),
            ("v".to_string(), AggFn::Count),
        ],
    )
    .unwrap();
    assert_eq!(table.rows.len(), 1);
    assert_eq!(table.cell(0, "v_sum"), Some(&num(5.0)));
    assert_eq!(table.cell(0, "v_mean"), Some(&num(2.5)));
    assert_eq!(table.cell(0, "v_count"), Some(&num(2.0)));
}

#[test]
fn empty_collection_aggregates_to_empty_table() {
    let fc = FeatureCollection::new(CrsRef::Epsg(3857));
    let table =
        join::group_aggregate(&fc, "g", &[("v".to_string(), AggFn::Sum)]).unwrap();
    assert!(table.is_empty());
}

#[test]
fn aggregating_a_string_column_is_an_error() {
    let mut fc = points(&[(0.0, 0.0)]);
    fc.features[0].properties.insert("g", "x");
    fc.features[0].properties.insert("v", "not a number");
    assert!(join::group_aggregate(&fc, "g", &[("v".to_string(), AggFn::Sum)]).is_err());
}

#[test]
fn nulls_are_excluded_and_counted() {
    let mut fc = points(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)]);
    fc.features[0].properties.insert("g", "a");
    fc.features[0].properties.insert("v", 1.0);
    fc.features[1].properties.insert("g", "a");
    fc.features[1].properties.insert("v", AttributeValue::Null);
    fc.features[2].properties.insert("g", "a");
    fc.features[2].properties.insert("v", 3.0);
    let table =
        join::group_aggregate(&fc, "g", &[("v".to_string(), AggFn::Mean)]).unwrap();
    assert_eq!(table.cell(0, "v_mean"), Some(&num(2.0)));
    assert_eq!(table.cell(0, "v_nulls"), Some(&num(1.0)));
}

// ------------------------------------------------------- attribute join

#[test]
fn attribute_join_appends_columns_first_match_wins() {
    let mut geo = points(&[(0.0, 0.0), (1.0, 0.0)]);
    geo.features[0].properties.insert("key", "a");
    geo.features[1].properties.insert("key", "zzz");
    let mut table = TabularData::new(vec!["k".into(), "payload".into()]);
    table.push_row(vec!["a".into(), num(1.0)]);
    table.push_row(vec!["a".into(), num(2.0)]);
    table.push_row(vec!["b".into(), num(3.0)]);
    let (out, dups) = join::attribute_join(&geo, &table, "key", "k").unwrap();
    assert_eq!(dups, 1, "duplicate key reported");
    assert_eq!(out.features[0].properties.get("payload"), Some(&num(1.0)));
    assert_eq!(
        out.features[1].properties.get("payload"),
        Some(&AttributeValue::Null)
    );
}

#[test]
fn attribute_join_matches_nested_loop_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xa77a);
    let mut geo = points(&(0..40).map(|i| (i as f64, 0.0)).collect::<Vec<_>>());
    for f in geo.features.iter_mut() {
        f.properties.insert("key", format!("k{}", rng.gen_range(0..12)));
    }
    let mut table = TabularData::new(vec!["key2".into(), "value".into()]);
    let mut rows: Vec<(String, f64)> = Vec::new();
    for _ in 0..20 {
        let k = format!("k{}", rng.gen_range(0..12));
        let v = rng.gen_range(0.0..100.0);
        rows.push((k.clone(), v));
        table.push_row(vec![k.into(), num(v)]);
    }
    let (out, _) = join::attribute_join(&geo, &table, "key", "key2").unwrap();
    for f in &out.features {
        let key = f.properties.get("key").unwrap().as_str().unwrap();
        let want = rows.iter().find(|(k, _)| k == key).map(|(_, v)| *v);
        let got = f.properties.get("value").and_then(|v| v.as_number());
        assert_eq!(got, want, "key {key}");
    }
}

#[test]
fn attribute_join_missing_key_field_is_an_error() {
    let geo = points(&[(0.0, 0.0)]);
    let table = TabularData::new(vec!["k".into()]);
    assert!(join::attribute_join(&geo, &table, "absent", "k").is_err());
}

// ----------------------------------------------------- pairwise distance

#[test]
fn pairwise_distance_basics() {
    let table = measure::pairwise_distances(&points(&[(0.0, 0.0), (3.0, 4.0)])).unwrap();
    assert_eq!(table.rows.len(), 1);
    assert_eq!(table.cell(0, "distance"), Some(&num(5.0)));

    let n = 9;
    let pts: Vec<(f64, f64)> = (0..n).map(|i| (i as f64, 0.0)).collect();
    let table = measure::pairwise_distances(&points(&pts)).unwrap();
    assert_eq!(table.rows.len(), n * (n - 1) / 2);
}

#[test]
fn pairwise_distances_are_permutation_consistent() {
    let pts = [(0.0, 1.0), (2.0, 3.0), (-1.0, 5.0), (4.0, -2.0)];
    let fwd = measure::pairwise_distances(&points(&pts)).unwrap();
    let mut rev_pts = pts;
    rev_pts.reverse();
    let rev = measure::pairwise_distances(&points(&rev_pts)).unwrap();
    let n = pts.len();
    for row in &fwd.rows {
        let i = row.get("i").unwrap().as_number().unwrap() as usize;
        let j = row.get("j").unwrap().as_number().unwrap() as usize;
        let d = row.get("distance").unwrap().as_number().unwrap();
        // the same unordered pair under reversal: indices map to n-1-k
        let (ri, rj) = (n - 1 - j, n - 1 - i);
        let twin = rev
            .rows
            .iter()
            .find(|r| {
                r.get("i").unwrap().as_number().unwrap() as usize == ri.min(rj)
                    && r.get("j").unwrap().as_number().unwrap() as usize == ri.max(rj)
            })
            .expect("pair present after permutation");
        assert_eq!(twin.get("distance").unwrap().as_number().unwrap(), d);
    }
}

// -------------------------------------------------------- point distances

#[test]
fn point_line_distance_matches_nearest_point_on_line() {
    let table = measure::point_line_distance(&points(&[(0.0, 1.0)]), &l1()).unwrap();
    assert_eq!(table.cell(0, "distance"), Some(&num(1.0)));
    let on_line = measure::point_line_distance(&points(&[(0.5, 0.0)]), &l1()).unwrap();
    assert_eq!(on_line.cell(0, "distance"), Some(&num(0.0)));

    // cross-op consistency on random cases
    let mut rng = ChaCha8Rng::seed_from_u64(0xdf01);
    for _ in 0..25 {
        let q = (rng.gen_range(-2.0..3.0), rng.gen_range(-2.0..2.0));
        let table = measure::point_line_distance(&points(&[q]), &l1()).unwrap();
        let via_projection = join::nearest_point_on_line(&points(&[q]), &l1()).unwrap();
        assert_close(
            table.cell(0, "distance").unwrap().as_number().unwrap(),
            via_projection.features[0]
                .properties
                .get("NEAR_DIST")
                .unwrap()
                .as_number()
                .unwrap(),
            1e-12,
            "distance ops agree",
        );
    }
}

// ------------------------------------------------------------ field ops

#[test]
fn add_field_constant_and_expression() {
    let mut fc = points(&[(0.0, 0.0), (1.0, 0.0)]);
    for f in fc.features.iter_mut() {
        f.properties.insert("population", 1_000_000.0);
        f.properties.insert("ALAND", 2_000_000_000.0);
    }
    let with_zero = fields::add_field(
        &fc,
        "zero",
        &fields::FieldValue::Constant(num(0.0)),
        false,
    )
    .unwrap();
    assert!(with_zero.features.iter().all(|f| f.properties.get("zero") == Some(&num(0.0))));

    let expr = geoagent_expr::parse_expression("population / (ALAND / 1000000)").unwrap();
    let out = fields::add_field(
        &with_zero,
        "population_density",
        &fields::FieldValue::Expression(expr),
        false,
    )
    .unwrap();
    for f in &out.features {
        assert_eq!(f.properties.get("population_density"), Some(&num(500.0)));
    }
}

#[test]
fn add_field_collision_requires_overwrite() {
    let fc = points(&[(0.0, 0.0)]);
    let err = fields::add_field(&fc, "id", &fields::FieldValue::Constant(num(9.0)), false);
    assert!(matches!(err, Err(geoagent_ops::OpError::FieldCollision(_))));
    let ok = fields::add_field(&fc, "id", &fields::FieldValue::Constant(num(9.0)), true);
    assert_eq!(ok.unwrap().features[0].properties.get("id"), Some(&num(9.0)));
}

#[test]
fn add_field_on_empty_collection_is_empty() {
    let fc = FeatureCollection::new(CrsRef::Epsg(3857));
    let out = fields::add_field(&fc, "x", &fields::FieldValue::Constant(num(1.0)), false).unwrap();
    assert!(out.features.is_empty());
}

#[test]
fn rename_swap_is_atomic() {
    let mut fc = points(&[(0.0, 0.0)]);
    fc.features[0].properties.insert("a", 1.0);
    fc.features[0].properties.insert("b", 2.0);
    let mut mapping = IndexMap::new();
    mapping.insert("a".to_string(), "b".to_string());
    mapping.insert("b".to_string(), "a".to_string());
    let out = fields::rename_fields(&fc, &mapping).unwrap();
    assert_eq!(out.features[0].properties.get("b"), Some(&num(1.0)));
    assert_eq!(out.features[0].properties.get("a"), Some(&num(2.0)));
}

#[test]
fn rename_preserves_order_and_validates() {
    let mut fc = points(&[(0.0, 0.0)]);
    fc.features[0].properties.insert("p", 7.0);
    let mut mapping = IndexMap::new();
    mapping.insert("p".to_string(), "precip".to_string());
    let out = fields::rename_fields(&fc, &mapping).unwrap();
    let keys: Vec<&String> = out.features[0].properties.iter().map(|(k, _)| k).collect();
    assert_eq!(keys, ["id", "precip"]);

    let empty = fields::rename_fields(&fc, &IndexMap::new()).unwrap();
    assert_eq!(empty, fc);

    let mut bad = IndexMap::new();
    bad.insert("absent".to_string(), "x".to_string());
    assert!(fields::rename_fields(&fc, &bad).is_err());
    let mut collide = IndexMap::new();
    collide.insert("p".to_string(), "id".to_string());
    assert!(fields::rename_fields(&fc, &collide).is_err());
}

#[test]
fn add_xy_writes_coordinates() {
    let out = fields::add_xy_fields(&points(&[(3.0, 4.0)])).unwrap();
    assert_eq!(out.features[0].properties.get("POINT_X"), Some(&num(3.0)));
    assert_eq!(out.features[0].properties.get("POINT_Y"), Some(&num(4.0)));
    assert!(fields::add_xy_fields(&unit_square()).is_err());
    let empty = fields::add_xy_fields(&FeatureCollection::new(CrsRef::Epsg(3857))).unwrap();
    assert!(empty.features.is_empty());
}

#[test]
fn select_rows_by_index_and_id() {
    let fc = points(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)]);
    let first = fields::select_rows(&fc, &fields::RowSelector::Indices(vec![0])).unwrap();
    assert_eq!(first.features.len(), 1);
    let empty = fields::select_rows(&fc, &fields::RowSelector::Indices(vec![])).unwrap();
    assert!(empty.features.is_empty());
    let reordered = fields::select_rows(&fc, &fields::RowSelector::Indices(vec![2, 0])).unwrap();
    let ids: Vec<f64> = reordered
        .features
        .iter()
        .map(|f| f.properties.get("id").unwrap().as_number().unwrap())
        .collect();
    assert_eq!(ids, vec![2.0, 0.0], "request order preserved");
    assert!(fields::select_rows(&fc, &fields::RowSelector::Indices(vec![5])).is_err());
}

#[test]
fn filter_rows_matches_per_row_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xf117);
    let mut fc = points(&(0..50).map(|i| (i as f64, 0.0)).collect::<Vec<_>>());
    let mut values: Vec<Option<f64>> = Vec::new();
    for f in fc.features.iter_mut() {
        if rng.gen_bool(0.85) {
            let v = rng.gen_range(0.0..2000.0);
            f.properties.insert("p", v);
            values.push(Some(v));
        } else {
            values.push(None);
        }
    }
    let expr = geoagent_expr::parse_expression("p > 1000").unwrap();
    let out = fields::filter_rows(&fc, &expr).unwrap();
    let want: Vec<usize> = values
        .iter()
        .enumerate()
        .filter(|(_, v)| matches!(v, Some(x) if *x > 1000.0))
        .map(|(i, _)| i)
        .collect();
    let got: Vec<usize> = out
        .features
        .iter()
        .map(|f| f.properties.get("id").unwrap().as_number().unwrap() as usize)
        .collect();
    assert_eq!(got, want);
}

#[test]
fn tautology_filter_keeps_rows_with_non_null_field() {
    let mut fc = points(&[(0.0, 0.0), (1.0, 0.0)]);
    for f in fc.features.iter_mut() {
        f.properties.insert("p", 1.0);
    }
    let expr = geoagent_expr::parse_expression("p == p").unwrap();
    let out = fields::filter_rows(&fc, &expr).unwrap();
    assert_eq!(out.features.len(), 2);
}

#[test]
fn sort_by_near_dist_ascending() {
    let mut fc = points(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)]);
    for (f, d) in fc.features.iter_mut().zip([5.0, 1.0, 3.0]) {
        f.properties.insert("NEAR_DIST", d);
    }
    let out = fields::sort_by_field(&fc, "NEAR_DIST", SortOrder::Asc).unwrap();
    let dists: Vec<f64> = out
        .features
        .iter()
        .map(|f| f.properties.get("NEAR_DIST").unwrap().as_number().unwrap())
        .collect();
    assert_eq!(dists, vec![1.0, 3.0, 5.0]);
}

#[test]
fn sort_is_stable_and_identity_on_sorted_input() {
    let mut fc = points(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)]);
    for (f, (d, tag)) in fc.features.iter_mut().zip([(1.0, "x"), (1.0, "y"), (2.0, "z")]) {
        f.properties.insert("d", d);
        f.properties.insert("tag", tag);
    }
    let out = fields::sort_by_field(&fc, "d", SortOrder::Asc).unwrap();
    let tags: Vec<&str> = out
        .features
        .iter()
        .map(|f| f.properties.get("tag").unwrap().as_str().unwrap())
        .collect();
    assert_eq!(tags, ["x", "y", "z"], "equal keys keep input order");
    let again = fields::sort_by_field(&out, "d", SortOrder::Asc).unwrap();
    assert_eq!(again, out, "sorted input is a fixed point");
}

#[test]
fn mixed_type_sort_column_is_rejected() {
    let mut fc = points(&[(0.0, 0.0), (1.0, 0.0)]);
    fc.features[0].properties.insert("v", 1.0);
    fc.features[1].properties.insert("v", "one");
    assert!(matches!(
        fields::sort_by_field(&fc, "v", SortOrder::Asc),
        Err(geoagent_ops::OpError::MixedTypeColumn(_))
    ));
}
