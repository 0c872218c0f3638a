//! Point/segment/polygon primitives: containment (closed-set semantics),
//! distances, hulls and minimum rotated rectangles.

use geoagent_model::{Geometry, Pos, Ring};

/// Relative epsilon for on-boundary tests.
const BOUNDARY_EPS: f64 = 1e-12;

pub fn cross(o: Pos, a: Pos, b: Pos) -> f64 {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

/// Whether `p` lies on segment `ab` (within a tiny relative tolerance).
pub fn point_on_segment(p: Pos, a: Pos, b: Pos) -> bool {
    let scale = (b.x - a.x).abs() + (b.y - a.y).abs() + 1.0;
    if cross(a, b, p).abs() > BOUNDARY_EPS * scale * scale {
        return false;
    }
    let dot = (p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y);
    let len2 = (b.x - a.x).powi(2) + (b.y - a.y).powi(2);
    if len2 == 0.0 {
        return p.dist(&a) <= BOUNDARY_EPS * scale;
    }
    (-BOUNDARY_EPS..=1.0 + BOUNDARY_EPS).contains(&(dot / len2))
}

/// Even-odd ray cast against one ring; boundary handled by the caller.
fn point_in_ring_interior(p: Pos, ring: &[Pos]) -> bool {
    let mut inside = false;
    for w in ring.windows(2) {
        let (a, b) = (w[0], w[1]);
        if (a.y > p.y) != (b.y > p.y) {
            let x_at = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if x_at > p.x {
                inside = !inside;
            }
        }
    }
    inside
}

/// Point-in-polygon with the boundary counting as inside.
pub fn point_in_polygon(p: Pos, rings: &[Ring]) -> bool {
    for ring in rings {
        for w in ring.windows(2) {
            if point_on_segment(p, w[0], w[1]) {
                return true;
            }
        }
    }
    let Some(exterior) = rings.first() else {
        return false;
    };
    if !point_in_ring_interior(p, exterior) {
        return false;
    }
    for hole in &rings[1..] {
        if point_in_ring_interior(p, hole) {
            return false;
        }
    }
    true
}

/// Point containment against any polygonal geometry.
pub fn point_in_geometry(p: Pos, g: &Geometry) -> bool {
    match g {
        Geometry::Polygon(rings) => point_in_polygon(p, rings),
        Geometry::MultiPolygon(polys) => polys.iter().any(|rings| point_in_polygon(p, rings)),
        _ => false,
    }
}

/// Proper or touching intersection of segments `ab` and `cd`.
pub fn segments_intersect(a: Pos, b: Pos, c: Pos, d: Pos) -> bool {
    let d1 = cross(c, d, a);
    let d2 = cross(c, d, b);
    let d3 = cross(a, b, c);
    let d4 = cross(a, b, d);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    point_on_segment(a, c, d)
        || point_on_segment(b, c, d)
        || point_on_segment(c, a, b)
        || point_on_segment(d, a, b)
}

/// Intersection point of properly crossing segments, with line parameters.
/// Returns `None` for parallel/collinear pairs and non-crossing pairs.
pub fn segment_intersection_point(a: Pos, b: Pos, c: Pos, d: Pos) -> Option<(Pos, f64, f64)> {
    let r = Pos::new(b.x - a.x, b.y - a.y);
    let s = Pos::new(d.x - c.x, d.y - c.y);
    let denom = r.x * s.y - r.y * s.x;
    if denom == 0.0 {
        return None;
    }
    let t = ((c.x - a.x) * s.y - (c.y - a.y) * s.x) / denom;
    let u = ((c.x - a.x) * r.y - (c.y - a.y) * r.x) / denom;
    let eps = 1e-12;
    if (-eps..=1.0 + eps).contains(&t) && (-eps..=1.0 + eps).contains(&u) {
        Some((Pos::new(a.x + t * r.x, a.y + t * r.y), t, u))
    } else {
        None
    }
}

/// Distance from `p` to segment `ab` plus the closest point and its
/// parameter along the segment (clamped to the ends).
pub fn point_segment_distance(p: Pos, a: Pos, b: Pos) -> (f64, Pos, f64) {
    let len2 = (b.x - a.x).powi(2) + (b.y - a.y).powi(2);
    if len2 == 0.0 {
        return (p.dist(&a), a, 0.0);
    }
    let t = (((p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y)) / len2).clamp(0.0, 1.0);
    let q = Pos::new(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y));
    (p.dist(&q), q, t)
}

pub fn polyline_length(ps: &[Pos]) -> f64 {
    ps.windows(2).map(|w| w[0].dist(&w[1])).sum()
}

/// Signed area of a closed ring (positive = counterclockwise).
pub fn ring_area(ring: &[Pos]) -> f64 {
    let mut acc = 0.0;
    for w in ring.windows(2) {
        acc += w[0].x * w[1].y - w[1].x * w[0].y;
    }
    acc / 2.0
}

/// Area of a polygon with normalized rings (holes carry negative area).
pub fn polygon_area(rings: &[Ring]) -> f64 {
    rings.iter().map(|r| ring_area(r)).sum()
}

/// Total area of any geometry (zero for points and lines).
pub fn geometry_area(g: &Geometry) -> f64 {
    match g {
        Geometry::Polygon(rings) => polygon_area(rings),
        Geometry::MultiPolygon(polys) => polys.iter().map(|r| polygon_area(r)).sum(),
        _ => 0.0,
    }
}

/// Boundary length (perimeter for polygons, length for lines).
pub fn geometry_length(g: &Geometry) -> f64 {
    match g {
        Geometry::LineString(ps) => polyline_length(ps),
        Geometry::MultiLineString(ls) => ls.iter().map(|ps| polyline_length(ps)).sum(),
        Geometry::Polygon(rings) => rings.iter().map(|r| polyline_length(r)).sum(),
        Geometry::MultiPolygon(polys) => polys
            .iter()
            .flat_map(|rings| rings.iter())
            .map(|r| polyline_length(r))
            .sum(),
        _ => 0.0,
    }
}

/// Monotone-chain convex hull. Returns the hull counterclockwise without a
/// closing duplicate. Collinear input collapses to its two extremes.
pub fn convex_hull(points: &[Pos]) -> Vec<Pos> {
    let mut pts: Vec<Pos> = points.to_vec();
    pts.sort_by(|a, b| a.x.partial_cmp(&b.x).unwrap().then(a.y.partial_cmp(&b.y).unwrap()));
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<Pos> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Pos> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Minimum-area enclosing rectangle of a point set.
pub struct RotatedRect {
    /// Corners in counterclockwise order (not closed).
    pub corners: [Pos; 4],
    pub area: f64,
    /// Angle of the rectangle's longer side, degrees CCW from +x in [0, 180).
    pub direction_deg: f64,
    /// True when the input was collinear/degenerate (zero area).
    pub degenerate: bool,
}

/// Rotating-calipers sweep over hull edges: the minimum-area rectangle is
/// aligned with one hull edge.
pub fn min_rotated_rect(points: &[Pos]) -> Option<RotatedRect> {
    let hull = convex_hull(points);
    if hull.is_empty() {
        return None;
    }
    if hull.len() <= 2 {
        // degenerate: all points collinear
        let a = hull[0];
        let b = *hull.last().unwrap();
        let ang = ((b.y - a.y).atan2(b.x - a.x).to_degrees() + 180.0) % 180.0;
        return Some(RotatedRect {
            corners: [a, b, b, a],
            area: 0.0,
            direction_deg: if a == b { 0.0 } else { ang },
            degenerate: true,
        });
    }
    let n = hull.len();
    let mut best: Option<(f64, f64, f64, f64, f64, f64)> = None; // area, theta, minx, maxx, miny, maxy
    for i in 0..n {
        let a = hull[i];
        let b = hull[(i + 1) % n];
        let theta = (b.y - a.y).atan2(b.x - a.x);
        let (sin_t, cos_t) = theta.sin_cos();
        let mut minx = f64::INFINITY;
        let mut maxx = f64::NEG_INFINITY;
        let mut miny = f64::INFINITY;
        let mut maxy = f64::NEG_INFINITY;
        for p in &hull {
            // rotate by -theta
            let rx = p.x * cos_t + p.y * sin_t;
            let ry = -p.x * sin_t + p.y * cos_t;
            minx = minx.min(rx);
            maxx = maxx.max(rx);
            miny = miny.min(ry);
            maxy = maxy.max(ry);
        }
        let area = (maxx - minx) * (maxy - miny);
        if best.is_none() || area < best.unwrap().0 {
            best = Some((area, theta, minx, maxx, miny, maxy));
        }
    }
    let (area, theta, minx, maxx, miny, maxy) = best.unwrap();
    let (sin_t, cos_t) = theta.sin_cos();
    let unrotate = |x: f64, y: f64| Pos::new(x * cos_t - y * sin_t, x * sin_t + y * cos_t);
    let corners = [
        unrotate(minx, miny),
        unrotate(maxx, miny),
        unrotate(maxx, maxy),
        unrotate(minx, maxy),
    ];
    let width = maxx - minx;
    let height = maxy - miny;
    let theta_deg = (theta.to_degrees() % 180.0 + 180.0) % 180.0;
    let direction_deg = if width >= height {
        theta_deg
    } else {
        (theta_deg + 90.0) % 180.0
    };
    Some(RotatedRect {
        corners,
        area,
        direction_deg,
        degenerate: false,
    })
}

/// A point guaranteed inside a simple polygon: the midpoint of the widest
/// interior horizontal chord at the scanline through the median of ring
/// vertex y-values.
pub fn representative_point(rings: &[Ring]) -> Option<Pos> {
    let exterior = rings.first()?;
    let mut ys: Vec<f64> = exterior[..exterior.len() - 1].iter().map(|p| p.y).collect();
    ys.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mid = ys.len() / 2;
    let mut scan_y = if ys.len() % 2 == 0 {
        (ys[mid - 1] + ys[mid]) / 2.0
    } else {
        ys[mid]
    };
    // nudge off exact vertex levels so the scanline only makes proper crossings
    if ys.contains(&scan_y) {
        let min_y = ys[0];
        let max_y = *ys.last().unwrap();
        if max_y > min_y {
            scan_y += (max_y - min_y) * 1e-7;
        }
    }
    // crossings against all rings (holes break chords)
    let mut xs: Vec<f64> = Vec::new();
    for ring in rings {
        for w in ring.windows(2) {
            let (a, b) = (w[0], w[1]);
            if (a.y > scan_y) != (b.y > scan_y) {
                xs.push(a.x + (scan_y - a.y) / (b.y - a.y) * (b.x - a.x));
            }
        }
    }
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut best: Option<(f64, Pos)> = None;
    for pair in xs.chunks(2) {
        if let [x0, x1] = pair {
            let width = x1 - x0;
            let candidate = Pos::new((x0 + x1) / 2.0, scan_y);
            if point_in_polygon(candidate, rings)
                && best.map_or(true, |(w, _)| width > w)
            {
                best = Some((width, candidate));
            }
        }
    }
    best.map(|(_, p)| p).or_else(|| exterior.first().copied())
}

/// Area-weighted centroid of a polygon (holes subtract).
pub fn polygon_centroid(rings: &[Ring]) -> Option<Pos> {
    let mut area_acc = 0.0;
    let mut cx = 0.0;
    let mut cy = 0.0;
    for ring in rings {
        for w in ring.windows(2) {
            let f = w[0].x * w[1].y - w[1].x * w[0].y;
            area_acc += f;
            cx += (w[0].x + w[1].x) * f;
            cy += (w[0].y + w[1].y) * f;
        }
    }
    if area_acc.abs() < f64::EPSILON {
        return None;
    }
    Some(Pos::new(cx / (3.0 * area_acc), cy / (3.0 * area_acc)))
}

/// Length-weighted centroid of a polyline.
pub fn polyline_centroid(ps: &[Pos]) -> Option<Pos> {
    let mut total = 0.0;
    let mut cx = 0.0;
    let mut cy = 0.0;
    for w in ps.windows(2) {
        let len = w[0].dist(&w[1]);
        total += len;
        cx += (w[0].x + w[1].x) / 2.0 * len;
        cy += (w[0].y + w[1].y) / 2.0 * len;
    }
    if total == 0.0 {
        return ps.first().copied();
    }
    Some(Pos::new(cx / total, cy / total))
}

/// Geometry centroid: area-weighted for polygons, length-weighted for
/// lines, mean for point sets.
pub fn geometry_centroid(g: &Geometry) -> Option<Pos> {
    match g {
        Geometry::Point(p) => Some(*p),
        Geometry::MultiPoint(ps) => {
            if ps.is_empty() {
                return None;
            }
            let n = ps.len() as f64;
            Some(Pos::new(
                ps.iter().map(|p| p.x).sum::<f64>() / n,
                ps.iter().map(|p| p.y).sum::<f64>() / n,
            ))
        }
        Geometry::LineString(ps) => polyline_centroid(ps),
        Geometry::MultiLineString(ls) => {
            // weight each part by its length
            let mut total = 0.0;
            let mut cx = 0.0;
            let mut cy = 0.0;
            for ps in ls {
                for w in ps.windows(2) {
                    let len = w[0].dist(&w[1]);
                    total += len;
                    cx += (w[0].x + w[1].x) / 2.0 * len;
                    cy += (w[0].y + w[1].y) / 2.0 * len;
                }
            }
            if total == 0.0 {
                return ls.first().and_then(|ps| ps.first()).copied();
            }
            Some(Pos::new(cx / total, cy / total))
        }
        Geometry::Polygon(rings) => polygon_centroid(rings),
        Geometry::MultiPolygon(polys) => {
            let mut area_acc = 0.0;
            let mut cx = 0.0;
            let mut cy = 0.0;
            for rings in polys {
                for ring in rings {
                    for w in ring.windows(2) {
                        let f = w[0].x * w[1].y - w[1].x * w[0].y;
                        area_acc += f;
                        cx += (w[0].x + w[1].x) * f;
                        cy += (w[0].y + w[1].y) * f;
                    }
                }
            }
            if area_acc.abs() < f64::EPSILON {
                return None;
            }
            Some(Pos::new(cx / (3.0 * area_acc), cy / (3.0 * area_acc)))
        }
    }
}

/// All line segments of a geometry's boundary/path.
pub fn geometry_segments(g: &Geometry) -> Vec<(Pos, Pos)> {
    let mut out = Vec::new();
    let mut push_path = |ps: &[Pos]| {
        for w in ps.windows(2) {
            out.push((w[0], w[1]));
        }
    };
    match g {
        Geometry::Point(_) | Geometry::MultiPoint(_) => {}
        Geometry::LineString(ps) => push_path(ps),
        Geometry::MultiLineString(ls) => ls.iter().for_each(|ps| push_path(ps)),
        Geometry::Polygon(rings) => rings.iter().for_each(|r| push_path(r)),
        Geometry::MultiPolygon(polys) => polys
            .iter()
            .flat_map(|rings| rings.iter())
            .for_each(|r| push_path(r)),
    }
    out
}

/// Geometry-level intersects with closed-set (boundary counts) semantics.
pub fn geometries_intersect(a: &Geometry, b: &Geometry) -> bool {
    // any vertex of one inside the other's area
    let mut hit = false;
    a.each_pos(|p| hit |= point_in_geometry(p, b));
    if hit {
        return true;
    }
    b.each_pos(|p| hit |= point_in_geometry(p, a));
    if hit {
        return true;
    }
    // point-on-path contact
    let segs_a = geometry_segments(a);
    let segs_b = geometry_segments(b);
    let mut on_path = false;
    a.each_pos(|p| on_path |= segs_b.iter().any(|&(s, e)| point_on_segment(p, s, e)));
    b.each_pos(|p| on_path |= segs_a.iter().any(|&(s, e)| point_on_segment(p, s, e)));
    if on_path {
        return true;
    }
    // boundary crossings
    segs_a
        .iter()
        .any(|&(a0, a1)| segs_b.iter().any(|&(b0, b1)| segments_intersect(a0, a1, b0, b1)))
}

/// `a` entirely within `b` (closed-set: boundary contact allowed).
pub fn geometry_within(a: &Geometry, b: &Geometry) -> bool {
    if !b.kind().is_polygon_like() {
        // within a line/point target only holds for identical point content
        return match (a, b) {
            (Geometry::Point(p), Geometry::Point(q)) => p == q,
            _ => false,
        };
    }
    let mut all_in = true;
    a.each_pos(|p| all_in &= point_in_geometry(p, b));
    if !all_in {
        return false;
    }
    // no proper boundary crossing may leave the polygon: sample segment
    // midpoints of `a` as a cheap sufficiency check at desk scale
    for (s, e) in geometry_segments(a) {
        let mid = Pos::new((s.x + e.x) / 2.0, (s.y + e.y) / 2.0);
        if !point_in_geometry(mid, b) {
            return false;
        }
    }
    true
}
