//! Offset (buffer) polygon construction.
//!
//! Arcs are discretized at 16 segments per quarter circle, fixed, so a full
//! circle is a regular 64-gon and buffer areas have stable closed forms.

use geoagent_model::{Geometry, Pos, Ring};

use super::alg::{ring_area, segments_intersect};
use super::boolops::clean_contour;

/// Arc step: a quarter circle is 16 segments.
const ARC_STEP: f64 = std::f64::consts::FRAC_PI_2 / 16.0;

/// Buffer a geometry by `d > 0`. Returns polygons (usually one).
pub fn buffer_geometry(g: &Geometry, d: f64) -> Vec<Vec<Ring>> {
    match g {
        Geometry::Point(p) => vec![vec![circle_ring(*p, d)]],
        Geometry::MultiPoint(ps) => {
            let shapes: Vec<Vec<Ring>> = ps.iter().map(|p| vec![circle_ring(*p, d)]).collect();
            union_all(shapes)
        }
        Geometry::LineString(ps) => polyline_buffer(ps, d),
        Geometry::MultiLineString(ls) => {
            let mut shapes = Vec::new();
            for ps in ls {
                shapes.extend(polyline_buffer(ps, d));
            }
            union_all(shapes)
        }
        Geometry::Polygon(rings) => polygon_buffer(rings, d),
        Geometry::MultiPolygon(polys) => {
            let mut shapes = Vec::new();
            for rings in polys {
                shapes.extend(polygon_buffer(rings, d));
            }
            union_all(shapes)
        }
    }
}

/// Regular 64-gon around a point, starting at angle 0, counterclockwise.
pub fn circle_ring(c: Pos, r: f64) -> Ring {
    let mut ring: Ring = (0..64)
        .map(|i| {
            let a = i as f64 * ARC_STEP;
            Pos::new(c.x + r * a.cos(), c.y + r * a.sin())
        })
        .collect();
    ring.push(ring[0]);
    ring
}

/// Exact area of the discretized disc of radius `r`.
pub fn disc_area(r: f64) -> f64 {
    32.0 * r * r * (std::f64::consts::PI / 32.0).sin()
}

fn normalize_angle(a: f64) -> f64 {
    let tau = std::f64::consts::TAU;
    let mut v = a % tau;
    if v < 0.0 {
        v += tau;
    }
    v
}

/// Append arc points around `center` from angle `from` counterclockwise by
/// `sweep > 0`, excluding the first point, including the last.
fn push_arc(out: &mut Vec<Pos>, center: Pos, r: f64, from: f64, sweep: f64) {
    let k = ((sweep / ARC_STEP) - 1e-9).ceil().max(1.0) as usize;
    let step = sweep / k as f64;
    for i in 1..=k {
        let a = from + step * i as f64;
        out.push(Pos::new(center.x + r * a.cos(), center.y + r * a.sin()));
    }
}

/// Offset a closed ring outward (to the traversal's right) by `d`.
///
/// Left turns (convex for counterclockwise rings) get arcs; right turns get
/// the natural miter (intersection of the two offset lines).
fn offset_ring_outward(ring: &[Pos], d: f64) -> Vec<Pos> {
    // open vertex list, ring[len-1] == ring[0]
    let verts = &ring[..ring.len() - 1];
    let n = verts.len();
    let mut out: Vec<Pos> = Vec::new();
    for i in 0..n {
        let prev = verts[(i + n - 1) % n];
        let cur = verts[i];
        let next = verts[(i + 1) % n];
        let din = dir(prev, cur);
        let dout = dir(cur, next);
        let nin = right_normal(din);
        let nout = right_normal(dout);
        let turn = cross_z(din, dout);
        let p_in = Pos::new(cur.x + d * nin.x, cur.y + d * nin.y);
        let p_out = Pos::new(cur.x + d * nout.x, cur.y + d * nout.y);
        if turn > 1e-12 {
            // left turn: arc from the incoming normal to the outgoing normal
            out.push(p_in);
            let from = nin.y.atan2(nin.x);
            let to = nout.y.atan2(nout.x);
            let sweep = normalize_angle(to - from);
            push_arc(&mut out, cur, d, from, sweep);
        } else if turn < -1e-12 {
            // right turn: intersect the two offset lines
            let a0 = Pos::new(prev.x + d * nin.x, prev.y + d * nin.y);
            let b0 = Pos::new(next.x + d * nout.x, next.y + d * nout.y);
            if let Some(m) = line_intersection(a0, p_in, p_out, b0) {
                out.push(m);
            } else {
                out.push(p_in);
                out.push(p_out);
            }
        } else {
            out.push(p_in);
        }
    }
    out
}

fn dir(a: Pos, b: Pos) -> Pos {
    let len = a.dist(&b);
    Pos::new((b.x - a.x) / len, (b.y - a.y) / len)
}

fn right_normal(d: Pos) -> Pos {
    Pos::new(d.y, -d.x)
}

fn cross_z(a: Pos, b: Pos) -> f64 {
    a.x * b.y - a.y * b.x
}

fn line_intersection(a: Pos, b: Pos, c: Pos, d: Pos) -> Option<Pos> {
    let r = Pos::new(b.x - a.x, b.y - a.y);
    let s = Pos::new(d.x - c.x, d.y - c.y);
    let denom = r.x * s.y - r.y * s.x;
    if denom.abs() < 1e-15 {
        return None;
    }
    let t = ((c.x - a.x) * s.y - (c.y - a.y) * s.x) / denom;
    Some(Pos::new(a.x + t * r.x, a.y + t * r.y))
}

fn close(mut ring: Vec<Pos>) -> Ring {
    if ring.first() != ring.last() {
        let first = ring[0];
        ring.push(first);
    }
    ring
}

fn ring_self_intersects(ring: &[Pos]) -> bool {
    let n = ring.len() - 1;
    for i in 0..n {
        for j in (i + 1)..n {
            // skip adjacent segments (they share an endpoint)
            if j == i || (j + 1) % n == i || (i + 1) % n == j {
                continue;
            }
            if segments_intersect(ring[i], ring[i + 1], ring[j], ring[j + 1]) {
                return true;
            }
        }
    }
    false
}

fn finish_contour(points: Vec<Pos>) -> Vec<Vec<Ring>> {
    let ring = close(points);
    if ring.len() < 4 {
        return Vec::new();
    }
    if ring_self_intersects(&ring) {
        clean_contour(ring[..ring.len() - 1].iter().map(|p| [p.x, p.y]).collect())
    } else {
        vec![vec![ring]]
    }
}

fn polygon_buffer(rings: &[Ring], d: f64) -> Vec<Vec<Ring>> {
    let Some(exterior) = rings.first() else {
        return Vec::new();
    };
    let mut out = finish_contour(offset_ring_outward(exterior, d));
    // holes shrink; collapsed holes disappear
    for hole in &rings[1..] {
        // holes are stored clockwise; traversing them clockwise keeps the
        // polygon interior on the right-offset side as well
        let shrunk = close(offset_ring_outward(hole, d));
        if shrunk.len() >= 4 && !ring_self_intersects(&shrunk) && ring_area(&shrunk) < 0.0 {
            if let Some(first) = out.first_mut() {
                first.push(shrunk);
            }
        }
    }
    out
}

fn polyline_buffer(ps: &[Pos], d: f64) -> Vec<Vec<Ring>> {
    if ps.len() < 2 {
        return Vec::new();
    }
    // walk forward then backward: a degenerate closed loop whose outward
    // offset is the capsule around the line, with pi-arcs at both ends
    let mut loop_verts: Vec<Pos> = ps.to_vec();
    loop_verts.extend(ps[1..ps.len() - 1].iter().rev().copied());
    let mut loop_ring = loop_verts.clone();
    loop_ring.push(loop_ring[0]);
    finish_contour(offset_capsule(&loop_ring, d))
}

/// Offset for the forward+backward loop: u-turn vertices get pi arcs.
fn offset_capsule(ring: &[Pos], d: f64) -> Vec<Pos> {
    let verts = &ring[..ring.len() - 1];
    let n = verts.len();
    let mut out: Vec<Pos> = Vec::new();
    for i in 0..n {
        let prev = verts[(i + n - 1) % n];
        let cur = verts[i];
        let next = verts[(i + 1) % n];
        if prev == next {
            // u-turn end cap: half circle
            let din = dir(prev, cur);
            let nin = right_normal(din);
            let from = nin.y.atan2(nin.x);
            out.push(Pos::new(cur.x + d * nin.x, cur.y + d * nin.y));
            push_arc(&mut out, cur, d, from, std::f64::consts::PI);
            continue;
        }
        let din = dir(prev, cur);
        let dout = dir(cur, next);
        let nin = right_normal(din);
        let nout = right_normal(dout);
        let turn = cross_z(din, dout);
        let p_in = Pos::new(cur.x + d * nin.x, cur.y + d * nin.y);
        let p_out = Pos::new(cur.x + d * nout.x, cur.y + d * nout.y);
        if turn > 1e-12 {
            out.push(p_in);
            let from = nin.y.atan2(nin.x);
            let sweep = normalize_angle(nout.y.atan2(nout.x) - from);
            push_arc(&mut out, cur, d, from, sweep);
        } else if turn < -1e-12 {
            let a0 = Pos::new(prev.x + d * nin.x, prev.y + d * nin.y);
            let b0 = Pos::new(next.x + d * nout.x, next.y + d * nout.y);
            if let Some(m) = line_intersection(a0, p_in, p_out, b0) {
                out.push(m);
            } else {
                out.push(p_in);
                out.push(p_out);
            }
        } else {
            out.push(p_in);
        }
    }
    out
}

fn union_all(shapes: Vec<Vec<Ring>>) -> Vec<Vec<Ring>> {
    if shapes.len() <= 1 {
        return shapes;
    }
    let to_kernel = |polys: &[Vec<Ring>]| -> super::boolops::Shapes {
        polys
            .iter()
            .map(|rings| {
                rings
                    .iter()
                    .map(|r| r[..r.len() - 1].iter().map(|p| [p.x, p.y]).collect())
                    .collect()
            })
            .collect()
    };
    let acc = to_kernel(&shapes);
    let empty: super::boolops::Shapes = Vec::new();
    super::boolops::polygon_boolean(&acc, &empty, super::boolops::BoolOp::Union)
}
