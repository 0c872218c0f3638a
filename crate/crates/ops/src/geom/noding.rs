//! Planar noding and face extraction.
//!
//! Input segments are split at every pairwise intersection, snapped onto a
//! fine grid, and assembled into a planar graph. Faces come out of the
//! standard half-edge traversal (leftmost-turn successor); bounded faces are
//! the counterclockwise cycles.

use std::collections::{BTreeMap, HashMap};

use geoagent_model::Pos;

use super::alg::segment_intersection_point;

/// Snap resolution: coordinates are quantized to this many decimal digits
/// when matching graph vertices.
const SNAP_DIGITS: i32 = 9;

fn snap(v: f64) -> f64 {
    let scale = 10f64.powi(SNAP_DIGITS);
    (v * scale).round() / scale
}

fn key(p: Pos) -> (i64, i64) {
    let scale = 10f64.powi(SNAP_DIGITS);
    ((p.x * scale).round() as i64, (p.y * scale).round() as i64)
}

/// One input segment with the index of the input feature it came from.
#[derive(Debug, Clone, Copy)]
pub struct TaggedSegment {
    pub a: Pos,
    pub b: Pos,
    pub source: usize,
}

/// A face extracted from the noded graph.
#[derive(Debug, Clone)]
pub struct Face {
    /// Closed counterclockwise ring.
    pub ring: Vec<Pos>,
    pub area: f64,
    /// Sources of the edges on this face's boundary.
    pub sources: Vec<usize>,
}

/// Split all segments at their pairwise intersections.
pub fn node_segments(segments: &[TaggedSegment]) -> Vec<TaggedSegment> {
    let mut out = Vec::new();
    for (i, seg) in segments.iter().enumerate() {
        let mut cuts: Vec<f64> = vec![0.0, 1.0];
        for (j, other) in segments.iter().enumerate() {
            if i == j {
                continue;
            }
            if let Some((_, t, _)) = segment_intersection_point(seg.a, seg.b, other.a, other.b) {
                cuts.push(t);
            }
            // collinear overlaps: include the other's endpoints projected in
            for p in [other.a, other.b] {
                if super::alg::point_on_segment(p, seg.a, seg.b) {
                    let len2 = (seg.b.x - seg.a.x).powi(2) + (seg.b.y - seg.a.y).powi(2);
                    if len2 > 0.0 {
                        let t = ((p.x - seg.a.x) * (seg.b.x - seg.a.x)
                            + (p.y - seg.a.y) * (seg.b.y - seg.a.y))
                            / len2;
                        cuts.push(t.clamp(0.0, 1.0));
                    }
                }
            }
        }
        cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        cuts.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
        for w in cuts.windows(2) {
            let p = lerp(seg.a, seg.b, w[0]);
            let q = lerp(seg.a, seg.b, w[1]);
            let p = Pos::new(snap(p.x), snap(p.y));
            let q = Pos::new(snap(q.x), snap(q.y));
            if key(p) != key(q) {
                out.push(TaggedSegment {
                    a: p,
                    b: q,
                    source: seg.source,
                });
            }
        }
    }
    out
}

fn lerp(a: Pos, b: Pos, t: f64) -> Pos {
    Pos::new(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y))
}

/// Number of vertices and undirected edges of the noded graph (dedup'd).
pub fn graph_counts(noded: &[TaggedSegment]) -> (usize, usize) {
    let mut verts = std::collections::HashSet::new();
    let mut edges = std::collections::HashSet::new();
    for s in noded {
        let (ka, kb) = (key(s.a), key(s.b));
        verts.insert(ka);
        verts.insert(kb);
        let e = if ka <= kb { (ka, kb) } else { (kb, ka) };
        edges.insert(e);
    }
    (verts.len(), edges.len())
}

/// Extract bounded faces of the noded graph.
pub fn extract_faces(noded: &[TaggedSegment]) -> Vec<Face> {
    // dedupe undirected edges, remembering one source per edge
    // BTreeMap keeps half-edge construction order deterministic
    let mut edge_map: BTreeMap<((i64, i64), (i64, i64)), usize> = BTreeMap::new();
    let mut verts: HashMap<(i64, i64), Pos> = HashMap::new();
    for s in noded {
        let (ka, kb) = (key(s.a), key(s.b));
        verts.entry(ka).or_insert(s.a);
        verts.entry(kb).or_insert(s.b);
        let e = if ka <= kb { (ka, kb) } else { (kb, ka) };
        edge_map.entry(e).or_insert(s.source);
    }

    // prune dangling chains: edges ending at degree-1 vertices can never
    // bound a face and would otherwise show up as slits
    loop {
        let mut degree: HashMap<(i64, i64), usize> = HashMap::new();
        for &(ka, kb) in edge_map.keys() {
            *degree.entry(ka).or_default() += 1;
            *degree.entry(kb).or_default() += 1;
        }
        let before = edge_map.len();
        edge_map.retain(|&(ka, kb), _| degree[&ka] > 1 && degree[&kb] > 1);
        if edge_map.len() == before {
            break;
        }
    }

    // directed half-edges
    struct Half {
        from: (i64, i64),
        source: usize,
        angle: f64,
        twin: usize,
        next: usize,
    }
    let mut halves: Vec<Half> = Vec::new();
    for (&(ka, kb), &source) in &edge_map {
        let (pa, pb) = (verts[&ka], verts[&kb]);
        let idx = halves.len();
        halves.push(Half {
            from: ka,
            source,
            angle: (pb.y - pa.y).atan2(pb.x - pa.x),
            twin: idx + 1,
            next: usize::MAX,
        });
        halves.push(Half {
            from: kb,
            source,
            angle: (pa.y - pb.y).atan2(pa.x - pb.x),
            twin: idx,
            next: usize::MAX,
        });
    }

    // outgoing half-edges per vertex, sorted by angle
    let mut outgoing: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    for (i, h) in halves.iter().enumerate() {
        outgoing.entry(h.from).or_default().push(i);
    }
    for list in outgoing.values_mut() {
        list.sort_by(|&a, &b| halves[a].angle.partial_cmp(&halves[b].angle).unwrap());
    }

    // next(h) = rotational predecessor of twin(h) around its origin, which
    // makes every face traversal take the leftmost (most counterclockwise)
    // turn and sweep each face once
    for i in 0..halves.len() {
        let twin = halves[i].twin;
        let at = halves[twin].from;
        let ring = &outgoing[&at];
        let pos = ring.iter().position(|&e| e == twin).unwrap();
        let prev = ring[(pos + ring.len() - 1) % ring.len()];
        halves[i].next = prev;
    }

    let mut visited = vec![false; halves.len()];
    let mut faces = Vec::new();
    for start in 0..halves.len() {
        if visited[start] {
            continue;
        }
        let mut ring_keys = Vec::new();
        let mut sources = Vec::new();
        let mut cur = start;
        loop {
            visited[cur] = true;
            ring_keys.push(halves[cur].from);
            sources.push(halves[cur].source);
            cur = halves[cur].next;
            if cur == start {
                break;
            }
        }
        if ring_keys.len() < 3 {
            continue;
        }
        let mut ring: Vec<Pos> = ring_keys.iter().map(|k| verts[k]).collect();
        ring.push(ring[0]);
        let area = super::alg::ring_area(&ring);
        if area > 1e-15 {
            faces.push(Face { ring, area, sources });
        }
    }
    faces
}
