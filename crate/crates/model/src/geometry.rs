use crate::{ModelError, Result};

/// A 2-D position in the coordinate units of the owning collection's CRS.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pos {
    pub x: f64,
    pub y: f64,
}

impl Pos {
    pub fn new(x: f64, y: f64) -> Self {
        Pos { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dist(&self, other: &Pos) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// A polygon ring: closed (first == last) after normalization.
pub type Ring = Vec<Pos>;

/// Axis-aligned bounding box `(minx, miny, maxx, maxy)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BBox {
    pub minx: f64,
    pub miny: f64,
    pub maxx: f64,
    pub maxy: f64,
}

impl BBox {
    pub fn from_point(p: Pos) -> Self {
        BBox {
            minx: p.x,
            miny: p.y,
            maxx: p.x,
            maxy: p.y,
        }
    }

    pub fn expand(&mut self, p: Pos) {
        self.minx = self.minx.min(p.x);
        self.miny = self.miny.min(p.y);
        self.maxx = self.maxx.max(p.x);
        self.maxy = self.maxy.max(p.y);
    }

    pub fn merge(&mut self, other: &BBox) {
        self.minx = self.minx.min(other.minx);
        self.miny = self.miny.min(other.miny);
        self.maxx = self.maxx.max(other.maxx);
        self.maxy = self.maxy.max(other.maxy);
    }

    pub fn contains(&self, p: Pos) -> bool {
        p.x >= self.minx && p.x <= self.maxx && p.y >= self.miny && p.y <= self.maxy
    }

    pub fn width(&self) -> f64 {
        self.maxx - self.minx
    }

    pub fn height(&self) -> f64 {
        self.maxy - self.miny
    }
}

/// The six GeoJSON geometry kinds supported by the model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GeometryKind {
    Point,
    MultiPoint,
    LineString,
    MultiLineString,
    Polygon,
    MultiPolygon,
}

impl GeometryKind {
    pub fn name(&self) -> &'static str {
        match self {
            GeometryKind::Point => "Point",
            GeometryKind::MultiPoint => "MultiPoint",
            GeometryKind::LineString => "LineString",
            GeometryKind::MultiLineString => "MultiLineString",
            GeometryKind::Polygon => "Polygon",
            GeometryKind::MultiPolygon => "MultiPolygon",
        }
    }

    /// True for the kinds whose coordinates trace boundaries (line or area).
    pub fn is_point_like(&self) -> bool {
        matches!(self, GeometryKind::Point | GeometryKind::MultiPoint)
    }

    pub fn is_line_like(&self) -> bool {
        matches!(self, GeometryKind::LineString | GeometryKind::MultiLineString)
    }

    pub fn is_polygon_like(&self) -> bool {
        matches!(self, GeometryKind::Polygon | GeometryKind::MultiPolygon)
    }
}

/// A GeoJSON geometry. Polygon rings are stored closed; after
/// [`Geometry::normalize`] exterior rings wind counterclockwise and holes
/// clockwise.
#[derive(Debug, Clone, PartialEq)]
pub enum Geometry {
    Point(Pos),
    MultiPoint(Vec<Pos>),
    LineString(Vec<Pos>),
    MultiLineString(Vec<Vec<Pos>>),
    Polygon(Vec<Ring>),
    MultiPolygon(Vec<Vec<Ring>>),
}

/// Twice the signed area of a ring (positive = counterclockwise).
pub(crate) fn ring_signed_area2(ring: &[Pos]) -> f64 {
    let mut acc = 0.0;
    for w in ring.windows(2) {
        acc += w[0].x * w[1].y - w[1].x * w[0].y;
    }
    acc
}

fn close_ring(ring: &mut Ring) {
    if let (Some(&first), Some(&last)) = (ring.first(), ring.last()) {
        if first != last {
            ring.push(first);
        }
    }
}

fn normalize_polygon(rings: &mut Vec<Ring>) -> Result<()> {
    for (i, ring) in rings.iter_mut().enumerate() {
        close_ring(ring);
        if ring.len() < 4 {
            return Err(ModelError::Schema(format!(
                "polygon ring with {} positions (need at least 4 when closed)",
                ring.len()
            )));
        }
        let ccw = ring_signed_area2(ring) >= 0.0;
        let want_ccw = i == 0;
        if ccw != want_ccw {
            ring.reverse();
        }
    }
    Ok(())
}

impl Geometry {
    pub fn kind(&self) -> GeometryKind {
        match self {
            Geometry::Point(_) => GeometryKind::Point,
            Geometry::MultiPoint(_) => GeometryKind::MultiPoint,
            Geometry::LineString(_) => GeometryKind::LineString,
            Geometry::MultiLineString(_) => GeometryKind::MultiLineString,
            Geometry::Polygon(_) => GeometryKind::Polygon,
            Geometry::MultiPolygon(_) => GeometryKind::MultiPolygon,
        }
    }

    /// Visit every position in the geometry.
    pub fn each_pos<F: FnMut(Pos)>(&self, mut f: F) {
        self.each_pos_ref(&mut f)
    }

    fn each_pos_ref<F: FnMut(Pos)>(&self, f: &mut F) {
        match self {
            Geometry::Point(p) => f(*p),
            Geometry::MultiPoint(ps) | Geometry::LineString(ps) => {
                ps.iter().copied().for_each(f)
            }
            Geometry::MultiLineString(lines) => {
                lines.iter().flatten().copied().for_each(f)
            }
            Geometry::Polygon(rings) => rings.iter().flatten().copied().for_each(f),
            Geometry::MultiPolygon(polys) => {
                polys.iter().flatten().flatten().copied().for_each(f)
            }
        }
    }

    /// Map every position through `f`, keeping structure intact.
    pub fn map_pos<F: Fn(Pos) -> Pos>(&self, f: F) -> Geometry {
        let map_line = |ps: &Vec<Pos>| ps.iter().map(|p| f(*p)).collect::<Vec<_>>();
        match self {
            Geometry::Point(p) => Geometry::Point(f(*p)),
            Geometry::MultiPoint(ps) => Geometry::MultiPoint(map_line(ps)),
            Geometry::LineString(ps) => Geometry::LineString(map_line(ps)),
            Geometry::MultiLineString(ls) => {
                Geometry::MultiLineString(ls.iter().map(map_line).collect())
            }
            Geometry::Polygon(rings) => Geometry::Polygon(rings.iter().map(map_line).collect()),
            Geometry::MultiPolygon(polys) => Geometry::MultiPolygon(
                polys
                    .iter()
                    .map(|rings| rings.iter().map(map_line).collect())
                    .collect(),
            ),
        }
    }

    /// Same as [`map_pos`](Self::map_pos) but the mapping may fail.
    pub fn try_map_pos<F: Fn(Pos) -> Result<Pos>>(&self, f: F) -> Result<Geometry> {
        let map_line = |ps: &Vec<Pos>| ps.iter().map(|p| f(*p)).collect::<Result<Vec<_>>>();
        Ok(match self {
            Geometry::Point(p) => Geometry::Point(f(*p)?),
            Geometry::MultiPoint(ps) => Geometry::MultiPoint(map_line(ps)?),
            Geometry::LineString(ps) => Geometry::LineString(map_line(ps)?),
            Geometry::MultiLineString(ls) => Geometry::MultiLineString(
                ls.iter().map(map_line).collect::<Result<Vec<_>>>()?,
            ),
            Geometry::Polygon(rings) => {
                Geometry::Polygon(rings.iter().map(map_line).collect::<Result<Vec<_>>>()?)
            }
            Geometry::MultiPolygon(polys) => Geometry::MultiPolygon(
                polys
                    .iter()
                    .map(|rings| rings.iter().map(map_line).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?,
            ),
        })
    }

    pub fn bbox(&self) -> Option<BBox> {
        let mut out: Option<BBox> = None;
        self.each_pos(|p| match &mut out {
            Some(b) => b.expand(p),
            None => out = Some(BBox::from_point(p)),
        });
        out
    }

    /// Close rings, fix ring orientation and validate structural rules.
    pub fn normalize(&mut self) -> Result<()> {
        let mut finite = true;
        self.each_pos(|p| finite &= p.is_finite());
        if !finite {
            return Err(ModelError::NonFinite(format!("{} geometry", self.kind().name())));
        }
        match self {
            Geometry::Point(_) | Geometry::MultiPoint(_) => {}
            Geometry::LineString(ps) => {
                if ps.len() < 2 {
                    return Err(ModelError::Schema(format!(
                        "LineString with {} positions (need at least 2)",
                        ps.len()
                    )));
                }
            }
            Geometry::MultiLineString(lines) => {
                for ps in lines.iter() {
                    if ps.len() < 2 {
                        return Err(ModelError::Schema(format!(
                            "MultiLineString part with {} positions (need at least 2)",
                            ps.len()
                        )));
                    }
                }
            }
            Geometry::Polygon(rings) => normalize_polygon(rings)?,
            Geometry::MultiPolygon(polys) => {
                for rings in polys.iter_mut() {
                    normalize_polygon(rings)?;
                }
            }
        }
        Ok(())
    }
}
