use serde::{Deserialize, Serialize};

use crate::exact::gcd;
use crate::{Error, Result};

pub type Point = [i64; 2];

pub fn cross(o: Point, a: Point, b: Point) -> i64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PolygonKind {
    Polygon,
    Segment,
    Point,
}

/// Convex lattice polygon with counterclockwise extreme vertices.
///
/// Segments and single points are allowed and flagged by [`PolygonKind`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticePolygon {
    vertices: Vec<Point>,
    kind: PolygonKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LatticeSegment {
    pub a: Point,
    pub b: Point,
}

impl LatticeSegment {
    pub fn new(a: Point, b: Point) -> Self {
        Self { a, b }
    }

    pub fn is_degenerate(&self) -> bool {
        self.a == self.b
    }
}

/// Number of primitive lattice steps between the endpoints.
pub fn lattice_length(s: &LatticeSegment) -> Result<i64> {
    if s.is_degenerate() {
        return Err(Error::Degenerate("segment with equal endpoints".into()));
    }
    Ok(gcd((s.b[0] - s.a[0]).abs(), (s.b[1] - s.a[1]).abs()))
}

/// Convex hull of a finite support set (monotone chain, exact).
pub fn newton_polygon(support: &[Point]) -> Result<LatticePolygon> {
    let mut pts: Vec<Point> = support.to_vec();
    pts.sort_unstable();
    pts.dedup();
    match pts.len() {
        0 => return Err(Error::EmptySupport),
        1 => return Ok(LatticePolygon { vertices: pts, kind: PolygonKind::Point }),
        _ => {}
    }
    let mut lower: Vec<Point> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() == 2 {
        return Ok(LatticePolygon { vertices: lower, kind: PolygonKind::Segment });
    }
    Ok(LatticePolygon { vertices: lower, kind: PolygonKind::Polygon })
}

impl LatticePolygon {
    /// Polygon from vertices in any order; they are re-hulled.
    pub fn from_vertices(vertices: &[Point]) -> Result<Self> {
        newton_polygon(vertices)
    }

    /// `dΔ`: the triangle with vertices (0,0), (d,0), (0,d).
    pub fn standard_triangle(d: i64) -> Self {
        if d == 0 {
            return newton_polygon(&[[0, 0]]).expect("nonempty");
        }
        newton_polygon(&[[0, 0], [d, 0], [0, d]]).expect("nonempty")
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn kind(&self) -> PolygonKind {
        self.kind
    }

    pub fn is_degenerate(&self) -> bool {
        self.kind != PolygonKind::Polygon
    }

    /// Sides as ccw-directed segments (empty for points, two for segments).
    pub fn edges(&self) -> Vec<LatticeSegment> {
        let n = self.vertices.len();
        match self.kind {
            PolygonKind::Point => Vec::new(),
            _ => (0..n).map(|i| LatticeSegment::new(self.vertices[i], self.vertices[(i + 1) % n])).collect(),
        }
    }

    /// Twice the Euclidean area (an integer).
    pub fn doubled_area(&self) -> i64 {
        if self.is_degenerate() {
            return 0;
        }
        let v = &self.vertices;
        let n = v.len();
        (0..n).map(|i| v[i][0] * v[(i + 1) % n][1] - v[(i + 1) % n][0] * v[i][1]).sum()
    }

    pub fn boundary_points(&self) -> Result<i64> {
        if self.is_degenerate() {
            return Err(Error::Degenerate("boundary count of a degenerate polygon".into()));
        }
        Ok(self.edges().iter().map(|e| lattice_length(e).expect("distinct vertices")).sum())
    }

    /// Strict interior lattice points, via Pick's formula.
    pub fn interior_points(&self) -> Result<i64> {
        let b = self.boundary_points()?;
        Ok((self.doubled_area() - b + 2) / 2)
    }

    /// Closed containment test.
    pub fn contains(&self, p: Point) -> bool {
        match self.kind {
            PolygonKind::Point => self.vertices[0] == p,
            PolygonKind::Segment => {
                let (a, b) = (self.vertices[0], self.vertices[1]);
                cross(a, b, p) == 0
                    && (p[0] - a[0]) * (p[0] - b[0]) <= 0
                    && (p[1] - a[1]) * (p[1] - b[1]) <= 0
            }
            PolygonKind::Polygon => {
                let n = self.vertices.len();
                (0..n).all(|i| cross(self.vertices[i], self.vertices[(i + 1) % n], p) >= 0)
            }
        }
    }

    pub fn contains_strictly(&self, p: Point) -> bool {
        if self.is_degenerate() {
            return false;
        }
        let n = self.vertices.len();
        (0..n).all(|i| cross(self.vertices[i], self.vertices[(i + 1) % n], p) > 0)
    }

    pub fn bounding_box(&self) -> (Point, Point) {
        let mut lo = self.vertices[0];
        let mut hi = self.vertices[0];
        for v in &self.vertices {
            for k in 0..2 {
                lo[k] = lo[k].min(v[k]);
                hi[k] = hi[k].max(v[k]);
            }
        }
        (lo, hi)
    }

    /// All lattice points, sorted lexicographically.
    pub fn lattice_points(&self) -> Vec<Point> {
        let (lo, hi) = self.bounding_box();
        let mut out = Vec::new();
        for x in lo[0]..=hi[0] {
            for y in lo[1]..=hi[1] {
                if self.contains([x, y]) {
                    out.push([x, y]);
                }
            }
        }
        out
    }

    pub fn minkowski_sum(&self, other: &Self) -> Self {
        let mut pts = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for a in &self.vertices {
            for b in &other.vertices {
                pts.push([a[0] + b[0], a[1] + b[1]]);
            }
        }
        newton_polygon(&pts).expect("nonempty")
    }

    pub fn translate(&self, by: Point) -> Self {
        let pts: Vec<Point> = self.vertices.iter().map(|v| [v[0] + by[0], v[1] + by[1]]).collect();
        newton_polygon(&pts).expect("nonempty")
    }

    /// Returns `d` if this polygon is a translate of `dΔ`.
    pub fn as_standard_triangle(&self) -> Option<i64> {
        if self.kind != PolygonKind::Polygon || self.vertices.len() != 3 {
            return None;
        }
        let (lo, hi) = self.bounding_box();
        let d = hi[0] - lo[0];
        let shifted = self.translate([-lo[0], -lo[1]]);
        (shifted == Self::standard_triangle(d)).then_some(d)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&PolygonFile { vertices: self.vertices.clone() }).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let f: PolygonFile = serde_json::from_str(s)?;
        newton_polygon(&f.vertices)
    }
}

#[derive(Serialize, Deserialize)]
struct PolygonFile {
    vertices: Vec<Point>,
}

/// Normalized mixed area `Area(P+Q) - Area(P) - Area(Q)`, an integer.
pub fn mixed_area(p: &LatticePolygon, q: &LatticePolygon) -> i64 {
    let s = p.minkowski_sum(q);
    let twice = s.doubled_area() - p.doubled_area() - q.doubled_area();
    debug_assert!(twice % 2 == 0);
    twice / 2
}
