//! Regular subdivisions of lattice polygons from the upper hull of a lift.
//!
//! The upper hull is traced by gift wrapping: starting from the boundary
//! edges (the 1-D upper hulls along each side), each unexplored edge is
//! rotated about until every lifted point lies on or below the new plane.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::Serialize;

use super::polygon::{cross, newton_polygon, LatticePolygon, Point, PolygonKind};
use crate::exact::format_q;
use crate::{Error, Result, Q};

/// Projection of one upper-hull facet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub polygon: LatticePolygon,
    /// Lifted points lying on the facet, vertices included, sorted.
    pub points: Vec<Point>,
    /// Facet is the graph of `slope · p + offset`.
    pub slope: [Q; 2],
    pub offset: Q,
}

/// Edge of the subdivision, with one cell (boundary) or two (interior).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdivisionEdge {
    pub a: Point,
    pub b: Point,
    pub cells: (usize, Option<usize>),
}

impl SubdivisionEdge {
    pub fn is_interior(&self) -> bool {
        self.cells.1.is_some()
    }
}

#[derive(Clone, Debug)]
pub struct RegularSubdivision {
    pub parent: LatticePolygon,
    pub cells: Vec<Cell>,
    pub edges: Vec<SubdivisionEdge>,
    pub lift: BTreeMap<Point, Q>,
}

struct Lifted<'a> {
    pts: &'a [(Point, Q)],
}

impl Lifted<'_> {
    /// Coefficients (α, β, γ) of the plane through three lifted points
    /// whose projections are not collinear.
    fn plane(&self, i: usize, j: usize, k: usize) -> ([Q; 2], Q) {
        let (a, ha) = (&self.pts[i].0, &self.pts[i].1);
        let (b, hb) = (&self.pts[j].0, &self.pts[j].1);
        let (c, hc) = (&self.pts[k].0, &self.pts[k].1);
        let d = Q::from_integer(cross(*a, *b, *c).into());
        let q = |v: i64| Q::from_integer(v.into());
        let (bx, by) = (q(b[0] - a[0]), q(b[1] - a[1]));
        let (cx, cy) = (q(c[0] - a[0]), q(c[1] - a[1]));
        let (dhb, dhc) = (hb - ha, hc - ha);
        let alpha = (&dhb * &cy - &dhc * &by) / &d;
        let beta = (&bx * &dhc - &cx * &dhb) / &d;
        let gamma = ha - &alpha * q(a[0]) - &beta * q(a[1]);
        ([alpha, beta], gamma)
    }
}

pub(crate) fn plane_value(slope: &[Q; 2], offset: &Q, p: Point) -> Q {
    offset + &slope[0] * Q::from_integer(p[0].into()) + &slope[1] * Q::from_integer(p[1].into())
}

/// Points of the 1-D upper hull of lifted points on a common line, in order
/// along the line.
fn upper_chain(mut pts: Vec<(Point, Q)>) -> Vec<Point> {
    pts.sort_by_key(|a| a.0);
    let mut chain: Vec<(Point, Q)> = Vec::new();
    for p in pts {
        while chain.len() >= 2 {
            let (a, ha) = &chain[chain.len() - 2];
            let (b, hb) = &chain[chain.len() - 1];
            // parameter along the line: use whichever coordinate varies
            let k = if a[0] != p.0[0] { 0 } else { 1 };
            let (sa, sb, sp) = (a[k], b[k], p.0[k]);
            // b is below or on the chord from a to p
            let lhs = hb * Q::from_integer((sp - sa).into());
            let rhs = ha * Q::from_integer((sp - sb).into()) + &p.1 * Q::from_integer((sb - sa).into());
            if lhs <= rhs {
                chain.pop();
            } else {
                break;
            }
        }
        chain.push(p);
    }
    chain.into_iter().map(|(p, _)| p).collect()
}

/// Upper-hull chain of a lift whose support is collinear (a segment or a point).
pub fn segment_subdivision(lift: &BTreeMap<Point, Q>) -> Result<Vec<Point>> {
    let pts: Vec<Point> = lift.keys().copied().collect();
    let hull = newton_polygon(&pts)?;
    if hull.kind() == PolygonKind::Polygon {
        return Err(Error::invalid("support is not collinear"));
    }
    Ok(upper_chain(lift.iter().map(|(p, h)| (*p, h.clone())).collect()))
}

/// Regular subdivision of `parent` induced by the upper hull of `lift`.
///
/// Lattice points of `parent` missing from `lift` take no part; every vertex
/// of `parent` must be lifted.
pub fn regular_subdivision(parent: &LatticePolygon, lift: &BTreeMap<Point, Q>) -> Result<RegularSubdivision> {
    if parent.is_degenerate() {
        return Err(Error::Degenerate("parent polygon has no interior".into()));
    }
    if let Some(p) = lift.keys().find(|p| !parent.contains(**p)) {
        return Err(Error::invalid(format!("lifted point {p:?} lies outside the polygon")));
    }
    if let Some(v) = parent.vertices().iter().find(|v| !lift.contains_key(*v)) {
        return Err(Error::invalid(format!("polygon vertex {v:?} is not lifted")));
    }
    let pts: Vec<(Point, Q)> = lift.iter().map(|(p, h)| (*p, h.clone())).collect();
    if pts.len() < 3 {
        return Err(Error::Degenerate("fewer than 3 lifted points".into()));
    }
    let lifted = Lifted { pts: &pts };
    let index: HashMap<Point, usize> = pts.iter().enumerate().map(|(i, (p, _))| (*p, i)).collect();

    let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
    for side in parent.edges() {
        let on_side: Vec<(Point, Q)> = pts
            .iter()
            .filter(|(p, _)| cross(side.a, side.b, *p) == 0)
            .cloned()
            .collect();
        let mut chain = upper_chain(on_side);
        if chain.first() != Some(&side.a) {
            chain.reverse();
        }
        for w in chain.windows(2) {
            queue.push_back((index[&w[0]], index[&w[1]]));
        }
    }

    let mut cells: Vec<Cell> = Vec::new();
    let mut seen_faces: BTreeSet<Vec<Point>> = BTreeSet::new();
    let mut seen_edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    while let Some((ia, ib)) = queue.pop_front() {
        if !seen_edges.insert((ia, ib)) {
            continue;
        }
        let (a, b) = (pts[ia].0, pts[ib].0);
        let left: Vec<usize> = (0..pts.len()).filter(|&k| cross(a, b, pts[k].0) > 0).collect();
        let Some(&first) = left.first() else { continue };
        let mut best = first;
        let (mut slope, mut offset) = lifted.plane(ia, ib, best);
        for &k in &left[1..] {
            if pts[k].1 > plane_value(&slope, &offset, pts[k].0) {
                best = k;
                (slope, offset) = lifted.plane(ia, ib, best);
            }
        }
        let on: Vec<Point> = pts
            .iter()
            .filter(|(p, h)| *h == plane_value(&slope, &offset, *p))
            .map(|(p, _)| *p)
            .collect();
        let polygon = newton_polygon(&on)?;
        let mut key = polygon.vertices().to_vec();
        key.sort_unstable();
        if !seen_faces.insert(key) {
            continue;
        }
        let vs = polygon.vertices();
        for i in 0..vs.len() {
            let (u, v) = (vs[i], vs[(i + 1) % vs.len()]);
            seen_edges.insert((index[&u], index[&v]));
            queue.push_back((index[&v], index[&u]));
        }
        let mut points = on;
        points.sort_unstable();
        cells.push(Cell { polygon, points, slope, offset });
    }

    let edges = collect_edges(&cells)?;
    let sub = RegularSubdivision { parent: parent.clone(), cells, edges, lift: lift.clone() };
    let total: i64 = sub.cells.iter().map(|c| c.polygon.doubled_area()).sum();
    if total != parent.doubled_area() {
        return Err(Error::invalid("cells do not tile the polygon; lift the vertices of every side"));
    }
    Ok(sub)
}

fn collect_edges(cells: &[Cell]) -> Result<Vec<SubdivisionEdge>> {
    let mut map: BTreeMap<(Point, Point), Vec<usize>> = BTreeMap::new();
    for (ci, c) in cells.iter().enumerate() {
        for e in c.polygon.edges() {
            let key = if e.a < e.b { (e.a, e.b) } else { (e.b, e.a) };
            map.entry(key).or_default().push(ci);
        }
    }
    map.into_iter()
        .map(|((a, b), cs)| match cs.as_slice() {
            [c] => Ok(SubdivisionEdge { a, b, cells: (*c, None) }),
            [c, d] => Ok(SubdivisionEdge { a, b, cells: (*c, Some(*d)) }),
            _ => Err(Error::numeric(format!("edge {a:?}-{b:?} shared by {} cells", cs.len()))),
        })
        .collect()
}

impl RegularSubdivision {
    pub fn is_triangulation(&self) -> bool {
        self.cells.iter().all(|c| c.polygon.vertices().len() == 3 && c.points.len() == 3)
    }

    /// Every cell is a lattice triangle of doubled area 1.
    pub fn is_unimodular(&self) -> bool {
        self.is_triangulation() && self.cells.iter().all(|c| c.polygon.doubled_area() == 1)
    }

    /// Lifted points that are vertices of some cell.
    pub fn vertices_used(&self) -> BTreeSet<Point> {
        self.cells.iter().flat_map(|c| c.polygon.vertices().iter().copied()).collect()
    }

    /// Lifted points strictly below the upper hull.
    pub fn hidden_points(&self) -> Vec<Point> {
        let on: BTreeSet<Point> = self.cells.iter().flat_map(|c| c.points.iter().copied()).collect();
        self.lift.keys().filter(|p| !on.contains(*p)).copied().collect()
    }

    pub fn interior_edges(&self) -> impl Iterator<Item = &SubdivisionEdge> {
        self.edges.iter().filter(|e| e.is_interior())
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct CellFile {
            vertices: Vec<Point>,
            points: Vec<Point>,
        }
        #[derive(Serialize)]
        struct LiftEntry {
            point: Point,
            height: String,
        }
        #[derive(Serialize)]
        struct File {
            parent: Vec<Point>,
            cells: Vec<CellFile>,
            lift: Vec<LiftEntry>,
        }
        let f = File {
            parent: self.parent.vertices().to_vec(),
            cells: self
                .cells
                .iter()
                .map(|c| CellFile { vertices: c.polygon.vertices().to_vec(), points: c.points.clone() })
                .collect(),
            lift: self
                .lift
                .iter()
                .map(|(p, h)| LiftEntry { point: *p, height: format_q(h) })
                .collect(),
        };
        serde_json::to_string(&f).expect("serializable")
    }
}
