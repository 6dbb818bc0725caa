use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exact::{format_q, gcd, parse_q, primitive_int};
use crate::hypersurface::TropicalComplex;
use crate::{Error, Result, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphEdge {
    pub a: usize,
    pub b: usize,
    pub weight: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Leg {
    pub vertex: usize,
    pub weight: i64,
}

/// Abstract graph Γ with its 1-valent vertices already removed, so that
/// unbounded edges are legs attached to a single vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveGraph {
    pub num_vertices: usize,
    pub edges: Vec<GraphEdge>,
    pub legs: Vec<Leg>,
}

/// Positions and integer directions. Edge directions point from `a` to `b`;
/// leg directions point outward.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalMap {
    pub dim: usize,
    pub positions: Vec<Vec<Q>>,
    pub edge_directions: Vec<Vec<i64>>,
    pub leg_directions: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalCurve {
    pub graph: CurveGraph,
    pub map: TropicalMap,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    /// Weighted direction sum at each vertex; all zero for a valid curve.
    pub residuals: Vec<Vec<i64>>,
    /// Bounded edges whose endpoint difference is not a positive multiple of the direction.
    pub misplaced_edges: Vec<usize>,
    pub zero_directions: usize,
    pub bad_weights: usize,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.misplaced_edges.is_empty()
            && self.zero_directions == 0
            && self.bad_weights == 0
            && self.residuals.iter().all(|r| r.iter().all(|x| *x == 0))
    }
}

/// Multiset of merged weighted leg directions; sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Degree(pub Vec<Vec<i64>>);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VertexMultiplicity {
    pub value: i64,
    /// Set when two incident directions are parallel (the map is not an immersion there).
    pub degenerate: bool,
}

fn check_sizes(g: &CurveGraph, m: &TropicalMap) -> Result<()> {
    let ok = m.positions.len() == g.num_vertices
        && m.edge_directions.len() == g.edges.len()
        && m.leg_directions.len() == g.legs.len()
        && m.positions.iter().all(|p| p.len() == m.dim)
        && m.edge_directions.iter().chain(&m.leg_directions).all(|d| d.len() == m.dim)
        && g.edges.iter().all(|e| e.a < g.num_vertices && e.b < g.num_vertices)
        && g.legs.iter().all(|l| l.vertex < g.num_vertices);
    if ok {
        Ok(())
    } else {
        Err(Error::invalid("graph and map sizes disagree"))
    }
}

/// Outgoing weighted vectors `w·v` at every vertex: (vertex, vector, is_leg, index).
fn incidences(g: &CurveGraph, m: &TropicalMap) -> Vec<Vec<(Vec<i64>, bool, usize)>> {
    let mut inc = vec![Vec::new(); g.num_vertices];
    for (i, e) in g.edges.iter().enumerate() {
        let d = &m.edge_directions[i];
        inc[e.a].push((d.iter().map(|x| x * e.weight).collect(), false, i));
        inc[e.b].push((d.iter().map(|x| -x * e.weight).collect(), false, i));
    }
    for (i, l) in g.legs.iter().enumerate() {
        inc[l.vertex].push((m.leg_directions[i].iter().map(|x| x * l.weight).collect(), true, i));
    }
    inc
}

/// Image cell: start, end (`None` for a leg), primitive direction, weight.
pub type CanonicalCell = (Vec<Q>, Option<Vec<Q>>, Vec<i64>, i64);

pub fn validate(g: &CurveGraph, m: &TropicalMap) -> Result<ValidationReport> {
    check_sizes(g, m)?;
    let mut r = ValidationReport {
        bad_weights: g.edges.iter().map(|e| e.weight).chain(g.legs.iter().map(|l| l.weight)).filter(|w| *w < 1).count(),
        zero_directions: m.edge_directions.iter().chain(&m.leg_directions).filter(|d| d.iter().all(|x| *x == 0)).count(),
        ..Default::default()
    };
    r.residuals = incidences(g, m)
        .into_iter()
        .map(|vs| {
            let mut s = vec![0i64; m.dim];
            for (v, _, _) in vs {
                for k in 0..m.dim {
                    s[k] += v[k];
                }
            }
            s
        })
        .collect();
    for (i, e) in g.edges.iter().enumerate() {
        let d = &m.edge_directions[i];
        let diff: Vec<Q> = (0..m.dim).map(|k| &m.positions[e.b][k] - &m.positions[e.a][k]).collect();
        // diff = s·d with s > 0
        let Some(k0) = d.iter().position(|x| *x != 0) else { continue };
        let s = &diff[k0] / Q::from_integer(d[k0].into());
        let consistent = s.is_positive() && (0..m.dim).all(|k| diff[k] == &s * Q::from_integer(d[k].into()));
        if !consistent {
            r.misplaced_edges.push(i);
        }
    }
    Ok(r)
}

pub fn degree(g: &CurveGraph, m: &TropicalMap) -> Result<Degree> {
    if !validate(g, m)?.is_valid() {
        return Err(Error::invalid("degree of an invalid curve"));
    }
    let mut merged: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    for (l, d) in g.legs.iter().zip(&m.leg_directions) {
        let prim = primitive_int(d).expect("nonzero");
        let mult = d.iter().zip(&prim).find(|(_, p)| **p != 0).map(|(x, p)| x / p).expect("nonzero");
        *merged.entry(prim).or_insert(0) += mult * l.weight;
    }
    let mut out: Vec<Vec<i64>> = merged.into_iter().map(|(p, k)| p.iter().map(|x| x * k).collect()).collect();
    out.sort();
    Ok(Degree(out))
}

/// `dim H_1(Γ) + 1 - dim H_0(Γ)`.
pub fn genus(g: &CurveGraph) -> i64 {
    let n = g.num_vertices;
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut b0 = n as i64;
    for e in &g.edges {
        let (a, b) = (find(&mut parent, e.a), find(&mut parent, e.b));
        if a != b {
            parent[a] = b;
            b0 -= 1;
        }
    }
    let b1 = g.edges.len() as i64 - n as i64 + b0;
    b1 + 1 - b0
}

/// Index of the lattice spanned by two integer vectors in its saturation
/// (the gcd of all 2×2 minors); `|u × v|` in the plane.
fn lattice_area(u: &[i64], v: &[i64]) -> i64 {
    let n = u.len();
    let mut g = 0;
    for i in 0..n {
        for k in i + 1..n {
            g = gcd(g, (u[i] * v[k] - u[k] * v[i]).abs());
        }
    }
    g
}

/// `w₁w₂|v₁×v₂|` at a 3-valent vertex.
pub fn vertex_multiplicity(g: &CurveGraph, m: &TropicalMap, vertex: usize) -> Result<VertexMultiplicity> {
    check_sizes(g, m)?;
    let inc = incidences(g, m);
    let vs = inc.get(vertex).ok_or_else(|| Error::invalid(format!("no vertex {vertex}")))?;
    if vs.len() != 3 {
        return Err(Error::invalid(format!("vertex {vertex} has valence {}", vs.len())));
    }
    let m12 = lattice_area(&vs[0].0, &vs[1].0);
    let m23 = lattice_area(&vs[1].0, &vs[2].0);
    let m31 = lattice_area(&vs[2].0, &vs[0].0);
    let balanced = (0..m.dim).all(|k| vs[0].0[k] + vs[1].0[k] + vs[2].0[k] == 0);
    if balanced && !(m12 == m23 && m23 == m31) {
        return Err(Error::numeric("cyclic multiplicity identity failed at a balanced vertex"));
    }
    Ok(VertexMultiplicity { value: m12, degenerate: m12 == 0 })
}

/// Product of the vertex multiplicities of a simple curve.
pub fn curve_multiplicity(g: &CurveGraph, m: &TropicalMap) -> Result<i64> {
    if !is_simple(g, m)? {
        return Err(Error::invalid("multiplicity is defined for simple curves"));
    }
    (0..g.num_vertices).try_fold(1i64, |acc, v| Ok(acc * vertex_multiplicity(g, m, v)?.value))
}

/// `p` lies on the segment `[a, b]` (or the ray from `a` along `d` when `b` is `None`).
fn on_cell(p: &[Q], a: &[Q], dir: &[i64], len: Option<&Q>) -> bool {
    let Some(k0) = dir.iter().position(|x| *x != 0) else { return false };
    let s = (&p[k0] - &a[k0]) / Q::from_integer(dir[k0].into());
    if s.is_negative() || len.is_some_and(|l| s > *l) {
        return false;
    }
    (0..p.len()).all(|k| p[k] == &a[k] + &s * Q::from_integer(dir[k].into()))
}

/// 3-valent, immersed, and no vertex image meets any other point of the curve.
pub fn is_simple(g: &CurveGraph, m: &TropicalMap) -> Result<bool> {
    let report = validate(g, m)?;
    if !report.is_valid() {
        return Ok(false);
    }
    let inc = incidences(g, m);
    for vs in &inc {
        if vs.len() != 3 {
            return Ok(false);
        }
        for i in 0..3 {
            for k in i + 1..3 {
                let (u, v) = (&vs[i].0, &vs[k].0);
                // outgoing directions that are positive multiples overlap
                if lattice_area(u, v) == 0 && u.iter().zip(v).map(|(a, b)| a * b).sum::<i64>() > 0 {
                    return Ok(false);
                }
            }
        }
    }
    // edge parameter lengths, in units of the direction vector
    let lens: Vec<Q> = g
        .edges
        .iter()
        .zip(&m.edge_directions)
        .map(|(e, d)| {
            let k0 = d.iter().position(|x| *x != 0).expect("nonzero");
            (&m.positions[e.b][k0] - &m.positions[e.a][k0]) / Q::from_integer(d[k0].into())
        })
        .collect();
    if lens.iter().any(Zero::is_zero) {
        return Ok(false);
    }
    for v in 0..g.num_vertices {
        let p = &m.positions[v];
        if (0..g.num_vertices).any(|u| u != v && m.positions[u] == *p) {
            return Ok(false);
        }
        for (i, e) in g.edges.iter().enumerate() {
            if e.a != v && e.b != v && on_cell(p, &m.positions[e.a], &m.edge_directions[i], Some(&lens[i])) {
                return Ok(false);
            }
        }
        for (i, l) in g.legs.iter().enumerate() {
            if l.vertex != v && on_cell(p, &m.positions[l.vertex], &m.leg_directions[i], None) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

impl TropicalCurve {
    pub fn new(graph: CurveGraph, map: TropicalMap) -> Result<Self> {
        check_sizes(&graph, &map)?;
        Ok(Self { graph, map })
    }

    /// Plane curve parameterized by a corner locus itself.
    pub fn from_complex(c: &TropicalComplex) -> Result<Self> {
        if !c.lines.is_empty() {
            return Err(Error::Unsupported("complexes with full lines".into()));
        }
        let graph = CurveGraph {
            num_vertices: c.vertices.len(),
            edges: c.edges.iter().map(|e| GraphEdge { a: e.ends.0, b: e.ends.1, weight: e.weight }).collect(),
            legs: c.rays.iter().map(|r| Leg { vertex: r.base, weight: r.weight }).collect(),
        };
        let map = TropicalMap {
            dim: 2,
            positions: c.vertices.iter().map(|v| v.to_vec()).collect(),
            edge_directions: c.edges.iter().map(|e| e.direction.to_vec()).collect(),
            leg_directions: c.rays.iter().map(|r| r.direction.to_vec()).collect(),
        };
        Self::new(graph, map)
    }

    pub fn num_ends(&self) -> usize {
        self.graph.legs.len()
    }

    pub fn validate(&self) -> ValidationReport {
        validate(&self.graph, &self.map).expect("sizes checked on construction")
    }

    pub fn genus(&self) -> i64 {
        genus(&self.graph)
    }

    pub fn is_simple(&self) -> bool {
        is_simple(&self.graph, &self.map).expect("sizes checked on construction")
    }

    pub fn multiplicity(&self) -> Result<i64> {
        curve_multiplicity(&self.graph, &self.map)
    }

    /// Canonical image description: 2-valent vertices with straight-through
    /// equal-weight edges are collapsed, then edges and legs are listed as
    /// sorted weighted cells.
    pub fn canonical_form(&self) -> Vec<CanonicalCell> {
        let g = &self.graph;
        let m = &self.map;
        let inc = incidences(g, m);
        let mut removed = vec![false; g.num_vertices];
        // edge list as (start, end-or-None, direction, weight) with endpoints as positions
        let mut cells: Vec<(usize, Option<usize>, Vec<i64>, i64)> = g
            .edges
            .iter()
            .zip(&m.edge_directions)
            .map(|(e, d)| (e.a, Some(e.b), primitive_int(d).expect("nonzero"), e.weight * gcd_vec(d)))
            .chain(
                g.legs
                    .iter()
                    .zip(&m.leg_directions)
                    .map(|(l, d)| (l.vertex, None, primitive_int(d).expect("nonzero"), l.weight * gcd_vec(d))),
            )
            .collect();
        for v in 0..g.num_vertices {
            if inc[v].len() != 2 {
                continue;
            }
            let (a, b) = (&inc[v][0].0, &inc[v][1].0);
            if !a.iter().zip(b).all(|(x, y)| x + y == 0) {
                continue;
            }
            // merge the two cells through v
            let ids: Vec<usize> = cells
                .iter()
                .enumerate()
                .filter(|(_, c)| c.0 == v || c.1 == Some(v))
                .map(|(i, _)| i)
                .collect();
            if ids.len() != 2 {
                continue;
            }
            let (c1, c2) = (cells[ids[0]].clone(), cells[ids[1]].clone());
            let far = |c: &(usize, Option<usize>, Vec<i64>, i64)| if c.0 == v { c.1 } else { Some(c.0) };
            let (e1, e2) = (far(&c1), far(&c2));
            let merged = match (e1, e2) {
                (Some(x), Some(y)) => {
                    let d = if c1.0 == v { neg(&c1.2) } else { c1.2.clone() };
                    (x, Some(y), d, c1.3)
                }
                (Some(x), None) => (x, None, c2.2.clone(), c1.3),
                (None, Some(y)) => (y, None, c1.2.clone(), c1.3),
                (None, None) => continue,
            };
            cells.remove(ids[1]);
            cells[ids[0]] = merged;
            removed[v] = true;
        }
        let mut out: Vec<CanonicalCell> = cells
            .into_iter()
            .map(|(a, b, d, w)| {
                let pa = m.positions[a].clone();
                match b {
                    Some(b) => {
                        let pb = m.positions[b].clone();
                        if pa <= pb {
                            (pa, Some(pb), d, w)
                        } else {
                            (pb, Some(pa), neg(&d), w)
                        }
                    }
                    None => (pa, None, d, w),
                }
            })
            .collect();
        out.sort();
        out
    }

    pub fn is_equivalent(&self, other: &Self) -> bool {
        self.canonical_form() == other.canonical_form()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&CurveFile::from(self)).expect("serializable")
    }

    /// Parse and validate a curve file.
    pub fn from_json(s: &str) -> Result<Self> {
        let f: CurveFile = serde_json::from_str(s)?;
        let c = Self::try_from(f)?;
        let r = c.validate();
        if !r.is_valid() {
            return Err(Error::invalid(format!("curve fails validation: {r:?}")));
        }
        Ok(c)
    }
}

fn gcd_vec(v: &[i64]) -> i64 {
    v.iter().fold(0, |a, &x| gcd(a, x))
}

fn neg(v: &[i64]) -> Vec<i64> {
    v.iter().map(|x| -x).collect()
}

#[derive(Serialize, Deserialize)]
struct EdgeFile {
    ends: [usize; 2],
    weight: i64,
    direction: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct LegFile {
    vertex: usize,
    weight: i64,
    direction: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct CurveFile {
    dim: usize,
    vertices: Vec<Vec<String>>,
    edges: Vec<EdgeFile>,
    legs: Vec<LegFile>,
}

impl From<&TropicalCurve> for CurveFile {
    fn from(c: &TropicalCurve) -> Self {
        CurveFile {
            dim: c.map.dim,
            vertices: c.map.positions.iter().map(|p| p.iter().map(format_q).collect()).collect(),
            edges: c
                .graph
                .edges
                .iter()
                .zip(&c.map.edge_directions)
                .map(|(e, d)| EdgeFile { ends: [e.a, e.b], weight: e.weight, direction: d.clone() })
                .collect(),
            legs: c
                .graph
                .legs
                .iter()
                .zip(&c.map.leg_directions)
                .map(|(l, d)| LegFile { vertex: l.vertex, weight: l.weight, direction: d.clone() })
                .collect(),
        }
    }
}

impl TryFrom<CurveFile> for TropicalCurve {
    type Error = Error;

    fn try_from(f: CurveFile) -> Result<Self> {
        let positions: Vec<Vec<Q>> = f
            .vertices
            .iter()
            .map(|p| p.iter().map(|s| parse_q(s)).collect::<Result<Vec<Q>>>())
            .collect::<Result<_>>()?;
        let graph = CurveGraph {
            num_vertices: positions.len(),
            edges: f.edges.iter().map(|e| GraphEdge { a: e.ends[0], b: e.ends[1], weight: e.weight }).collect(),
            legs: f.legs.iter().map(|l| Leg { vertex: l.vertex, weight: l.weight }).collect(),
        };
        let map = TropicalMap {
            dim: f.dim,
            positions,
            edge_directions: f.edges.into_iter().map(|e| e.direction).collect(),
            leg_directions: f.legs.into_iter().map(|l| l.direction).collect(),
        };
        TropicalCurve::new(graph, map)
    }
}
