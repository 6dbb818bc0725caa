use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::curves::TropicalCurve;
use crate::exact::primitive_int;
use crate::hypersurface::TropicalComplex;
use crate::lattice::Point;
use crate::{Error, Result};

pub type Quadrant = [u8; 2];

fn add(a: Quadrant, b: Quadrant) -> Quadrant {
    [(a[0] + b[0]) % 2, (a[1] + b[1]) % 2]
}

fn reduce(v: [i64; 2]) -> Quadrant {
    [v[0].rem_euclid(2) as u8, v[1].rem_euclid(2) as u8]
}

/// Element of `Z₂² / (ε ~ ε + w·v)`: a two-element coset for odd `w`, all
/// of `Z₂²` for even `w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignClass {
    pub weight: i64,
    pub direction: [i64; 2],
    pub representative: Quadrant,
}

impl SignClass {
    pub fn new(weight: i64, direction: [i64; 2], representative: Quadrant) -> Result<Self> {
        let p = primitive_int(&direction).ok_or_else(|| Error::invalid("sign class needs a nonzero direction"))?;
        if weight < 1 || representative.iter().any(|x| *x > 1) {
            return Err(Error::invalid("bad weight or representative"));
        }
        Ok(Self { weight, direction: [p[0], p[1]], representative })
    }

    pub fn members(&self) -> Vec<Quadrant> {
        if self.weight % 2 == 0 {
            return vec![[0, 0], [0, 1], [1, 0], [1, 1]];
        }
        let mut m = vec![self.representative, add(self.representative, reduce(self.direction))];
        m.sort();
        m
    }

    pub fn contains(&self, e: Quadrant) -> bool {
        self.members().contains(&e)
    }

    /// Shift by a fixed element (a reflection of the real torus).
    pub fn shifted(&self, by: Quadrant) -> Self {
        Self { representative: add(self.representative, by), ..*self }
    }
}

impl PartialOrd for SignClass {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SignClass {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.weight, self.direction, self.members()).cmp(&(other.weight, other.direction, other.members()))
    }
}

/// A plane tropical curve with one sign class per bounded edge and per leg.
#[derive(Clone, Debug)]
pub struct SignedCurve {
    pub curve: TropicalCurve,
    pub edge_signs: Vec<SignClass>,
    pub leg_signs: Vec<SignClass>,
    /// Dual triangle count when the curve came from a corner locus.
    pub(crate) unimodular: Option<bool>,
    pub(crate) interior_points: Option<i64>,
}

#[derive(Serialize, Deserialize)]
struct SignFile {
    edges: Vec<Quadrant>,
    legs: Vec<Quadrant>,
}

impl SignedCurve {
    pub fn new(curve: TropicalCurve, edge_reps: &[Quadrant], leg_reps: &[Quadrant]) -> Result<Self> {
        if curve.map.dim != 2 {
            return Err(Error::DimensionMismatch { expected: 2, got: curve.map.dim });
        }
        if edge_reps.len() != curve.graph.edges.len() || leg_reps.len() != curve.graph.legs.len() {
            return Err(Error::invalid("one sign per edge and per leg is required"));
        }
        let edge_signs = curve
            .graph
            .edges
            .iter()
            .zip(&curve.map.edge_directions)
            .zip(edge_reps)
            .map(|((e, d), r)| SignClass::new(e.weight, [d[0], d[1]], *r))
            .collect::<Result<_>>()?;
        let leg_signs = curve
            .graph
            .legs
            .iter()
            .zip(&curve.map.leg_directions)
            .zip(leg_reps)
            .map(|((l, d), r)| SignClass::new(l.weight, [d[0], d[1]], *r))
            .collect::<Result<_>>()?;
        Ok(Self { curve, edge_signs, leg_signs, unimodular: None, interior_points: None })
    }

    /// Signs file: `{"edges": [[0,1], ...], "legs": [...]}` with one
    /// representative per edge and leg.
    pub fn with_sign_json(curve: TropicalCurve, json: &str) -> Result<Self> {
        let f: SignFile = serde_json::from_str(json)?;
        Self::new(curve, &f.edges, &f.legs)
    }

    pub fn sign_json(&self) -> String {
        let f = SignFile {
            edges: self.edge_signs.iter().map(|s| s.representative).collect(),
            legs: self.leg_signs.iter().map(|s| s.representative).collect(),
        };
        serde_json::to_string(&f).expect("serializable")
    }

    /// Every class shifted by `by`.
    pub fn reflected(&self, by: Quadrant) -> Self {
        Self {
            edge_signs: self.edge_signs.iter().map(|s| s.shifted(by)).collect(),
            leg_signs: self.leg_signs.iter().map(|s| s.shifted(by)).collect(),
            ..self.clone()
        }
    }

    /// Sign classes around each vertex: `(is_leg, index)`.
    pub(crate) fn incident(&self) -> Vec<Vec<(bool, usize)>> {
        let g = &self.curve.graph;
        let mut inc = vec![Vec::new(); g.num_vertices];
        for (i, e) in g.edges.iter().enumerate() {
            inc[e.a].push((false, i));
            inc[e.b].push((false, i));
        }
        for (i, l) in g.legs.iter().enumerate() {
            inc[l.vertex].push((true, i));
        }
        inc
    }

    pub(crate) fn class(&self, cell: (bool, usize)) -> &SignClass {
        if cell.0 {
            &self.leg_signs[cell.1]
        } else {
            &self.edge_signs[cell.1]
        }
    }
}

/// Classes induced by signs on the lattice points of the dual subdivision:
/// an edge dual to `[p, q]` is real in the quadrants `ε` where the
/// monomials at `p` and `q` take opposite signs.
pub fn signs_from_lattice(c: &TropicalComplex, signs: &BTreeMap<Point, bool>) -> Result<SignedCurve> {
    let dual = c.dual.as_ref().ok_or_else(|| Error::invalid("complex carries no dual subdivision"))?;
    let curve = TropicalCurve::from_complex(c)?;
    let class_of = |pq: Option<(Point, Point)>| -> Result<Quadrant> {
        let (p, q) = pq.ok_or_else(|| Error::invalid("cell without dual edge"))?;
        let sp = *signs.get(&p).ok_or_else(|| Error::invalid(format!("no sign for {p:?}")))?;
        let sq = *signs.get(&q).ok_or_else(|| Error::invalid(format!("no sign for {q:?}")))?;
        let target = u8::from(sp) ^ u8::from(sq) ^ 1;
        let d = [q[0] - p[0], q[1] - p[1]];
        let found = [[0u8, 0], [0, 1], [1, 0], [1, 1]]
            .into_iter()
            .find(|e| (((e[0] as i64 * d[0] + e[1] as i64 * d[1]).rem_euclid(2)) as u8) == target);
        found.ok_or_else(|| Error::invalid(format!("edge dual to {p:?}-{q:?} has no real points for these signs")))
    };
    let edge_reps = c.edges.iter().map(|e| class_of(e.dual)).collect::<Result<Vec<_>>>()?;
    let leg_reps = c.rays.iter().map(|r| class_of(r.dual)).collect::<Result<Vec<_>>>()?;
    let mut s = SignedCurve::new(curve, &edge_reps, &leg_reps)?;
    s.unimodular = Some(dual.is_unimodular());
    s.interior_points = Some(dual.parent.interior_points()?);
    Ok(s)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexCheck {
    pub vertex: usize,
    pub passed: bool,
    /// Quadrant elements of some class found in no other class at the vertex.
    pub offending: Vec<Quadrant>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompatibilityReport {
    pub vertices: Vec<VertexCheck>,
}

impl CompatibilityReport {
    pub fn passed(&self) -> bool {
        self.vertices.iter().all(|v| v.passed)
    }
}

/// At every vertex each element of each incident class lies in another incident class.
pub fn check_compatibility(c: &SignedCurve) -> CompatibilityReport {
    let vertices = c
        .incident()
        .iter()
        .enumerate()
        .map(|(v, cells)| {
            let mut offending = Vec::new();
            for (k, cell) in cells.iter().enumerate() {
                for e in c.class(*cell).members() {
                    let covered = cells.iter().enumerate().any(|(m, other)| m != k && c.class(*other).contains(e));
                    if !covered && !offending.contains(&e) {
                        offending.push(e);
                    }
                }
            }
            offending.sort();
            VertexCheck { vertex: v, passed: offending.is_empty(), offending }
        })
        .collect();
    CompatibilityReport { vertices }
}
