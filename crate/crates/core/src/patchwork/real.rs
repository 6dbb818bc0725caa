use serde::Serialize;

use super::sign::{check_compatibility, Quadrant, SignedCurve};
use crate::{Error, Result};

/// One copy of an edge (`is_leg == false`) or leg in a quadrant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct RealPiece {
    pub is_leg: bool,
    pub index: usize,
    pub quadrant: Quadrant,
}

/// Copies of the curve's cells in the four quadrants `(R*)²_ε`.
#[derive(Clone, Debug)]
pub struct RealTropicalSet {
    pub curve: SignedCurve,
    pub pieces: Vec<RealPiece>,
}

impl RealTropicalSet {
    pub fn in_quadrant(&self, e: Quadrant) -> impl Iterator<Item = &RealPiece> {
        self.pieces.iter().filter(move |p| p.quadrant == e)
    }
}

/// Copy every cell into the quadrants of its class, and check that each
/// copied end at a vertex meets another copied cell there.
pub fn build_real_set(c: &SignedCurve) -> Result<RealTropicalSet> {
    let report = check_compatibility(c);
    if !report.passed() {
        let bad: Vec<usize> = report.vertices.iter().filter(|v| !v.passed).map(|v| v.vertex).collect();
        return Err(Error::invalid(format!("signs are incompatible at vertices {bad:?}")));
    }
    let mut pieces = Vec::new();
    for (i, s) in c.edge_signs.iter().enumerate() {
        pieces.extend(s.members().into_iter().map(|e| RealPiece { is_leg: false, index: i, quadrant: e }));
    }
    for (i, s) in c.leg_signs.iter().enumerate() {
        pieces.extend(s.members().into_iter().map(|e| RealPiece { is_leg: true, index: i, quadrant: e }));
    }
    pieces.sort();
    for cells in c.incident() {
        for e in [[0u8, 0], [0, 1], [1, 0], [1, 1]] {
            let present = cells.iter().filter(|cell| c.class(**cell).contains(e)).count();
            if present == 1 {
                return Err(Error::numeric("a copied edge ends without meeting another copy"));
            }
        }
    }
    Ok(RealTropicalSet { curve: c.clone(), pieces })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentCount {
    pub components: usize,
    /// `interior_points(Δ) + 1`, when Δ is known.
    pub harnack_bound: Option<i64>,
    /// Set when some weight exceeds 1 or the dual subdivision is not unimodular.
    pub approximate: bool,
}

impl ComponentCount {
    pub fn within_bound(&self) -> bool {
        self.harnack_bound.is_none_or(|b| self.components as i64 <= b)
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

/// Connected components of the real curve in the compact toric surface.
/// Pieces meeting at a vertex copy are joined; the two copies of a leg with
/// primitive direction `d` are glued across the divisor at infinity, which
/// identifies quadrant `ε` with `ε + d mod 2`.
pub fn count_components(r: &RealTropicalSet) -> ComponentCount {
    let c = &r.curve;
    let id = |is_leg: bool, index: usize, e: Quadrant| {
        r.pieces.binary_search(&RealPiece { is_leg, index, quadrant: e }).ok()
    };
    let mut uf = UnionFind((0..r.pieces.len()).collect());
    for cells in c.incident() {
        for e in [[0u8, 0], [0, 1], [1, 0], [1, 1]] {
            let here: Vec<usize> = cells.iter().filter_map(|cell| id(cell.0, cell.1, e)).collect();
            for w in here.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
    }
    for (i, s) in c.leg_signs.iter().enumerate() {
        let d = [s.direction[0].rem_euclid(2) as u8, s.direction[1].rem_euclid(2) as u8];
        for e in s.members() {
            let other = [(e[0] + d[0]) % 2, (e[1] + d[1]) % 2];
            if let (Some(a), Some(b)) = (id(true, i, e), id(true, i, other)) {
                uf.union(a, b);
            }
        }
    }
    let mut roots: Vec<usize> = (0..r.pieces.len()).map(|k| uf.find(k)).collect();
    roots.sort();
    roots.dedup();
    let heavy = c.edge_signs.iter().chain(&c.leg_signs).any(|s| s.weight > 1);
    ComponentCount {
        components: roots.len(),
        harnack_bound: c.interior_points.map(|i| i + 1),
        approximate: heavy || c.unimodular == Some(false),
    }
}
