use num_traits::{One, Zero};

use super::curve::{is_simple, CurveGraph, GraphEdge, Leg, TropicalCurve, TropicalMap};
use crate::exact::{q, rank};
use crate::hypersurface::corner_locus;
use crate::tropical::TropicalPolynomial;
use crate::{Error, Result, Q};

/// `x + (n - 3)(1 - g)` for curves with `x` ends in `R^n`.
pub fn expected_dim(x: i64, genus: i64, n: i64) -> i64 {
    x + (n - 3) * (1 - genus)
}

/// Dimension of the space of curves of the same combinatorial type near
/// `(g, m)`: vertex positions and edge lengths subject to
/// `p_b - p_a = ℓ·d` on every bounded edge.
pub fn local_deformation_dim(g: &CurveGraph, m: &TropicalMap) -> Result<i64> {
    if !is_simple(g, m)? {
        return Err(Error::invalid("deformation dimension is computed for simple curves"));
    }
    let n = m.dim;
    let nv = g.num_vertices;
    let unknowns = n * nv + g.edges.len();
    let mut rows = Vec::with_capacity(n * g.edges.len());
    for (i, (e, d)) in g.edges.iter().zip(&m.edge_directions).enumerate() {
        for k in 0..n {
            let mut row = vec![Q::zero(); unknowns];
            row[n * e.b + k] += Q::one();
            row[n * e.a + k] -= Q::one();
            row[n * nv + i] = q(-d[k]);
            rows.push(row);
        }
    }
    let k = (unknowns - rank(rows)) as i64;
    let expected = expected_dim(g.legs.len() as i64, super::genus(g), n as i64);
    if k < expected {
        return Err(Error::numeric(format!("deformation space of dimension {k} below expected {expected}")));
    }
    Ok(k)
}

pub fn is_superabundant(g: &CurveGraph, m: &TropicalMap) -> Result<bool> {
    let k = local_deformation_dim(g, m)?;
    Ok(k > expected_dim(g.legs.len() as i64, super::genus(g), m.dim as i64))
}

/// A smooth plane cubic placed in `z = 0` inside `R^3`, with each of its
/// `(1,1)` ends bent out of the plane: a short edge along `(1,1,0)` leads to
/// a new vertex carrying ends `(0,0,-1)` and `(1,1,1)`. The cycle stays
/// planar, so the curve deforms in one more dimension than expected.
pub fn supercubic() -> TropicalCurve {
    let f = TropicalPolynomial::from_terms(
        2,
        (0..=3i64).flat_map(|i| (0..=3 - i).map(move |j| (vec![i, j], q(-(i * i + i * j + j * j))))),
    )
    .expect("valid polynomial");
    let plane = TropicalCurve::from_complex(&corner_locus(&f).expect("corner locus")).expect("no full lines");
    let mut positions: Vec<Vec<Q>> = plane.map.positions.iter().map(|p| vec![p[0].clone(), p[1].clone(), q(0)]).collect();
    let mut edges = plane.graph.edges.clone();
    let mut edge_directions: Vec<Vec<i64>> = plane.map.edge_directions.iter().map(|d| vec![d[0], d[1], 0]).collect();
    let mut legs = Vec::new();
    let mut leg_directions = Vec::new();
    for (l, d) in plane.graph.legs.iter().zip(&plane.map.leg_directions) {
        if d[..] == [1, 1] {
            let base = &positions[l.vertex];
            let bent = vec![&base[0] + q(1), &base[1] + q(1), q(0)];
            let v = positions.len();
            positions.push(bent);
            edges.push(GraphEdge { a: l.vertex, b: v, weight: l.weight });
            edge_directions.push(vec![1, 1, 0]);
            legs.push(Leg { vertex: v, weight: l.weight });
            leg_directions.push(vec![0, 0, -1]);
            legs.push(Leg { vertex: v, weight: l.weight });
            leg_directions.push(vec![1, 1, 1]);
        } else {
            legs.push(*l);
            leg_directions.push(vec![d[0], d[1], 0]);
        }
    }
    TropicalCurve::new(
        CurveGraph { num_vertices: positions.len(), edges, legs },
        TropicalMap { dim: 3, positions, edge_directions, leg_directions },
    )
    .expect("consistent sizes")
}
