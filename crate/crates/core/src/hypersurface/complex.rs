use std::collections::BTreeMap;

use num_traits::Signed;
use serde::Serialize;

use crate::exact::{format_q, primitive_direction, primitive_int, to_f64};
use crate::lattice::{
    lattice_length, newton_polygon, regular_subdivision, segment_subdivision, LatticeSegment, Point, PolygonKind,
    RegularSubdivision,
};
use crate::tropical::TropicalPolynomial;
use crate::{Error, Result, Q};

/// Bounded edge between two vertices. `direction` is primitive and points
/// from `ends.0` to `ends.1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexEdge {
    pub ends: (usize, usize),
    pub weight: i64,
    pub direction: [i64; 2],
    pub dual: Option<(Point, Point)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexRay {
    pub base: usize,
    pub direction: [i64; 2],
    pub weight: i64,
    pub dual: Option<(Point, Point)>,
}

/// A full line; only occurs when the Newton polygon is a segment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullLine {
    pub point: [Q; 2],
    pub direction: [i64; 2],
    pub weight: i64,
    pub dual: (Point, Point),
}

/// Weighted rational polyhedral complex in R², optionally carrying its dual
/// subdivision (vertex `i` is dual to `dual.cells[i]`).
#[derive(Clone, Debug, Default)]
pub struct TropicalComplex {
    pub vertices: Vec<[Q; 2]>,
    pub edges: Vec<ComplexEdge>,
    pub rays: Vec<ComplexRay>,
    pub lines: Vec<FullLine>,
    pub dual: Option<RegularSubdivision>,
    /// Terms lying strictly below the upper hull; they leave no trace.
    pub hidden_terms: Vec<Point>,
    /// Set when only one term survives and the locus is empty.
    pub single_term: bool,
}

fn to_point2(v: &[i64]) -> Result<Point> {
    match v {
        [a, b] => Ok([*a, *b]),
        _ => Err(Error::DimensionMismatch { expected: 2, got: v.len() }),
    }
}

fn neg_slope(s: &[Q; 2]) -> [Q; 2] {
    [-s[0].clone(), -s[1].clone()]
}

/// Corner locus of a planar tropical polynomial, built by dualizing the
/// subdivision induced by its coefficients.
pub fn corner_locus(f: &TropicalPolynomial) -> Result<TropicalComplex> {
    if f.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: f.dim() });
    }
    let lift: BTreeMap<Point, Q> = f
        .terms()
        .iter()
        .map(|(e, c)| Ok((to_point2(e)?, c.clone())))
        .collect::<Result<_>>()?;
    let support: Vec<Point> = lift.keys().copied().collect();
    let hull = newton_polygon(&support)?;
    match hull.kind() {
        PolygonKind::Point => Ok(TropicalComplex { single_term: true, ..Default::default() }),
        PolygonKind::Segment => parallel_lines(&lift),
        PolygonKind::Polygon => {
            let sub = regular_subdivision(&hull, &lift)?;
            Ok(dualize(sub))
        }
    }
}

fn parallel_lines(lift: &BTreeMap<Point, Q>) -> Result<TropicalComplex> {
    let chain = segment_subdivision(lift)?;
    let mut lines = Vec::new();
    for w in chain.windows(2) {
        let (p, q) = (w[0], w[1]);
        let d = [q[0] - p[0], q[1] - p[1]];
        // the line is { x : <d, x> = a_p - a_q }
        let rhs = &lift[&p] - &lift[&q];
        let norm2 = Q::from_integer((d[0] * d[0] + d[1] * d[1]).into());
        let point = [
            &rhs * Q::from_integer(d[0].into()) / &norm2,
            &rhs * Q::from_integer(d[1].into()) / &norm2,
        ];
        let direction = primitive_int(&[-d[1], d[0]]).expect("nonzero");
        lines.push(FullLine {
            point,
            direction: [direction[0], direction[1]],
            weight: lattice_length(&LatticeSegment::new(p, q))?,
            dual: (p, q),
        });
    }
    let hidden = lift.keys().filter(|p| !chain.contains(p)).copied().collect();
    Ok(TropicalComplex { lines, hidden_terms: hidden, single_term: chain.len() == 1, ..Default::default() })
}

fn dualize(sub: RegularSubdivision) -> TropicalComplex {
    let vertices: Vec<[Q; 2]> = sub.cells.iter().map(|c| neg_slope(&c.slope)).collect();
    let mut edges = Vec::new();
    let mut rays = Vec::new();
    for e in &sub.edges {
        let weight = lattice_length(&LatticeSegment::new(e.a, e.b)).expect("distinct endpoints");
        match e.cells {
            (c1, Some(c2)) => {
                let diff = [&vertices[c2][0] - &vertices[c1][0], &vertices[c2][1] - &vertices[c1][1]];
                let d = primitive_direction(&diff).expect("adjacent cells have distinct vertices");
                edges.push(ComplexEdge {
                    ends: (c1, c2),
                    weight,
                    direction: [d[0], d[1]],
                    dual: Some((e.a, e.b)),
                });
            }
            (c, None) => {
                let t = [e.b[0] - e.a[0], e.b[1] - e.a[1]];
                let mut n = primitive_int(&[t[1], -t[0]]).expect("nonzero");
                let inside = sub.cells[c]
                    .polygon
                    .vertices()
                    .iter()
                    .find(|v| crate::lattice::cross(e.a, e.b, **v) != 0)
                    .expect("2-cell");
                if n[0] * (inside[0] - e.a[0]) + n[1] * (inside[1] - e.a[1]) > 0 {
                    n = vec![-n[0], -n[1]];
                }
                rays.push(ComplexRay { base: c, direction: [n[0], n[1]], weight, dual: Some((e.a, e.b)) });
            }
        }
    }
    let hidden_terms = sub.hidden_points();
    TropicalComplex { vertices, edges, rays, lines: Vec::new(), dual: Some(sub), hidden_terms, single_term: false }
}

/// Result of checking the balancing condition at every vertex.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BalancingReport {
    /// `(vertex, Σ w·v)` for each unbalanced vertex.
    pub violations: Vec<(usize, [i64; 2])>,
}

impl BalancingReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Exact balancing check with outward-oriented directions.
pub fn balancing_check(c: &TropicalComplex) -> BalancingReport {
    let mut sums = vec![[0i64; 2]; c.vertices.len()];
    let mut add = |v: usize, w: i64, d: [i64; 2]| {
        sums[v][0] += w * d[0];
        sums[v][1] += w * d[1];
    };
    for e in &c.edges {
        add(e.ends.0, e.weight, e.direction);
        add(e.ends.1, -e.weight, e.direction);
    }
    for r in &c.rays {
        add(r.base, r.weight, r.direction);
    }
    BalancingReport {
        violations: sums.into_iter().enumerate().filter(|(_, s)| *s != [0, 0]).collect(),
    }
}

/// Combinatorial duality between a complex and its subdivision.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DualityReport {
    pub vertex_cell_mismatch: bool,
    pub weight_mismatches: usize,
    pub non_orthogonal: usize,
}

impl DualityReport {
    pub fn passed(&self) -> bool {
        *self == DualityReport::default()
    }
}

pub fn duality_check(c: &TropicalComplex) -> DualityReport {
    let mut r = DualityReport::default();
    let Some(sub) = &c.dual else {
        r.vertex_cell_mismatch = !c.vertices.is_empty();
        return r;
    };
    r.vertex_cell_mismatch = sub.cells.len() != c.vertices.len();
    let pairs = c
        .edges
        .iter()
        .map(|e| (e.weight, e.direction, e.dual))
        .chain(c.rays.iter().map(|e| (e.weight, e.direction, e.dual)));
    for (w, d, dual) in pairs {
        let Some((a, b)) = dual else {
            r.weight_mismatches += 1;
            continue;
        };
        let t = [b[0] - a[0], b[1] - a[1]];
        if lattice_length(&LatticeSegment::new(a, b)).ok() != Some(w) {
            r.weight_mismatches += 1;
        }
        if d[0] * t[0] + d[1] * t[1] != 0 {
            r.non_orthogonal += 1;
        }
    }
    r
}

/// At least two terms attain the maximum within `tol`.
pub fn membership(f: &TropicalPolynomial, x: &[Q], tol: &Q) -> Result<bool> {
    if x.len() != f.dim() {
        return Err(Error::DimensionMismatch { expected: f.dim(), got: x.len() });
    }
    let vals: Vec<Q> = f
        .terms()
        .iter()
        .map(|(e, c)| {
            e.iter()
                .zip(x)
                .fold(c.clone(), |acc, (&j, xi)| acc + xi * Q::from_integer(j.into()))
        })
        .collect();
    let m = vals.iter().max().expect("nonempty").clone();
    let near = vals.iter().filter(|v| (&m - *v).abs() <= *tol).count();
    Ok(near >= 2)
}

pub fn membership_f64(f: &TropicalPolynomial, x: &[f64], tol: f64) -> bool {
    let vals: Vec<f64> = f
        .terms()
        .iter()
        .map(|(e, c)| to_f64(c) + e.iter().zip(x).map(|(&j, xi)| j as f64 * xi).sum::<f64>())
        .collect();
    let m = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    vals.iter().filter(|v| m - **v <= tol).count() >= 2
}

impl TropicalComplex {
    /// Hand-built complex without a dual subdivision.
    pub fn from_parts(vertices: Vec<[Q; 2]>, edges: Vec<ComplexEdge>, rays: Vec<ComplexRay>) -> Self {
        Self { vertices, edges, rays, ..Default::default() }
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty() && self.lines.is_empty()
    }

    /// First Betti number of the bounded part (vertices plus bounded edges).
    pub fn cycle_rank(&self) -> usize {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut components = n;
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.ends.0), find(&mut parent, e.ends.1));
            if a != b {
                parent[a] = b;
                components -= 1;
            }
        }
        self.edges.len() + components - n
    }

    pub fn vertex_f64(&self, i: usize) -> [f64; 2] {
        [to_f64(&self.vertices[i][0]), to_f64(&self.vertices[i][1])]
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct E {
            ends: (usize, usize),
            weight: i64,
            direction: [i64; 2],
        }
        #[derive(Serialize)]
        struct R {
            base: usize,
            direction: [i64; 2],
            weight: i64,
        }
        #[derive(Serialize)]
        struct L {
            point: [String; 2],
            direction: [i64; 2],
            weight: i64,
        }
        #[derive(Serialize)]
        struct F {
            vertices: Vec<[String; 2]>,
            edges: Vec<E>,
            rays: Vec<R>,
            lines: Vec<L>,
            dual: Option<serde_json::Value>,
            hidden_terms: Vec<Point>,
        }
        let f = F {
            vertices: self.vertices.iter().map(|v| [format_q(&v[0]), format_q(&v[1])]).collect(),
            edges: self
                .edges
                .iter()
                .map(|e| E { ends: e.ends, weight: e.weight, direction: e.direction })
                .collect(),
            rays: self
                .rays
                .iter()
                .map(|r| R { base: r.base, direction: r.direction, weight: r.weight })
                .collect(),
            lines: self
                .lines
                .iter()
                .map(|l| L {
                    point: [format_q(&l.point[0]), format_q(&l.point[1])],
                    direction: l.direction,
                    weight: l.weight,
                })
                .collect(),
            dual: self.dual.as_ref().map(|d| serde_json::from_str(&d.to_json()).expect("valid json")),
            hidden_terms: self.hidden_terms.clone(),
        };
        serde_json::to_string(&f).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, qf};

    fn poly(terms: &[([i64; 2], i64)]) -> TropicalPolynomial {
        TropicalPolynomial::from_terms(2, terms.iter().map(|(e, c)| (e.to_vec(), q(*c)))).unwrap()
    }

    fn sorted_rays(c: &TropicalComplex) -> Vec<([i64; 2], i64)> {
        let mut v: Vec<_> = c.rays.iter().map(|r| (r.direction, r.weight)).collect();
        v.sort();
        v
    }

    #[test]
    fn tropical_line() {
        let c = corner_locus(&poly(&[([0, 0], 0), ([1, 0], 0), ([0, 1], 0)])).unwrap();
        assert_eq!(c.vertices, vec![[q(0), q(0)]]);
        assert!(c.edges.is_empty());
        assert_eq!(sorted_rays(&c), vec![([-1, 0], 1), ([0, -1], 1), ([1, 1], 1)]);
        assert!(balancing_check(&c).passed());
        assert!(duality_check(&c).passed());
    }

    #[test]
    fn weighted_ray_from_long_side() {
        // support {(0,0),(1,0),(0,2)}: side (0,0)-(0,2) has lattice length 2
        let c = corner_locus(&poly(&[([0, 0], 0), ([1, 0], 0), ([0, 2], 0)])).unwrap();
        assert_eq!(c.vertices, vec![[q(0), q(0)]]);
        assert_eq!(sorted_rays(&c), vec![([-1, 0], 2), ([0, -1], 1), ([2, 1], 1)]);
        assert!(balancing_check(&c).passed());
    }

    #[test]
    fn honeycomb_conic() {
        let terms: Vec<([i64; 2], i64)> = crate::lattice::LatticePolygon::standard_triangle(2)
            .lattice_points()
            .into_iter()
            .map(|p| (p, -(p[0] * p[0] + p[0] * p[1] + p[1] * p[1])))
            .collect();
        let c = corner_locus(&poly(&terms)).unwrap();
        assert_eq!((c.vertices.len(), c.edges.len(), c.rays.len()), (4, 3, 6));
        assert!(c.edges.iter().all(|e| e.weight == 1));
        assert!(c.rays.iter().all(|r| r.weight == 1));
        assert!(c.dual.as_ref().unwrap().is_unimodular());
        assert!(balancing_check(&c).passed());
        assert!(duality_check(&c).passed());
        assert_eq!(c.cycle_rank(), 0);
    }

    #[test]
    fn smooth_cubic_has_one_cycle() {
        let terms: Vec<([i64; 2], i64)> = crate::lattice::LatticePolygon::standard_triangle(3)
            .lattice_points()
            .into_iter()
            .map(|p| (p, -(p[0] * p[0] + p[0] * p[1] + p[1] * p[1])))
            .collect();
        let c = corner_locus(&poly(&terms)).unwrap();
        assert_eq!(c.cycle_rank(), 1);
        assert_eq!(c.rays.len(), 9);
    }

    #[test]
    fn hidden_term_and_degenerate_cases() {
        let c = corner_locus(&poly(&[([0, 0], 0), ([2, 0], 0), ([0, 2], 0), ([1, 0], -3)])).unwrap();
        assert_eq!(c.hidden_terms, vec![[1, 0]]);

        let single = corner_locus(&poly(&[([1, 1], 4)])).unwrap();
        assert!(single.single_term && single.is_empty());

        let lines = corner_locus(&poly(&[([0, 0], 0), ([1, 0], 1), ([3, 0], 0)])).unwrap();
        assert_eq!(lines.lines.len(), 2);
        assert_eq!(lines.lines[0].point, [q(-1), q(0)]);
        assert_eq!(lines.lines[1].weight, 2);
        assert_eq!(lines.lines[1].point, [qf(1, 2), q(0)]);
        assert_eq!(lines.lines[0].direction, [0, 1]);
    }

    #[test]
    fn membership_examples() {
        let f = poly(&[([0, 0], 0), ([1, 0], 0), ([0, 1], 0)]);
        let z = q(0);
        assert!(membership(&f, &[q(0), q(0)], &z).unwrap());
        assert!(!membership(&f, &[q(-1), q(-2)], &z).unwrap());
        assert!(membership(&f, &[q(5), q(5)], &z).unwrap());
        assert!(membership(&f, &[q(5), qf(49, 10)], &qf(1, 5)).unwrap());
        assert!(membership_f64(&f, &[5.0, 5.0], 0.0));
    }

    #[test]
    fn hand_built_balancing() {
        let ray = |d: [i64; 2], w| ComplexRay { base: 0, direction: d, weight: w, dual: None };
        let bad = TropicalComplex::from_parts(
            vec![[q(0), q(0)]],
            vec![],
            vec![ray([1, 0], 1), ray([0, 1], 1), ray([-1, -2], 1)],
        );
        assert_eq!(balancing_check(&bad).violations, vec![(0, [0, -1])]);
        let good = TropicalComplex::from_parts(
            vec![[q(0), q(0)]],
            vec![],
            vec![ray([1, 1], 1), ray([1, -1], 1), ray([-1, 0], 2)],
        );
        assert!(balancing_check(&good).passed());
    }
}
