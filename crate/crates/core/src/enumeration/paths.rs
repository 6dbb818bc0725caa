use dashmap::DashMap;
use serde::Serialize;

use crate::exact::{format_q, gcd, q, qf};
use crate::lattice::{cross, LatticePolygon, Point};
use crate::{par, Error, Result, Q};

/// `λ(x, y) = a·x + b·y`, required to be injective on the lattice points of Δ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaOrder {
    pub a: Q,
    pub b: Q,
}

impl Default for LambdaOrder {
    /// `y - x/1009`.
    fn default() -> Self {
        Self { a: qf(-1, 1009), b: q(1) }
    }
}

impl LambdaOrder {
    pub fn new(a: Q, b: Q) -> Self {
        Self { a, b }
    }

    /// `y - ε·x`.
    pub fn tilted(eps: Q) -> Self {
        Self { a: -eps, b: q(1) }
    }

    pub fn eval(&self, p: Point) -> Q {
        &self.a * q(p[0]) + &self.b * q(p[1])
    }

    /// Lattice points of Δ in increasing λ order; errors if two share a value.
    pub fn sort_points(&self, delta: &LatticePolygon) -> Result<Vec<Point>> {
        let mut pts: Vec<(Q, Point)> = delta.lattice_points().into_iter().map(|p| (self.eval(p), p)).collect();
        pts.sort();
        if pts.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::invalid("λ is not injective on the lattice points of Δ"));
        }
        Ok(pts.into_iter().map(|(_, p)| p).collect())
    }

    pub fn describe(&self) -> String {
        format!("{}*x + {}*y", format_q(&self.a), format_q(&self.b))
    }
}

pub type LatticePath = Vec<Point>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PathMultiplicity {
    pub mu_plus: u64,
    pub mu_minus: u64,
}

impl PathMultiplicity {
    pub fn mu(&self) -> u64 {
        self.mu_plus * self.mu_minus
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathRecord {
    pub points: Vec<Point>,
    pub mu_plus: u64,
    pub mu_minus: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountResult {
    pub n: u64,
    pub genus: i64,
    pub lambda: String,
    /// Paths of positive multiplicity, in enumeration order.
    pub paths: Vec<PathRecord>,
    pub paths_examined: usize,
}

/// Number of ends of a curve with Newton polygon Δ: `#(∂Δ ∩ Z²)`.
pub fn num_ends(delta: &LatticePolygon) -> Result<i64> {
    if delta.is_degenerate() {
        return Err(Error::Degenerate("path counting needs a two-dimensional polygon".into()));
    }
    delta.boundary_points()
}

/// Every λ-increasing sequence of `x + g` lattice points from the λ-minimum
/// to the λ-maximum, in depth-first λ order.
pub fn generate_paths(delta: &LatticePolygon, lambda: &LambdaOrder, g: i64) -> Result<Vec<LatticePath>> {
    let pts = lambda.sort_points(delta)?;
    let len = num_ends(delta)? + g;
    let n = pts.len();
    if len < 2 || len as usize > n {
        return Ok(Vec::new());
    }
    let len = len as usize;
    // Interior choices: (len - 2) indices from 1..n-1; split on the second point.
    if len == 2 {
        return Ok(vec![vec![pts[0], pts[n - 1]]]);
    }
    let firsts: Vec<usize> = (1..n - 1).collect();
    let chunks = par::map(firsts, |first| {
        let mut out = Vec::new();
        let mut stack = vec![0, first];
        dfs(&pts, len, &mut stack, &mut out);
        out
    });
    Ok(chunks.into_iter().flatten().collect())
}

fn dfs(pts: &[Point], len: usize, stack: &mut Vec<usize>, out: &mut Vec<LatticePath>) {
    let n = pts.len();
    if stack.len() == len - 1 {
        let mut path: Vec<Point> = stack.iter().map(|&i| pts[i]).collect();
        path.push(pts[n - 1]);
        out.push(path);
        return;
    }
    let last = *stack.last().expect("nonempty");
    let remaining = len - 1 - stack.len();
    for next in last + 1..n - 1 {
        if n - 1 - next < remaining {
            break;
        }
        stack.push(next);
        dfs(pts, len, stack, out);
        stack.pop();
    }
}

/// Side of the recursion: `Plus` walks toward the clockwise boundary chain
/// and removes left turns; `Minus` is the mirror image.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Side {
    Plus,
    Minus,
}

struct Context<'a> {
    delta: &'a LatticePolygon,
    lambda: &'a LambdaOrder,
    chains: [Vec<Point>; 2],
    memo: DashMap<(Side, Vec<Point>), u64>,
    depth_limit: usize,
}

/// Boundary lattice points in counterclockwise order.
fn boundary_ccw(delta: &LatticePolygon) -> Vec<Point> {
    let vs = delta.vertices();
    let mut out = Vec::new();
    for i in 0..vs.len() {
        let (a, b) = (vs[i], vs[(i + 1) % vs.len()]);
        let g = gcd(b[0] - a[0], b[1] - a[1]);
        let step = [(b[0] - a[0]) / g, (b[1] - a[1]) / g];
        for k in 0..g {
            out.push([a[0] + k * step[0], a[1] + k * step[1]]);
        }
    }
    out
}

impl<'a> Context<'a> {
    fn new(delta: &'a LatticePolygon, lambda: &'a LambdaOrder) -> Result<Self> {
        let pts = lambda.sort_points(delta)?;
        let (lo, hi) = (pts[0], *pts.last().expect("nonempty"));
        let ring = boundary_ccw(delta);
        let m = ring.len();
        let i_lo = ring.iter().position(|p| *p == lo).expect("λ extremes are vertices");
        let i_hi = ring.iter().position(|p| *p == hi).expect("λ extremes are vertices");
        let walk = |step: usize| {
            let mut chain = vec![lo];
            let mut i = i_lo;
            while i != i_hi {
                i = (i + step) % m;
                chain.push(ring[i]);
            }
            chain
        };
        let ccw = walk(1);
        let cw = walk(m - 1);
        Ok(Self {
            delta,
            lambda,
            chains: [cw, ccw],
            memo: DashMap::new(),
            depth_limit: 4 * pts.len() * pts.len() + 16,
        })
    }

    fn mu(&self, side: Side, path: &[Point], depth: usize) -> Result<u64> {
        if depth > self.depth_limit {
            return Err(Error::numeric("path multiplicity recursion exceeded its step bound"));
        }
        let chain = match side {
            Side::Plus => &self.chains[0],
            Side::Minus => &self.chains[1],
        };
        if path == chain.as_slice() {
            return Ok(1);
        }
        if let Some(v) = self.memo.get(&(side, path.to_vec())) {
            return Ok(*v);
        }
        let sign = match side {
            Side::Plus => 1,
            Side::Minus => -1,
        };
        let turn = (1..path.len().saturating_sub(1)).find(|&j| sign * cross(path[j - 1], path[j], path[j + 1]) > 0);
        let value = match turn {
            None => 0,
            Some(j) => {
                let (a, b, c) = (path[j - 1], path[j], path[j + 1]);
                let area2 = cross(a, b, c).unsigned_abs();
                let mut shortcut = path.to_vec();
                shortcut.remove(j);
                let mut total = area2
                    .checked_mul(self.mu(side, &shortcut, depth + 1)?)
                    .ok_or_else(|| Error::numeric("multiplicity overflow"))?;
                let flipped = [a[0] + c[0] - b[0], a[1] + c[1] - b[1]];
                if self.delta.contains(flipped) {
                    let mut other = path.to_vec();
                    other[j] = flipped;
                    total = total
                        .checked_add(self.mu(side, &other, depth + 1)?)
                        .ok_or_else(|| Error::numeric("multiplicity overflow"))?;
                }
                total
            }
        };
        self.memo.insert((side, path.to_vec()), value);
        Ok(value)
    }

    fn multiplicity(&self, path: &[Point]) -> Result<PathMultiplicity> {
        let vals: Vec<Q> = path.iter().map(|p| self.lambda.eval(*p)).collect();
        if vals.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid("path is not λ-increasing"));
        }
        if path.iter().any(|p| !self.delta.contains(*p)) {
            return Err(Error::invalid("path leaves Δ"));
        }
        let chain = &self.chains[0];
        if path.first() != chain.first() || path.last() != chain.last() {
            return Ok(PathMultiplicity { mu_plus: 0, mu_minus: 0 });
        }
        let mu_plus = self.mu(Side::Plus, path, 0)?;
        let mu_minus = if mu_plus == 0 { 0 } else { self.mu(Side::Minus, path, 0)? };
        Ok(PathMultiplicity { mu_plus, mu_minus })
    }
}

pub fn path_multiplicity(path: &[Point], delta: &LatticePolygon, lambda: &LambdaOrder) -> Result<PathMultiplicity> {
    Context::new(delta, lambda)?.multiplicity(path)
}

/// `N(g, Δ)`: the sum of `μ(γ)` over all paths of `x + g` points.
pub fn count_n(g: i64, delta: &LatticePolygon, lambda: &LambdaOrder) -> Result<CountResult> {
    let paths = generate_paths(delta, lambda, g)?;
    let ctx = Context::new(delta, lambda)?;
    let mults = par::map_range(paths.len(), |i| ctx.multiplicity(&paths[i]));
    let mut n: u64 = 0;
    let mut records = Vec::new();
    for (p, m) in paths.iter().zip(mults) {
        let m = m?;
        if m.mu() > 0 {
            n = n.checked_add(m.mu()).ok_or_else(|| Error::numeric("count overflow"))?;
            records.push(PathRecord { points: p.clone(), mu_plus: m.mu_plus, mu_minus: m.mu_minus });
        }
    }
    Ok(CountResult { n, genus: g, lambda: lambda.describe(), paths: records, paths_examined: paths.len() })
}
