use num_complex::Complex64;
use serde::Serialize;

use super::poly::ComplexLaurentPolynomial;
use super::raster::Window;
use super::slice::trace_slice;
use super::spine::complex_points;
use crate::exact::to_f64;
use crate::hypersurface::corner_locus;
use crate::lattice::Point;
use crate::tropical::TropicalPolynomial;
use crate::{par, Error, Result, Q};

/// One term `α_j t^(v_j) z^j` of a patchworking family.
#[derive(Clone, Debug, PartialEq)]
pub struct DequantTerm {
    pub exponent: Point,
    pub phase: Complex64,
    pub valuation: Q,
}

/// `f_t = Σ α_j t^(v_j) z^j`.
pub fn dequant_family(terms: &[DequantTerm], t: f64) -> Result<ComplexLaurentPolynomial> {
    if t <= 1.0 || !t.is_finite() {
        return Err(Error::invalid("dequantization parameter must satisfy t > 1"));
    }
    ComplexLaurentPolynomial::new(terms.iter().map(|d| (d.exponent, d.phase * t.powf(to_f64(&d.valuation)))))
}

/// `max_j (v_j + ⟨j, x⟩)`.
pub fn tropical_limit(terms: &[DequantTerm]) -> Result<TropicalPolynomial> {
    TropicalPolynomial::from_terms(2, terms.iter().map(|d| (d.exponent.to_vec(), d.valuation.clone())))
}

/// Point cloud of the amoeba inside `window`: traced column and row slices
/// at spacing `pitch`, with swept intervals filled at the same spacing.
pub fn amoeba_point_cloud(f: &ComplexLaurentPolynomial, window: Window, pitch: f64, angles: usize) -> Result<Vec<[f64; 2]>> {
    let nx = ((window.x1 - window.x0) / pitch).ceil() as usize + 1;
    let ny = ((window.y1 - window.y0) / pitch).ceil() as usize + 1;
    let fill = |s: f64, lo: f64, hi: f64, a: f64, b: f64, out: &mut Vec<(f64, f64)>| {
        let (lo, hi) = (lo.max(a), hi.min(b));
        if lo > hi {
            return;
        }
        let n = ((hi - lo) / pitch).ceil() as usize;
        for k in 0..=n {
            out.push((s, if n == 0 { lo } else { lo + (hi - lo) * k as f64 / n as f64 }));
        }
    };
    let mut points = Vec::new();
    if f.depends_on(1) {
        let cols = par::map_range(nx, |i| -> Result<Vec<(f64, f64)>> {
            let s = (window.x0 + i as f64 * pitch).min(window.x1);
            let mut out = Vec::new();
            trace_slice(f, s, angles, pitch, &mut |lo, hi| fill(s, lo, hi, window.y0, window.y1, &mut out))?;
            Ok(out)
        });
        for c in cols {
            points.extend(c?.into_iter().map(|(a, b)| [a, b]));
        }
    }
    if f.depends_on(0) {
        let g = f.swapped();
        let rows = par::map_range(ny, |j| -> Result<Vec<(f64, f64)>> {
            let s = (window.y0 + j as f64 * pitch).min(window.y1);
            let mut out = Vec::new();
            trace_slice(&g, s, angles, pitch, &mut |lo, hi| fill(s, lo, hi, window.x0, window.x1, &mut out))?;
            Ok(out)
        });
        for r in rows {
            points.extend(r?.into_iter().map(|(a, b)| [b, a]));
        }
    }
    Ok(points)
}

/// Nearest-neighbour lookups on a uniform bucket grid.
struct Buckets<'a> {
    pts: &'a [[f64; 2]],
    origin: [f64; 2],
    size: f64,
    dims: [usize; 2],
    cells: Vec<Vec<usize>>,
}

impl<'a> Buckets<'a> {
    fn new(pts: &'a [[f64; 2]], window: &Window, size: f64) -> Self {
        let dims = [((window.x1 - window.x0) / size).ceil().max(1.0) as usize, ((window.y1 - window.y0) / size).ceil().max(1.0) as usize];
        let mut b = Self { pts, origin: [window.x0, window.y0], size, dims, cells: vec![Vec::new(); dims[0] * dims[1]] };
        for (k, p) in pts.iter().enumerate() {
            let (i, j) = b.cell(*p);
            b.cells[j * dims[0] + i].push(k);
        }
        b
    }

    fn cell(&self, p: [f64; 2]) -> (usize, usize) {
        let i = ((p[0] - self.origin[0]) / self.size).floor().clamp(0.0, (self.dims[0] - 1) as f64) as usize;
        let j = ((p[1] - self.origin[1]) / self.size).floor().clamp(0.0, (self.dims[1] - 1) as f64) as usize;
        (i, j)
    }

    fn nearest(&self, p: [f64; 2]) -> f64 {
        let (ci, cj) = self.cell(p);
        let mut best = f64::INFINITY;
        let max_ring = self.dims[0].max(self.dims[1]);
        for ring in 0..=max_ring {
            // every point in a ring at least (ring - 1) cells away
            if best < (ring as f64 - 1.0) * self.size {
                break;
            }
            let (i0, i1) = (ci as i64 - ring as i64, ci as i64 + ring as i64);
            let (j0, j1) = (cj as i64 - ring as i64, cj as i64 + ring as i64);
            for i in i0..=i1 {
                for j in j0..=j1 {
                    if (i != i0 && i != i1 && j != j0 && j != j1) || i < 0 || j < 0 {
                        continue;
                    }
                    let (i, j) = (i as usize, j as usize);
                    if i >= self.dims[0] || j >= self.dims[1] {
                        continue;
                    }
                    for &k in &self.cells[j * self.dims[0] + i] {
                        let q = self.pts[k];
                        best = best.min(((q[0] - p[0]).powi(2) + (q[1] - p[1]).powi(2)).sqrt());
                    }
                }
            }
        }
        best
    }
}

/// Symmetric Hausdorff distance between the parts of `a` and `b` inside
/// `window`. Infinite when exactly one of them is empty there.
pub fn hausdorff_distance(a: &[[f64; 2]], b: &[[f64; 2]], window: &Window) -> f64 {
    let a: Vec<[f64; 2]> = a.iter().copied().filter(|p| window.contains(*p)).collect();
    let b: Vec<[f64; 2]> = b.iter().copied().filter(|p| window.contains(*p)).collect();
    match (a.is_empty(), b.is_empty()) {
        (true, true) => return 0.0,
        (true, false) | (false, true) => return f64::INFINITY,
        _ => {}
    }
    let size = ((window.x1 - window.x0).max(window.y1 - window.y0) / 256.0).max(1e-9);
    let one_way = |from: &[[f64; 2]], to: &[[f64; 2]]| {
        let grid = Buckets::new(to, window, size);
        par::map_range(from.len(), |k| grid.nearest(from[k])).into_iter().fold(0.0, f64::max)
    };
    one_way(&a, &b).max(one_way(&b, &a))
}

#[derive(Clone, Debug, Serialize)]
pub struct DequantDistance {
    pub t: f64,
    pub distance: f64,
    /// `log 3 / log t`, the scale of the limit estimate.
    pub scale: f64,
    pub amoeba_points: usize,
    pub limit_points: usize,
}

/// `d_H(Log_t(V_t) ∩ K, limit ∩ K)` on window `K` with sampling `pitch`.
pub fn dequant_distance(terms: &[DequantTerm], t: f64, window: Window, pitch: f64, angles: usize) -> Result<DequantDistance> {
    let f = dequant_family(terms, t)?;
    let lt = t.ln();
    let cloud: Vec<[f64; 2]> = amoeba_point_cloud(&f, window.scaled(lt), pitch * lt, angles)?
        .into_iter()
        .map(|p| [p[0] / lt, p[1] / lt])
        .collect();
    let limit = corner_locus(&tropical_limit(terms)?)?;
    let lim_pts = complex_points(&limit, &window, pitch);
    Ok(DequantDistance {
        t,
        distance: hausdorff_distance(&cloud, &lim_pts, &window),
        scale: 3f64.ln() / lt,
        amoeba_points: cloud.len(),
        limit_points: lim_pts.len(),
    })
}
