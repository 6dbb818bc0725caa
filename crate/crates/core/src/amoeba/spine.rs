use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

use super::poly::ComplexLaurentPolynomial;
use super::raster::{AmoebaRaster, ComponentReport};
use super::ronkin::ronkin_value;
use crate::hypersurface::{corner_locus, TropicalComplex};
use crate::tropical::TropicalPolynomial;
use crate::{par, Error, Result, Q};

/// Largest tolerated deviation of `N_f - ⟨α, x⟩` from its mean over a component.
pub const SPINE_FIT_TOLERANCE: f64 = 1e-4;
const SAMPLES: usize = 25;

#[derive(Clone, Debug, Serialize)]
pub struct SpineTerm {
    pub index: [i64; 2],
    pub coefficient: f64,
    pub residual: f64,
    pub samples: usize,
}

#[derive(Clone, Debug)]
pub struct SpineResult {
    pub terms: Vec<SpineTerm>,
    /// `max_α (c_α + ⟨α, x⟩)` with coefficients rounded to 9 decimals.
    pub polynomial: TropicalPolynomial,
    pub complex: TropicalComplex,
    /// Set when only one component exists and the spine is empty.
    pub empty: bool,
}

impl SpineResult {
    pub fn coefficient(&self, index: [i64; 2]) -> Option<f64> {
        self.terms.iter().find(|t| t.index == index).map(|t| t.coefficient)
    }
}

fn round_decimal(c: f64) -> Q {
    Q::new(BigInt::from((c * 1e9).round() as i64), BigInt::from(1_000_000_000))
}

/// Up to `SAMPLES` interior cells spread across the component, preferring
/// cells at least two steps from the amoeba.
fn sample_cells(members: &[[usize; 2]], depths: &[usize]) -> Vec<[usize; 2]> {
    let deep: Vec<[usize; 2]> = members.iter().zip(depths).filter(|(_, d)| **d >= 2).map(|(c, _)| *c).collect();
    let pool = if deep.len() >= SAMPLES { deep } else { members.to_vec() };
    if pool.len() <= SAMPLES {
        return pool;
    }
    (0..SAMPLES).map(|k| pool[k * pool.len() / SAMPLES]).collect()
}

/// Fit the affine pieces of the Ronkin function on each indexed complement
/// component and take the corner locus of their maximum.
pub fn spine(f: &ComplexLaurentPolynomial, report: &ComponentReport, nodes: usize, seed: u64) -> Result<SpineResult> {
    let raster = &report.raster;
    let comps: Vec<_> = report.components.iter().filter(|c| c.index.is_some()).collect();
    if comps.is_empty() {
        return Err(Error::numeric("no indexed complement component to fit"));
    }
    let terms = par::map(comps, |c| -> Result<SpineTerm> {
        let alpha = c.index.expect("filtered");
        let cells = sample_cells(&c.members, &c.depths);
        let vals = cells
            .iter()
            .map(|&[i, j]| {
                let x = raster.center(i, j);
                ronkin_value(f, x, nodes, seed).map(|e| e.value - alpha[0] as f64 * x[0] - alpha[1] as f64 * x[1])
            })
            .collect::<Result<Vec<f64>>>()?;
        let mean = vals.iter().sum::<f64>() / vals.len() as f64;
        let residual = vals.iter().map(|v| (v - mean).abs()).fold(0.0, f64::max);
        if residual > SPINE_FIT_TOLERANCE {
            return Err(Error::numeric(format!(
                "affine fit on component {alpha:?} has residual {residual:.3e}; the window or resolution is too coarse"
            )));
        }
        Ok(SpineTerm { index: alpha, coefficient: mean, residual, samples: vals.len() })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let polynomial = TropicalPolynomial::from_terms(
        2,
        terms.iter().map(|t| (t.index.to_vec(), round_decimal(t.coefficient))),
    )?;
    let complex = corner_locus(&polynomial)?;
    let empty = complex.is_empty();
    Ok(SpineResult { terms, polynomial, complex, empty })
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ContainmentReport {
    pub checked: usize,
    pub outside: Vec<[f64; 2]>,
}

impl ContainmentReport {
    pub fn passed(&self) -> bool {
        self.outside.is_empty()
    }
}

/// Points along the complex's edges and rays, clipped to the window, at
/// spacing `pitch`.
pub fn complex_points(c: &TropicalComplex, window: &super::Window, pitch: f64) -> Vec<[f64; 2]> {
    let mut out = Vec::new();
    let mut push_segment = |a: [f64; 2], b: [f64; 2]| {
        let len = ((b[0] - a[0]).powi(2) + (b[1] - a[1]).powi(2)).sqrt();
        let n = (len / pitch).ceil().max(1.0) as usize;
        for k in 0..=n {
            let t = k as f64 / n as f64;
            let p = [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])];
            if window.contains(p) {
                out.push(p);
            }
        }
    };
    let reach = (window.x1 - window.x0).abs() + (window.y1 - window.y0).abs() + window.x0.abs().max(window.x1.abs()) + window.y0.abs().max(window.y1.abs());
    for e in &c.edges {
        push_segment(c.vertex_f64(e.ends.0), c.vertex_f64(e.ends.1));
    }
    for r in &c.rays {
        let a = c.vertex_f64(r.base);
        let d = [r.direction[0] as f64, r.direction[1] as f64];
        let n = (d[0] * d[0] + d[1] * d[1]).sqrt();
        push_segment(a, [a[0] + reach * d[0] / n, a[1] + reach * d[1] / n]);
    }
    for l in &c.lines {
        let p = [crate::exact::to_f64(&l.point[0]), crate::exact::to_f64(&l.point[1])];
        let d = [l.direction[0] as f64, l.direction[1] as f64];
        let n = (d[0] * d[0] + d[1] * d[1]).sqrt();
        push_segment([p[0] - reach * d[0] / n, p[1] - reach * d[1] / n], [p[0] + reach * d[0] / n, p[1] + reach * d[1] / n]);
    }
    out
}

/// Every sampled spine point lies within one cell of a member cell.
pub fn spine_containment(s: &SpineResult, raster: &AmoebaRaster) -> ContainmentReport {
    let h = raster.cell_size();
    let pts = complex_points(&s.complex, &raster.window, 0.5 * h[0].min(h[1]));
    let outside: Vec<[f64; 2]> = pts.iter().copied().filter(|p| !raster.near_member(*p)).collect();
    ContainmentReport { checked: pts.len(), outside }
}

/// Map from complement index to fitted coefficient.
pub fn coefficient_table(s: &SpineResult) -> BTreeMap<[i64; 2], f64> {
    s.terms.iter().map(|t| (t.index, t.coefficient)).collect()
}
