use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::poly::ComplexLaurentPolynomial;
use super::raster::Window;
use super::slice::{branches, track};
use crate::{par, Result};

#[derive(Clone, Debug, Default, Serialize)]
pub struct ContourResult {
    pub points: Vec<[f64; 2]>,
    pub warnings: Vec<String>,
}

/// `Im(z f_z / (w f_w))`, the θ-derivative of `log|w|` along a branch.
fn critical_value(f: &ComplexLaurentPolynomial, z: Complex64, w: Complex64) -> Option<f64> {
    let (gz, gw) = f.log_gradient(z, w);
    (gw.norm() > 1e-300).then(|| (gz / gw).im)
}

/// Sweep one orientation: fixed first coordinate `s`, roots in the second.
fn sweep(f: &ComplexLaurentPolynomial, s: f64, angles: usize, real: bool) -> Result<(Vec<[f64; 2]>, usize)> {
    let (thetas, br) = branches(f, s, angles)?;
    let mut pts = Vec::new();
    let mut singular = 0;
    let z_at = |th: f64| Complex64::from_polar(s.exp(), th);
    for b in &br {
        let q: Vec<Option<f64>> = thetas.iter().zip(b).map(|(&th, &w)| critical_value(f, z_at(th), w)).collect();
        singular += q.iter().filter(|v| v.is_none()).count();
        for k in 0..angles {
            let (Some(qa), Some(qb)) = (q[k], q[k + 1]) else { continue };
            if qa.signum() == qb.signum() || qa == 0.0 || qb == 0.0 {
                continue;
            }
            // bisection on θ with the branch tracked by Newton
            let (mut lo, mut hi, mut wl, mut ql) = (thetas[k], thetas[k + 1], b[k], qa);
            let mut w = b[k];
            for _ in 0..40 {
                let mid = 0.5 * (lo + hi);
                let Some(wm) = track(f, s, mid, wl)? else { break };
                w = wm;
                let Some(qm) = critical_value(f, z_at(mid), wm) else { break };
                if qm.signum() == ql.signum() {
                    lo = mid;
                    wl = wm;
                    ql = qm;
                } else {
                    hi = mid;
                }
            }
            pts.push([s, w.norm().ln()]);
        }
    }
    if real {
        for th in [0.0, PI] {
            for w in super::slice::roots_at(f, s, th)? {
                if w.norm() > 0.0 && w.im.abs() <= 1e-9 * w.norm().max(1.0) {
                    pts.push([s, w.norm().ln()]);
                }
            }
        }
    }
    Ok((pts, singular))
}

/// Points of `Log(F)` where `F` is the critical locus of the logarithmic
/// Gauss map, found on `resolution` column and row slices of the window.
pub fn log_gauss_contour(f: &ComplexLaurentPolynomial, window: Window, resolution: usize, angles: usize) -> Result<ContourResult> {
    let real = f.has_real_coefficients();
    let mut out = ContourResult::default();
    let mut singular = 0;
    let hx = (window.x1 - window.x0) / resolution as f64;
    let hy = (window.y1 - window.y0) / resolution as f64;
    if f.depends_on(1) {
        for r in par::map_range(resolution, |i| sweep(f, window.x0 + (i as f64 + 0.5) * hx, angles, real)) {
            let (p, s) = r?;
            singular += s;
            out.points.extend(p);
        }
    }
    if f.depends_on(0) {
        let g = f.swapped();
        for r in par::map_range(resolution, |j| sweep(&g, window.y0 + (j as f64 + 0.5) * hy, angles, real)) {
            let (p, s) = r?;
            singular += s;
            out.points.extend(p.into_iter().map(|[a, b]| [b, a]));
        }
    }
    out.points.retain(|p| window.contains(*p));
    if singular > 0 {
        out.warnings.push(format!("{singular} samples met a singular point (w ∂f/∂w = 0); the contour may be partial"));
    }
    Ok(out)
}
