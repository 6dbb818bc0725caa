use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::poly::ComplexLaurentPolynomial;
use super::roots::{poly_roots, significant_top};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RonkinEstimate {
    pub x: [f64; 2],
    pub value: f64,
    pub nodes: usize,
    /// Difference against the estimate on every other node.
    pub error_estimate: f64,
    /// Nodes moved off an exact zero of the integrand.
    pub perturbed_nodes: usize,
}

/// Angle offset in `[0, 1)` node spacings, drawn from the seed.
pub fn jitter(seed: u64) -> f64 {
    ChaCha8Rng::seed_from_u64(seed).random::<f64>()
}

/// Jensen's formula on the circle `|w| = e^(x2)` for `w^kmin Σ c_k w^k`:
/// `kmin·x2 + log|c_top| + Σ max(x2, log|root|)`. `None` when every
/// coefficient vanishes.
fn jensen(kmin: i64, c: &[Complex64], x2: f64) -> Result<Option<f64>> {
    let Some(top) = significant_top(c) else { return Ok(None) };
    let roots = poly_roots(&c[..=top])?;
    Ok(Some(kmin as f64 * x2 + c[top].norm().ln() + roots.iter().map(|r| x2.max(r.norm().ln())).sum::<f64>()))
}

/// `N_f(x) = (2π)^-2 ∫ log|f(e^(x₁+iθ₁), e^(x₂+iθ₂))| dθ`.
///
/// The inner circle integral is evaluated exactly by Jensen's formula from
/// the roots in `w`; the outer one by the trapezoid rule on `nodes` angles
/// shifted by a seeded jitter. When `f` does not depend on `w` both
/// integrals are done by Jensen and the result is exact up to root accuracy.
pub fn ronkin_value(f: &ComplexLaurentPolynomial, x: [f64; 2], nodes: usize, seed: u64) -> Result<RonkinEstimate> {
    if nodes < 16 {
        return Err(Error::invalid("Ronkin quadrature needs at least 16 nodes"));
    }
    if !f.depends_on(1) {
        let k = f.terms().keys().next().expect("nonempty")[1];
        let (jmin, c) = f.swapped().w_polynomial(Complex64::new(1.0, 0.0));
        let value = k as f64 * x[1] + jensen(jmin, &c, x[0])?.expect("nonzero polynomial");
        return Ok(RonkinEstimate { x, value, nodes: 0, error_estimate: 0.0, perturbed_nodes: 0 });
    }
    let s = jitter(seed);
    let mut perturbed = 0;
    let mut vals = Vec::with_capacity(nodes);
    for m in 0..nodes {
        let mut th = TAU * (m as f64 + s) / nodes as f64;
        let mut tries = 0;
        loop {
            let (kmin, c) = f.w_polynomial(Complex64::from_polar(x[0].exp(), th));
            match jensen(kmin, &c, x[1])? {
                Some(v) if v.is_finite() => {
                    vals.push(v);
                    break;
                }
                _ if tries < 8 => {
                    th += 1e-7 * TAU / nodes as f64;
                    tries += 1;
                    perturbed += 1;
                }
                _ => return Err(Error::numeric("integrand vanishes identically near a quadrature node")),
            }
        }
    }
    let value = vals.iter().sum::<f64>() / nodes as f64;
    let half = vals.iter().step_by(2).sum::<f64>() / vals.iter().step_by(2).count() as f64;
    Ok(RonkinEstimate { x, value, nodes, error_estimate: (value - half).abs(), perturbed_nodes: perturbed })
}

/// Central differences of [`ronkin_value`] with common nodes; checked to
/// lie in the Newton polygon up to 0.05.
pub fn ronkin_gradient(f: &ComplexLaurentPolynomial, x: [f64; 2], nodes: usize, step: f64, seed: u64) -> Result<[f64; 2]> {
    if step <= 0.0 {
        return Err(Error::invalid("finite-difference step must be positive"));
    }
    let n = |p: [f64; 2]| ronkin_value(f, p, nodes, seed).map(|e| e.value);
    let gx = (n([x[0] + step, x[1]])? - n([x[0] - step, x[1]])?) / (2.0 * step);
    let gy = (n([x[0], x[1] + step])? - n([x[0], x[1] - step])?) / (2.0 * step);
    let delta = f.newton_polygon();
    if distance_to_polygon(&delta, [gx, gy]) > 0.05 {
        return Err(Error::numeric(format!("Ronkin gradient ({gx}, {gy}) leaves the Newton polygon")));
    }
    Ok([gx, gy])
}

fn distance_to_polygon(p: &crate::lattice::LatticePolygon, x: [f64; 2]) -> f64 {
    let vs = p.vertices();
    let seg = |a: [i64; 2], b: [i64; 2]| {
        let (ax, ay, bx, by) = (a[0] as f64, a[1] as f64, b[0] as f64, b[1] as f64);
        let (dx, dy) = (bx - ax, by - ay);
        let len2 = dx * dx + dy * dy;
        let t = if len2 == 0.0 { 0.0 } else { (((x[0] - ax) * dx + (x[1] - ay) * dy) / len2).clamp(0.0, 1.0) };
        ((x[0] - ax - t * dx).powi(2) + (x[1] - ay - t * dy).powi(2)).sqrt()
    };
    if vs.len() == 1 {
        return seg(vs[0], vs[0]);
    }
    let inside = vs.len() >= 3
        && (0..vs.len()).all(|i| {
            let (a, b) = (vs[i], vs[(i + 1) % vs.len()]);
            (b[0] - a[0]) as f64 * (x[1] - a[1] as f64) - (b[1] - a[1]) as f64 * (x[0] - a[0] as f64) >= 0.0
        });
    if inside {
        return 0.0;
    }
    (0..vs.len()).map(|i| seg(vs[i], vs[(i + 1) % vs.len()])).fold(f64::INFINITY, f64::min)
}

/// Plain tensor-product trapezoid rule on an `nodes × nodes` torus grid,
/// with both angle families shifted by `offset` node spacings.
pub fn ronkin_tensor(f: &ComplexLaurentPolynomial, x: [f64; 2], nodes: usize, offset: f64) -> f64 {
    let mut total = 0.0;
    for a in 0..nodes {
        let z = Complex64::from_polar(x[0].exp(), TAU * (a as f64 + offset) / nodes as f64);
        for b in 0..nodes {
            let w = Complex64::from_polar(x[1].exp(), TAU * (b as f64 + offset) / nodes as f64);
            total += f.eval(z, w).norm().ln();
        }
    }
    total / (nodes * nodes) as f64
}
