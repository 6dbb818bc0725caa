use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::{Error, Result};

const TOL: f64 = 1e-12;
const MAX_ITER: usize = 500;

fn horner(c: &[Complex64], x: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for a in c.iter().rev() {
        dp = dp * x + p;
        p = p * x + a;
    }
    (p, dp)
}

/// Newton steps from `x0`; `None` unless it settles.
pub(crate) fn newton(c: &[Complex64], x0: Complex64, iters: usize) -> Option<Complex64> {
    let mut x = x0;
    for _ in 0..iters {
        let (p, dp) = horner(c, x);
        if dp.norm() == 0.0 {
            return None;
        }
        let step = p / dp;
        x -= step;
        if !x.re.is_finite() || !x.im.is_finite() {
            return None;
        }
        if step.norm() <= TOL * x.norm().max(1.0) {
            return Some(x);
        }
    }
    None
}

/// Starting points spread over circles whose radii come from the upper
/// hull of `(k, log|c_k|)`.
fn initial_guesses(c: &[Complex64]) -> Vec<Complex64> {
    let pts: Vec<(f64, f64)> = c
        .iter()
        .enumerate()
        .filter(|(_, a)| a.norm() > 0.0)
        .map(|(k, a)| (k as f64, a.norm().ln()))
        .collect();
    let mut hull: Vec<(f64, f64)> = Vec::new();
    for p in pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            if (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0) >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut out = Vec::new();
    for (s, w) in hull.windows(2).enumerate() {
        let n = (w[1].0 - w[0].0) as usize;
        let r = ((w[0].1 - w[1].1) / n as f64).exp();
        for m in 0..n {
            let ang = std::f64::consts::TAU * m as f64 / n as f64 + 0.4 + 0.7 * s as f64;
            out.push(Complex64::from_polar(r, ang));
        }
    }
    out
}

fn aberth(c: &[Complex64]) -> Option<Vec<Complex64>> {
    let mut z = initial_guesses(c);
    let n = z.len();
    for _ in 0..MAX_ITER {
        let mut done = true;
        for k in 0..n {
            let (p, dp) = horner(c, z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..n).filter(|&j| j != k).map(|j| 1.0 / (z[k] - z[j])).sum();
            let step = ratio / (1.0 - ratio * s);
            if !step.re.is_finite() || !step.im.is_finite() {
                return None;
            }
            z[k] -= step;
            if step.norm() > TOL * z[k].norm().max(1.0) {
                done = false;
            }
        }
        if done {
            return Some(z);
        }
    }
    None
}

fn companion(c: &[Complex64]) -> Option<Vec<Complex64>> {
    let n = c.len() - 1;
    let lead = c[n];
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..n {
        m[(i, n - 1)] = -c[i] / lead;
    }
    let eig = m.schur().eigenvalues()?;
    Some(eig.iter().map(|&x| newton(c, x, 50).unwrap_or(x)).collect())
}

/// Index of the highest coefficient above `1e-15` of the largest one.
pub(crate) fn significant_top(c: &[Complex64]) -> Option<usize> {
    let scale = c.iter().map(|a| a.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return None;
    }
    c.iter().rposition(|a| a.norm() > 1e-15 * scale)
}

/// All roots of `Σ c_k x^k` (coefficients in ascending order), zeros
/// included. Leading coefficients below `1e-15` of the largest are treated
/// as vanished; those roots are at infinity and omitted.
pub fn poly_roots(c: &[Complex64]) -> Result<Vec<Complex64>> {
    let hi = significant_top(c).ok_or_else(|| Error::numeric("zero polynomial has no isolated roots"))? + 1;
    let lo = c.iter().position(|a| a.norm() != 0.0).expect("nonzero");
    let mut roots = vec![Complex64::new(0.0, 0.0); lo];
    let c = &c[lo..hi];
    match c.len() {
        0 | 1 => {}
        2 => roots.push(-c[0] / c[1]),
        3 => {
            let (a, b, cc) = (c[2], c[1], c[0]);
            let disc = (b * b - 4.0 * a * cc).sqrt();
            // pick the sign that avoids cancellation
            let qv = if (b.conj() * disc).re >= 0.0 { -0.5 * (b + disc) } else { -0.5 * (b - disc) };
            if qv.norm() == 0.0 {
                roots.extend([Complex64::new(0.0, 0.0); 2]);
            } else {
                roots.push(qv / a);
                roots.push(cc / qv);
            }
        }
        _ => {
            let found = aberth(c).or_else(|| companion(c)).ok_or_else(|| Error::numeric("root finding did not converge"))?;
            roots.extend(found);
        }
    }
    Ok(roots)
}

/// Companion-matrix eigenvalues, polished by Newton.
pub fn poly_roots_companion(c: &[Complex64]) -> Result<Vec<Complex64>> {
    if c.len() < 2 || c[c.len() - 1].norm() == 0.0 {
        return Err(Error::invalid("companion matrix needs a nonzero leading coefficient"));
    }
    companion(c).ok_or_else(|| Error::numeric("eigenvalue iteration did not converge"))
}
