use std::f64::consts::TAU;

use num_complex::Complex64;

use super::poly::ComplexLaurentPolynomial;
use super::roots::{newton, poly_roots};
use crate::Result;

/// Roots in `w` of `f(e^(s + iθ), w)`.
pub(crate) fn roots_at(f: &ComplexLaurentPolynomial, s: f64, theta: f64) -> Result<Vec<Complex64>> {
    let (_, c) = f.w_polynomial(Complex64::from_polar(s.exp(), theta));
    if c.iter().all(|a| a.norm() == 0.0) {
        return Ok(Vec::new());
    }
    poly_roots(&c)
}

/// Follow the branch near `guess` at angle `theta`.
pub(crate) fn track(f: &ComplexLaurentPolynomial, s: f64, theta: f64, guess: Complex64) -> Result<Option<Complex64>> {
    let (_, c) = f.w_polynomial(Complex64::from_polar(s.exp(), theta));
    if let Some(r) = newton(&c, guess, 60) {
        return Ok(Some(r));
    }
    let all = roots_at(f, s, theta)?;
    Ok(all.into_iter().min_by(|a, b| (a - guess).norm().total_cmp(&(b - guess).norm())))
}

/// Greedy nearest matching of `next` onto `prev`; `out[i]` is the index in
/// `next` continuing branch `i`.
pub(crate) fn match_roots(prev: &[Complex64], next: &[Complex64]) -> Vec<Option<usize>> {
    let mut pairs: Vec<(f64, usize, usize)> = Vec::with_capacity(prev.len() * next.len());
    for (i, a) in prev.iter().enumerate() {
        for (j, b) in next.iter().enumerate() {
            pairs.push(((a - b).norm(), i, j));
        }
    }
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));
    let mut out = vec![None; prev.len()];
    let mut taken = vec![false; next.len()];
    for (_, i, j) in pairs {
        if out[i].is_none() && !taken[j] {
            out[i] = Some(j);
            taken[j] = true;
        }
    }
    out
}

/// Root branches of `f(e^(s+iθ), ·)` sampled at `m` equally spaced angles
/// starting at 0: `branches[b][k]` is branch `b` at angle `k`, and the
/// last column repeats angle 0 as tracked through the full turn.
pub(crate) fn branches(f: &ComplexLaurentPolynomial, s: f64, m: usize) -> Result<(Vec<f64>, Vec<Vec<Complex64>>)> {
    let thetas: Vec<f64> = (0..=m).map(|k| TAU * k as f64 / m as f64).collect();
    let first = roots_at(f, s, 0.0)?;
    let mut cols: Vec<Vec<Complex64>> = vec![first.into_iter().filter(|r| r.norm() > 0.0).collect()];
    for &th in &thetas[1..] {
        let next: Vec<Complex64> = roots_at(f, s, th)?.into_iter().filter(|r| r.norm() > 0.0).collect();
        let prev = cols.last().expect("nonempty");
        let m = match_roots(prev, &next);
        // branches whose partner vanished (root escaped to 0 or ∞) keep their last value
        let col: Vec<Complex64> = prev.iter().zip(&m).map(|(p, j)| j.map_or(*p, |j| next[j])).collect();
        cols.push(col);
    }
    let nb = cols[0].len();
    let out = (0..nb).map(|b| cols.iter().map(|c| c[b]).collect()).collect();
    Ok((thetas, out))
}

/// Calls `visit(lo, hi)` for intervals of `log|w|` swept by each branch
/// between consecutive angles, refining until each jump is at most `max_gap`.
pub(crate) fn trace_slice(
    f: &ComplexLaurentPolynomial,
    s: f64,
    m: usize,
    max_gap: f64,
    visit: &mut dyn FnMut(f64, f64),
) -> Result<()> {
    let (thetas, br) = branches(f, s, m)?;
    for b in &br {
        for k in 0..m {
            refine(f, s, (thetas[k], b[k]), (thetas[k + 1], b[k + 1]), max_gap, 0, visit)?;
        }
    }
    Ok(())
}

const MAX_DEPTH: usize = 14;

fn refine(
    f: &ComplexLaurentPolynomial,
    s: f64,
    a: (f64, Complex64),
    c: (f64, Complex64),
    max_gap: f64,
    depth: usize,
    visit: &mut dyn FnMut(f64, f64),
) -> Result<()> {
    let (la, lc) = (a.1.norm().ln(), c.1.norm().ln());
    if (la - lc).abs() <= max_gap || depth >= MAX_DEPTH {
        visit(la.min(lc), la.max(lc));
        return Ok(());
    }
    let th = 0.5 * (a.0 + c.0);
    let guess = 0.5 * (a.1 + c.1);
    let Some(mid) = track(f, s, th, guess)? else {
        visit(la.min(lc), la.max(lc));
        return Ok(());
    };
    refine(f, s, a, (th, mid), max_gap, depth + 1, visit)?;
    refine(f, s, (th, mid), c, max_gap, depth + 1, visit)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SliceResult {
    /// `log|w|` over all nonzero roots at all sampled angles, ascending.
    pub values: Vec<f64>,
    pub diagnostic: Option<String>,
}

/// Sample `A ∩ {x₁ = const}` at `m` angles.
pub fn amoeba_slice(f: &ComplexLaurentPolynomial, x1: f64, m: usize) -> Result<SliceResult> {
    if !f.depends_on(1) {
        return Ok(SliceResult { values: Vec::new(), diagnostic: Some("polynomial does not depend on w; slices are empty".into()) });
    }
    let mut values = Vec::new();
    for k in 0..m {
        let th = TAU * k as f64 / m as f64;
        values.extend(roots_at(f, x1, th)?.into_iter().filter(|r| r.norm() > 0.0).map(|r| r.norm().ln()));
    }
    values.sort_by(f64::total_cmp);
    Ok(SliceResult { values, diagnostic: None })
}

/// Exact-ish membership of a single point: the number of roots inside
/// `|w| < e^(x₂)` changes with θ, or the nearest branch crosses the level
/// after refining its extremum.
pub fn is_member(f: &ComplexLaurentPolynomial, x: [f64; 2], m: usize) -> Result<bool> {
    let (g, p) = if f.depends_on(1) {
        (f.clone(), x)
    } else if f.depends_on(0) {
        (f.swapped(), [x[1], x[0]])
    } else {
        return Ok(false);
    };
    member_oriented(&g, p, m)
}

pub(crate) fn member_oriented(g: &ComplexLaurentPolynomial, x: [f64; 2], m: usize) -> Result<bool> {
    if g.dominated_at(x) {
        return Ok(false);
    }
    let mut best: Option<(f64, f64, Complex64)> = None;
    let mut count = None;
    for k in 0..m {
        let th = TAU * k as f64 / m as f64;
        let roots = roots_at(g, x[0], th)?;
        let inside = roots.iter().filter(|r| r.norm().ln() < x[1]).count();
        match count {
            None => count = Some(inside),
            Some(c) if c != inside => return Ok(true),
            _ => {}
        }
        for r in roots {
            let d = r.norm().ln() - x[1];
            if best.is_none_or(|b| d.abs() < b.0.abs()) {
                best = Some((d, th, r));
            }
        }
    }
    let Some((d, th0, r0)) = best else { return Ok(false) };
    if d == 0.0 {
        return Ok(true);
    }
    let sign = d.signum();
    let h = TAU / m as f64;
    let val = |th: f64, guess: Complex64| -> Result<Option<(f64, Complex64)>> {
        Ok(track(g, x[0], th, guess)?.map(|r| (sign * (r.norm().ln() - x[1]), r)))
    };
    // a parabola through the neighbouring samples rules out most far points
    if let (Some((dl, _)), Some((dr, _))) = (val(th0 - h, r0)?, val(th0 + h, r0)?) {
        let d0 = d.abs();
        let curv = dl + dr - 2.0 * d0;
        let lowest = if curv > 0.0 {
            let t = (0.5 * (dl - dr) / curv).clamp(-1.0, 1.0);
            d0 + 0.5 * (dr - dl) * t + 0.5 * curv * t * t
        } else {
            dl.min(dr).min(d0)
        };
        if lowest > 0.25 * d0 {
            return Ok(false);
        }
    }
    // golden-section search for the extremum of log|w| toward the level
    let phi = 0.5 * (5f64.sqrt() - 1.0);
    let (mut lo, mut hi) = (th0 - h, th0 + h);
    let mut guess = r0;
    for _ in 0..40 {
        let a = hi - phi * (hi - lo);
        let b = lo + phi * (hi - lo);
        let (Some((fa, ra)), Some((fb, rb))) = (val(a, guess)?, val(b, guess)?) else { break };
        if fa <= 0.0 || fb <= 0.0 {
            return Ok(true);
        }
        if fa < fb {
            hi = b;
            guess = ra;
        } else {
            lo = a;
            guess = rb;
        }
    }
    Ok(false)
}
