use std::collections::HashMap;

use num_bigint::BigInt;
use serde::Serialize;

use super::paths::{count_n, LambdaOrder};
use crate::lattice::LatticePolygon;
use crate::{Error, Result};

/// Rational plane curves of degree `d` through `3d - 1` generic points.
pub fn kontsevich_oracle(d: u32) -> BigInt {
    let d = d.max(1) as usize;
    let mut n: Vec<BigInt> = vec![BigInt::from(0), BigInt::from(1)];
    for k in 2..=d {
        let mut total = BigInt::from(0);
        for d1 in 1..k {
            let d2 = k - d1;
            let (a, b) = (d1 as i64, d2 as i64);
            let top = 3 * k - 4;
            let bracket = BigInt::from(b) * binom_big(top, 3 * d1 - 2) - BigInt::from(a) * binom_big(top, 3 * d1 - 1);
            total += &n[d1] * &n[d2] * BigInt::from(a * a * b) * bracket;
        }
        n.push(total);
    }
    n[d].clone()
}

fn binom_big(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let mut r = BigInt::from(1);
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

fn binom(n: i64, k: i64) -> i128 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: i128 = 1;
    for i in 0..k {
        r = r * (n - i) as i128 / (i + 1) as i128;
    }
    r
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IrreducibleCount {
    pub degree: i64,
    pub genus: i64,
    /// All curves, reducible ones included (the path count).
    pub n_all: u64,
    pub n_irr: u64,
    pub reducible: u64,
}

fn max_genus(d: i64) -> i64 {
    (d - 1) * (d - 2) / 2
}

/// Bookkeeping for curves of degree `d` in the plane. A curve with
/// components of genera `g_i` has genus `Σ g_i - k + 1`, so `h = g - 1` is
/// additive over components; it passes through `3d + h` points.
struct Splitter<'a> {
    lambda: &'a LambdaOrder,
    paths: HashMap<(i64, i64), i128>,
    irr: HashMap<(i64, i64), i128>,
    all: HashMap<(i64, i64), i128>,
}

impl Splitter<'_> {
    fn path_count(&mut self, d: i64, g: i64) -> Result<i128> {
        if let Some(v) = self.paths.get(&(d, g)) {
            return Ok(*v);
        }
        let v = count_n(g, &LatticePolygon::standard_triangle(d), self.lambda)?.n as i128;
        self.paths.insert((d, g), v);
        Ok(v)
    }

    /// Curves (any number of components) with total `h`.
    fn all(&mut self, d: i64, h: i64) -> Result<i128> {
        if d == 0 {
            return Ok(i128::from(h == 0));
        }
        if let Some(v) = self.all.get(&(d, h)) {
            return Ok(*v);
        }
        let v = self.split_sum(d, h, true)?;
        self.all.insert((d, h), v);
        Ok(v)
    }

    /// Sum over the component through the first point; `include_whole`
    /// decides whether the single-component term is counted.
    fn split_sum(&mut self, d: i64, h: i64, include_whole: bool) -> Result<i128> {
        let n = 3 * d + h;
        if n < 1 {
            return Ok(0);
        }
        let mut total = 0i128;
        for e in 1..=d {
            for k in -1..max_genus(e) {
                if e == d && k == h && !include_whole {
                    continue;
                }
                let n1 = 3 * e + k;
                if n1 < 1 || n1 > n {
                    continue;
                }
                let rest = self.all(d - e, h - k)?;
                if rest == 0 {
                    continue;
                }
                total += binom(n - 1, n1 - 1) * self.irreducible(e, k + 1)? * rest;
            }
        }
        Ok(total)
    }

    fn irreducible(&mut self, d: i64, g: i64) -> Result<i128> {
        if g < 0 || g > max_genus(d) {
            return Ok(0);
        }
        if let Some(v) = self.irr.get(&(d, g)) {
            return Ok(*v);
        }
        let total = self.path_count(d, g)?;
        let reducible = self.split_sum(d, g - 1, false)?;
        let v = total - reducible;
        if v < 0 {
            return Err(Error::numeric(format!("negative irreducible count for degree {d}, genus {g}")));
        }
        self.irr.insert((d, g), v);
        Ok(v)
    }
}

/// Irreducible curves of genus `g` with Newton polygon `dΔ`, obtained by
/// subtracting every split into irreducible components from the path count.
/// Other polygons are unsupported.
pub fn count_n_irr(g: i64, delta: &LatticePolygon, lambda: &LambdaOrder) -> Result<IrreducibleCount> {
    let d = delta
        .as_standard_triangle()
        .ok_or_else(|| Error::Unsupported("irreducible counts are available for dΔ only".into()))?;
    let mut s = Splitter { lambda, paths: HashMap::new(), irr: HashMap::new(), all: HashMap::new() };
    let n_all = s.path_count(d, g)?;
    let n_irr = s.irreducible(d, g)?;
    let reducible = s.split_sum(d, g - 1, false)?;
    if n_all != n_irr + reducible && g >= 0 && g <= max_genus(d) {
        return Err(Error::numeric("reducible bookkeeping is inconsistent"));
    }
    let to_u64 = |v: i128| u64::try_from(v).map_err(|_| Error::numeric("count out of range"));
    Ok(IrreducibleCount { degree: d, genus: g, n_all: to_u64(n_all)?, n_irr: to_u64(n_irr)?, reducible: to_u64(reducible)? })
}
