use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::poly::ComplexLaurentPolynomial;
use super::raster::Window;
use super::slice::member_oriented;
use crate::{par, Error, Result};

const BLOCK: usize = 4096;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AreaEstimate {
    pub area: f64,
    /// Standard error of `area`.
    pub sigma: f64,
    pub samples: usize,
    pub hits: usize,
    /// `π²·Area(Δ)`.
    pub bound: f64,
    /// Share of hits in the outer 2% band of the window.
    pub margin_fraction: f64,
    pub diagnostic: Option<String>,
}

/// Monte Carlo area of the amoeba inside `window`. Samples are drawn in
/// blocks, each from its own ChaCha stream of `seed`, so the estimate does not
/// depend on the thread count. Errors if the estimate exceeds
/// `π²·Area(Δ) + 3σ`.
pub fn area_estimate(f: &ComplexLaurentPolynomial, window: Window, samples: usize, seed: u64, angles: usize) -> Result<AreaEstimate> {
    let bound = PI * PI * f.newton_polygon().doubled_area() as f64 / 2.0;
    let g = if f.depends_on(1) {
        Some((f.clone(), false))
    } else if f.depends_on(0) {
        Some((f.swapped(), true))
    } else {
        None
    };
    let Some((g, swap)) = g else {
        return Ok(AreaEstimate { area: 0.0, sigma: 0.0, samples, hits: 0, bound, margin_fraction: 0.0, diagnostic: None });
    };
    let blocks = samples.div_ceil(BLOCK);
    let mx = 0.02 * (window.x1 - window.x0);
    let my = 0.02 * (window.y1 - window.y0);
    let counts = par::map_range(blocks, |b| -> Result<(usize, usize)> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(b as u64);
        let n = BLOCK.min(samples - b * BLOCK);
        let (mut hits, mut margin) = (0, 0);
        for _ in 0..n {
            let x = [rng.random_range(window.x0..window.x1), rng.random_range(window.y0..window.y1)];
            let p = if swap { [x[1], x[0]] } else { x };
            if member_oriented(&g, p, angles)? {
                hits += 1;
                if x[0] < window.x0 + mx || x[0] > window.x1 - mx || x[1] < window.y0 + my || x[1] > window.y1 - my {
                    margin += 1;
                }
            }
        }
        Ok((hits, margin))
    });
    let (mut hits, mut margin) = (0, 0);
    for c in counts {
        let (h, m) = c?;
        hits += h;
        margin += m;
    }
    let p = hits as f64 / samples as f64;
    let area = window.area() * p;
    let sigma = window.area() * (p * (1.0 - p) / samples as f64).sqrt();
    let margin_fraction = if hits == 0 { 0.0 } else { margin as f64 / hits as f64 };
    let diagnostic = (margin_fraction > 0.01)
        .then(|| format!("{:.1}% of the amoeba hits lie at the window edge; enlarge the window and retry", 100.0 * margin_fraction));
    if area > bound + 3.0 * sigma {
        return Err(Error::numeric(format!("area estimate {area} exceeds π²·Area(Δ) = {bound} by more than 3σ")));
    }
    Ok(AreaEstimate { area, sigma, samples, hits, bound, margin_fraction, diagnostic })
}
