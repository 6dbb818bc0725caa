use std::collections::VecDeque;

use serde::Serialize;

use super::poly::ComplexLaurentPolynomial;
use super::ronkin::ronkin_gradient;
use super::slice::trace_slice;
use crate::{par, Error, Result};

/// `[x0, x1] × [y0, y1]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Window {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl Window {
    pub fn new(x0: f64, x1: f64, y0: f64, y1: f64) -> Result<Self> {
        if !(x0 < x1 && y0 < y1) || ![x0, x1, y0, y1].iter().all(|v| v.is_finite()) {
            return Err(Error::invalid("window needs x0 < x1 and y0 < y1"));
        }
        Ok(Self { x0, x1, y0, y1 })
    }

    pub fn square(r: f64) -> Self {
        Self { x0: -r, x1: r, y0: -r, y1: r }
    }

    pub fn contains(&self, p: [f64; 2]) -> bool {
        p[0] >= self.x0 && p[0] <= self.x1 && p[1] >= self.y0 && p[1] <= self.y1
    }

    pub fn area(&self) -> f64 {
        (self.x1 - self.x0) * (self.y1 - self.y0)
    }

    pub fn scaled(&self, k: f64) -> Self {
        Self { x0: self.x0 * k, x1: self.x1 * k, y0: self.y0 * k, y1: self.y1 * k }
    }
}

/// Grid over a window; cell `(i, j)` is column `i`, row `j`. A cell is a
/// member when a traced slice root passes through it, using column slices
/// (fixed `x₁`, roots in `w`) and row slices (fixed `x₂`, roots in `z`).
#[derive(Clone, Debug, PartialEq)]
pub struct AmoebaRaster {
    pub window: Window,
    pub nx: usize,
    pub ny: usize,
    pub angles: usize,
    member: Vec<bool>,
}

impl AmoebaRaster {
    pub fn cell_size(&self) -> [f64; 2] {
        [(self.window.x1 - self.window.x0) / self.nx as f64, (self.window.y1 - self.window.y0) / self.ny as f64]
    }

    pub fn center(&self, i: usize, j: usize) -> [f64; 2] {
        let h = self.cell_size();
        [self.window.x0 + (i as f64 + 0.5) * h[0], self.window.y0 + (j as f64 + 0.5) * h[1]]
    }

    pub fn cell_of(&self, p: [f64; 2]) -> Option<(usize, usize)> {
        if !self.window.contains(p) {
            return None;
        }
        let h = self.cell_size();
        let i = (((p[0] - self.window.x0) / h[0]) as usize).min(self.nx - 1);
        let j = (((p[1] - self.window.y0) / h[1]) as usize).min(self.ny - 1);
        Some((i, j))
    }

    pub fn is_member(&self, i: usize, j: usize) -> bool {
        self.member[j * self.nx + i]
    }

    /// Member within one cell of `p` (3×3 neighbourhood).
    pub fn near_member(&self, p: [f64; 2]) -> bool {
        let Some((i, j)) = self.cell_of(p) else { return false };
        (i.saturating_sub(1)..=(i + 1).min(self.nx - 1))
            .any(|a| (j.saturating_sub(1)..=(j + 1).min(self.ny - 1)).any(|b| self.is_member(a, b)))
    }

    pub fn member_count(&self) -> usize {
        self.member.iter().filter(|m| **m).count()
    }

    /// Member cells with a non-member 4-neighbour.
    pub fn boundary_cells(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for j in 0..self.ny {
            for i in 0..self.nx {
                if self.is_member(i, j) && self.neighbours4(i, j).into_iter().flatten().any(|(a, b)| !self.is_member(a, b)) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    fn neighbours4(&self, i: usize, j: usize) -> [Option<(usize, usize)>; 4] {
        [
            (i > 0).then(|| (i - 1, j)),
            (i + 1 < self.nx).then(|| (i + 1, j)),
            (j > 0).then(|| (i, j - 1)),
            (j + 1 < self.ny).then(|| (i, j + 1)),
        ]
    }

    /// Rows as strings of `#` (member) and `.`, top row first.
    pub fn ascii(&self) -> String {
        let mut s = String::new();
        for j in (0..self.ny).rev() {
            for i in 0..self.nx {
                s.push(if self.is_member(i, j) { '#' } else { '.' });
            }
            s.push('\n');
        }
        s
    }
}

/// Mark cells `[lo, hi]` of one column (or row) of `n` cells over `[a, b]`.
fn mark(cells: &mut [bool], a: f64, b: f64, lo: f64, hi: f64) {
    let n = cells.len();
    if hi < a || lo > b {
        return;
    }
    let h = (b - a) / n as f64;
    let i0 = (((lo.max(a) - a) / h) as usize).min(n - 1);
    let i1 = (((hi.min(b) - a) / h) as usize).min(n - 1);
    for c in &mut cells[i0..=i1] {
        *c = true;
    }
}

/// Rasterize the amoeba of `f` on `window` with `res × res` cells, sampling
/// `angles` angles per slice (refined adaptively between them).
pub fn amoeba_raster(f: &ComplexLaurentPolynomial, window: Window, res: usize, angles: usize) -> Result<AmoebaRaster> {
    if res < 2 || angles < 8 {
        return Err(Error::invalid("raster needs res ≥ 2 and at least 8 angles"));
    }
    let (nx, ny) = (res, res);
    let hx = (window.x1 - window.x0) / nx as f64;
    let hy = (window.y1 - window.y0) / ny as f64;
    let mut member = vec![false; nx * ny];

    if f.depends_on(1) {
        let cols = par::map_range(nx, |i| -> Result<Vec<bool>> {
            let s = window.x0 + (i as f64 + 0.5) * hx;
            let mut col = vec![false; ny];
            trace_slice(f, s, angles, 0.5 * hy, &mut |lo, hi| mark(&mut col, window.y0, window.y1, lo, hi))?;
            Ok(col)
        });
        for (i, col) in cols.into_iter().enumerate() {
            for (j, m) in col?.into_iter().enumerate() {
                member[j * nx + i] |= m;
            }
        }
    }
    if f.depends_on(0) {
        let g = f.swapped();
        let rows = par::map_range(ny, |j| -> Result<Vec<bool>> {
            let s = window.y0 + (j as f64 + 0.5) * hy;
            let mut row = vec![false; nx];
            trace_slice(&g, s, angles, 0.5 * hx, &mut |lo, hi| mark(&mut row, window.x0, window.x1, lo, hi))?;
            Ok(row)
        });
        for (j, row) in rows.into_iter().enumerate() {
            for (i, m) in row?.into_iter().enumerate() {
                member[j * nx + i] |= m;
            }
        }
    }
    Ok(AmoebaRaster { window, nx, ny, angles, member })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComplementComponent {
    pub cells: usize,
    /// Cell farthest (in 8-neighbour steps) from the amoeba.
    pub deepest: [usize; 2],
    pub depth: usize,
    pub point: [f64; 2],
    pub gradient: [f64; 2],
    /// Rounded gradient, when it is within 0.2 of a lattice point.
    pub index: Option<[i64; 2]>,
    pub touches_window: bool,
    #[serde(skip)]
    pub members: Vec<[usize; 2]>,
    #[serde(skip)]
    pub depths: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct ComponentReport {
    pub raster: AmoebaRaster,
    pub components: Vec<ComplementComponent>,
}

impl ComponentReport {
    pub fn indices(&self) -> Vec<[i64; 2]> {
        let mut v: Vec<[i64; 2]> = self.components.iter().filter_map(|c| c.index).collect();
        v.sort();
        v
    }

    pub fn indeterminate(&self) -> usize {
        self.components.iter().filter(|c| c.index.is_none()).count()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AmoebaOptions {
    pub resolution: usize,
    pub angles: usize,
    pub ronkin_nodes: usize,
    pub seed: u64,
}

impl Default for AmoebaOptions {
    fn default() -> Self {
        Self { resolution: 200, angles: 64, ronkin_nodes: 1024, seed: 0 }
    }
}

/// 8-neighbour BFS distance from the member cells.
fn depth_map(r: &AmoebaRaster) -> Vec<usize> {
    let (nx, ny) = (r.nx, r.ny);
    let mut d = vec![usize::MAX; nx * ny];
    let mut queue = VecDeque::new();
    for j in 0..ny {
        for i in 0..nx {
            if r.is_member(i, j) {
                d[j * nx + i] = 0;
                queue.push_back((i, j));
            }
        }
    }
    while let Some((i, j)) = queue.pop_front() {
        let here = d[j * nx + i];
        for di in -1i64..=1 {
            for dj in -1i64..=1 {
                let (a, b) = (i as i64 + di, j as i64 + dj);
                if a < 0 || b < 0 || a >= nx as i64 || b >= ny as i64 {
                    continue;
                }
                let k = b as usize * nx + a as usize;
                if d[k] == usize::MAX {
                    d[k] = here + 1;
                    queue.push_back((a as usize, b as usize));
                }
            }
        }
    }
    d
}

/// Flood-fill the non-member cells (4-connectivity) and index each
/// component by the rounded Ronkin gradient at its deepest cell.
pub fn complement_components(f: &ComplexLaurentPolynomial, window: Window, opts: &AmoebaOptions) -> Result<ComponentReport> {
    let raster = amoeba_raster(f, window, opts.resolution, opts.angles)?;
    let (nx, ny) = (raster.nx, raster.ny);
    let depth = depth_map(&raster);
    let mut label = vec![usize::MAX; nx * ny];
    let mut groups: Vec<Vec<[usize; 2]>> = Vec::new();
    for j0 in 0..ny {
        for i0 in 0..nx {
            if raster.is_member(i0, j0) || label[j0 * nx + i0] != usize::MAX {
                continue;
            }
            let id = groups.len();
            let mut cells = Vec::new();
            let mut queue = VecDeque::from([(i0, j0)]);
            label[j0 * nx + i0] = id;
            while let Some((i, j)) = queue.pop_front() {
                cells.push([i, j]);
                for (a, b) in raster.neighbours4(i, j).into_iter().flatten() {
                    if !raster.is_member(a, b) && label[b * nx + a] == usize::MAX {
                        label[b * nx + a] = id;
                        queue.push_back((a, b));
                    }
                }
            }
            groups.push(cells);
        }
    }
    let h = raster.cell_size();
    let results = par::map(groups, |cells| -> Result<ComplementComponent> {
        let depths: Vec<usize> = cells.iter().map(|c| depth[c[1] * nx + c[0]]).collect();
        let best = (0..cells.len()).max_by_key(|&k| (depths[k], std::cmp::Reverse(k))).expect("nonempty");
        let [i, j] = cells[best];
        let point = raster.center(i, j);
        let d = depths[best];
        let step = if d == usize::MAX { 0.5 } else { (0.5 * d as f64 * h[0].min(h[1])).min(0.5) };
        let gradient = ronkin_gradient(f, point, opts.ronkin_nodes, step, opts.seed)?;
        let rounded = [gradient[0].round(), gradient[1].round()];
        let err = ((gradient[0] - rounded[0]).powi(2) + (gradient[1] - rounded[1]).powi(2)).sqrt();
        let touches_window = cells.iter().any(|c| c[0] == 0 || c[1] == 0 || c[0] == nx - 1 || c[1] == ny - 1);
        Ok(ComplementComponent {
            cells: cells.len(),
            deepest: [i, j],
            depth: d,
            point,
            gradient,
            index: (err <= 0.2).then(|| [rounded[0] as i64, rounded[1] as i64]),
            touches_window,
            members: cells,
            depths,
        })
    });
    let components = results.into_iter().collect::<Result<Vec<_>>>()?;

    let limit = f.newton_polygon().lattice_points().len();
    if components.len() > limit {
        return Err(Error::numeric(format!(
            "{} complement components exceed the {limit} lattice points of the Newton polygon; raise the resolution",
            components.len()
        )));
    }
    let mut seen = std::collections::BTreeSet::new();
    for c in &components {
        if let Some(ix) = c.index {
            if !seen.insert(ix) {
                return Err(Error::numeric(format!("two complement components share index {ix:?}")));
            }
        }
    }
    Ok(ComponentReport { raster, components })
}
