//! Standalone SVG figures.
//!
//! A figure is a grid of panels; each panel maps a window of R² onto a
//! square viewport and draws its layers in order. Numbers are printed with
//! three decimals so equal inputs give byte-identical files.

use std::fmt::Write as _;
use std::path::Path;

use crate::amoeba::{AmoebaRaster, Window};
use crate::curves::TropicalCurve;
use crate::exact::to_f64;
use crate::hypersurface::TropicalComplex;
use crate::lattice::RegularSubdivision;
use crate::patchwork::RealTropicalSet;
use crate::Result;

/// Bounded segment, or a ray when `to` is `None`.
#[derive(Clone, Debug, PartialEq)]
pub struct Segment {
    pub from: [f64; 2],
    pub to: Option<[f64; 2]>,
    pub direction: [f64; 2],
    pub weight: i64,
}

#[derive(Clone, Debug)]
pub enum Layer {
    Raster { raster: AmoebaRaster, fill: String },
    Segments { segments: Vec<Segment>, stroke: String },
    Points { points: Vec<[f64; 2]>, radius: f64, fill: String },
    /// Dual subdivision drawn as an inset in the upper right corner.
    Dual(RegularSubdivision),
}

#[derive(Clone, Debug)]
pub struct Panel {
    pub window: Window,
    pub title: Option<String>,
    pub layers: Vec<Layer>,
}

#[derive(Clone, Debug)]
pub struct FigureSpec {
    pub panels: Vec<Panel>,
    pub columns: usize,
    pub panel_px: f64,
}

impl FigureSpec {
    pub fn single(panel: Panel) -> Self {
        Self { panels: vec![panel], columns: 1, panel_px: 480.0 }
    }
}

const MARGIN: f64 = 24.0;
const STROKE: f64 = 1.5;

struct View {
    w: Window,
    ox: f64,
    oy: f64,
    px: f64,
}

impl View {
    fn map(&self, p: [f64; 2]) -> [f64; 2] {
        [
            self.ox + (p[0] - self.w.x0) / (self.w.x1 - self.w.x0) * self.px,
            self.oy + (self.w.y1 - p[1]) / (self.w.y1 - self.w.y0) * self.px,
        ]
    }

    /// Far point along a ray, well outside the window so clipping trims it.
    fn ray_end(&self, s: &Segment) -> [f64; 2] {
        let span = (self.w.x1 - self.w.x0).abs() + (self.w.y1 - self.w.y0).abs();
        let off = (s.from[0] - self.w.x0).abs().max((s.from[0] - self.w.x1).abs())
            + (s.from[1] - self.w.y0).abs().max((s.from[1] - self.w.y1).abs());
        let norm = s.direction[0].hypot(s.direction[1]).max(f64::MIN_POSITIVE);
        let len = 2.0 * (span + off) / norm;
        [s.from[0] + len * s.direction[0], s.from[1] + len * s.direction[1]]
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn n(x: f64) -> String {
    let s = format!("{x:.3}");
    if s == "-0.000" { "0.000".into() } else { s }
}

pub fn render_svg(spec: &FigureSpec) -> String {
    let cols = spec.columns.max(1);
    let rows = spec.panels.len().div_ceil(cols).max(1);
    let title_h = if spec.panels.iter().any(|p| p.title.is_some()) { 18.0 } else { 0.0 };
    let cell = spec.panel_px + 2.0 * MARGIN;
    let width = cols as f64 * cell;
    let height = rows as f64 * (cell + title_h);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        n(width),
        n(height),
        n(width),
        n(height)
    );
    let _ = writeln!(out, r#"<rect x="0" y="0" width="{}" height="{}" fill="white"/>"#, n(width), n(height));
    for (k, panel) in spec.panels.iter().enumerate() {
        let ox = (k % cols) as f64 * cell + MARGIN;
        let oy = (k / cols) as f64 * (cell + title_h) + MARGIN + title_h;
        let view = View { w: panel.window, ox, oy, px: spec.panel_px };
        render_panel(&mut out, k, panel, &view);
    }
    out.push_str("</svg>\n");
    out
}

fn render_panel(out: &mut String, k: usize, panel: &Panel, v: &View) {
    let px = n(v.px);
    let _ = writeln!(out, r#"<g id="panel{k}">"#);
    if let Some(t) = &panel.title {
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="13" text-anchor="middle">{}</text>"#,
            n(v.ox + v.px / 2.0),
            n(v.oy - 8.0),
            escape(t)
        );
    }
    let _ = writeln!(out, r#"<clipPath id="clip{k}"><rect x="{}" y="{}" width="{px}" height="{px}"/></clipPath>"#, n(v.ox), n(v.oy));
    let _ = writeln!(out, r#"<rect x="{}" y="{}" width="{px}" height="{px}" fill="none" stroke="black" stroke-width="0.5"/>"#, n(v.ox), n(v.oy));
    let _ = writeln!(out, r#"<g clip-path="url(#clip{k})">"#);
    axes(out, v);
    for layer in &panel.layers {
        match layer {
            Layer::Raster { raster, fill } => draw_raster(out, v, raster, fill),
            Layer::Segments { segments, stroke } => draw_segments(out, v, segments, stroke),
            Layer::Points { points, radius, fill } => {
                for p in points {
                    let q = v.map(*p);
                    let _ = writeln!(out, r#"<circle cx="{}" cy="{}" r="{}" fill="{fill}"/>"#, n(q[0]), n(q[1]), n(*radius));
                }
            }
            Layer::Dual(_) => {}
        }
    }
    out.push_str("</g>\n");
    for layer in &panel.layers {
        if let Layer::Dual(sub) = layer {
            draw_dual(out, v, sub);
        }
    }
    out.push_str("</g>\n");
}

fn axes(out: &mut String, v: &View) {
    let w = v.w;
    let style = r##"stroke="#999999" stroke-width="0.75" stroke-dasharray="4 3""##;
    if w.y0 <= 0.0 && 0.0 <= w.y1 {
        let a = v.map([w.x0, 0.0]);
        let b = v.map([w.x1, 0.0]);
        let _ = writeln!(out, r#"<line x1="{}" y1="{}" x2="{}" y2="{}" {style}/>"#, n(a[0]), n(a[1]), n(b[0]), n(b[1]));
    }
    if w.x0 <= 0.0 && 0.0 <= w.x1 {
        let a = v.map([0.0, w.y0]);
        let b = v.map([0.0, w.y1]);
        let _ = writeln!(out, r#"<line x1="{}" y1="{}" x2="{}" y2="{}" {style}/>"#, n(a[0]), n(a[1]), n(b[0]), n(b[1]));
    }
}

fn draw_raster(out: &mut String, v: &View, r: &AmoebaRaster, fill: &str) {
    let [cw, ch] = r.cell_size();
    let sx = cw / (v.w.x1 - v.w.x0) * v.px;
    let sy = ch / (v.w.y1 - v.w.y0) * v.px;
    let _ = writeln!(out, r#"<g fill="{fill}" stroke="none">"#);
    for j in 0..r.ny {
        let mut i = 0;
        while i < r.nx {
            if !r.is_member(i, j) {
                i += 1;
                continue;
            }
            let start = i;
            while i < r.nx && r.is_member(i, j) {
                i += 1;
            }
            let corner = v.map([r.window.x0 + start as f64 * cw, r.window.y0 + (j + 1) as f64 * ch]);
            let _ = writeln!(
                out,
                r#"<rect x="{}" y="{}" width="{}" height="{}"/>"#,
                n(corner[0]),
                n(corner[1]),
                n(sx * (i - start) as f64),
                n(sy)
            );
        }
    }
    out.push_str("</g>\n");
}

fn draw_segments(out: &mut String, v: &View, segs: &[Segment], stroke: &str) {
    for s in segs {
        let a = v.map(s.from);
        let b = v.map(s.to.unwrap_or_else(|| v.ray_end(s)));
        let _ = writeln!(
            out,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{stroke}" stroke-width="{}" stroke-linecap="round"/>"#,
            n(a[0]),
            n(a[1]),
            n(b[0]),
            n(b[1]),
            n(STROKE * s.weight.max(1) as f64)
        );
    }
}

fn draw_dual(out: &mut String, v: &View, sub: &RegularSubdivision) {
    let (lo, hi) = sub.parent.bounding_box();
    let span = ((hi[0] - lo[0]).max(hi[1] - lo[1])).max(1) as f64;
    let size = v.px * 0.25;
    let x0 = v.ox + v.px - size - 8.0;
    let y0 = v.oy + 8.0;
    let map = |p: [i64; 2]| [x0 + (p[0] - lo[0]) as f64 / span * size, y0 + size - (p[1] - lo[1]) as f64 / span * size];
    let _ = writeln!(out, r#"<g id="dual">"#);
    let _ = writeln!(
        out,
        r##"<rect x="{}" y="{}" width="{}" height="{}" fill="white" stroke="#cccccc" stroke-width="0.5"/>"##,
        n(x0 - 4.0),
        n(y0 - 4.0),
        n(size + 8.0),
        n(size + 8.0)
    );
    for e in &sub.edges {
        let a = map(e.a);
        let b = map(e.b);
        let _ = writeln!(out, r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black" stroke-width="0.75"/>"#, n(a[0]), n(a[1]), n(b[0]), n(b[1]));
    }
    for p in sub.parent.lattice_points() {
        let a = map(p);
        let _ = writeln!(out, r#"<circle cx="{}" cy="{}" r="1.5" fill="black"/>"#, n(a[0]), n(a[1]));
    }
    out.push_str("</g>\n");
}

pub fn write_svg(spec: &FigureSpec, path: &Path) -> Result<()> {
    std::fs::write(path, render_svg(spec))?;
    Ok(())
}

fn dir_f64(d: [i64; 2]) -> [f64; 2] {
    [d[0] as f64, d[1] as f64]
}

/// Edges, rays and full lines of a corner locus.
pub fn complex_segments(c: &TropicalComplex) -> Vec<Segment> {
    let mut out = Vec::new();
    for e in &c.edges {
        out.push(Segment {
            from: c.vertex_f64(e.ends.0),
            to: Some(c.vertex_f64(e.ends.1)),
            direction: dir_f64(e.direction),
            weight: e.weight,
        });
    }
    for r in &c.rays {
        out.push(Segment { from: c.vertex_f64(r.base), to: None, direction: dir_f64(r.direction), weight: r.weight });
    }
    for l in &c.lines {
        let p = [to_f64(&l.point[0]), to_f64(&l.point[1])];
        let d = dir_f64(l.direction);
        out.push(Segment { from: p, to: None, direction: d, weight: l.weight });
        out.push(Segment { from: p, to: None, direction: [-d[0], -d[1]], weight: l.weight });
    }
    out
}

/// Plane curves only; other dimensions give no segments.
pub fn curve_segments(c: &TropicalCurve) -> Vec<Segment> {
    if c.map.dim != 2 {
        return Vec::new();
    }
    let pos = |i: usize| [to_f64(&c.map.positions[i][0]), to_f64(&c.map.positions[i][1])];
    let mut out = Vec::new();
    for (k, e) in c.graph.edges.iter().enumerate() {
        let d = &c.map.edge_directions[k];
        out.push(Segment { from: pos(e.a), to: Some(pos(e.b)), direction: [d[0] as f64, d[1] as f64], weight: e.weight });
    }
    for (k, l) in c.graph.legs.iter().enumerate() {
        let d = &c.map.leg_directions[k];
        out.push(Segment { from: pos(l.vertex), to: None, direction: [d[0] as f64, d[1] as f64], weight: l.weight });
    }
    out
}

/// Square window around all vertices, padded by `pad` and at least `[-1,1]²`.
pub fn window_for_points(points: &[[f64; 2]], pad: f64) -> Window {
    let mut lo = [-1.0f64, -1.0];
    let mut hi = [1.0f64, 1.0];
    for p in points {
        for k in 0..2 {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    let half = ((hi[0] - lo[0]).max(hi[1] - lo[1])) / 2.0 + pad;
    let c = [(lo[0] + hi[0]) / 2.0, (lo[1] + hi[1]) / 2.0];
    Window { x0: c[0] - half, x1: c[0] + half, y0: c[1] - half, y1: c[1] + half }
}

pub fn complex_figure(c: &TropicalComplex, window: Window, with_dual: bool) -> FigureSpec {
    let mut layers = vec![Layer::Segments { segments: complex_segments(c), stroke: "black".into() }];
    if with_dual {
        if let Some(d) = &c.dual {
            layers.push(Layer::Dual(d.clone()));
        }
    }
    FigureSpec::single(Panel { window, title: None, layers })
}

/// Amoeba raster with an optional tropical overlay such as a spine.
pub fn amoeba_figure(raster: &AmoebaRaster, overlay: Option<&TropicalComplex>) -> FigureSpec {
    let mut layers = vec![Layer::Raster { raster: raster.clone(), fill: "#7aa6d6".into() }];
    if let Some(c) = overlay {
        layers.push(Layer::Segments { segments: complex_segments(c), stroke: "#b22222".into() });
    }
    FigureSpec::single(Panel { window: raster.window, title: None, layers })
}

/// One panel per quadrant `(R*)²_ε`, each showing the copies of cells present there.
pub fn patchwork_figure(set: &RealTropicalSet, window: Window) -> FigureSpec {
    let all = curve_segments(&set.curve.curve);
    let nedges = set.curve.curve.graph.edges.len();
    let panels = [[0u8, 1], [1, 1], [0, 0], [1, 0]]
        .into_iter()
        .map(|e| {
            let segments = set
                .in_quadrant(e)
                .map(|p| all[if p.is_leg { nedges + p.index } else { p.index }].clone())
                .collect();
            Panel {
                window,
                title: Some(format!("signs ({}, {})", if e[0] == 0 { '+' } else { '-' }, if e[1] == 0 { '+' } else { '-' })),
                layers: vec![Layer::Segments { segments, stroke: "black".into() }],
            }
        })
        .collect();
    FigureSpec { panels, columns: 2, panel_px: 320.0 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;
    use crate::hypersurface::corner_locus;
    use crate::tropical::TropicalPolynomial;

    fn line() -> TropicalComplex {
        let f = TropicalPolynomial::from_terms(2, [(vec![0, 0], q(0)), (vec![1, 0], q(0)), (vec![0, 1], q(0))]).unwrap();
        corner_locus(&f).unwrap()
    }

    #[test]
    fn line_has_three_rays() {
        let svg = render_svg(&complex_figure(&line(), Window::square(3.0), true));
        assert_eq!(svg.matches(r#"stroke="black" stroke-width="1.500""#).count(), 3);
        assert!(svg.contains(r#"id="dual""#));
        assert_eq!(svg, render_svg(&complex_figure(&line(), Window::square(3.0), true)));
    }

    #[test]
    fn empty_complex_draws_axes_only() {
        let svg = render_svg(&complex_figure(&TropicalComplex::default(), Window::square(2.0), false));
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
        assert_eq!(svg.matches("<line").count(), 2);
    }

    #[test]
    fn weight_scales_stroke() {
        let s = Segment { from: [0.0, 0.0], to: Some([1.0, 0.0]), direction: [1.0, 0.0], weight: 2 };
        let fig = FigureSpec::single(Panel {
            window: Window::square(2.0),
            title: Some("a<b".into()),
            layers: vec![Layer::Segments { segments: vec![s], stroke: "red".into() }],
        });
        let svg = render_svg(&fig);
        assert!(svg.contains(r#"stroke="red" stroke-width="3.000""#));
        assert!(svg.contains("a&lt;b"));
        // (1,0) in [-2,2]² maps to x = 24 + 3/4·480, y = 24 + 18 + 240 below the title
        assert!(svg.contains(r#"x2="384.000" y2="282.000""#));
    }
}
