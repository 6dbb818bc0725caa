use std::collections::BTreeMap;
use std::path::Path;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use tropica::amoeba::{
    area_estimate, complement_components, log_gauss_contour, ronkin_value, spine, spine_containment,
    AmoebaOptions, ComplexLaurentPolynomial, DequantTerm, dequant_distance,
};
use tropica::curves::{degree, expected_dim, is_superabundant, local_deformation_dim, supercubic, TropicalCurve};
use tropica::enumeration::{count_n, count_n_irr};
use tropica::hypersurface::{balancing_check, corner_locus, duality_check, TropicalComplex};
use tropica::lattice::Point;
use tropica::patchwork::{
    build_real_set, check_compatibility, count_components, signs_from_lattice, SignedCurve,
};
use tropica::report::{emit_results, num, point, rational, RunRecord};
use tropica::svg::{amoeba_figure, complex_figure, patchwork_figure, window_for_points, write_svg, FigureSpec};
use tropica::text::{format_tropical, parse_complex, parse_tropical};
use tropica::tropical::TropicalPolynomial;
use tropica::{Error, Result};

use crate::input;
use crate::{Command, Grid, Output};

fn finish(record: RunRecord, out: &Output, figure: Option<FigureSpec>) -> Result<()> {
    print!("{}", record.to_json());
    if let Some(p) = &out.json {
        emit_results(&record, p)?;
    }
    if let (Some(p), Some(fig)) = (&out.svg, figure) {
        write_svg(&fig, p)?;
    }
    Ok(())
}

pub fn run(cmd: Command) -> Result<()> {
    match cmd {
        Command::Trop { poly, dual, out } => trop(&poly, dual, &out),
        Command::Count { degree, polygon, genus, irr, lambda, no_paths, out } => {
            count(degree, polygon.as_deref(), genus, irr, lambda.as_deref(), no_paths, &out)
        }
        Command::Amoeba { poly, grid, area, contour, ronkin, out } => amoeba(&poly, &grid, area, contour, &ronkin, &out),
        Command::Spine { poly, grid, out } => spine_cmd(&poly, &grid, &out),
        Command::Dequant { poly, t, window, pitch, angles, out } => dequant(&poly, &t, &window, pitch, angles, &out),
        Command::Patchwork { poly, signs, curve, out } => patchwork(poly.as_deref(), &signs, curve.as_deref(), &out),
        Command::Curve { file, supercubic, out } => curve(file.as_deref(), supercubic, &out),
    }
}

fn tropical(arg: &str) -> Result<TropicalPolynomial> {
    parse_tropical(&input::text(arg)?, Some(2))
}

fn complex(arg: &str) -> Result<ComplexLaurentPolynomial> {
    parse_complex(&input::text(arg)?)
}

fn complex_window(c: &TropicalComplex) -> tropica::amoeba::Window {
    let pts: Vec<[f64; 2]> = (0..c.vertices.len()).map(|i| c.vertex_f64(i)).collect();
    window_for_points(&pts, 1.0)
}

fn trop(poly: &str, dual: bool, out: &Output) -> Result<()> {
    let f = tropical(poly)?;
    let c = corner_locus(&f)?;
    let mut r = RunRecord::new("trop", out.seed).config("polynomial", format_tropical(&f));
    r.set("complex", serde_json::from_str::<Value>(&c.to_json())?);
    r.set("balanced", balancing_check(&c).passed());
    r.set("dual_consistent", duality_check(&c).passed());
    r.set("cycle_rank", c.cycle_rank());
    if let Some(d) = &c.dual {
        r.set("unimodular", d.is_unimodular());
    }
    let fig = complex_figure(&c, complex_window(&c), dual);
    finish(r, out, Some(fig))
}

fn count(
    deg: Option<i64>,
    polygon: Option<&str>,
    genus: i64,
    irr: bool,
    lambda: Option<&str>,
    no_paths: bool,
    out: &Output,
) -> Result<()> {
    let delta = input::polygon(deg, polygon)?;
    let lam = input::lambda(lambda)?;
    let res = count_n(genus, &delta, &lam)?;
    let mut r = RunRecord::new("count", out.seed)
        .config("polygon", json!(delta.vertices()))
        .config("genus", genus)
        .config("lambda", res.lambda.clone());
    r.set("N", res.n);
    r.set("paths_examined", res.paths_examined);
    if !no_paths {
        let paths: Vec<Value> = res
            .paths
            .iter()
            .map(|p| json!({ "points": p.points, "mu_plus": p.mu_plus, "mu_minus": p.mu_minus, "mu": p.mu_plus * p.mu_minus }))
            .collect();
        r.set("paths", paths);
    }
    if irr {
        let c = count_n_irr(genus, &delta, &lam)?;
        r.set("N_irr", c.n_irr);
        r.set("reducible", c.reducible);
    }
    finish(r, out, None)
}

fn amoeba(poly: &str, grid: &Grid, area: Option<usize>, contour: bool, ronkin: &[String], out: &Output) -> Result<()> {
    let f = complex(poly)?;
    let window = input::window(&grid.window)?;
    let opts = AmoebaOptions { resolution: grid.resolution, angles: grid.angles, ronkin_nodes: grid.nodes, seed: out.seed };
    let rep = complement_components(&f, window, &opts)?;
    let mut r = RunRecord::new("amoeba", out.seed)
        .config("polynomial", f.to_string())
        .config("window", json!([num(window.x0), num(window.x1), num(window.y0), num(window.y1)]))
        .config("resolution", grid.resolution)
        .config("angles", grid.angles)
        .config("nodes", grid.nodes);
    let comps: Vec<Value> = rep
        .components
        .iter()
        .map(|c| {
            json!({
                "index": c.index,
                "cells": c.cells,
                "point": point(c.point),
                "gradient": point(c.gradient),
                "touches_window": c.touches_window,
            })
        })
        .collect();
    r.set("components", comps);
    r.set("member_cells", rep.raster.member_count());
    r.set("indeterminate", rep.indeterminate());
    if let Some(samples) = area {
        let a = area_estimate(&f, window, samples, out.seed, grid.angles)?;
        r.set(
            "area",
            json!({ "value": num(a.area), "sigma": num(a.sigma), "samples": a.samples, "hits": a.hits,
                    "bound": num(a.bound), "diagnostic": a.diagnostic }),
        );
    }
    if contour {
        let c = log_gauss_contour(&f, window, grid.resolution, grid.angles)?;
        r.set("contour_points", c.points.len());
        r.set("contour_warnings", c.warnings);
    }
    if !ronkin.is_empty() {
        let vals = ronkin
            .iter()
            .map(|s| {
                let x = input::point(s)?;
                let v = ronkin_value(&f, x, grid.nodes, out.seed)?;
                Ok(json!({ "x": point(x), "value": num(v.value), "error_estimate": num(v.error_estimate) }))
            })
            .collect::<Result<Vec<Value>>>()?;
        r.set("ronkin", vals);
    }
    let fig = amoeba_figure(&rep.raster, None);
    finish(r, out, Some(fig))
}

fn spine_cmd(poly: &str, grid: &Grid, out: &Output) -> Result<()> {
    let f = complex(poly)?;
    let window = input::window(&grid.window)?;
    let opts = AmoebaOptions { resolution: grid.resolution, angles: grid.angles, ronkin_nodes: grid.nodes, seed: out.seed };
    let rep = complement_components(&f, window, &opts)?;
    let s = spine(&f, &rep, grid.nodes, out.seed)?;
    let mut r = RunRecord::new("spine", out.seed)
        .config("polynomial", f.to_string())
        .config("window", json!([num(window.x0), num(window.x1), num(window.y0), num(window.y1)]))
        .config("resolution", grid.resolution)
        .config("nodes", grid.nodes);
    r.set("empty", s.empty);
    if !s.empty {
        r.set("spine", format_tropical(&s.polynomial));
        let terms: Vec<Value> = s
            .terms
            .iter()
            .map(|t| json!({ "index": t.index, "coefficient": num(t.coefficient), "residual": num(t.residual) }))
            .collect();
        r.set("terms", terms);
        let exact: BTreeMap<String, Value> =
            s.polynomial.terms().iter().map(|(e, c)| (format!("{e:?}"), rational(c))).collect();
        r.set("exact", json!(exact));
        let cont = spine_containment(&s, &rep.raster);
        r.set("containment", json!({ "checked": cont.checked, "outside": cont.outside.len(), "passed": cont.passed() }));
    }
    let overlay = (!s.empty).then_some(&s.complex);
    finish(r, out, Some(amoeba_figure(&rep.raster, overlay)))
}

fn dequant(poly: &str, ts: &[f64], window: &str, pitch: f64, angles: usize, out: &Output) -> Result<()> {
    let f = tropical(poly)?;
    let window = input::window(window)?;
    let terms: Vec<DequantTerm> = f
        .terms()
        .iter()
        .map(|(e, v)| DequantTerm { exponent: [e[0], e[1]], phase: Complex64::new(1.0, 0.0), valuation: v.clone() })
        .collect();
    let mut r = RunRecord::new("dequant", out.seed)
        .config("polynomial", format_tropical(&f))
        .config("window", json!([num(window.x0), num(window.x1), num(window.y0), num(window.y1)]))
        .config("pitch", num(pitch))
        .config("angles", angles);
    let rows = ts
        .iter()
        .map(|&t| {
            let d = dequant_distance(&terms, t, window, pitch, angles)?;
            Ok(json!({ "t": num(d.t), "distance": num(d.distance), "scale": num(d.scale),
                       "amoeba_points": d.amoeba_points, "limit_points": d.limit_points }))
        })
        .collect::<Result<Vec<Value>>>()?;
    r.set("distances", rows);
    let c = corner_locus(&f)?;
    finish(r, out, Some(complex_figure(&c, window, false)))
}

fn lattice_signs(f: &TropicalPolynomial, spec: &str, seed: u64) -> Result<BTreeMap<Point, bool>> {
    let pts: Vec<Point> = f.terms().keys().map(|e| [e[0], e[1]]).collect();
    match spec {
        // negative exactly at points with both coordinates even
        "harnack" => Ok(pts.into_iter().map(|p| (p, p[0] % 2 == 0 && p[1] % 2 == 0)).collect()),
        "random" => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Ok(pts.into_iter().map(|p| (p, rng.random_bool(0.5))).collect())
        }
        list => {
            let mut m: BTreeMap<Point, bool> = pts.into_iter().map(|p| (p, false)).collect();
            for (p, positive) in input::sign_list(list)? {
                if !m.contains_key(&p) {
                    return Err(Error::Invalid(format!("{p:?} is not in the support")));
                }
                m.insert(p, !positive);
            }
            Ok(m)
        }
    }
}

fn patchwork(poly: Option<&str>, signs: &str, curve: Option<&Path>, out: &Output) -> Result<()> {
    let mut r = RunRecord::new("patchwork", out.seed);
    let signed = match (poly, curve) {
        (_, Some(cpath)) => {
            let c = TropicalCurve::from_json(&input::read(cpath)?)?;
            if matches!(signs, "harnack" | "random") {
                return Err(Error::Invalid("--curve needs --signs FILE".into()));
            }
            r.config.insert("curve".into(), json!(cpath.display().to_string()));
            r.config.insert("signs".into(), json!(signs));
            SignedCurve::with_sign_json(c, &input::read(Path::new(signs))?)?
        }
        (Some(p), None) => {
            let f = tropical(p)?;
            let c = corner_locus(&f)?;
            let s = lattice_signs(&f, signs, out.seed)?;
            r.config.insert("polynomial".into(), json!(format_tropical(&f)));
            r.config.insert("signs".into(), json!(signs));
            let listed: Vec<Value> = s.iter().map(|(p, neg)| json!({ "point": p, "sign": if *neg { "-" } else { "+" } })).collect();
            r.set("lattice_signs", listed);
            signs_from_lattice(&c, &s)?
        }
        (None, None) => return Err(Error::Parse { pos: 0, msg: "give a polynomial or --curve".into() }),
    };
    let check = check_compatibility(&signed);
    let failing: Vec<Value> = check
        .vertices
        .iter()
        .filter(|v| !v.passed)
        .map(|v| json!({ "vertex": v.vertex, "offending": v.offending }))
        .collect();
    r.set("compatible", check.passed());
    r.set("incompatible_vertices", failing);
    if !check.passed() {
        print!("{}", r.to_json());
        return Err(Error::Invalid("sign classes are not compatible".into()));
    }
    let set = build_real_set(&signed)?;
    let n = count_components(&set);
    r.set("components", n.components);
    r.set("harnack_bound", n.harnack_bound);
    r.set("within_bound", n.within_bound());
    r.set("approximate", n.approximate);
    r.set("sign_classes", serde_json::from_str::<Value>(&signed.sign_json())?);
    let pts: Vec<[f64; 2]> = signed
        .curve
        .map
        .positions
        .iter()
        .map(|p| [tropica::exact::to_f64(&p[0]), tropica::exact::to_f64(&p[1])])
        .collect();
    let fig = patchwork_figure(&set, window_for_points(&pts, 1.0));
    finish(r, out, Some(fig))
}

fn curve(file: Option<&Path>, builtin: bool, out: &Output) -> Result<()> {
    let c = if builtin { supercubic() } else {
        let p = file.ok_or_else(|| Error::Parse { pos: 0, msg: "give a curve file".into() })?;
        TropicalCurve::from_json(&input::read(p)?)?
    };
    let mut r = RunRecord::new("curve", out.seed).config("source", match file {
        Some(p) if !builtin => p.display().to_string(),
        _ => "supercubic".into(),
    });
    let report = c.validate();
    r.set("valid", report.is_valid());
    r.set("dim", c.map.dim);
    r.set("genus", c.genus());
    r.set("ends", c.num_ends());
    r.set("degree", json!(degree(&c.graph, &c.map)?.0));
    let simple = c.is_simple();
    r.set("simple", simple);
    let x = c.num_ends() as i64;
    r.set("expected_dim", expected_dim(x, c.genus(), c.map.dim as i64));
    if simple {
        r.set("multiplicity", c.multiplicity()?);
        r.set("deformation_dim", local_deformation_dim(&c.graph, &c.map)?);
        r.set("superabundant", is_superabundant(&c.graph, &c.map)?);
    }
    let fig = (c.map.dim == 2).then(|| {
        let pts: Vec<[f64; 2]> =
            c.map.positions.iter().map(|p| [tropica::exact::to_f64(&p[0]), tropica::exact::to_f64(&p[1])]).collect();
        FigureSpec::single(tropica::svg::Panel {
            window: window_for_points(&pts, 1.0),
            title: None,
            layers: vec![tropica::svg::Layer::Segments { segments: tropica::svg::curve_segments(&c), stroke: "black".into() }],
        })
    });
    finish(r, out, fig)
}
