use std::path::Path;

use tropica::amoeba::Window;
use tropica::enumeration::LambdaOrder;
use tropica::exact::parse_q;
use tropica::lattice::{LatticePolygon, Point};
use tropica::{Error, Result};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse { pos: 0, msg: msg.into() }
}

pub fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(Error::from)
}

/// Literal text, or the contents of FILE for `@FILE`.
pub fn text(arg: &str) -> Result<String> {
    match arg.strip_prefix('@') {
        Some(p) => read(Path::new(p)),
        None => Ok(arg.to_string()),
    }
}

fn floats(s: &str) -> Result<Vec<f64>> {
    s.split(',').map(|t| t.trim().parse::<f64>().map_err(|_| parse_err(format!("not a number: {t:?}")))).collect()
}

pub fn window(s: &str) -> Result<Window> {
    match floats(s)?.as_slice() {
        [r] if *r > 0.0 => Ok(Window::square(*r)),
        [x0, x1, y0, y1] => Window::new(*x0, *x1, *y0, *y1),
        _ => Err(parse_err(format!("window must be R or x0,x1,y0,y1: {s:?}"))),
    }
}

pub fn point(s: &str) -> Result<[f64; 2]> {
    match floats(s)?.as_slice() {
        [x, y] => Ok([*x, *y]),
        _ => Err(parse_err(format!("expected x,y: {s:?}"))),
    }
}

fn lattice_point(s: &str) -> Result<Point> {
    let v: Vec<i64> = s
        .split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| parse_err(format!("not an integer: {t:?}"))))
        .collect::<Result<_>>()?;
    match v.as_slice() {
        [a, b] => Ok([*a, *b]),
        _ => Err(parse_err(format!("expected i,j: {s:?}"))),
    }
}

pub fn polygon(degree: Option<i64>, vertices: Option<&str>) -> Result<LatticePolygon> {
    match (degree, vertices) {
        (Some(d), _) if d >= 1 => Ok(LatticePolygon::standard_triangle(d)),
        (Some(d), _) => Err(Error::Invalid(format!("degree must be positive, got {d}"))),
        (None, Some(v)) => {
            let pts: Vec<Point> = v.split(';').filter(|t| !t.trim().is_empty()).map(lattice_point).collect::<Result<_>>()?;
            LatticePolygon::from_vertices(&pts)
        }
        (None, None) => Err(parse_err("give --degree or --polygon")),
    }
}

pub fn lambda(s: Option<&str>) -> Result<LambdaOrder> {
    let Some(s) = s else { return Ok(LambdaOrder::default()) };
    let parts: Vec<&str> = s.split(',').collect();
    match parts.as_slice() {
        [eps] => Ok(LambdaOrder::tilted(parse_q(eps)?)),
        [a, b] => Ok(LambdaOrder::new(parse_q(a)?, parse_q(b)?)),
        _ => Err(parse_err(format!("lambda must be \"a,b\" or ε: {s:?}"))),
    }
}

/// `i,j:+;i,j:-` pairs; `true` stands for a positive sign.
pub fn sign_list(s: &str) -> Result<Vec<(Point, bool)>> {
    s.split(';')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let (p, sign) = t.rsplit_once(':').ok_or_else(|| parse_err(format!("expected i,j:±, got {t:?}")))?;
            let positive = match sign.trim() {
                "+" | "+1" | "1" => true,
                "-" | "-1" => false,
                other => return Err(parse_err(format!("bad sign {other:?}"))),
            };
            Ok((lattice_point(p)?, positive))
        })
        .collect()
}
