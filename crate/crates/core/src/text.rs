//! Text forms of polynomials.
//!
//! Complex Laurent polynomials are written as sums of terms such as
//! `2*z^-1*w^3`, `(1+2i)*z*w` or `0.5i*w`; products may be implicit and
//! parenthesised subexpressions are expanded. Tropical polynomials are
//! written `max(a + j x + k y, ...)` with rational constants and integer
//! slopes; variables are `x`, `y`, `z` or `x1`, `x2`, ....

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_complex::Complex64;
use num_traits::Zero;

use crate::amoeba::ComplexLaurentPolynomial;
use crate::exact::{format_q, parse_q, to_f64};
use crate::lattice::Point;
use crate::tropical::{Exponent, TropicalPolynomial};
use crate::{Error, Result, Q};

#[derive(Clone, Debug, PartialEq)]
pub enum Polynomial {
    Complex(ComplexLaurentPolynomial),
    Tropical(TropicalPolynomial),
}

/// Tropical if the text starts with `max(`, complex otherwise.
pub fn parse_polynomial(text: &str) -> Result<Polynomial> {
    if text.trim_start().starts_with("max") {
        parse_tropical(text, None).map(Polynomial::Tropical)
    } else {
        parse_complex(text).map(Polynomial::Complex)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Sym(char),
}

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let b = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i];
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == b'.' {
            let start = i;
            while i < b.len() && (b[i].is_ascii_digit() || b[i] == b'.') {
                i += 1;
            }
            // scientific suffix, only when digits follow
            if i < b.len() && (b[i] == b'e' || b[i] == b'E') {
                let mut j = i + 1;
                if j < b.len() && (b[j] == b'+' || b[j] == b'-') {
                    j += 1;
                }
                if j < b.len() && b[j].is_ascii_digit() {
                    i = j;
                    while i < b.len() && b[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            out.push((Tok::Num(text[start..i].to_string()), start));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            i += 1;
            if text[start..].starts_with("max") {
                i = start + 3;
            } else {
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
            }
            out.push((Tok::Ident(text[start..i].to_string()), start));
        } else if b"+-*/^(),".contains(&c) {
            out.push((Tok::Sym(c as char), i));
            i += 1;
        } else {
            let ch = text[i..].chars().next().unwrap_or('?');
            return Err(err(i, format!("unexpected character {ch:?}")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self> {
        Ok(Self { toks: lex(text)?, at: 0, end: text.len() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.0)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.1)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(err(self.pos(), format!("expected '{c}'")))
        }
    }

    fn finish(&self) -> Result<()> {
        if self.at < self.toks.len() {
            return Err(err(self.pos(), "unexpected trailing input"));
        }
        Ok(())
    }

    /// Number literal with an optional `/denominator`, as an exact rational.
    fn rational(&mut self) -> Result<Q> {
        let pos = self.pos();
        let Some(Tok::Num(s)) = self.peek().cloned() else {
            return Err(err(pos, "expected a number"));
        };
        self.at += 1;
        let mut v = parse_literal(&s).map_err(|_| err(pos, format!("bad number {s:?}")))?;
        if self.peek() == Some(&Tok::Sym('/')) {
            if let Some((Tok::Num(d), dpos)) = self.toks.get(self.at + 1).cloned() {
                self.at += 2;
                let d = parse_literal(&d).map_err(|_| err(dpos, format!("bad number {d:?}")))?;
                if d.is_zero() {
                    return Err(err(dpos, "division by zero"));
                }
                v /= d;
            }
        }
        Ok(v)
    }

    fn signed_int(&mut self) -> Result<i64> {
        let neg = self.eat('-');
        if !neg {
            self.eat('+');
        }
        let paren = self.eat('(');
        let pos = self.pos();
        let v = if paren { self.signed_int()? } else {
            let Some(Tok::Num(s)) = self.peek().cloned() else {
                return Err(err(pos, "expected an integer exponent"));
            };
            self.at += 1;
            s.parse::<i64>().map_err(|_| err(pos, format!("exponent {s:?} is not an integer")))?
        };
        if paren {
            self.expect(')')?;
        }
        Ok(if neg { -v } else { v })
    }
}

fn parse_literal(s: &str) -> Result<Q> {
    if let Some(k) = s.find(['e', 'E']) {
        let mantissa = parse_q(&s[..k])?;
        let exp: i32 = s[k + 1..].parse().map_err(|_| err(0, "bad exponent"))?;
        let ten = Q::from_integer(10.into());
        let scale = num_traits::pow(ten, exp.unsigned_abs() as usize);
        return Ok(if exp < 0 { mantissa / scale } else { mantissa * scale });
    }
    parse_q(s)
}

/// Exact literal as a float; decimal strings use the correctly rounded
/// standard parser so printed coefficients read back unchanged.
fn literal_f64(s: &str, exact: &Q) -> f64 {
    s.parse::<f64>().unwrap_or_else(|_| to_f64(exact))
}

type Sparse = BTreeMap<Point, Complex64>;

fn constant(c: Complex64) -> Sparse {
    BTreeMap::from([([0, 0], c)])
}

fn add_into(acc: &mut Sparse, other: Sparse, sign: f64) {
    for (e, c) in other {
        *acc.entry(e).or_default() += c * sign;
    }
}

fn mul(a: &Sparse, b: &Sparse) -> Sparse {
    let mut out = Sparse::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            *out.entry([ea[0] + eb[0], ea[1] + eb[1]]).or_default() += ca * cb;
        }
    }
    out
}

impl Parser {
    fn sum(&mut self) -> Result<Sparse> {
        let mut acc = Sparse::new();
        let mut sign = 1.0;
        loop {
            loop {
                if self.eat('-') {
                    sign = -sign;
                } else if !self.eat('+') {
                    break;
                }
            }
            let t = self.product()?;
            add_into(&mut acc, t, sign);
            if self.eat('+') {
                sign = 1.0;
            } else if self.eat('-') {
                sign = -1.0;
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(Tok::Num(_) | Tok::Ident(_) | Tok::Sym('(')))
    }

    fn product(&mut self) -> Result<Sparse> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                let f = self.power()?;
                acc = mul(&acc, &f);
            } else if self.eat('/') {
                let pos = self.pos();
                let f = self.power()?;
                acc = divide(&acc, &f).ok_or_else(|| err(pos, "can only divide by a single term"))?;
            } else if self.starts_factor() {
                let f = self.power()?;
                acc = mul(&acc, &f);
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<Sparse> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let pos = self.pos();
        let e = self.signed_int()?;
        if e >= 0 {
            let mut out = constant(Complex64::new(1.0, 0.0));
            for _ in 0..e {
                out = mul(&out, &base);
            }
            return Ok(out);
        }
        let inv = divide(&constant(Complex64::new(1.0, 0.0)), &base)
            .ok_or_else(|| err(pos, "negative powers need a single term"))?;
        let mut out = constant(Complex64::new(1.0, 0.0));
        for _ in 0..-e {
            out = mul(&out, &inv);
        }
        Ok(out)
    }

    fn atom(&mut self) -> Result<Sparse> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Num(s)) => {
                let fraction = self.toks.get(self.at + 1).map(|t| &t.0) == Some(&Tok::Sym('/'))
                    && matches!(self.toks.get(self.at + 2).map(|t| &t.0), Some(Tok::Num(_)));
                let exact = self.rational()?;
                let v = if fraction { to_f64(&exact) } else { literal_f64(&s, &exact) };
                Ok(constant(Complex64::new(v, 0.0)))
            }
            Some(Tok::Ident(id)) => {
                self.at += 1;
                match id.as_str() {
                    "z" => Ok(BTreeMap::from([([1, 0], Complex64::new(1.0, 0.0))])),
                    "w" => Ok(BTreeMap::from([([0, 1], Complex64::new(1.0, 0.0))])),
                    "i" => Ok(constant(Complex64::new(0.0, 1.0))),
                    _ => Err(err(pos, format!("unknown variable {id:?}, expected z or w"))),
                }
            }
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let inner = self.sum()?;
                self.expect(')')?;
                Ok(inner)
            }
            _ => Err(err(pos, "expected a term")),
        }
    }
}

fn divide(a: &Sparse, b: &Sparse) -> Option<Sparse> {
    let nonzero: Vec<_> = b.iter().filter(|(_, c)| !c.is_zero()).collect();
    let [(e, c)] = nonzero.as_slice() else { return None };
    Some(a.iter().map(|(ea, ca)| ([ea[0] - e[0], ea[1] - e[1]], ca / *c)).collect())
}

/// Parse a complex Laurent polynomial in `z`, `w`.
pub fn parse_complex(text: &str) -> Result<ComplexLaurentPolynomial> {
    let mut p = Parser::new(text)?;
    if p.toks.is_empty() {
        return Err(err(0, "empty input"));
    }
    let s = p.sum()?;
    p.finish()?;
    ComplexLaurentPolynomial::new(s).map_err(|e| match e {
        Error::EmptySupport => err(0, "zero polynomial"),
        other => other,
    })
}

fn var_index(id: &str) -> Option<usize> {
    match id {
        "x" => Some(0),
        "y" => Some(1),
        "z" => Some(2),
        _ => {
            let n: usize = id.strip_prefix('x')?.parse().ok()?;
            n.checked_sub(1)
        }
    }
}

impl Parser {
    /// `a + j x + k y`: a rational constant plus integer multiples of variables.
    fn affine(&mut self) -> Result<(Q, BTreeMap<usize, i64>)> {
        let mut c = Q::zero();
        let mut slopes: BTreeMap<usize, i64> = BTreeMap::new();
        let mut neg = self.eat('-');
        if !neg {
            self.eat('+');
        }
        loop {
            let pos = self.pos();
            let mut k = Q::from_integer(1.into());
            let mut has_num = false;
            if matches!(self.peek(), Some(Tok::Num(_))) {
                k = self.rational()?;
                has_num = true;
                self.eat('*');
            }
            let var = match self.peek().cloned() {
                Some(Tok::Ident(id)) => {
                    let v = var_index(&id).ok_or_else(|| err(self.pos(), format!("unknown variable {id:?}")))?;
                    self.at += 1;
                    Some(v)
                }
                _ if has_num => None,
                _ => return Err(err(pos, "expected a number or a variable")),
            };
            if neg {
                k = -k;
            }
            match var {
                Some(v) => {
                    if !k.is_integer() {
                        return Err(err(pos, "slopes must be integers"));
                    }
                    let k: i64 = k.to_integer().try_into().map_err(|_| err(pos, "slope too large"))?;
                    *slopes.entry(v).or_default() += k;
                }
                None => c += k,
            }
            if self.eat('+') {
                neg = false;
            } else if self.eat('-') {
                neg = true;
            } else {
                return Ok((c, slopes));
            }
        }
    }
}

/// Parse `max(...)` of affine terms. Without `dim` the dimension is the
/// largest variable index used, at least 2.
pub fn parse_tropical(text: &str, dim: Option<usize>) -> Result<TropicalPolynomial> {
    let mut p = Parser::new(text)?;
    let mut affine = Vec::new();
    if p.peek() == Some(&Tok::Ident("max".into())) {
        p.at += 1;
        p.expect('(')?;
        loop {
            affine.push(p.affine()?);
            if !p.eat(',') {
                break;
            }
        }
        p.expect(')')?;
    } else {
        affine.push(p.affine()?);
    }
    p.finish()?;
    let used = affine.iter().flat_map(|(_, s)| s.keys().copied()).max().map_or(0, |m| m + 1);
    let dim = match dim {
        Some(d) if d < used => return Err(Error::DimensionMismatch { expected: d, got: used }),
        Some(d) => d,
        None => used.max(2),
    };
    let terms = affine.into_iter().map(|(c, s)| {
        let mut e: Exponent = vec![0; dim];
        for (v, k) in s {
            e[v] = k;
        }
        (e, c)
    });
    TropicalPolynomial::from_terms(dim, terms)
}

fn var_name(i: usize, dim: usize) -> String {
    if dim <= 3 {
        ["x", "y", "z"][i].to_string()
    } else {
        format!("x{}", i + 1)
    }
}

/// Inverse of [`parse_tropical`].
pub fn format_tropical(f: &TropicalPolynomial) -> String {
    let terms: Vec<String> = f
        .terms()
        .iter()
        .map(|(e, c)| {
            let mut s = if c.is_zero() && e.iter().any(|&k| k != 0) { String::new() } else { format_q(c) };
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let mag = k.unsigned_abs();
                let name = var_name(i, f.dim());
                let body = if mag == 1 { name } else { format!("{mag}{name}") };
                match (s.is_empty(), k < 0) {
                    (true, false) => s.push_str(&body),
                    (true, true) => s = format!("-{body}"),
                    (false, neg) => {
                        let _ = write!(s, " {} {body}", if neg { '-' } else { '+' });
                    }
                }
            }
            s
        })
        .collect();
    format!("max({})", terms.join(", "))
}

/// Inverse of [`parse_complex`]; coefficients print in shortest
/// round-trip form.
pub fn format_complex(f: &ComplexLaurentPolynomial) -> String {
    f.to_string()
}

/// Printed form of either kind.
pub fn format_polynomial(p: &Polynomial) -> String {
    match p {
        Polynomial::Complex(f) => format_complex(f),
        Polynomial::Tropical(f) => format_tropical(f),
    }
}
