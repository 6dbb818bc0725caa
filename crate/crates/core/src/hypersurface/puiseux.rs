use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::exact::to_f64;
use crate::lattice::newton_polygon;
use crate::tropical::{Exponent, TropicalPolynomial};
use crate::{Error, Result, Q};

/// Finite generalized Puiseux sum `Σ c_k t^{e_k}` with distinct rational
/// exponents stored in strictly decreasing order and nonzero coefficients.
///
/// The valuation is the largest exponent, so that `val(t^c) = c` agrees with
/// `log_t |t^c|` as `t → +∞`.
#[derive(Clone, Debug, PartialEq)]
pub struct PuiseuxLite {
    terms: Vec<(Complex64, Q)>,
}

impl PuiseuxLite {
    /// Merges equal exponents and drops vanishing coefficients.
    pub fn new(terms: impl IntoIterator<Item = (Complex64, Q)>) -> Self {
        let mut map: BTreeMap<Q, Complex64> = BTreeMap::new();
        for (c, e) in terms {
            *map.entry(e).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        let terms = map.into_iter().rev().filter(|(_, c)| c.norm() != 0.0).map(|(e, c)| (c, e)).collect();
        Self { terms }
    }

    pub fn monomial(c: Complex64, e: Q) -> Self {
        Self::new([(c, e)])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Complex64, Q)] {
        &self.terms
    }

    pub fn val(&self) -> Option<&Q> {
        self.terms.first().map(|(_, e)| e)
    }

    /// Numeric value at a concrete `t > 0`.
    pub fn eval(&self, t: f64) -> Complex64 {
        self.terms.iter().map(|(c, e)| c * t.powf(to_f64(e))).sum()
    }
}

/// Replace every coefficient by its valuation.
pub fn tropicalize(f: &BTreeMap<Exponent, PuiseuxLite>) -> Result<TropicalPolynomial> {
    let dim = f.keys().next().map(Vec::len).ok_or(Error::EmptySupport)?;
    let terms: Vec<(Exponent, Q)> = f
        .iter()
        .filter_map(|(e, s)| s.val().map(|v| (e.clone(), v.clone())))
        .collect();
    if terms.is_empty() {
        return Err(Error::invalid("zero polynomial"));
    }
    TropicalPolynomial::from_terms(dim, terms)
}

/// Non-smooth points of a one-variable tropical polynomial with their
/// multiplicities (horizontal lengths of the dual upper-hull edges), ascending.
pub fn univariate_trop_roots(f: &TropicalPolynomial) -> Result<Vec<(Q, i64)>> {
    if f.dim() != 1 {
        return Err(Error::DimensionMismatch { expected: 1, got: f.dim() });
    }
    let lift: BTreeMap<[i64; 2], Q> = f.terms().iter().map(|(e, c)| ([e[0], 0], c.clone())).collect();
    let pts: Vec<[i64; 2]> = lift.keys().copied().collect();
    newton_polygon(&pts)?;
    let chain = crate::lattice::segment_subdivision(&lift)?;
    if chain.len() < 2 {
        return Err(Error::Degenerate("a single term has no tropical roots".into()));
    }
    Ok(chain
        .windows(2)
        .map(|w| {
            let (j1, j2) = (w[0][0], w[1][0]);
            let x = (&lift[&w[0]] - &lift[&w[1]]) / Q::from_integer((j2 - j1).into());
            (x, j2 - j1)
        })
        .collect())
}
