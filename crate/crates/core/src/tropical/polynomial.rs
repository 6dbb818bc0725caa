use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::exact::{format_q, parse_q, q_from_f64, to_f64};
use crate::{Error, Result, Q};

pub type Exponent = Vec<i64>;

/// `F(x) = max_j (<j, x> + a_j)` with finitely many finite coefficients.
///
/// Absent exponents stand for the bottom element, so every stored
/// coefficient is a finite rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalPolynomial {
    dim: usize,
    terms: BTreeMap<Exponent, Q>,
}

/// Value of a tropical polynomial at a point together with the maximizing terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation {
    pub value: Q,
    pub argmax: Vec<Exponent>,
}

impl TropicalPolynomial {
    pub fn new(dim: usize, terms: BTreeMap<Exponent, Q>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("dimension must be at least 1"));
        }
        if terms.is_empty() {
            return Err(Error::EmptySupport);
        }
        if let Some(bad) = terms.keys().find(|e| e.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, got: bad.len() });
        }
        Ok(Self { dim, terms })
    }

    /// Build from `(exponent, coefficient)` pairs, keeping the larger
    /// coefficient on repeated exponents.
    pub fn from_terms<I>(dim: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponent, Q)>,
    {
        let mut map: BTreeMap<Exponent, Q> = BTreeMap::new();
        for (e, c) in terms {
            match map.get_mut(&e) {
                Some(old) if *old >= c => {}
                Some(old) => *old = c,
                None => {
                    map.insert(e, c);
                }
            }
        }
        Self::new(dim, map)
    }

    pub fn from_f64_terms<I>(dim: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponent, f64)>,
    {
        let terms: Result<Vec<_>> = terms.into_iter().map(|(e, c)| Ok((e, q_from_f64(c)?))).collect();
        Self::from_terms(dim, terms?)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, Q> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exp: &[i64]) -> Option<&Q> {
        self.terms.get(exp)
    }

    fn term_value(exp: &[i64], coef: &Q, x: &[Q]) -> Q {
        let mut v = coef.clone();
        for (j, xi) in exp.iter().zip(x) {
            if *j != 0 {
                v += xi * Q::from_integer((*j).into());
            }
        }
        v
    }

    /// Exact evaluation; `argmax` lists every term attaining the maximum.
    pub fn eval(&self, x: &[Q]) -> Result<Evaluation> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: x.len() });
        }
        let mut best: Option<Q> = None;
        let mut argmax = Vec::new();
        for (e, c) in &self.terms {
            let v = Self::term_value(e, c, x);
            match &best {
                Some(b) if v < *b => {}
                Some(b) if v == *b => argmax.push(e.clone()),
                _ => {
                    best = Some(v);
                    argmax.clear();
                    argmax.push(e.clone());
                }
            }
        }
        Ok(Evaluation { value: best.expect("nonempty support"), argmax })
    }

    /// Float adapter for the numeric modules.
    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| to_f64(c) + e.iter().zip(x).map(|(&j, &xi)| j as f64 * xi).sum::<f64>())
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&PolyFile::from(self)).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let file: PolyFile = serde_json::from_str(s)?;
        file.try_into()
    }

    /// Tropical product, i.e. the pointwise sum of the two convex functions.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: other.dim });
        }
        let mut out = Vec::with_capacity(self.len() * other.len());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.push((e, c1 + c2));
            }
        }
        Self::from_terms(self.dim, out)
    }

    /// True when every coefficient is zero.
    pub fn is_constant_coefficient(&self) -> bool {
        self.terms.values().all(Zero::is_zero)
    }
}

#[derive(Serialize, Deserialize)]
struct PolyFile {
    dim: usize,
    terms: Vec<TermFile>,
}

#[derive(Serialize, Deserialize)]
struct TermFile {
    exp: Vec<i64>,
    coef: String,
}

impl From<&TropicalPolynomial> for PolyFile {
    fn from(p: &TropicalPolynomial) -> Self {
        PolyFile {
            dim: p.dim,
            terms: p
                .terms
                .iter()
                .map(|(e, c)| TermFile { exp: e.clone(), coef: format_q(c) })
                .collect(),
        }
    }
}

impl TryFrom<PolyFile> for TropicalPolynomial {
    type Error = Error;

    fn try_from(f: PolyFile) -> Result<Self> {
        let terms: Result<Vec<_>> = f.terms.into_iter().map(|t| Ok((t.exp, parse_q(&t.coef)?))).collect();
        TropicalPolynomial::from_terms(f.dim, terms?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    pub(crate) fn line() -> TropicalPolynomial {
        TropicalPolynomial::from_terms(2, [(vec![0, 0], q(0)), (vec![1, 0], q(0)), (vec![0, 1], q(0))]).unwrap()
    }

    #[test]
    fn eval_examples() {
        let f = line();
        let e = f.eval(&[q(2), q(1)]).unwrap();
        assert_eq!(e.value, q(2));
        assert_eq!(e.argmax, vec![vec![1, 0]]);

        let e = f.eval(&[q(0), q(0)]).unwrap();
        assert_eq!(e.value, q(0));
        assert_eq!(e.argmax.len(), 3);

        let g = TropicalPolynomial::from_terms(1, [(vec![0], q(1)), (vec![2], q(1))]).unwrap();
        let e = g.eval(&[q(0)]).unwrap();
        assert_eq!(e.value, q(1));
        assert_eq!(e.argmax, vec![vec![0], vec![2]]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(TropicalPolynomial::new(2, BTreeMap::new()), Err(Error::EmptySupport)));
        assert!(TropicalPolynomial::from_terms(2, [(vec![1], q(0))]).is_err());
        assert!(line().eval(&[q(0)]).is_err());
    }

    #[test]
    fn json_format() {
        let f = TropicalPolynomial::from_terms(2, [(vec![0, 0], crate::exact::qf(-1, 2)), (vec![1, 0], q(3))]).unwrap();
        let s = f.to_json();
        assert_eq!(s, r#"{"dim":2,"terms":[{"exp":[0,0],"coef":"-1/2"},{"exp":[1,0],"coef":"3"}]}"#);
        assert_eq!(TropicalPolynomial::from_json(&s).unwrap(), f);
    }

    #[test]
    fn float_adapter_matches() {
        let f = line();
        assert_eq!(f.eval_f64(&[2.0, 1.0]), 2.0);
        assert_eq!(f.eval_f64(&[-1.0, -2.0]), 0.0);
    }
}
