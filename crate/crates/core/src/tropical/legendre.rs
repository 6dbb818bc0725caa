//! Legendre duality between lifts `v: Δ ∩ Z^n → Q` and tropical polynomials.
//!
//! `F(x) = max_j <j, x> + v(j)` is the Legendre transform of `-v` extended by
//! `-∞`; transforming back yields the smallest concave function above `v`,
//! evaluated here at every lattice point of the Newton polytope by a small
//! exact linear program.

use std::collections::BTreeMap;

use crate::lattice::lp::{self, LpOutcome};
use crate::tropical::{Exponent, TropicalPolynomial};
use crate::{Error, Result, Q};

/// Finite lift of lattice points.
pub type Lift = BTreeMap<Exponent, Q>;

/// `F(x) = max_j <j, x> + v(j)`.
pub fn legendre_of_lift(v: &Lift) -> Result<TropicalPolynomial> {
    let dim = v.keys().next().ok_or(Error::EmptySupport)?.len();
    TropicalPolynomial::new(dim, v.clone())
}

/// Value of the concave envelope of the coefficient lift at `alpha`, or `None`
/// when `alpha` lies outside the Newton polytope.
pub(crate) fn envelope_at(f: &TropicalPolynomial, alpha: &[i64]) -> Option<Q> {
    let terms: Vec<(&Exponent, &Q)> = f.terms().iter().collect();
    let dim = f.dim();
    let mut a: Vec<Vec<Q>> = (0..dim)
        .map(|k| terms.iter().map(|(e, _)| Q::from_integer(e[k].into())).collect())
        .collect();
    a.push(vec![crate::exact::q(1); terms.len()]);
    let mut b: Vec<Q> = alpha.iter().map(|&x| Q::from_integer(x.into())).collect();
    b.push(crate::exact::q(1));
    let c: Vec<Q> = terms.iter().map(|(_, c)| (*c).clone()).collect();
    match lp::maximize(&a, &b, &c) {
        LpOutcome::Optimal { value, .. } => Some(value),
        LpOutcome::Infeasible => None,
        LpOutcome::Unbounded => unreachable!("convex combinations are bounded"),
    }
}

/// `c_α = min_x (F(x) - <α, x>)` for every lattice point `α` of the Newton polytope.
pub fn legendre_dual(f: &TropicalPolynomial) -> Lift {
    let dim = f.dim();
    let mut lo = vec![i64::MAX; dim];
    let mut hi = vec![i64::MIN; dim];
    for e in f.terms().keys() {
        for k in 0..dim {
            lo[k] = lo[k].min(e[k]);
            hi[k] = hi[k].max(e[k]);
        }
    }
    let mut out = Lift::new();
    let mut cur = lo.clone();
    loop {
        if let Some(v) = envelope_at(f, &cur) {
            out.insert(cur.clone(), v);
        }
        // odometer over the bounding box
        let mut k = 0;
        loop {
            if k == dim {
                return out;
            }
            if cur[k] < hi[k] {
                cur[k] += 1;
                break;
            }
            cur[k] = lo[k];
            k += 1;
        }
    }
}

/// True when every lifted point lies on the upper concave hull, i.e. the
/// double transform returns `v` unchanged on its support.
pub fn is_concave_lift(v: &Lift) -> Result<bool> {
    let f = legendre_of_lift(v)?;
    Ok(v.iter().all(|(e, c)| envelope_at(&f, e).as_ref() == Some(c)))
}
