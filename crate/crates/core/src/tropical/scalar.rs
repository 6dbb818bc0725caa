use std::cmp::Ordering;
use std::fmt;

use crate::Q;

/// Element of the max-plus semifield: a rational or the bottom element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TropicalScalar {
    NegInf,
    Finite(Q),
}

impl TropicalScalar {
    pub fn zero() -> Self {
        TropicalScalar::NegInf
    }

    pub fn one() -> Self {
        TropicalScalar::Finite(crate::exact::q(0))
    }

    pub fn finite(&self) -> Option<&Q> {
        match self {
            TropicalScalar::NegInf => None,
            TropicalScalar::Finite(v) => Some(v),
        }
    }
}

impl From<Q> for TropicalScalar {
    fn from(v: Q) -> Self {
        TropicalScalar::Finite(v)
    }
}

impl PartialOrd for TropicalScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TropicalScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        use TropicalScalar::*;
        match (self, other) {
            (NegInf, NegInf) => Ordering::Equal,
            (NegInf, Finite(_)) => Ordering::Less,
            (Finite(_), NegInf) => Ordering::Greater,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for TropicalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TropicalScalar::NegInf => write!(f, "-inf"),
            TropicalScalar::Finite(v) => write!(f, "{}", crate::exact::format_q(v)),
        }
    }
}

/// Tropical sum: the maximum.
pub fn trop_add(x: &TropicalScalar, y: &TropicalScalar) -> TropicalScalar {
    if x >= y {
        x.clone()
    } else {
        y.clone()
    }
}

/// Tropical product: the ordinary sum, with `NegInf` absorbing.
pub fn trop_mul(x: &TropicalScalar, y: &TropicalScalar) -> TropicalScalar {
    match (x, y) {
        (TropicalScalar::Finite(a), TropicalScalar::Finite(b)) => TropicalScalar::Finite(a + b),
        _ => TropicalScalar::NegInf,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    fn f(v: i64) -> TropicalScalar {
        TropicalScalar::Finite(q(v))
    }

    #[test]
    fn add_examples() {
        assert_eq!(trop_add(&f(3), &f(5)), f(5));
        assert_eq!(trop_add(&TropicalScalar::NegInf, &f(7)), f(7));
        assert_eq!(trop_add(&f(2), &f(2)), f(2));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(trop_mul(&f(3), &f(5)), f(8));
        assert_eq!(trop_mul(&TropicalScalar::one(), &f(-4)), f(-4));
        assert_eq!(trop_mul(&TropicalScalar::NegInf, &f(5)), TropicalScalar::NegInf);
    }
}
