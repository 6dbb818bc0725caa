use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::lattice::{newton_polygon, LatticePolygon, Point};
use crate::{Error, Result};

/// Finite sum `Σ a_(j,k) z^j w^k` with nonzero complex coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexLaurentPolynomial {
    terms: BTreeMap<Point, Complex64>,
}

fn powi(z: Complex64, e: i64) -> Complex64 {
    z.powi(e as i32)
}

impl ComplexLaurentPolynomial {
    /// Duplicate exponents are summed; terms summing to zero are dropped.
    pub fn new(terms: impl IntoIterator<Item = (Point, Complex64)>) -> Result<Self> {
        let mut map: BTreeMap<Point, Complex64> = BTreeMap::new();
        for (e, c) in terms {
            if !c.re.is_finite() || !c.im.is_finite() {
                return Err(Error::invalid("coefficients must be finite"));
            }
            *map.entry(e).or_default() += c;
        }
        map.retain(|_, c| *c != Complex64::new(0.0, 0.0));
        if map.is_empty() {
            return Err(Error::EmptySupport);
        }
        Ok(Self { terms: map })
    }

    pub fn from_real(terms: impl IntoIterator<Item = (Point, f64)>) -> Result<Self> {
        Self::new(terms.into_iter().map(|(e, c)| (e, Complex64::new(c, 0.0))))
    }

    pub fn terms(&self) -> &BTreeMap<Point, Complex64> {
        &self.terms
    }

    pub fn support(&self) -> Vec<Point> {
        self.terms.keys().copied().collect()
    }

    pub fn newton_polygon(&self) -> LatticePolygon {
        newton_polygon(&self.support()).expect("support is nonempty")
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Whether some pair of terms differs in coordinate `axis` (0 for z, 1 for w).
    pub fn depends_on(&self, axis: usize) -> bool {
        let mut it = self.terms.keys().map(|e| e[axis]);
        let first = it.next().expect("nonempty");
        it.any(|v| v != first)
    }

    /// `f(w, z)`: exponents swapped.
    pub fn swapped(&self) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| ([e[1], e[0]], *c)).collect() }
    }

    pub fn has_real_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.im == 0.0)
    }

    pub fn eval(&self, z: Complex64, w: Complex64) -> Complex64 {
        self.terms.iter().map(|(e, c)| c * powi(z, e[0]) * powi(w, e[1])).sum()
    }

    /// `(z ∂f/∂z, w ∂f/∂w)`.
    pub fn log_gradient(&self, z: Complex64, w: Complex64) -> (Complex64, Complex64) {
        let mut gz = Complex64::new(0.0, 0.0);
        let mut gw = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let m = c * powi(z, e[0]) * powi(w, e[1]);
            gz += m * e[0] as f64;
            gw += m * e[1] as f64;
        }
        (gz, gw)
    }

    /// Coefficients of `f(z, ·)` as a polynomial in `w` after factoring out
    /// `w^kmin`: returns `kmin` and `[c_kmin, ..., c_kmax]`.
    pub fn w_polynomial(&self, z: Complex64) -> (i64, Vec<Complex64>) {
        let kmin = self.terms.keys().map(|e| e[1]).min().expect("nonempty");
        let kmax = self.terms.keys().map(|e| e[1]).max().expect("nonempty");
        let mut c = vec![Complex64::new(0.0, 0.0); (kmax - kmin + 1) as usize];
        for (e, a) in &self.terms {
            c[(e[1] - kmin) as usize] += a * powi(z, e[0]);
        }
        (kmin, c)
    }

    /// Some term outweighs all others together on the torus over `x`, so
    /// `f` has no zero there and `x` is outside the amoeba.
    pub fn dominated_at(&self, x: [f64; 2]) -> bool {
        let logs: Vec<f64> =
            self.terms.iter().map(|(e, c)| c.norm().ln() + e[0] as f64 * x[0] + e[1] as f64 * x[1]).collect();
        let top = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let rest: f64 = logs.iter().map(|l| (l - top).exp()).sum::<f64>() - 1.0;
        rest < 1.0 - 1e-12
    }

    /// `Σ a_j t^(v_j)`-style rescaling of every coefficient.
    pub fn map_coefficients(&self, f: impl Fn(Point, Complex64) -> Complex64) -> Result<Self> {
        Self::new(self.terms.iter().map(|(e, c)| (*e, f(*e, *c))))
    }
}

fn fmt_coef(c: Complex64) -> String {
    if c.im == 0.0 {
        format!("{}", c.re)
    } else if c.re == 0.0 {
        format!("{}i", c.im)
    } else {
        format!("({}{:+}i)", c.re, c.im)
    }
}

impl fmt::Display for ComplexLaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut s = fmt_coef(*c);
                if e[0] != 0 {
                    s.push_str(&format!("*z^{}", e[0]));
                }
                if e[1] != 0 {
                    s.push_str(&format!("*w^{}", e[1]));
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
