use crate::tropical::TropicalPolynomial;
use crate::exact::to_f64;
use crate::{Error, Result};

/// Base `t > 1` of the semiring `x ⊕_t y = log_t(t^x + t^y)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DequantParameter {
    t: f64,
}

impl DequantParameter {
    pub fn new(t: f64) -> Result<Self> {
        if t.is_finite() && t > 1.0 {
            Ok(Self { t })
        } else {
            Err(Error::invalid(format!("dequantization base must exceed 1, got {t}")))
        }
    }

    /// Parameter from `h = 1 / ln t > 0`.
    pub fn from_h(h: f64) -> Result<Self> {
        if h.is_finite() && h > 0.0 {
            Self::new((1.0 / h).exp())
        } else {
            Err(Error::invalid(format!("h must be positive, got {h}")))
        }
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn h(&self) -> f64 {
        1.0 / self.t.ln()
    }
}

/// `log_t(t^x + t^y)`, evaluated as `max + log_t(1 + t^{-|x-y|})`.
pub fn deq_add(x: f64, y: f64, p: DequantParameter) -> f64 {
    let m = x.max(y);
    if m == f64::NEG_INFINITY {
        return m;
    }
    let ln_t = p.t.ln();
    let d = (x - y).abs();
    m + (-d * ln_t).exp().ln_1p() / ln_t
}

/// `(z^{1/h} + w^{1/h})^h` for `h > 0`, `max(z, w)` at `h = 0`.
pub fn maslov_add(z: f64, w: f64, h: f64) -> f64 {
    debug_assert!(z >= 0.0 && w >= 0.0 && h >= 0.0);
    let m = z.max(w);
    if h == 0.0 || m == 0.0 {
        return m;
    }
    let e = 1.0 / h;
    m * ((z / m).powf(e) + (w / m).powf(e)).powf(h)
}

/// `φ_t(x) = ⊕_t (a_j + <j, x>)` over the terms of `f`.
pub fn deq_eval(f: &TropicalPolynomial, x: &[f64], p: DequantParameter) -> f64 {
    let vals: Vec<f64> = f
        .terms()
        .iter()
        .map(|(e, c)| to_f64(c) + e.iter().zip(x).map(|(&j, &xi)| j as f64 * xi).sum::<f64>())
        .collect();
    let m = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if vals.len() == 1 {
        return m;
    }
    let ln_t = p.t.ln();
    let s: f64 = vals.iter().map(|v| ((v - m) * ln_t).exp()).sum();
    m + s.ln() / ln_t
}
