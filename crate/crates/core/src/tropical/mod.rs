//! Max-plus arithmetic, tropical polynomials, Legendre duality and the
//! dequantizing semirings `x ⊕_t y = log_t(t^x + t^y)`.

mod dequant;
mod legendre;
mod polynomial;
mod scalar;

pub use dequant::{deq_add, deq_eval, maslov_add, DequantParameter};
pub use legendre::{is_concave_lift, legendre_dual, legendre_of_lift, Lift};
pub use polynomial::{Evaluation, Exponent, TropicalPolynomial};
pub use scalar::{trop_add, trop_mul, TropicalScalar};
