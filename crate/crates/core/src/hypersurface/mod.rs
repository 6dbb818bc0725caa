//! Tropical hypersurfaces: corner loci, membership, balancing, and the
//! valuation bridge from Puiseux-type coefficients.

mod complex;
mod puiseux;

pub use complex::{
    balancing_check, corner_locus, duality_check, membership, membership_f64, BalancingReport, ComplexEdge,
    ComplexRay, DualityReport, FullLine, TropicalComplex,
};
pub use puiseux::{tropicalize, univariate_trop_roots, PuiseuxLite};
