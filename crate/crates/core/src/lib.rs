//! Tropical geometry and amoeba toolkit.
//!
//! The crate is organised bottom-up:
//!
//! * [`tropical`] max-plus scalars, tropical polynomials, Legendre duality and
//!   the dequantization semirings.
//! * [`lattice`] exact lattice polygons, lattice lengths and point counts,
//!   mixed areas and regular subdivisions induced by lifts.
//! * [`hypersurface`] corner loci of tropical polynomials as weighted
//!   complexes dual to the Newton subdivision, plus valuations of
//!   Puiseux-type coefficients.
//! * [`curves`] parameterized tropical curves: balancing, degree, genus,
//!   multiplicities and deformation dimension.
//! * [`enumeration`] lattice-path counts of plane curves through generic
//!   points, with a Kontsevich recursion oracle.
//! * [`amoeba`] numerics for amoebas of complex plane curves.
//! * [`patchwork`] real tropical curves with signs and their components.
//! * [`text`], [`svg`] and [`report`] parsing and output used by the CLI.
//!
//! Heavy loops go through [`par`], which uses rayon when the `parallel`
//! feature is enabled and plain iterators otherwise.

pub mod amoeba;
pub mod curves;
pub mod enumeration;
mod error;
pub mod exact;
pub mod hypersurface;
pub mod lattice;
pub mod par;
pub mod patchwork;
pub mod report;
pub mod svg;
pub mod text;
pub mod tropical;

pub use error::{Error, Result};
pub use exact::Q;
