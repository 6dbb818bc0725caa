//! Real tropical curves: sign classes on edges, vertex compatibility, the
//! four quadrant copies and their gluing into the real toric surface.

mod real;
mod sign;

pub use real::{build_real_set, count_components, ComponentCount, RealPiece, RealTropicalSet};
pub use sign::{check_compatibility, signs_from_lattice, CompatibilityReport, SignClass, SignedCurve, VertexCheck};
