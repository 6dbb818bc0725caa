//! Exact lattice polygons, lattice invariants and lift-induced regular
//! subdivisions. Everything here is integer or rational; no floats.

pub mod lp;
mod polygon;
mod subdivision;

pub use polygon::{
    cross, lattice_length, mixed_area, newton_polygon, LatticePolygon, LatticeSegment, Point, PolygonKind,
};
pub use subdivision::{regular_subdivision, segment_subdivision, Cell, RegularSubdivision, SubdivisionEdge};
