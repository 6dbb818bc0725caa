//! Parameterized tropical curves `h: Γ → R^n`: a finite graph with weighted
//! bounded edges and legs, plus vertex positions and integer directions.

mod curve;
mod deformation;

pub use curve::{
    degree, genus, is_simple, validate, vertex_multiplicity, curve_multiplicity, CurveGraph, Degree, GraphEdge,
    Leg, TropicalCurve, TropicalMap, ValidationReport, VertexMultiplicity,
};
pub use deformation::{expected_dim, is_superabundant, local_deformation_dim, supercubic};
