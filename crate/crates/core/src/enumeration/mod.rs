//! Counting plane tropical curves through generic points with λ-increasing
//! lattice paths, plus the Kontsevich recursion as an independent check.

mod irreducible;
mod paths;

pub use irreducible::{count_n_irr, kontsevich_oracle, IrreducibleCount};
pub use paths::{
    count_n, generate_paths, num_ends, path_multiplicity, CountResult, LambdaOrder, LatticePath, PathMultiplicity,
    PathRecord,
};
