//! Numerical amoebas of plane curves: slices, rasters, complement
//! components, the Ronkin function, spines, dequantization distances, the
//! logarithmic Gauss contour and Monte Carlo areas.

mod area;
mod contour;
mod dequant;
mod poly;
mod raster;
mod ronkin;
mod roots;
mod slice;
mod spine;

pub use area::{area_estimate, AreaEstimate};
pub use contour::{log_gauss_contour, ContourResult};
pub use dequant::{amoeba_point_cloud, dequant_distance, dequant_family, hausdorff_distance, tropical_limit, DequantDistance, DequantTerm};
pub use poly::ComplexLaurentPolynomial;
pub use raster::{
    amoeba_raster, complement_components, AmoebaOptions, AmoebaRaster, ComplementComponent, ComponentReport, Window,
};
pub use ronkin::{jitter, ronkin_gradient, ronkin_tensor, ronkin_value, RonkinEstimate};
pub use roots::{poly_roots, poly_roots_companion};
pub use slice::{amoeba_slice, is_member, SliceResult};
pub use spine::{coefficient_table, complex_points, spine, spine_containment, ContainmentReport, SpineResult, SpineTerm, SPINE_FIT_TOLERANCE};
