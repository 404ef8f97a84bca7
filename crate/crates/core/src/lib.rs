//! Exact tropical intersection theory for plane curves over Puiseux series.
//!
//! The pipeline runs from concrete polynomials `f, g ∈ K[x, y]` to
//! their tropical curves, the stable intersection divisor `E`, the
//! tropicalised classical intersection divisor `D`, and a piecewise-linear
//! function `h` on `Trop(f)` with `(h) = D − E` supported on the
//! intersection of the two tropical curves.

pub mod divisor;
pub mod divisor_calculus;
pub mod error;
pub mod fixtures;
pub mod geometry;
pub mod lifting;
pub mod linalg;
pub mod parse;
pub mod puiseux;
pub mod rat;
pub mod schema;
pub mod stable_intersection;
pub mod svg;
pub mod tropical_curve;

pub use divisor::{DivPoint, Divisor, RayEnd};
pub use divisor_calculus::{
    configuration_space, divisor_of, find_certificate, graph_of_curve, ConfigCell, ConfigSpace, MetricGraph, PLFunc,
};
pub use error::{Error, Result};
pub use geometry::{Point2, PrimitiveDir};
pub use lifting::{assemble_divisor, intersection_valuations, verify_main_theorem, LiftReport};
pub use parse::{parse_poly, print_poly};
pub use puiseux::{newton_root_valuations, resultant_wrt, BivariatePoly, PuiseuxScalar, UniPoly, Var};
pub use rat::{q, Rat};
pub use stable_intersection::{intersect_complex, mixed_volume, stable_divisor, IntersectionComplex, NewtonPolygon};
pub use tropical_curve::{check_balanced, curve_of, is_smooth, trop_eval, tropicalize_poly, TropCurve, TropPoly};
