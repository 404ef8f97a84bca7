//! Metric graphs, tropical rational functions and their divisors.

mod certificate;
mod config_space;
mod graph;
mod plfunc;

pub use certificate::find_certificate;
pub use config_space::{
    configuration_space, ArcPattern, ConfigCell, ConfigSpace, ConfigVar, Inequality, LinearConstraint, SlopePattern,
};
pub use graph::{graph_of_curve, Arc, ArcEnd, Location, MetricGraph, Node};
pub use plfunc::{divisor_of, ArcPiece, EndValue, PLFunc};
