//! Caustics, tangency points, the focal property, singular level sets and
//! Fomenko graphs.

pub mod conic;
pub mod focal;
pub mod fomenko;
pub mod singular;
pub mod tangency;

pub use conic::{caustics, ConicKind, ConicSection};
pub use focal::{focal_property_run, FocalArc, FocalReport};
pub use fomenko::{fomenko_graph, half_ellipse_billiard, Atom, AtomKind, Edge, Family, FomenkoGraph};
pub use singular::{singular_orbit_description, SingularDescription, SingularOrbit};
pub use tangency::{tangency, verify_caustic_along_orbit, Branch, CausticReport, TangencyData};
