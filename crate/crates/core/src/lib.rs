//! The Boltzmann billiard: a particle in an inverse-square field reflecting
//! off the straight wall `x₂ = 1`, with the attracting centre at the origin.
//!
//! The crate is organised around four areas:
//!
//! - [`kepler`]: level-set parameters `(E, D)`, wall states `(x, A₁, A₂)`,
//!   the two involutions whose composition is the reflection map, and
//!   reconstruction of the Kepler arcs between wall hits.
//! - [`cayley`]: exact `ℚ(√r)` arithmetic, truncated power series and the
//!   Hankel-determinant conditions for `n`-periodicity.
//! - [`geometry`]: caustic conics, tangency points, the focal property,
//!   singular level sets and Fomenko graphs.
//! - [`search`]: root finding along parameter slices, Poncelet closure
//!   verification and `(E, D)`-plane scans.
//!
//! Most operations are generic over [`Scalar`], implemented for `f64` and
//! for the exact [`QuadExt`] field type.

pub mod cayley;
pub mod error;
pub mod geometry;
pub mod kepler;
pub mod scalar;
pub mod search;
pub mod tolerance;

pub use cayley::quadext::QuadExt;
pub use error::{Error, Result};
pub use kepler::params::{ParameterClass, ParameterTag, SystemParams};
pub use kepler::state::WallState;
pub use scalar::Scalar;
pub use tolerance::Tolerances;
