//! Level-set parameters, wall states and the reflection map.

pub mod arc;
pub mod params;
pub mod state;

pub use arc::{reconstruct_arc, KeplerArc};
pub use params::{classify_parameters, make_params, ParameterClass, ParameterTag, SystemParams};
pub use state::{
    boltzmann_step, involution_i, involution_j, state_from_physical, WallRoot, WallState,
};
