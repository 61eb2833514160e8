use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::conic::{ConicKind, ConicSection};
use crate::kepler::params::{ParameterClass, ParameterTag, SystemParams};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum SingularOrbit {
    /// Sliding along the wall between the ends of the minor axis of `ℰ₊`.
    WallMotion { segment: [[f64; 2]; 2] },
    /// Bouncing between the wall hits of an ellipse centred at `(0, 1)`
    /// whose minor axis lies on the wall.
    TwoPeriodic {
        ellipse: ConicSection,
        semi_axis_horizontal: f64,
        semi_axis_vertical: f64,
    },
    /// Motion along the `x₂`-axis from the wall up to `segment[1]`.
    Vertical { segment: [[f64; 2]; 2], separatrix: bool },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SingularDescription {
    pub class: ParameterClass,
    pub orbit: SingularOrbit,
}

/// The closed orbit carried by a singular level set on the boundary of the
/// region (or on `D = 2` inside it).
pub fn singular_orbit_description<T: Scalar>(p: &SystemParams<T>) -> Result<SingularDescription> {
    let class = p.classify();
    let e = p.energy().to_f64();
    let orbit = match class.tag {
        ParameterTag::RegularInterior | ParameterTag::OutsideRegion => return Err(Error::NotSingular),
        ParameterTag::BoundaryWallMotion => {
            // R = 1 here, so ℰ₊ has squared semi-axes 1/E² − 1 and 1/E².
            let half = (1.0 / (e * e) - 1.0).sqrt();
            SingularOrbit::WallMotion {
                segment: [[-half, 1.0], [half, 1.0]],
            }
        }
        ParameterTag::BoundaryTwoPeriodic => {
            let v = 1.0 / (4.0 * e * e);
            let h = v - 1.0;
            SingularOrbit::TwoPeriodic {
                ellipse: ConicSection {
                    kind: ConicKind::Ellipse,
                    center: [0.0, 1.0],
                    semi_axis_horizontal_sq: h,
                    semi_axis_vertical_sq: v,
                    foci: [[0.0, 0.0], [0.0, 2.0]],
                },
                semi_axis_horizontal: h.sqrt(),
                semi_axis_vertical: v.sqrt(),
            }
        }
        ParameterTag::BoundaryD2Low => SingularOrbit::Vertical {
            segment: [[0.0, 1.0], [0.0, -1.0 / e]],
            separatrix: false,
        },
        ParameterTag::BoundaryD2High => SingularOrbit::Vertical {
            segment: [[0.0, 1.0], [0.0, 2.0]],
            separatrix: true,
        },
    };
    Ok(SingularDescription { class, orbit })
}
