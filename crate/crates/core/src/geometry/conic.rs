use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kepler::params::{ParameterTag, SystemParams};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ConicKind {
    Ellipse,
    Hyperbola,
    Parabola,
    DegenerateSegment,
    DegeneratePointPair,
    DegenerateLine,
}

/// A conic `x₁²/h + (x₂ − c₂)²/v = 1` in centre/axes form.
///
/// `h` and `v` are signed squared semi-axes; a negative `h` opens the conic
/// vertically as a hyperbola.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConicSection {
    pub kind: ConicKind,
    pub center: [f64; 2],
    pub semi_axis_horizontal_sq: f64,
    pub semi_axis_vertical_sq: f64,
    pub foci: [[f64; 2]; 2],
}

impl ConicSection {
    /// `x₁²v + (x₂ − c₂)²h − hv`, the cleared-denominator form, which stays
    /// meaningful when either squared semi-axis is zero. A point pair
    /// reports the distance to its nearer point instead.
    pub fn residual_at(&self, point: [f64; 2]) -> f64 {
        if self.kind == ConicKind::DegeneratePointPair {
            return self
                .foci
                .iter()
                .map(|f| (point[0] - f[0]).hypot(point[1] - f[1]))
                .fold(f64::INFINITY, f64::min);
        }
        let (h, v) = (self.semi_axis_horizontal_sq, self.semi_axis_vertical_sq);
        let dx = point[0] - self.center[0];
        let dy = point[1] - self.center[1];
        dx * dx * v + dy * dy * h - h * v
    }

    /// Gradient of [`residual_at`](Self::residual_at); zero for a point pair.
    pub fn gradient_at(&self, point: [f64; 2]) -> [f64; 2] {
        if self.kind == ConicKind::DegeneratePointPair {
            return [0.0, 0.0];
        }
        [
            2.0 * (point[0] - self.center[0]) * self.semi_axis_vertical_sq,
            2.0 * (point[1] - self.center[1]) * self.semi_axis_horizontal_sq,
        ]
    }

    /// Vertical minus horizontal squared semi-axis: the squared focal
    /// half-distance.
    pub fn focal_gap(&self) -> f64 {
        self.semi_axis_vertical_sq - self.semi_axis_horizontal_sq
    }
}

fn caustic<T: Scalar>(s: T, tol: f64) -> ConicSection {
    let v = s.square();
    let h = v.clone() - T::one();
    let kind = if v.is_zero_within(tol) {
        ConicKind::DegenerateLine
    } else {
        match h.sign(tol) {
            Ordering::Equal => ConicKind::DegeneratePointPair,
            Ordering::Greater => ConicKind::Ellipse,
            Ordering::Less => ConicKind::Hyperbola,
        }
    };
    ConicSection {
        kind,
        center: [0.0, 1.0],
        semi_axis_horizontal_sq: h.to_f64(),
        semi_axis_vertical_sq: v.to_f64(),
        foci: [[0.0, 0.0], [0.0, 2.0]],
    }
}

/// The two conics with foci `(0,0)` and `(0,2)` touching every arc on the
/// level set: squared vertical semi-axis `((R ± 1)/(2E))²`, horizontal one
/// less by 1. Returned as `(ℰ₊, ℰ₋)`.
pub fn caustics<T: Scalar>(p: &SystemParams<T>) -> Result<(ConicSection, ConicSection)> {
    if p.classify().tag == ParameterTag::OutsideRegion {
        return Err(Error::OutsideRegion);
    }
    let r = p.require_r()?.clone();
    let two_e = T::from_i64(2) * p.energy().clone();
    let tol = p.tolerances().class;
    Ok((
        caustic((r.clone() + T::one()) / two_e.clone(), tol),
        caustic((r - T::one()) / two_e, tol),
    ))
}
