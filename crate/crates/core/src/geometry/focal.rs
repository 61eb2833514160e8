use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kepler::params::SystemParams;
use crate::kepler::state::WallState;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FocalArc {
    pub state: WallState<f64>,
    /// `|F| + A·F − L²` at `F = (0, 2)`: zero iff the arc passes through `F`.
    pub residual_at_f: f64,
    pub focus_x2: f64,
    pub abs_a1: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FocalReport {
    pub arcs: Vec<FocalArc>,
    /// `2 + R/|E|`, the top of the circle of second foci.
    pub upper_bound: f64,
    pub max_residual_at_f: f64,
    /// Decided in the scalar field of the run, so exact runs are exact.
    pub strictly_increasing: bool,
    pub bounded: bool,
    /// `|A₁|` is non-increasing over the second half of the run.
    pub tail_monotone: bool,
}

/// Iterates an orbit at `D = 2`, `−1/2 < E < 0` whose first arc passes
/// through `(0, 2)`, recording the arc residual at `(0, 2)`, the height of
/// each second focus and `|A₁|`. The start state counts as the first arc;
/// `steps` further arcs follow.
pub fn focal_property_run<T: Scalar>(
    p: &SystemParams<T>,
    s0: &WallState<T>,
    steps: usize,
) -> Result<FocalReport> {
    let tol = p.tolerances();
    let e = p.energy().clone();
    let two = T::from_i64(2);
    if !(p.second_integral().clone() - two.clone()).is_zero_within(tol.class) {
        return Err(Error::PreconditionViolated(format!(
            "focal property needs D = 2, got {}",
            p.second_integral()
        )));
    }
    if e.sign(tol.class) != Ordering::Less || (e.clone() + T::from_ratio(1, 2)).sign(tol.class) != Ordering::Greater {
        return Err(Error::PreconditionViolated(format!("focal property needs -1/2 < E < 0, got {e}")));
    }
    let residual = |s: &WallState<T>| two.clone() + two.clone() * s.a2.clone() - s.l_squared(p);
    let r0 = residual(s0);
    if !r0.is_zero_within(tol.constraint) {
        return Err(Error::PreconditionViolated(format!(
            "initial arc misses (0, 2) by {}",
            r0.to_f64()
        )));
    }
    let bound = two.clone() + p.require_r()?.clone() / (-e.clone());

    let orbit = s0.orbit(p, steps)?;
    let heights: Vec<T> = orbit.iter().map(|s| s.a2.clone() / e.clone()).collect();
    let strictly_increasing = heights
        .windows(2)
        .all(|w| (w[1].clone() - w[0].clone()).sign(0.0) == Ordering::Greater);
    let bounded = heights.iter().all(|h| (bound.clone() - h.clone()).sign(0.0) != Ordering::Less);

    let arcs: Vec<FocalArc> = orbit
        .iter()
        .zip(&heights)
        .map(|(s, h)| FocalArc {
            state: s.to_f64(),
            residual_at_f: residual(s).to_f64(),
            focus_x2: h.to_f64(),
            abs_a1: s.a1.abs().to_f64(),
        })
        .collect();
    let tail = &arcs[arcs.len() / 2..];
    let tail_monotone = tail.windows(2).all(|w| w[1].abs_a1 <= w[0].abs_a1);
    let max_residual_at_f = arcs.iter().map(|a| a.residual_at_f.abs()).fold(0.0, f64::max);

    Ok(FocalReport {
        arcs,
        upper_bound: bound.to_f64(),
        max_residual_at_f,
        strictly_increasing,
        bounded,
        tail_monotone,
    })
}
