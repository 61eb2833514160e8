//! Geometric reconstruction of the Kepler arc between two wall hits.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kepler::params::SystemParams;
use crate::kepler::state::WallState;

#[derive(Debug, Clone, Serialize)]
pub struct KeplerArc {
    #[serde(skip)]
    pub params: SystemParams<f64>,
    pub state: WallState<f64>,
    pub start_x: f64,
    pub end_x: f64,
    pub second_focus: [f64; 2],
    /// Points from `(start_x, 1)` to `(end_x, 1)`, all with `x₂ ≥ 1`.
    pub samples: Vec<[f64; 2]>,
}

/// Samples the conic `|r| + A·r = L²` in true anomaly between the wall hits
/// of `before` and `after_i` (its image under the first involution).
///
/// A ray from the focus at angle `φ ∈ (0, π)` meets the conic above the wall
/// exactly between the two hit angles, so the samples run over that interval.
pub fn reconstruct_arc(
    before: &WallState<f64>,
    after_i: &WallState<f64>,
    p: &SystemParams<f64>,
    n_samples: usize,
) -> Result<KeplerArc> {
    if n_samples < 2 {
        return Err(Error::InvalidInput("an arc needs at least 2 samples".into()));
    }
    let tol = p.tolerances();
    if (before.a1 - after_i.a1).abs() > tol.constraint || (before.a2 - after_i.a2).abs() > tol.constraint {
        return Err(Error::PreconditionViolated(
            "arc endpoints must share the Laplace-Runge-Lenz vector".into(),
        ));
    }
    let e = *p.energy();
    if e >= 0.0 {
        return Err(Error::UnboundedMotion { energy: e });
    }
    let l2 = before.l_squared(p);
    if l2 < -tol.class {
        return Err(Error::NegativeAngularMomentum(l2));
    }
    if l2 <= tol.class {
        // radial segment from the wall hit out to the apex at distance −1/E
        let start = [before.x, 1.0];
        let norm = before.x.hypot(1.0);
        let apex = -1.0 / e;
        return Err(Error::DegenerateArc {
            segment: [start, [before.x / norm * apex, 1.0 / norm * apex]],
        });
    }
    let (a1, a2) = (before.a1, before.a2);
    let phi_start = 1f64.atan2(before.x);
    let phi_end = 1f64.atan2(after_i.x);
    let last = n_samples - 1;
    let samples = (0..n_samples)
        .map(|k| {
            if k == 0 {
                return [before.x, 1.0];
            }
            if k == last {
                return [after_i.x, 1.0];
            }
            let phi = phi_start + (phi_end - phi_start) * k as f64 / last as f64;
            let (s, c) = phi.sin_cos();
            let r = l2 / (1.0 + a1 * c + a2 * s);
            [r * c, r * s]
        })
        .collect();
    Ok(KeplerArc {
        params: p.clone(),
        state: before.clone(),
        start_x: before.x,
        end_x: after_i.x,
        second_focus: [a1 / e, a2 / e],
        samples,
    })
}

impl KeplerArc {
    /// Largest conic residual over the samples.
    pub fn max_conic_residual(&self) -> f64 {
        self.samples
            .iter()
            .map(|&pt| self.state.conic_residual_at(&self.params, pt).abs())
            .fold(0.0, f64::max)
    }

    /// Arcs of the orbit from `start`, one per step.
    pub fn along_orbit(
        start: &WallState<f64>,
        p: &SystemParams<f64>,
        steps: usize,
        n_samples: usize,
    ) -> Result<Vec<KeplerArc>> {
        let mut arcs = Vec::with_capacity(steps);
        let mut s = start.clone();
        for _ in 0..steps {
            let hit = s.involution_i(p)?;
            arcs.push(reconstruct_arc(&s, &hit, p, n_samples)?);
            s = hit.involution_j(p);
        }
        Ok(arcs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kepler::state::WallRoot;
    use proptest::prelude::*;

    #[test]
    fn symmetric_arc() {
        let p = SystemParams::new(-5.0 / 24.0, 1.75);
        let s = WallState::new(3f64.sqrt(), 0.0, 0.25);
        let t = s.involution_i(&p).unwrap();
        let arc = reconstruct_arc(&s, &t, &p, 101).unwrap();
        assert_eq!(arc.samples[0], [3f64.sqrt(), 1.0]);
        assert_eq!(arc.samples[100], [-3f64.sqrt(), 1.0]);
        // apex on x₁ = 0 and mirror symmetry
        assert!(arc.samples[50][0].abs() < 1e-14);
        for k in 0..=100 {
            let (a, b) = (arc.samples[k], arc.samples[100 - k]);
            assert!((a[0] + b[0]).abs() < 1e-12 && (a[1] - b[1]).abs() < 1e-12);
        }
        assert!(arc.max_conic_residual() < 1e-12);
    }

    #[test]
    fn radial_arc_is_degenerate() {
        let p = SystemParams::new(-0.75, 2.0);
        let s = WallState::new(0.0, 0.0, -1.0);
        match reconstruct_arc(&s, &s, &p, 10) {
            Err(Error::DegenerateArc { segment }) => {
                assert_eq!(segment[0], [0.0, 1.0]);
                assert!((segment[1][1] - 4.0 / 3.0).abs() < 1e-15);
            }
            other => panic!("expected a degenerate arc, got {other:?}"),
        }
    }

    #[test]
    fn rejects_mismatched_endpoints() {
        let p = SystemParams::new(-5.0 / 24.0, 1.75);
        let s = WallState::new(3f64.sqrt(), 0.0, 0.25);
        let t = WallState::new(-3f64.sqrt(), 0.1, 0.25);
        assert!(reconstruct_arc(&s, &t, &p, 5).is_err());
        assert!(reconstruct_arc(&s, &s, &p, 1).is_err());
    }

    proptest! {
        #[test]
        fn samples_lie_on_the_conic_above_the_wall(
            theta in 0.0f64..std::f64::consts::TAU, plus in any::<bool>(),
        ) {
            let p = SystemParams::new(-7.0 / 24.0, 1.75);
            let root = if plus { WallRoot::Plus } else { WallRoot::Minus };
            if let Ok(s) = WallState::from_circle_angle(&p, theta, root) {
                let arcs = KeplerArc::along_orbit(&s, &p, 5, 64).unwrap();
                for arc in arcs {
                    prop_assert!(arc.max_conic_residual() < 1e-10);
                    prop_assert!(arc.samples.iter().all(|pt| pt[1] >= 1.0 - 1e-10));
                }
            }
        }
    }
}
