use serde::Serialize;

use crate::error::{Error, Result};
use crate::kepler::params::SystemParams;
use crate::scalar::Scalar;

/// A point `(x, A₁, A₂)` of the level set: the wall hit `(x, 1)` and the
/// Laplace–Runge–Lenz vector of the arc leaving it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WallState<T> {
    pub x: T,
    pub a1: T,
    pub a2: T,
}

/// Which root of the wall quadratic to take for a given `A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum WallRoot {
    Plus,
    Minus,
}

impl<T: Scalar> WallState<T> {
    pub fn new(x: T, a1: T, a2: T) -> Self {
        WallState { x, a1, a2 }
    }

    /// `L² = D + 2A₂`.
    pub fn l_squared(&self, p: &SystemParams<T>) -> T {
        p.second_integral().clone() + T::from_i64(2) * self.a2.clone()
    }

    /// `A₁² + A₂² − 4EA₂ − (1 + 2DE)`.
    pub fn circle_residual(&self, p: &SystemParams<T>) -> T {
        let e = p.energy().clone();
        let d = p.second_integral().clone();
        self.a1.square() + self.a2.square() - T::from_i64(4) * e.clone() * self.a2.clone()
            - (T::one() + T::from_i64(2) * d * e)
    }

    /// `x² + 1 − (A₂ + D − A₁x)²`.
    pub fn wall_residual(&self, p: &SystemParams<T>) -> T {
        let c = self.a2.clone() + p.second_integral().clone() - self.a1.clone() * self.x.clone();
        self.x.square() + T::one() - c.square()
    }

    /// Largest absolute constraint residual, as `f64`.
    pub fn max_residual(&self, p: &SystemParams<T>) -> f64 {
        self.circle_residual(p).to_f64().abs().max(self.wall_residual(p).to_f64().abs())
    }

    /// The non-origin focus `(A₁/E, A₂/E)` of the arc's conic.
    pub fn second_focus(&self, p: &SystemParams<T>) -> [T; 2] {
        [self.a1.clone() / p.energy().clone(), self.a2.clone() / p.energy().clone()]
    }

    pub fn to_f64(&self) -> WallState<f64> {
        WallState::new(self.x.to_f64(), self.a1.to_f64(), self.a2.to_f64())
    }

    /// Max-norm distance between two states.
    pub fn distance(&self, other: &Self) -> f64 {
        [
            self.x.clone() - other.x.clone(),
            self.a1.clone() - other.a1.clone(),
            self.a2.clone() - other.a2.clone(),
        ]
        .iter()
        .map(|v| v.to_f64().abs())
        .fold(0.0, f64::max)
    }

    /// Rejects states with `L² < 0`.
    pub fn check_physical(&self, p: &SystemParams<T>) -> Result<()> {
        let l2 = self.l_squared(p);
        if l2.sign(p.tolerances().class) == std::cmp::Ordering::Less {
            return Err(Error::NegativeAngularMomentum(l2.to_f64()));
        }
        Ok(())
    }

    /// Solves the wall quadratic `(1 − A₁²)x² + 2cA₁x + 1 − c² = 0`,
    /// `c = A₂ + D`, for a given `A` on the circle.
    ///
    /// Exact scalars need `√(L²(D + 2E))` in their field.
    pub fn from_lrl(p: &SystemParams<T>, a1: T, a2: T, root: WallRoot) -> Result<Self> {
        use std::cmp::Ordering::*;
        let tol = p.tolerances();
        let d = p.second_integral().clone();
        let probe = WallState::new(T::zero(), a1.clone(), a2.clone());
        let off = probe.circle_residual(p);
        if off.sign(tol.constraint) != Equal {
            return Err(Error::PreconditionViolated(format!(
                "A = ({a1}, {a2}) is off the circle by {}",
                off.to_f64()
            )));
        }
        let l2 = probe.l_squared(p);
        if l2.sign(tol.class) != Greater {
            return Err(Error::NegativeAngularMomentum(l2.to_f64()));
        }
        let denom = T::one() - a1.square();
        if denom.is_zero_within(tol.class) {
            return Err(Error::DegenerateTangency);
        }
        let disc = l2 * p.d_plus_2e();
        if disc.sign(tol.class) == Less {
            return Err(Error::NegativeRadicand(disc.to_f64()));
        }
        let root_disc = disc.sqrt_principal().ok_or(Error::RadicandNotInField)?;
        let lead = -((a2.clone() + d) * a1.clone());
        let x = match root {
            WallRoot::Plus => (lead + root_disc) / denom,
            WallRoot::Minus => (lead - root_disc) / denom,
        };
        Ok(WallState::new(x, a1, a2))
    }

    pub fn involution_i(&self, p: &SystemParams<T>) -> Result<Self> {
        involution_i(self, p)
    }

    pub fn involution_j(&self, p: &SystemParams<T>) -> Self {
        involution_j(self, p)
    }

    pub fn step(&self, p: &SystemParams<T>) -> Result<Self> {
        boltzmann_step(self, p)
    }

    /// The start state followed by `steps` images under the map.
    pub fn orbit(&self, p: &SystemParams<T>, steps: usize) -> Result<Vec<Self>> {
        let mut out = Vec::with_capacity(steps + 1);
        out.push(self.clone());
        for _ in 0..steps {
            let next = boltzmann_step(out.last().expect("non-empty"), p)?;
            out.push(next);
        }
        Ok(out)
    }
}

impl WallState<f64> {
    /// Residual of the Kepler conic `|r| − (L² − A·r)` at a point.
    pub fn conic_residual_at(&self, p: &SystemParams<f64>, point: [f64; 2]) -> f64 {
        let l2 = self.l_squared(p);
        point[0].hypot(point[1]) - (l2 - self.a1 * point[0] - self.a2 * point[1])
    }

    /// Places `A` on the circle `A₁² + (A₂ − 2E)² = R²` at angle `theta`
    /// and solves the wall quadratic for `x`.
    ///
    /// Fails when the roots are complex, `L² ≤ 0`, or `|A₁| = 1`.
    pub fn from_circle_angle(p: &SystemParams<f64>, theta: f64, root: WallRoot) -> Result<Self> {
        let r = *p.require_r()?;
        let e = *p.energy();
        let d = *p.second_integral();
        let a1 = r * theta.cos();
        let a2 = 2.0 * e + r * theta.sin();
        let l2 = d + 2.0 * a2;
        if l2 <= p.tolerances().class {
            return Err(Error::NegativeAngularMomentum(l2));
        }
        let denom = 1.0 - a1 * a1;
        if denom.abs() <= p.tolerances().class {
            return Err(Error::DegenerateTangency);
        }
        // (1 − A₁²)x² + 2cA₁x + 1 − c² = 0 with c = A₂ + D; disc/4 = L²(D + 2E)
        let c = a2 + d;
        let disc = l2 * (d + 2.0 * e);
        if disc < 0.0 {
            return Err(Error::PreconditionViolated(format!(
                "no real wall intersection at theta = {theta}"
            )));
        }
        let sign = match root {
            WallRoot::Plus => 1.0,
            WallRoot::Minus => -1.0,
        };
        let x = (-c * a1 + sign * disc.sqrt()) / denom;
        Ok(WallState::new(x, a1, a2))
    }
}

/// Swaps the two wall intersections of the current conic:
/// `x′ = −2(A₂ + D)A₁/(1 − A₁²) − x`.
pub fn involution_i<T: Scalar>(s: &WallState<T>, p: &SystemParams<T>) -> Result<WallState<T>> {
    let denom = T::one() - s.a1.square();
    if denom.is_zero_within(p.tolerances().class) {
        return Err(Error::DegenerateTangency);
    }
    let sum = -(T::from_i64(2) * (s.a2.clone() + p.second_integral().clone()) * s.a1.clone()) / denom;
    Ok(WallState::new(sum - s.x.clone(), s.a1.clone(), s.a2.clone()))
}

/// Reflects at the current wall point, replacing `A` by the vector of the
/// next arc.
pub fn involution_j<T: Scalar>(s: &WallState<T>, p: &SystemParams<T>) -> WallState<T> {
    let x = s.x.clone();
    let e4 = T::from_i64(4) * p.energy().clone();
    let x2m1 = x.square() - T::one();
    let denom = x.square() + T::one();
    let a1 = (x2m1.clone() * s.a1.clone() - T::from_i64(2) * x.clone() * s.a2.clone()
        + e4.clone() * x.clone())
        / denom.clone();
    let a2 = (-(T::from_i64(2) * x.clone() * s.a1.clone()) - x2m1 * s.a2.clone() + e4 * x.square())
        / denom;
    WallState::new(x, a1, a2)
}

/// One reflection of the billiard: `j ∘ i`.
pub fn boltzmann_step<T: Scalar>(s: &WallState<T>, p: &SystemParams<T>) -> Result<WallState<T>> {
    Ok(involution_j(&involution_i(s, p)?, p))
}

/// Converts a wall position `(x₁, 1)` and momentum into `(E, D)` and the
/// state of the arc with that initial momentum.
pub fn state_from_physical(
    position: [f64; 2],
    momentum: [f64; 2],
) -> Result<(SystemParams<f64>, WallState<f64>)> {
    let [x1, x2] = position;
    let [p1, p2] = momentum;
    if (x2 - 1.0).abs() > 1e-12 {
        return Err(Error::PreconditionViolated(format!(
            "position must lie on the wall x2 = 1, got x2 = {x2}"
        )));
    }
    if !(x1.is_finite() && p1.is_finite() && p2.is_finite()) {
        return Err(Error::InvalidInput("non-finite position or momentum".into()));
    }
    let dist = x1.hypot(x2);
    let l = x1 * p2 - x2 * p1;
    let a1 = p2 * l - x1 / dist;
    let a2 = -p1 * l - x2 / dist;
    let energy = 0.5 * (p1 * p1 + p2 * p2) - 1.0 / dist;
    if energy >= 0.0 {
        return Err(Error::UnboundedMotion { energy });
    }
    let d = l * l - 2.0 * a2;
    Ok((SystemParams::new(energy, d), WallState::new(x1, a1, a2)))
}
