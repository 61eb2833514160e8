use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::conic::{caustics, ConicSection};
use crate::kepler::params::SystemParams;
use crate::kepler::state::WallState;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

/// Where an arc's conic touches `ℰ±`, plus the residuals that certify it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TangencyData {
    pub branch: Branch,
    /// `B = (A₁α, 2 + (A₂ − 2E)α)`.
    pub point: [f64; 2],
    pub alpha: f64,
    /// Unit direction of the common tangent. Vertical tangents have no slope.
    pub direction: [f64; 2],
    pub slope: Option<f64>,
    /// `(a, b, c)` for the line `a·x₁ + b·x₂ = c` through `B`, `(0,2)` and
    /// the second focus.
    pub line: [f64; 3],
    /// `|r| + A·r − L²` at `B`.
    pub kepler_residual: f64,
    pub caustic_residual: f64,
    /// `|sin|` of the angle between the two conic normals at `B`.
    pub gradient_residual: f64,
    /// `|cos|` of the angle between `direction` and the Kepler normal.
    pub slope_residual: f64,
    /// `det[B − (0,2), F₂ − (0,2)]`.
    pub collinearity: f64,
}

impl TangencyData {
    pub fn max_tangency_residual(&self) -> f64 {
        self.kepler_residual
            .abs()
            .max(self.caustic_residual.abs())
            .max(self.gradient_residual)
            .max(self.slope_residual)
    }
}

fn unit(v: [f64; 2]) -> Option<[f64; 2]> {
    let n = v[0].hypot(v[1]);
    (n > 0.0).then(|| [v[0] / n, v[1] / n])
}

fn with_caustic(
    p: &SystemParams<f64>,
    s: &WallState<f64>,
    branch: Branch,
    conic: &ConicSection,
) -> Result<TangencyData> {
    let tol = p.tolerances().class;
    let e = *p.energy();
    let r = *p.require_r()?;
    let (a1, a2) = (s.a1, s.a2);
    let rp = r + branch.sign();
    let q = 4.0 * e * e - rp * rp;
    let shift = a2 - 2.0 * e;

    let alpha_den = 2.0 * e * r * r * q - 8.0 * a1 * a1 * e * e * e;
    if alpha_den.abs() <= tol {
        return Err(Error::DegenerateTangencyGeometry("alpha denominator vanishes"));
    }
    let alpha = q * (r * rp - 2.0 * e * shift) / alpha_den;
    let point = [a1 * alpha, 2.0 + shift * alpha];

    let m_num = a1 * rp * (2.0 * e * shift - rp * r);
    let m_den = 2.0 * a1 * a1 * e * rp - r * shift * q;
    let direction = unit([m_den, m_num])
        .filter(|_| m_num.abs().max(m_den.abs()) > tol)
        .ok_or(Error::DegenerateTangencyGeometry("tangent slope is 0/0"))?;
    let slope = (m_den.abs() > tol).then(|| m_num / m_den);

    // ∇(|r| + A·r − L²)
    let dist = point[0].hypot(point[1]);
    let kepler_normal = unit([point[0] / dist + a1, point[1] / dist + a2])
        .ok_or(Error::DegenerateTangencyGeometry("Kepler conic is singular at B"))?;
    let gradient_residual = match unit(conic.gradient_at(point)) {
        Some(n) => (kepler_normal[0] * n[1] - kepler_normal[1] * n[0]).abs(),
        None => 0.0,
    };
    let slope_residual = (direction[0] * kepler_normal[0] + direction[1] * kepler_normal[1]).abs();

    let focus = [a1 / e, a2 / e];
    let collinearity = point[0] * (focus[1] - 2.0) - (point[1] - 2.0) * focus[0];

    Ok(TangencyData {
        branch,
        point,
        alpha,
        direction,
        slope,
        line: [2.0 * e - a2, a1, 2.0 * a1],
        kepler_residual: s.conic_residual_at(p, point),
        caustic_residual: conic.residual_at(point),
        gradient_residual,
        slope_residual,
        collinearity,
    })
}

/// Tangency of the arc with LRL vector `(A₁, A₂)` and the caustic `ℰ±`.
pub fn tangency(p: &SystemParams<f64>, s: &WallState<f64>, branch: Branch) -> Result<TangencyData> {
    p.check_regular()?;
    let (plus, minus) = caustics(p)?;
    let conic = match branch {
        Branch::Plus => plus,
        Branch::Minus => minus,
    };
    with_caustic(p, s, branch, &conic)
}

#[derive(Debug, Clone, Serialize)]
pub struct CausticReport {
    pub plus: ConicSection,
    pub minus: ConicSection,
    /// Two records per arc, `ℰ₊` first.
    pub records: Vec<TangencyData>,
    pub max_tangency_residual: f64,
    pub max_collinearity: f64,
}

impl CausticReport {
    /// Tangency points on one branch that differ by more than `tol`.
    pub fn distinct_points(&self, branch: Branch, tol: f64) -> Vec<[f64; 2]> {
        let mut seen: Vec<[f64; 2]> = Vec::new();
        for rec in self.records.iter().filter(|r| r.branch == branch) {
            let p = rec.point;
            if !seen.iter().any(|q| (q[0] - p[0]).abs().max((q[1] - p[1]).abs()) <= tol) {
                seen.push(p);
            }
        }
        seen
    }
}

/// Checks tangency with both caustics for the arcs of `s0` and its first
/// `steps − 1` images: `steps` arcs, `2·steps` records.
pub fn verify_caustic_along_orbit(
    p: &SystemParams<f64>,
    s0: &WallState<f64>,
    steps: usize,
) -> Result<CausticReport> {
    p.check_regular()?;
    let (plus, minus) = caustics(p)?;
    let mut records = Vec::with_capacity(2 * steps);
    let mut s = s0.clone();
    for k in 0..steps {
        records.push(with_caustic(p, &s, Branch::Plus, &plus)?);
        records.push(with_caustic(p, &s, Branch::Minus, &minus)?);
        if k + 1 < steps {
            s = s.step(p)?;
        }
    }
    let max_tangency_residual = records.iter().map(TangencyData::max_tangency_residual).fold(0.0, f64::max);
    let max_collinearity = records.iter().map(|r| r.collinearity.abs()).fold(0.0, f64::max);
    Ok(CausticReport {
        plus,
        minus,
        records,
        max_tangency_residual,
        max_collinearity,
    })
}
