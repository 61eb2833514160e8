use boltzmann::geometry::caustics;
use boltzmann::kepler::{KeplerArc, WallRoot, WallState};
use boltzmann::{Scalar, SystemParams, Tolerances};
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};
use crate::number::Number;
use crate::render::{render_svg, RenderSpec, Scene};

#[derive(Debug, Clone)]
pub enum Start {
    Angle { theta: f64, root: WallRoot },
    State([f64; 3]),
}

pub struct Simulation {
    pub svg: String,
    pub log: Value,
}

pub fn simulate(
    e: &Number,
    d: &Number,
    start: &Start,
    steps: usize,
    with_caustics: bool,
    with_circle: bool,
    render: &RenderSpec,
    tol: Tolerances,
) -> CliResult<Simulation> {
    if render.samples_per_arc < 2 {
        return Err(CliError::Usage("--samples must be at least 2".into()));
    }
    if let Some(v) = render.viewport {
        if !(v[0] < v[1] && v[2] < v[3]) {
            return Err(CliError::Usage(format!("empty viewport {v:?}")));
        }
    }
    if e.value >= 0.0 {
        return Err(boltzmann::Error::UnboundedMotion { energy: e.value }.into());
    }
    let p = SystemParams::new(e.value, d.value).with_tolerances(tol);
    p.check_regular()?;
    let s0 = match *start {
        Start::Angle { theta, root } => WallState::from_circle_angle(&p, theta, root)?,
        Start::State([x, a1, a2]) => {
            let s = WallState::new(x, a1, a2);
            let off = s.max_residual(&p);
            if off > tol.constraint {
                return Err(CliError::Usage(format!("start state violates the constraints by {off:e}")));
            }
            s.check_physical(&p)?;
            s
        }
    };

    let orbit = s0.orbit(&p, steps)?;
    let arcs = KeplerArc::along_orbit(&s0, &p, steps, render.samples_per_arc)?;
    let conics = if with_caustics { Some(caustics(&p)?) } else { None };
    let circle = with_circle.then(|| ([0.0, 2.0], p.r().copied().unwrap_or(0.0) / e.value.abs()));
    let svg = render_svg(
        &Scene {
            arcs: &arcs,
            caustics: conics.as_ref(),
            circle,
        },
        render,
    );

    let states: Vec<Value> = orbit
        .iter()
        .enumerate()
        .map(|(k, s)| {
            json!({
                "k": k,
                "x": s.x,
                "a1": s.a1,
                "a2": s.a2,
                "l_squared": s.l_squared(&p),
                "circle_residual": s.circle_residual(&p),
                "wall_residual": s.wall_residual(&p),
            })
        })
        .collect();
    let arc_log: Vec<Value> = arcs
        .iter()
        .enumerate()
        .map(|(k, a)| {
            json!({
                "k": k,
                "start_x": a.start_x,
                "end_x": a.end_x,
                "second_focus": a.second_focus,
                "max_conic_residual": a.max_conic_residual(),
            })
        })
        .collect();
    let max_residual = orbit.iter().map(|s| s.max_residual(&p)).fold(0.0, f64::max);
    let log = json!({
        "mode": "float",
        "E": e.value,
        "D": d.value,
        "r_squared": p.r_squared().to_f64(),
        "R": p.r(),
        "class": p.classify(),
        "steps": steps,
        "states": states,
        "arcs": arc_log,
        "caustics": conics.as_ref().map(|(plus, minus)| json!({ "plus": plus, "minus": minus })),
        "max_residual": max_residual,
    });
    Ok(Simulation { svg, log })
}
