use std::fmt::Write;

use boltzmann::geometry::{ConicKind, ConicSection};
use boltzmann::kepler::KeplerArc;

#[derive(Debug, Clone)]
pub struct Styles {
    pub wall: String,
    pub arc: String,
    pub caustic_plus: String,
    pub caustic_minus: String,
    pub circle: String,
}

impl Default for Styles {
    fn default() -> Self {
        Styles {
            wall: "stroke:#000000;stroke-width:2".into(),
            arc: "stroke:#1f77b4;stroke-width:1.2;fill:none".into(),
            caustic_plus: "stroke:#ff7f0e;stroke-width:1;stroke-dasharray:6 3;fill:none".into(),
            caustic_minus: "stroke:#2ca02c;stroke-width:1;stroke-dasharray:2 2;fill:none".into(),
            circle: "stroke:#7f7f7f;stroke-width:0.8;stroke-dasharray:1 3;fill:none".into(),
        }
    }
}

/// `[x1_min, x1_max, x2_min, x2_max]`.
pub type Viewport = [f64; 4];

#[derive(Debug, Clone)]
pub struct RenderSpec {
    pub viewport: Option<Viewport>,
    pub samples_per_arc: usize,
    pub width_px: f64,
    pub styles: Styles,
}

pub struct Scene<'a> {
    pub arcs: &'a [KeplerArc],
    pub caustics: Option<&'a (ConicSection, ConicSection)>,
    /// Centre and radius of the circle of second foci.
    pub circle: Option<([f64; 2], f64)>,
}

fn conic_extent(c: &ConicSection) -> Vec<[f64; 2]> {
    let (h, v) = (c.semi_axis_horizontal_sq, c.semi_axis_vertical_sq);
    let [cx, cy] = c.center;
    match c.kind {
        ConicKind::Ellipse => vec![[cx - h.sqrt(), cy - v.sqrt()], [cx + h.sqrt(), cy + v.sqrt()]],
        ConicKind::Hyperbola => vec![[cx, cy - v.sqrt()], [cx, cy + v.sqrt()]],
        _ => c.foci.to_vec(),
    }
}

pub fn auto_viewport(scene: &Scene) -> Viewport {
    let mut pts: Vec<[f64; 2]> = vec![[-1.0, 0.0], [1.0, 2.0]];
    for arc in scene.arcs {
        pts.extend(&arc.samples);
    }
    if let Some((plus, minus)) = scene.caustics {
        pts.extend(conic_extent(plus));
        pts.extend(conic_extent(minus));
    }
    if let Some(([cx, cy], r)) = scene.circle {
        pts.push([cx - r, cy - r]);
        pts.push([cx + r, cy + r]);
    }
    let fold = |f: fn(f64, f64) -> f64, init: f64, k: usize| pts.iter().map(|p| p[k]).fold(init, f);
    let (x0, x1) = (fold(f64::min, f64::INFINITY, 0), fold(f64::max, f64::NEG_INFINITY, 0));
    let (y0, y1) = (fold(f64::min, f64::INFINITY, 1), fold(f64::max, f64::NEG_INFINITY, 1));
    let pad = 0.05 * (x1 - x0).max(y1 - y0);
    [x0 - pad, x1 + pad, y0 - pad, y1 + pad]
}

fn conic_paths(c: &ConicSection, view: &Viewport) -> Vec<Vec<[f64; 2]>> {
    let (h, v) = (c.semi_axis_horizontal_sq, c.semi_axis_vertical_sq);
    let [cx, cy] = c.center;
    const N: usize = 240;
    match c.kind {
        ConicKind::Ellipse => {
            let (a, b) = (h.sqrt(), v.sqrt());
            vec![(0..=N)
                .map(|k| {
                    let t = std::f64::consts::TAU * k as f64 / N as f64;
                    [cx + a * t.cos(), cy + b * t.sin()]
                })
                .collect()]
        }
        ConicKind::Hyperbola => {
            let (a, b) = ((-h).sqrt(), v.sqrt());
            let reach = view[0].abs().max(view[1].abs()).max((view[2] - cy).abs()).max((view[3] - cy).abs());
            let u_max = (reach / a.min(b)).asinh() + 0.1;
            [1.0, -1.0]
                .iter()
                .map(|side| {
                    (0..=N)
                        .map(|k| {
                            let u = -u_max + 2.0 * u_max * k as f64 / N as f64;
                            [cx + a * u.sinh(), cy + side * b * u.cosh()]
                        })
                        .collect()
                })
                .collect()
        }
        ConicKind::DegenerateLine => vec![vec![[view[0], cy], [view[1], cy]]],
        ConicKind::DegenerateSegment | ConicKind::Parabola | ConicKind::DegeneratePointPair => vec![],
    }
}

/// Renders the wall, arcs and optional overlays as a standalone SVG 1.1
/// document, with `x₂` pointing up.
pub fn render_svg(scene: &Scene, spec: &RenderSpec) -> String {
    let view = spec.viewport.unwrap_or_else(|| auto_viewport(scene));
    let (w, h) = (spec.width_px, spec.width_px * (view[3] - view[2]) / (view[1] - view[0]));
    let sx = |x: f64| (x - view[0]) / (view[1] - view[0]) * w;
    let sy = |y: f64| (view[3] - y) / (view[3] - view[2]) * h;
    let poly = |pts: &[[f64; 2]]| {
        pts.iter()
            .map(|p| format!("{:.3},{:.3}", sx(p[0]), sy(p[1])))
            .collect::<Vec<_>>()
            .join(" ")
    };

    let mut s = String::new();
    writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.3} {h:.3}">"#
    )
    .unwrap();
    writeln!(
        s,
        r#"<defs><clipPath id="view"><rect x="0" y="0" width="{w:.3}" height="{h:.3}"/></clipPath></defs>"#
    )
    .unwrap();
    writeln!(s, r#"<rect x="0" y="0" width="{w:.3}" height="{h:.3}" style="fill:#ffffff"/>"#).unwrap();
    writeln!(s, r#"<g clip-path="url(#view)">"#).unwrap();

    if let Some(([cx, cy], r)) = scene.circle {
        let rx = r / (view[1] - view[0]) * w;
        let ry = r / (view[3] - view[2]) * h;
        writeln!(
            s,
            r#"<ellipse class="circle" cx="{:.3}" cy="{:.3}" rx="{rx:.3}" ry="{ry:.3}" style="{}"/>"#,
            sx(cx),
            sy(cy),
            spec.styles.circle
        )
        .unwrap();
    }
    if let Some((plus, minus)) = scene.caustics {
        for (name, c, style) in [("caustic-plus", plus, &spec.styles.caustic_plus), ("caustic-minus", minus, &spec.styles.caustic_minus)] {
            for path in conic_paths(c, &view) {
                writeln!(s, r#"<polyline class="{name}" points="{}" style="{style}"/>"#, poly(&path)).unwrap();
            }
            if c.kind == ConicKind::DegeneratePointPair {
                for f in c.foci {
                    writeln!(s, r#"<circle class="{name}" cx="{:.3}" cy="{:.3}" r="4" style="{style}"/>"#, sx(f[0]), sy(f[1])).unwrap();
                }
            }
        }
    }
    writeln!(
        s,
        r#"<line class="wall" x1="0" y1="{y:.3}" x2="{w:.3}" y2="{y:.3}" style="{}"/>"#,
        spec.styles.wall,
        y = sy(1.0)
    )
    .unwrap();
    for (k, arc) in scene.arcs.iter().enumerate() {
        writeln!(s, r#"<polyline class="arc" data-step="{k}" points="{}" style="{}"/>"#, poly(&arc.samples), spec.styles.arc).unwrap();
    }
    for (name, p) in [("centre", [0.0, 0.0]), ("focus-f", [0.0, 2.0])] {
        writeln!(s, r#"<circle class="{name}" cx="{:.3}" cy="{:.3}" r="3" style="fill:#000000"/>"#, sx(p[0]), sy(p[1])).unwrap();
    }
    writeln!(s, "</g>").unwrap();
    writeln!(s, "</svg>").unwrap();
    s
}
