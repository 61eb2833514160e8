//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line
//! with its runtime; the test fails if any criterion fails.

use std::io::Write;
use std::time::{Duration, Instant};

use boltzmann::cayley::{cayley_coefficients, cayley_determinant, closed_form_condition};
use boltzmann::geometry::{
    fomenko_graph, focal_property_run, singular_orbit_description, verify_caustic_along_orbit, AtomKind,
    Family, FomenkoGraph, SingularOrbit,
};
use boltzmann::kepler::{WallRoot, WallState};
use boltzmann::search::{find_periodic_parameters, verify_poncelet, Slice, Verdict};
use boltzmann::{ParameterTag, QuadExt, Scalar, SystemParams};
use num_rational::Rational64;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn q(n: i64, d: i64) -> QuadExt {
    QuadExt::from_ratio_i64(n, d)
}

fn exact(e: (i64, i64), d: (i64, i64)) -> SystemParams<QuadExt> {
    SystemParams::new(q(e.0, e.1), q(d.0, d.1))
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

fn period5_root() -> f64 {
    let roots = find_periodic_parameters(5, Slice::FixedD(3f64.sqrt()), [-0.75, -0.6]).expect("period-5 root");
    roots[0].energy
}

fn c1_period_three() -> Outcome {
    let p = exact((-5, 24), (7, 4));
    let closed = closed_form_condition(3, &p).map_err(err)?;
    let det = cayley_determinant(&p, 3).map_err(err)?;
    ensure(closed.is_zero() && det.is_zero(), format!("closed form {closed}, determinant {det}"))?;
    Ok("closed form and determinant are exactly 0".into())
}

fn c2_period_four() -> Outcome {
    let p = exact((-20, 99), (11, 9));
    let det = cayley_determinant(&p, 4).map_err(err)?;
    let (e, d) = (p.energy().clone(), p.second_integral().clone());
    let factor = d.clone() * d.clone() + QuadExt::from(2) * d * e - QuadExt::from(1);
    ensure(det.is_zero() && factor.is_zero(), format!("determinant {det}, factor {factor}"))?;
    Ok("determinant(4) = 0 and D^2 + 2DE - 1 = 0 exactly".into())
}

/// Rational points on the period-3 locus: with `D = (t + 3/t)/2`,
/// `D² − 3` is a square and `E = (−D(D² − 3)/2 ± √(D² − 3))/(D² − 4)`.
fn period3_locus() -> Vec<SystemParams<QuadExt>> {
    let mut out = Vec::new();
    for (tn, td) in [(2, 1), (3, 2), (5, 2), (4, 1), (1, 1), (1, 2), (7, 3), (5, 1), (6, 5), (9, 4)] {
        let t = q(tn, td);
        let d = (t.clone() + q(3, 1) / t.clone()) / q(2, 1);
        let w = ((t.clone() - q(3, 1) / t) / q(2, 1)).abs();
        let u = d.clone() * d.clone();
        if (u.clone() - q(4, 1)).is_zero() {
            continue;
        }
        for sign in [1, -1] {
            let e = (-(d.clone() * (u.clone() - q(3, 1))) / q(2, 1) + q(sign, 1) * w.clone()) / (u.clone() - q(4, 1));
            let p = SystemParams::new(e, d.clone());
            if p.is_regular() && p.r_squared().sign(0.0).is_gt() {
                out.push(p);
            }
        }
    }
    out
}

fn c3_period_six() -> Outcome {
    let p = exact((-31, 140), (4, 5));
    let det = cayley_determinant(&p, 6).map_err(err)?;
    ensure(det.is_zero(), format!("determinant(6) at (-31/140, 4/5) is {det}"))?;
    let locus = period3_locus();
    ensure(locus.len() >= 8, format!("only {} locus points", locus.len()))?;
    ensure(
        locus.iter().any(|p| p.energy() == &q(-5, 24) && p.second_integral() == &q(7, 4)),
        "locus misses (-5/24, 7/4)",
    )?;
    for p in &locus {
        let d3 = cayley_determinant(p, 3).map_err(err)?;
        let d6 = cayley_determinant(p, 6).map_err(err)?;
        ensure(
            d3.is_zero() && d6.is_zero(),
            format!("at ({}, {}): det3 {d3}, det6 {d6}", p.energy(), p.second_integral()),
        )?;
    }
    Ok(format!("det6 = 0 at (-31/140, 4/5) and at {} period-3 points", locus.len()))
}

fn c4_period_five() -> Outcome {
    let d = 3f64.sqrt();
    let roots = find_periodic_parameters(5, Slice::FixedD(d), [-0.75, -0.6]).map_err(err)?;
    ensure(roots.len() == 1, format!("{} roots", roots.len()))?;
    let r = &roots[0];
    let closed = r.closed_form.ok_or("no closed form")?;
    ensure(closed.abs() < 1e-9, format!("|closed form(5)| = {closed:e}"))?;
    ensure((r.energy + 2.0 / 3.0).abs() < 0.02, format!("root E = {}", r.energy))?;
    ensure(r.bracket[1] - r.bracket[0] < 1e-12, "bracket wider than 1e-12")?;
    Ok(format!("E = {:.15}, |closed form| = {closed:.1e}", r.energy))
}

fn c5_poncelet() -> Outcome {
    let cases = [
        (-5.0 / 24.0, 1.75, 3),
        (-20.0 / 99.0, 11.0 / 9.0, 4),
        (period5_root(), 3f64.sqrt(), 5),
        (-31.0 / 140.0, 0.8, 6),
    ];
    let mut worst = 0.0f64;
    let mut least_divisor = f64::INFINITY;
    for (seed, &(e, d, n)) in cases.iter().enumerate() {
        let rep = verify_poncelet(&SystemParams::new(e, d), n, 20, seed as u64).map_err(err)?;
        let div = rep.divisor_distances.iter().map(|x| x.1).fold(f64::INFINITY, f64::min);
        ensure(
            rep.verdict == Verdict::Periodic && rep.starts.len() == 20,
            format!("({e}, {d}) n={n}: max closure {:e}, min divisor distance {div:e}", rep.max_closure_distance()),
        )?;
        worst = worst.max(rep.max_closure_distance());
        least_divisor = least_divisor.min(div);
    }
    Ok(format!("max closure {worst:.1e}, min divisor distance {least_divisor:.1e}"))
}

fn displayed_b2<T: Scalar>(e: T, d: T) -> T {
    let s = d.clone() + T::from_i64(2) * e.clone();
    let u = d.square();
    let poly = T::from_i64(4) * (u.clone() - T::from_i64(4)) * e.square()
        + T::from_i64(4) * d.clone() * (u.clone() - T::from_i64(3)) * e.clone()
        + u.square()
        - T::from_i64(2) * u
        - T::from_i64(3);
    let r2 = T::one() + T::from_i64(2) * d * e.clone() + T::from_i64(4) * e.square();
    -(s.square() * poly) / (T::from_i64(2) * r2.abs())
}

fn c6_b2_closed_form() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst_rel = 0.0f64;
    let mut exact_misses = 0;
    let mut sampled = 0;
    while sampled < 100 {
        let (en, ed) = (rng.random_range(1..60i64), rng.random_range(2..60i64));
        let (dn, dd) = (rng.random_range(-40..120i64), rng.random_range(1..30i64));
        let pe = exact((-en, ed), (dn, dd));
        if !pe.is_regular() || !pe.r_squared().sign(0.0).is_gt() {
            continue;
        }
        sampled += 1;
        let pf = pe.to_f64();
        let b2 = cayley_coefficients(&pf, 2).map_err(err)?[2];
        let shown = displayed_b2(*pf.energy(), *pf.second_integral());
        if shown != 0.0 {
            worst_rel = worst_rel.max(((b2.abs() - shown.abs()) / shown.abs()).abs());
        }
        let b2x = cayley_coefficients(&pe, 2).map_err(err)?[2].clone();
        let shownx = displayed_b2(pe.energy().clone(), pe.second_integral().clone());
        if b2x.abs() != shownx.abs() {
            exact_misses += 1;
        }
    }
    ensure(
        worst_rel < 1e-12 && exact_misses == 0,
        format!("max relative deviation {worst_rel:.3e}, exact mismatches {exact_misses}/100"),
    )?;
    Ok("all 100 samples match".into())
}

fn c7_caustics() -> Outcome {
    let p = SystemParams::new(-7.0 / 24.0, 1.75);
    let s0 = WallState::from_circle_angle(&p, 0.7, WallRoot::Plus).map_err(err)?;
    let rep = verify_caustic_along_orbit(&p, &s0, 100).map_err(err)?;
    ensure(rep.records.len() == 200, "expected 200 records")?;
    ensure(
        rep.max_tangency_residual < 1e-8 && rep.max_collinearity < 1e-10,
        format!("tangency {:e}, collinearity {:e}", rep.max_tangency_residual, rep.max_collinearity),
    )?;
    Ok(format!(
        "max tangency residual {:.1e}, max collinearity {:.1e}",
        rep.max_tangency_residual, rep.max_collinearity
    ))
}

fn c8_focal() -> Outcome {
    let p = exact((-1, 3), (2, 1));
    let s0 = WallState::from_lrl(&p, q(1, 5), q(-2, 5), WallRoot::Plus).map_err(err)?;
    let rep = focal_property_run(&p, &s0, 50).map_err(err)?;
    let last = rep.arcs.last().ok_or("empty run")?;
    ensure(rep.max_residual_at_f < 1e-8, format!("arc misses F by {:e}", rep.max_residual_at_f))?;
    ensure(rep.strictly_increasing, "focus heights not strictly increasing")?;
    ensure(rep.bounded && rep.upper_bound == 3.0, format!("bound {} violated", rep.upper_bound))?;
    ensure(rep.tail_monotone && last.abs_a1 < 1e-3, format!("final |A1| = {:e}", last.abs_a1))?;
    let s = &last.state;
    ensure(
        s.x.abs() < 1e-3 && s.a1.abs() < 1e-3 && (s.a2 + 1.0).abs() < 1e-3,
        format!("final state {s:?}"),
    )?;
    Ok(format!("final |A1| = {:.1e}, final focus height {:.12}", last.abs_a1, last.focus_x2))
}

fn c9_properties() -> Outcome {
    let mut runner = TestRunner::new(Config {
        cases: 1000,
        failure_persistence: None,
        ..Config::default()
    });
    // (E, D) with margins from every boundary of the region, D < 2 or D > 2.
    let params = (-0.95f64..-0.05, 0.05f64..0.95, 0.0f64..std::f64::consts::TAU, any::<bool>()).prop_filter_map(
        "regular interior",
        |(e, frac, theta, plus)| {
            let lo = -2.0 * e + 0.05;
            let hi = if e > -0.5 { 4.0 } else { 1.95 };
            let d = lo + frac * (hi - lo);
            let p = SystemParams::new(e, d);
            let ok = p.classify().tag == ParameterTag::RegularInterior
                && (d - 2.0).abs() > 0.05
                && *p.r_squared() > 0.01;
            let root = if plus { WallRoot::Plus } else { WallRoot::Minus };
            ok.then(|| (p.clone(), WallState::from_circle_angle(&p, theta, root).ok()))
                .and_then(|(p, s)| s.map(|s| (p, s)))
        },
    );
    let worst = std::cell::Cell::new([0.0f64; 4]);
    let result = runner.run(&params, |(p, s)| {
        let back_i = s.involution_i(&p).and_then(|t| t.involution_i(&p)).map_err(|e| TestCaseError::fail(err(e)))?;
        let back_j = s.involution_j(&p).involution_j(&p);
        let r = *p.r().unwrap();
        let e = *p.energy();
        let orbit = s.orbit(&p, 1000).map_err(|e| TestCaseError::fail(err(e)))?;
        let drift = orbit.iter().map(|t| t.max_residual(&p)).fold(0.0, f64::max);
        let on_circle = orbit
            .iter()
            .map(|t| {
                let [f1, f2] = t.second_focus(&p);
                (f1.hypot(f2 - 2.0) - r / e.abs()).abs()
            })
            .fold(0.0, f64::max);
        let dev = [s.distance(&back_i), s.distance(&back_j), drift, on_circle];
        let mut w = worst.get();
        for (w, d) in w.iter_mut().zip(dev) {
            *w = w.max(d);
        }
        worst.set(w);
        prop_assert!(dev[0] < 1e-10 && dev[1] < 1e-10, "involution defect {dev:?}");
        prop_assert!(dev[2] < 1e-10, "constraint drift {}", dev[2]);
        prop_assert!(dev[3] < 1e-10, "focus off circle by {}", dev[3]);
        Ok(())
    });
    result.map_err(|e| e.to_string())?;
    let worst = worst.get();
    Ok(format!(
        "1000 cases: i∘i {:.1e}, j∘j {:.1e}, drift {:.1e}, circle {:.1e}",
        worst[0], worst[1], worst[2], worst[3]
    ))
}

fn c10_fomenko() -> Outcome {
    let zero = Rational64::from_integer(0);
    let check_edges = |g: &FomenkoGraph| g.edges.iter().all(|e| e.r == zero && e.epsilon == 1);
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..50 {
        let e = rng.random_range(-1.0..-0.5);
        if e <= -1.0 {
            continue;
        }
        let g = fomenko_graph(e).map_err(err)?;
        let kinds: Vec<_> = g.atoms.iter().map(|a| a.kind).collect();
        ensure(
            kinds == [AtomKind::A, AtomKind::A] && g.edges.len() == 1 && check_edges(&g) && g.families.is_empty(),
            format!("E = {e}: {g:?}"),
        )?;
    }
    for _ in 0..50 {
        let e = rng.random_range(-0.5..0.0);
        if e == -0.5 {
            continue;
        }
        let g = fomenko_graph(e).map_err(err)?;
        let kinds: Vec<_> = g.atoms.iter().map(|a| a.kind).collect();
        let star = kinds.iter().position(|k| *k == AtomKind::AStar).ok_or("no A* atom")?;
        ensure(
            kinds.iter().filter(|k| **k == AtomKind::A).count() == 2
                && g.edges.len() == 2
                && g.edges.iter().all(|ed| ed.from == star || ed.to == star)
                && check_edges(&g)
                && g.families == vec![Family { atoms: vec![star], n: 0 }],
            format!("E = {e}: {g:?}"),
        )?;
    }
    Ok("50 + 50 energies match the two graphs".into())
}

fn c11_singular() -> Outcome {
    let wall = singular_orbit_description(&exact((-1, 2), (1, 1))).map_err(err)?;
    let s3 = 3f64.sqrt();
    ensure(
        wall.class.tag == ParameterTag::BoundaryWallMotion
            && wall.orbit == SingularOrbit::WallMotion { segment: [[-s3, 1.0], [s3, 1.0]] },
        format!("{wall:?}"),
    )?;

    let two = singular_orbit_description(&exact((-1, 4), (5, 2))).map_err(err)?;
    match &two.orbit {
        SingularOrbit::TwoPeriodic {
            semi_axis_horizontal,
            semi_axis_vertical,
            ellipse,
        } => ensure(
            two.class.tag == ParameterTag::BoundaryTwoPeriodic
                && (semi_axis_horizontal - s3).abs() < 1e-12
                && (semi_axis_vertical - 2.0).abs() < 1e-12
                && ellipse.center == [0.0, 1.0],
            format!("{two:?}"),
        )?,
        other => return Err(format!("{other:?}")),
    }

    let low = singular_orbit_description(&exact((-3, 4), (2, 1))).map_err(err)?;
    ensure(
        low.class.tag == ParameterTag::BoundaryD2Low
            && matches!(low.orbit, SingularOrbit::Vertical { segment, separatrix: false }
                if segment[0] == [0.0, 1.0] && (segment[1][1] - 4.0 / 3.0).abs() < 1e-12),
        format!("{low:?}"),
    )?;

    let high = singular_orbit_description(&exact((-1, 3), (2, 1))).map_err(err)?;
    ensure(
        high.class.tag == ParameterTag::BoundaryD2High
            && high.orbit
                == SingularOrbit::Vertical {
                    segment: [[0.0, 1.0], [0.0, 2.0]],
                    separatrix: true,
                },
        format!("{high:?}"),
    )?;
    Ok("all four singular level sets reproduced".into())
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome, Duration); 11] = [
        ("period-3 exactness", c1_period_three, Duration::from_secs(1)),
        ("period-4 exactness", c2_period_four, Duration::from_secs(1)),
        ("period-6 exactness", c3_period_six, Duration::from_secs(1)),
        ("period-5 root", c4_period_five, Duration::from_secs(5)),
        ("Poncelet closure", c5_poncelet, Duration::from_secs(10)),
        ("B2 closed form", c6_b2_closed_form, Duration::from_secs(10)),
        ("caustic tangency", c7_caustics, Duration::from_secs(5)),
        ("focal property", c8_focal, Duration::from_secs(5)),
        ("involutions and conservation", c9_properties, Duration::from_secs(30)),
        ("Fomenko classification", c10_fomenko, Duration::from_secs(1)),
        ("singular level sets", c11_singular, Duration::from_secs(1)),
    ];
    let mut failed = Vec::new();
    let mut out = std::io::stdout().lock();
    for (k, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let verdict = match (&outcome, took <= *budget) {
            (Ok(msg), true) => format!("PASS  {msg}"),
            (Ok(msg), false) => format!("FAIL  over budget {budget:?}: {msg}"),
            (Err(msg), _) => format!("FAIL  {msg}"),
        };
        if !verdict.starts_with("PASS") {
            failed.push(k + 1);
        }
        writeln!(out, "criterion {:>2} [{name}] {verdict} ({:.3}s)", k + 1, took.as_secs_f64()).unwrap();
    }
    out.flush().unwrap();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
