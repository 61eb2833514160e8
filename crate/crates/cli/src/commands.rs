use std::io::Write;

use boltzmann::cayley::{closed_form_condition, period_check, CayleyCurve};
use boltzmann::geometry::fomenko_graph;
use boltzmann::search::{scan::scan_periodicity_with, verify_poncelet, ScanGrid, Verdict};
use boltzmann::{QuadExt, Scalar, SystemParams, Tolerances};
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};
use crate::number::Number;

pub fn mode(exact: bool) -> &'static str {
    if exact {
        "exact"
    } else {
        "float"
    }
}

fn show<T: Scalar>(v: &T) -> Value {
    json!({ "value": v.to_string(), "approx": v.to_f64() })
}

fn cayley_report<T: Scalar>(p: &SystemParams<T>, n_max: usize) -> CliResult<Value> {
    let curve = CayleyCurve::new(p)?;
    let coefficients: Vec<Value> = curve
        .coefficients(n_max - 1)?
        .iter()
        .enumerate()
        .map(|(k, b)| json!({ "k": k, "value": b.to_string(), "approx": b.to_f64() }))
        .collect();
    let mut determinants = Vec::new();
    for n in 3..=n_max {
        let chk = period_check(p, n)?;
        let closed = closed_form_condition(n, p).ok();
        determinants.push(json!({
            "n": n,
            "value": chk.determinant.to_string(),
            "approx": chk.determinant.to_f64(),
            "is_zero": chk.vanishes,
            "contaminating_divisors": chk.contaminating_divisors,
            "is_period_n": chk.is_period_n,
            "closed_form": closed.as_ref().map(show),
        }));
    }
    Ok(json!({
        "mode": mode(T::EXACT),
        "E": show(p.energy()),
        "D": show(p.second_integral()),
        "r_squared": show(p.r_squared()),
        "R": p.r().map(show),
        "coefficients": coefficients,
        "determinants": determinants,
        "diagnostics": {
            "k_squared": curve.k_squared.as_ref().map(show),
            "s0": curve.s0.as_ref().map(show),
        },
    }))
}

pub fn cayley(e: &Number, d: &Number, n_max: usize, tol: Tolerances) -> CliResult<Value> {
    if n_max < 3 {
        return Err(CliError::Usage(format!("--n-max must be at least 3, got {n_max}")));
    }
    match (&e.exact, &d.exact) {
        (Some(ex), Some(dx)) => {
            cayley_report(&SystemParams::<QuadExt>::new(ex.clone(), dx.clone()).with_tolerances(tol), n_max)
        }
        _ => cayley_report(&SystemParams::new(e.value, d.value).with_tolerances(tol), n_max),
    }
}

/// Writes one row per cell of the closed region.
pub fn scan<W: Write>(grid: &ScanGrid, n_max: usize, tol: Tolerances, out: W) -> CliResult<usize> {
    let result = scan_periodicity_with(grid, n_max, &tol)?;
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["E".to_string(), "D".to_string(), "in_region".to_string()];
    header.extend((3..=n_max).map(|n| format!("det{n}")));
    header.push("flags".into());
    w.write_record(&header)?;
    let mut rows = 0;
    for cell in result.admissible() {
        let mut rec = vec![
            cell.energy.to_string(),
            cell.second_integral.to_string(),
            cell.in_region.to_string(),
        ];
        rec.extend(cell.determinants.iter().map(|v| v.map(|v| v.to_string()).unwrap_or_default()));
        rec.push(cell.flags.join(";"));
        w.write_record(&rec)?;
        rows += 1;
    }
    w.flush()?;
    Ok(rows)
}

pub fn fomenko(e: &Number) -> CliResult<(Value, String)> {
    let graph = fomenko_graph(e.value)?;
    let text = graph.to_string();
    Ok((
        json!({
            "E": { "value": e.text, "approx": e.value },
            "mode": mode(e.exact.is_some()),
            "graph": graph,
            "text": text,
        }),
        text,
    ))
}

pub fn verify(e: &Number, d: &Number, n: usize, starts: usize, seed: u64, tol: Tolerances) -> CliResult<(Value, bool)> {
    let p = SystemParams::new(e.value, d.value).with_tolerances(tol);
    let report = verify_poncelet(&p, n, starts, seed)?;
    let periodic = report.verdict == Verdict::Periodic;
    let mut v = serde_json::to_value(&report)?;
    v["mode"] = json!("float");
    v["E"] = json!(e.value);
    v["D"] = json!(d.value);
    v["max_closure_distance"] = json!(report.max_closure_distance());
    Ok((v, periodic))
}
