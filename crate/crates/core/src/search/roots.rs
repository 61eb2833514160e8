use serde::Serialize;

use crate::cayley::conditions::{cayley_determinant, closed_form_condition};
use crate::error::{Error, Result};
use crate::kepler::params::SystemParams;
use crate::tolerance::Tolerances;

/// Sub-intervals scanned for sign changes before bisecting.
const SUBDIVISIONS: usize = 256;

/// A line in the parameter plane with one coordinate held fixed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Slice {
    FixedE(f64),
    FixedD(f64),
}

impl Slice {
    pub fn params(self, t: f64) -> SystemParams<f64> {
        match self {
            Slice::FixedE(e) => SystemParams::new(e, t),
            Slice::FixedD(d) => SystemParams::new(t, d),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeriodicRoot {
    pub energy: f64,
    pub second_integral: f64,
    /// Final bisection interval in the free coordinate.
    pub bracket: [f64; 2],
    /// The explicit polynomial condition at the root, for `n ≤ 6`.
    pub closed_form: Option<f64>,
    /// Proper divisors `k ≥ 2` of `n` whose condition also vanishes here.
    pub contaminating_divisors: Vec<usize>,
    pub genuine: bool,
}

fn det(n: usize, slice: Slice, t: f64) -> Option<f64> {
    cayley_determinant(&slice.params(t), n).ok().filter(|v| v.is_finite())
}

fn bisect(n: usize, slice: Slice, mut lo: f64, mut hi: f64, f_lo: f64, width: f64) -> [f64; 2] {
    let lo_sign = f_lo.signum();
    while hi - lo > width {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        match det(n, slice, mid) {
            Some(v) if v == 0.0 => return [mid, mid],
            Some(v) if v.signum() == lo_sign => lo = mid,
            _ => hi = mid,
        }
    }
    [lo, hi]
}

fn divisor_vanishes(k: usize, slice: Slice, t: f64, tol: &Tolerances) -> bool {
    let p = slice.params(t);
    if k == 2 {
        return p.r_squared().abs() <= tol.close;
    }
    let step = 1e-9 * t.abs().max(1.0);
    match (det(k, slice, t - step), det(k, slice, t), det(k, slice, t + step)) {
        (_, Some(v), _) if v.abs() <= tol.close => true,
        (Some(a), _, Some(b)) => a.signum() != b.signum(),
        _ => false,
    }
}

/// Sign changes of the period-`n` determinant along `slice` inside
/// `bracket`, each refined by bisection to the tolerance set's bisection
/// width and checked against the proper divisors of `n`.
pub fn find_periodic_parameters(n: usize, slice: Slice, bracket: [f64; 2]) -> Result<Vec<PeriodicRoot>> {
    find_periodic_parameters_with(n, slice, bracket, &Tolerances::default())
}

pub fn find_periodic_parameters_with(
    n: usize,
    slice: Slice,
    bracket: [f64; 2],
    tol: &Tolerances,
) -> Result<Vec<PeriodicRoot>> {
    if n < 3 {
        return Err(Error::UnsupportedPeriod(n));
    }
    let [a, b] = bracket;
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(Error::InvalidInput(format!("bad bracket [{a}, {b}]")));
    }
    let grid: Vec<(f64, Option<f64>)> = (0..=SUBDIVISIONS)
        .map(|k| {
            let t = if k == SUBDIVISIONS { b } else { a + (b - a) * k as f64 / SUBDIVISIONS as f64 };
            (t, det(n, slice, t))
        })
        .collect();

    let mut found: Vec<[f64; 2]> = Vec::new();
    for w in grid.windows(2) {
        let ((t0, f0), (t1, f1)) = (w[0], w[1]);
        match (f0, f1) {
            (Some(v0), _) if v0 == 0.0 => found.push([t0, t0]),
            (Some(v0), Some(v1)) if v1 != 0.0 && v0.signum() != v1.signum() => {
                found.push(bisect(n, slice, t0, t1, v0, tol.bisection))
            }
            _ => {}
        }
    }
    if let Some((t, Some(v))) = grid.last() {
        if *v == 0.0 {
            found.push([*t, *t]);
        }
    }
    if found.is_empty() {
        return Err(Error::NoSignChange { lo: a, hi: b });
    }

    Ok(found
        .into_iter()
        .map(|iv| {
            let t = 0.5 * (iv[0] + iv[1]);
            let p = slice.params(t);
            let contaminating_divisors: Vec<usize> =
                (2..n).filter(|k| n % k == 0 && divisor_vanishes(*k, slice, t, tol)).collect();
            PeriodicRoot {
                energy: *p.energy(),
                second_integral: *p.second_integral(),
                bracket: iv,
                closed_form: closed_form_condition(n, &p).ok(),
                genuine: contaminating_divisors.is_empty(),
                contaminating_divisors,
            }
        })
        .collect())
}
