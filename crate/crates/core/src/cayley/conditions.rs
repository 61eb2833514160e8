//! Taylor coefficients of the square-rooted cubic and the Hankel
//! determinants whose vanishing characterises `n`-periodic level sets.
//!
//! The cubic is expanded as
//! `Q(ξ) = (R − 2Sξ)(4RS²ξ² + 2S(D² + 2DE − 2)ξ + R)` with `S = D + 2E`,
//! so `Q(0) = R² > 0` and `√Q` has the real constant term `B₀ = R`. The sign
//! flip relative to `(2Sξ − R)(…)` multiplies every coefficient by the same
//! unit, which cannot change whether a Hankel determinant vanishes.

use crate::cayley::series::TruncatedSeries;
use crate::error::{Error, Result};
use crate::kepler::params::SystemParams;
use crate::scalar::Scalar;

#[derive(Debug, Clone)]
pub struct CayleyCurve<T> {
    pub params: SystemParams<T>,
    /// Coefficients of `Q(ξ)`, constant term first.
    pub cubic: [T; 4],
    /// `k² = (D + 4E − 2R)/(D + 4E + 2R)`; `None` when the denominator vanishes.
    pub k_squared: Option<T>,
    /// `s₀ = (D + 2E + R)/(D + 2E − R)`; `None` when the denominator vanishes.
    pub s0: Option<T>,
}

impl<T: Scalar> CayleyCurve<T> {
    pub fn new(p: &SystemParams<T>) -> Result<Self> {
        p.check_regular()?;
        let r = p.require_r()?.clone();
        let e = p.energy().clone();
        let d = p.second_integral().clone();
        let s = p.d_plus_2e();
        let c = |v: i64| T::from_i64(v);

        // (R − 2Sξ)(R + 2S(D² + 2DE − 2)ξ + 4RS²ξ²)
        let lin = [r.clone(), -(c(2) * s.clone())];
        let quad = [
            r.clone(),
            c(2) * s.clone() * (d.square() + c(2) * d.clone() * e.clone() - c(2)),
            c(4) * r.clone() * s.square(),
        ];
        let cubic = [
            lin[0].clone() * quad[0].clone(),
            lin[0].clone() * quad[1].clone() + lin[1].clone() * quad[0].clone(),
            lin[0].clone() * quad[2].clone() + lin[1].clone() * quad[1].clone(),
            lin[1].clone() * quad[2].clone(),
        ];

        let tol = p.tolerances().class;
        let ratio = |num: T, den: T| (!den.is_zero_within(tol)).then(|| num / den);
        let d4e = d.clone() + c(4) * e.clone();
        let k_squared = ratio(d4e.clone() - c(2) * r.clone(), d4e + c(2) * r.clone());
        let s0 = ratio(s.clone() + r.clone(), s - r);

        Ok(CayleyCurve {
            params: p.clone(),
            cubic,
            k_squared,
            s0,
        })
    }

    pub fn radicand_series(&self, order: usize) -> TruncatedSeries<T> {
        TruncatedSeries::new(self.cubic.to_vec(), order)
    }

    /// `B₀ … B_order`.
    pub fn coefficients(&self, order: usize) -> Result<Vec<T>> {
        Ok(self.radicand_series(order).sqrt()?.into_coeffs())
    }
}

/// Taylor coefficients `B₀ … B_order` of `√Q(ξ)` at `ξ = 0`, with `B₀ = R`.
pub fn cayley_coefficients<T: Scalar>(p: &SystemParams<T>, order: usize) -> Result<Vec<T>> {
    CayleyCurve::new(p)?.coefficients(order)
}

/// The Hankel matrix for period `n` built from `b = [B₀, B₁, …]`.
///
/// `n = 2m + 1`: `m × m` with entries `B_{i+j}`; `n = 2m`: `(m − 1) × (m − 1)`
/// with entries `B_{i+j+1}`, indices `i, j` starting at 1. Both need
/// coefficients up to `B_{n−1}`.
pub fn hankel_matrix<T: Scalar>(b: &[T], n: usize) -> Result<Vec<Vec<T>>> {
    if n < 3 {
        return Err(Error::UnsupportedPeriod(n));
    }
    if b.len() < n {
        return Err(Error::InvalidInput(format!(
            "period {n} needs B_0..B_{}, got {} coefficients",
            n - 1,
            b.len()
        )));
    }
    let (size, offset) = if n % 2 == 1 { (n / 2, 2) } else { (n / 2 - 1, 3) };
    Ok((0..size)
        .map(|i| (0..size).map(|j| b[i + j + offset].clone()).collect())
        .collect())
}

/// Determinant whose vanishing is the period-`n` condition.
pub fn cayley_determinant<T: Scalar>(p: &SystemParams<T>, n: usize) -> Result<T> {
    if n < 3 {
        return Err(Error::UnsupportedPeriod(n));
    }
    let b = cayley_coefficients(p, n - 1)?;
    Ok(T::determinant(hankel_matrix(&b, n)?))
}

fn poly_in<T: Scalar>(x: &T, ascending: &[i64]) -> T {
    ascending
        .iter()
        .rev()
        .fold(T::zero(), |acc, &c| acc * x.clone() + T::from_i64(c))
}

/// The explicit polynomial conditions in `(E, D)` for `n = 3, 4, 5, 6`.
///
/// These are evaluated directly from their factored/expanded forms and
/// serve as an independent check on [`cayley_determinant`].
pub fn closed_form_condition<T: Scalar>(n: usize, p: &SystemParams<T>) -> Result<T> {
    let e = p.energy().clone();
    let d = p.second_integral().clone();
    let u = d.square();
    let s = p.d_plus_2e();
    let c = |v: i64| T::from_i64(v);

    let period3 = || {
        c(4) * (u.clone() - c(4)) * e.square()
            + c(4) * d.clone() * (u.clone() - c(3)) * e.clone()
            + u.square()
            - c(2) * u.clone()
            - c(3)
    };
    let d2_2de_1 = || u.clone() + c(2) * d.clone() * e.clone() - c(1);

    match n {
        3 => Ok(period3()),
        4 => Ok(d2_2de_1() * (s.square() * (u.clone() - c(4)) - c(1))),
        5 => {
            let um4 = u.clone() - c(4);
            let e2 = e.square();
            let e3 = e2.clone() * e.clone();
            let e4 = e2.square();
            let e5 = e4.clone() * e.clone();
            let e6 = e3.square();
            let terms = [
                poly_in(&u, &[5, 42, -169, 60, 3, -6, 1]),
                c(64) * um4.clone() * um4.clone() * um4.clone() * e6,
                c(64) * um4.clone() * poly_in(&u, &[52, -21, 3]) * d.clone() * e5,
                c(16) * um4.clone() * poly_in(&u, &[4, 251, -90, 15]) * e4,
                c(32) * um4 * poly_in(&u, &[13, 71, -25, 5]) * d.clone() * e3,
                c(4) * poly_in(&u, &[52, -537, -452, 386, -120, 15]) * e2,
                c(4) * poly_in(&u, &[47, -257, 22, 46, -21, 3]) * d.clone() * e.clone(),
            ];
            Ok(terms.into_iter().fold(T::zero(), |acc, t| acc + t))
        }
        6 => {
            let second = d2_2de_1().square() - c(4) * s.square();
            let third = c(-1)
                + (u.clone() - c(4))
                    * s.square()
                    * ((c(3) * u.clone() - c(4)) * s.square() + c(16) * e.clone() * s.clone() + c(6));
            Ok(period3() * second * third)
        }
        _ => Err(Error::UnsupportedPeriod(n)),
    }
}

/// Period-`n` verdict with divisor contamination removed.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodCheck<T> {
    pub n: usize,
    pub determinant: T,
    pub vanishes: bool,
    /// Proper divisors `d ≥ 2` of `n` whose own condition also vanishes.
    pub contaminating_divisors: Vec<usize>,
    pub is_period_n: bool,
}

/// Evaluates the period-`n` determinant and reports it as a genuine period
/// only when no proper divisor `d ≥ 2` of `n` already satisfies its own
/// condition (`d = 2` is the curve `1 + 2DE + 4E² = 0`).
///
/// Floating determinants count as zero below the classification tolerance.
pub fn period_check<T: Scalar>(p: &SystemParams<T>, n: usize) -> Result<PeriodCheck<T>> {
    let tol = p.tolerances().class;
    let determinant = cayley_determinant(p, n)?;
    let vanishes = determinant.is_zero_within(tol);
    let mut contaminating_divisors = Vec::new();
    if vanishes {
        for k in (2..n).filter(|k| n % k == 0) {
            let hit = if k == 2 {
                p.r_squared().is_zero_within(tol)
            } else {
                cayley_determinant(p, k)?.is_zero_within(tol)
            };
            if hit {
                contaminating_divisors.push(k);
            }
        }
    }
    Ok(PeriodCheck {
        n,
        is_period_n: vanishes && contaminating_divisors.is_empty(),
        determinant,
        vanishes,
        contaminating_divisors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::quadext::QuadExt;

    fn exact(e: (i64, i64), d: (i64, i64)) -> SystemParams<QuadExt> {
        SystemParams::new(QuadExt::from_ratio_i64(e.0, e.1), QuadExt::from_ratio_i64(d.0, d.1))
    }

    #[test]
    fn hankel_shapes() {
        let b: Vec<f64> = (0..12).map(|k| k as f64).collect();
        assert_eq!(hankel_matrix(&b, 3).unwrap(), vec![vec![2.0]]);
        assert_eq!(hankel_matrix(&b, 4).unwrap(), vec![vec![3.0]]);
        assert_eq!(hankel_matrix(&b, 5).unwrap(), vec![vec![2.0, 3.0], vec![3.0, 4.0]]);
        assert_eq!(hankel_matrix(&b, 6).unwrap(), vec![vec![3.0, 4.0], vec![4.0, 5.0]]);
        assert_eq!(
            hankel_matrix(&b, 7).unwrap(),
            vec![vec![2.0, 3.0, 4.0], vec![3.0, 4.0, 5.0], vec![4.0, 5.0, 6.0]]
        );
        assert_eq!(
            hankel_matrix(&b, 8).unwrap(),
            vec![vec![3.0, 4.0, 5.0], vec![4.0, 5.0, 6.0], vec![5.0, 6.0, 7.0]]
        );
        assert_eq!(hankel_matrix(&b, 2), Err(Error::UnsupportedPeriod(2)));
        assert!(hankel_matrix(&b[..4], 6).is_err());
    }

    #[test]
    fn leading_coefficients() {
        let p = exact((-5, 24), (7, 4));
        let b = cayley_coefficients(&p, 4).unwrap();
        assert_eq!(b[0], QuadExt::from_ratio_i64(2, 3));
        assert_eq!(b[2], QuadExt::zero());
        // B₁ = S(D² + 2DE − 3)
        let s = p.d_plus_2e();
        let d = p.second_integral().clone();
        let e = p.energy().clone();
        assert_eq!(b[1], s * (d.clone() * d.clone() + QuadExt::from(2) * d * e - QuadExt::from(3)));
    }

    #[test]
    fn singular_parameters_are_rejected() {
        assert_eq!(
            cayley_coefficients(&exact((-1, 3), (2, 1)), 3).unwrap_err(),
            Error::SingularParameters { condition: "D^2 != 4" }
        );
        assert_eq!(
            cayley_determinant(&exact((-5, 24), (7, 4)), 2),
            Err(Error::UnsupportedPeriod(2))
        );
        assert_eq!(closed_form_condition(7, &exact((-5, 24), (7, 4))), Err(Error::UnsupportedPeriod(7)));
    }

    #[test]
    fn diagnostics() {
        let curve = CayleyCurve::new(&exact((-5, 24), (7, 4))).unwrap();
        // D + 4E = 11/12, R = 2/3
        assert_eq!(curve.k_squared, Some(QuadExt::from_ratio_i64(-5, 27)));
        // D + 2E = 4/3
        assert_eq!(curve.s0, Some(QuadExt::from(3)));
        assert_eq!(curve.cubic[0], QuadExt::from_ratio_i64(4, 9));
    }

    #[test]
    fn period_six_is_contaminated_at_period_three_parameters() {
        let chk = period_check(&exact((-5, 24), (7, 4)), 6).unwrap();
        assert!(chk.vanishes);
        assert_eq!(chk.contaminating_divisors, vec![3]);
        assert!(!chk.is_period_n);

        let chk = period_check(&exact((-31, 140), (4, 5)), 6).unwrap();
        assert!(chk.is_period_n);
        let chk = period_check(&exact((-5, 24), (7, 4)), 3).unwrap();
        assert!(chk.is_period_n);
        let chk = period_check(&exact((-7, 24), (7, 4)), 3).unwrap();
        assert!(!chk.vanishes);
    }
}
