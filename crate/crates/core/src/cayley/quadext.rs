//! Exact arithmetic in a real quadratic field `ℚ(√n)`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Trial-division bound used when pulling square factors out of a radicand.
const SQUARE_STRIP_LIMIT: u64 = 1 << 16;

/// `a + b·√n` with rational `a`, `b` and a positive integer radicand `n`.
///
/// The radicand is reduced on construction (square factors below a trial
/// bound pulled out, perfect squares folded into the rational part), so
/// `n = 1` means the value is rational. Values whose surd part is zero
/// combine with any field; two irrational values combine only when their
/// radicands agree. The `std::ops` impls panic on a mismatch and on
/// division by zero; the `try_*` methods report both as errors.
#[derive(Clone, Debug)]
pub struct QuadExt {
    rational: BigRational,
    surd: BigRational,
    radicand: BigInt,
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Square root of a non-negative rational when it is itself rational.
pub fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| BigRational::new(n, d))
}

/// Writes `√r` as `coef·√n` with `n` a reduced positive integer.
fn reduce_radicand(r: &BigRational) -> (BigRational, BigInt) {
    debug_assert!(r.is_positive());
    let mut n = r.numer() * r.denom();
    let mut coef = BigRational::new(BigInt::one(), r.denom().clone());
    let mut k: u64 = 2;
    while k <= SQUARE_STRIP_LIMIT {
        let kk = BigInt::from(k * k);
        if kk > n {
            break;
        }
        while (&n % &kk).is_zero() {
            n /= &kk;
            coef *= BigRational::from_integer(BigInt::from(k));
        }
        k += 1;
    }
    let s = n.sqrt();
    if &s * &s == n {
        coef *= BigRational::from_integer(s);
        n = BigInt::one();
    }
    (coef, n)
}

impl QuadExt {
    pub fn rational(q: BigRational) -> Self {
        QuadExt {
            rational: q,
            surd: BigRational::zero(),
            radicand: BigInt::one(),
        }
    }

    pub fn from_ratio_i64(n: i64, d: i64) -> Self {
        Self::rational(ratio(n, d))
    }

    /// `a + b·√r` for a non-negative rational `r`.
    pub fn new(a: BigRational, b: BigRational, r: &BigRational) -> Result<Self> {
        if r.is_negative() {
            return Err(Error::InvalidInput(format!("negative radicand {r}")));
        }
        if r.is_zero() || b.is_zero() {
            return Ok(Self::rational(a));
        }
        let (coef, n) = reduce_radicand(r);
        if n.is_one() {
            return Ok(Self::rational(a + b * coef));
        }
        Ok(QuadExt {
            rational: a,
            surd: b * coef,
            radicand: n,
        })
    }

    /// The principal square root `√r` of a non-negative rational.
    pub fn sqrt_of(r: &BigRational) -> Result<Self> {
        Self::new(BigRational::zero(), BigRational::one(), r)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rational
    }

    pub fn surd_part(&self) -> &BigRational {
        &self.surd
    }

    /// Reduced radicand `n`; `1` for values built over `ℚ`.
    pub fn radicand(&self) -> &BigInt {
        &self.radicand
    }

    pub fn is_rational(&self) -> bool {
        self.surd.is_zero()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.rational)
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.surd.is_zero()
    }

    fn common_radicand(&self, other: &Self) -> Result<BigInt> {
        if self.radicand == other.radicand || other.surd.is_zero() {
            Ok(self.radicand.clone())
        } else if self.surd.is_zero() {
            Ok(other.radicand.clone())
        } else {
            Err(Error::FieldMismatch(
                self.radicand.to_string(),
                other.radicand.to_string(),
            ))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let radicand = self.common_radicand(other)?;
        Ok(QuadExt {
            rational: &self.rational + &other.rational,
            surd: &self.surd + &other.surd,
            radicand,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other.clone())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let radicand = self.common_radicand(other)?;
        let n = BigRational::from_integer(radicand.clone());
        Ok(QuadExt {
            rational: &self.rational * &other.rational + &self.surd * &other.surd * n,
            surd: &self.rational * &other.surd + &self.surd * &other.rational,
            radicand,
        })
    }

    /// Field norm `a² − n·b²`; zero only for the zero element.
    pub fn norm(&self) -> BigRational {
        let n = BigRational::from_integer(self.radicand.clone());
        &self.rational * &self.rational - &self.surd * &self.surd * n
    }

    pub fn conjugate(&self) -> Self {
        QuadExt {
            rational: self.rational.clone(),
            surd: -self.surd.clone(),
            radicand: self.radicand.clone(),
        }
    }

    pub fn try_recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let norm = self.norm();
        let c = self.conjugate();
        Ok(QuadExt {
            rational: c.rational / &norm,
            surd: c.surd / &norm,
            radicand: c.radicand,
        })
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.try_recip()?)
    }

    /// Exact comparison with zero.
    pub fn signum_exact(&self) -> Ordering {
        let sa = self.rational.cmp(&BigRational::zero());
        let sb = self.surd.cmp(&BigRational::zero());
        match (sa, sb) {
            (a, Ordering::Equal) => a,
            (Ordering::Equal, b) => b,
            (a, b) if a == b => a,
            // opposite signs: compare a² with n·b²
            (a, _) => {
                let n = BigRational::from_integer(self.radicand.clone());
                let lhs = &self.rational * &self.rational;
                let rhs = &self.surd * &self.surd * n;
                match lhs.cmp(&rhs) {
                    Ordering::Greater => a,
                    Ordering::Less => a.reverse(),
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    fn sqrt_impl(&self) -> Option<Self> {
        match self.signum_exact() {
            Ordering::Less => return None,
            Ordering::Equal => return Some(Self::rational(BigRational::zero())),
            Ordering::Greater => {}
        }
        if self.surd.is_zero() {
            if let Some(s) = rational_sqrt(&self.rational) {
                return Some(Self::rational(s));
            }
            if !self.radicand.is_one() {
                // a = c²·n  =>  √a = c·√n stays in the current field
                let n = BigRational::from_integer(self.radicand.clone());
                if let Some(c) = rational_sqrt(&(&self.rational / &n)) {
                    return Some(QuadExt {
                        rational: BigRational::zero(),
                        surd: c,
                        radicand: self.radicand.clone(),
                    });
                }
            }
            // otherwise a rational adopts the field of its own square root
            return Self::sqrt_of(&self.rational).ok();
        }
        // (x + y√n)² = a + b√n  <=>  x² + n·y² = a, 2xy = b
        let n = BigRational::from_integer(self.radicand.clone());
        let disc = &self.rational * &self.rational - &self.surd * &self.surd * &n;
        let s = rational_sqrt(&disc)?;
        let two = ratio(2, 1);
        for cand in [(&self.rational + &s) / &two, (&self.rational - &s) / &two] {
            if let Some(x) = rational_sqrt(&cand) {
                if x.is_zero() {
                    continue;
                }
                let y = &self.surd / (&two * &x);
                let root = QuadExt {
                    rational: x,
                    surd: y,
                    radicand: self.radicand.clone(),
                };
                return Some(if root.signum_exact() == Ordering::Less { -root } else { root });
            }
        }
        None
    }
}

impl PartialEq for QuadExt {
    fn eq(&self, other: &Self) -> bool {
        self.rational == other.rational
            && self.surd == other.surd
            && (self.surd.is_zero() || self.radicand == other.radicand)
    }
}

impl Eq for QuadExt {}

impl PartialOrd for QuadExt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.try_sub(other).ok().map(|d| d.signum_exact())
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.surd.is_zero() {
            return write!(f, "{}", self.rational);
        }
        let surd = if self.surd.is_one() {
            format!("sqrt({})", self.radicand)
        } else {
            format!("{}*sqrt({})", self.surd.abs(), self.radicand)
        };
        match (self.rational.is_zero(), self.surd.is_negative()) {
            (true, false) => write!(f, "{surd}"),
            (true, true) if self.surd == -BigRational::one() => {
                write!(f, "-sqrt({})", self.radicand)
            }
            (true, true) => write!(f, "-{surd}"),
            (false, neg) => {
                let surd = if self.surd.abs().is_one() {
                    format!("sqrt({})", self.radicand)
                } else {
                    surd
                };
                write!(f, "{} {} {}", self.rational, if neg { "-" } else { "+" }, surd)
            }
        }
    }
}

impl FromStr for QuadExt {
    type Err = Error;

    /// Parses an integer or a `p/q` rational.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidInput(format!("not a rational literal: `{s}`"));
        let q = match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                BigRational::new(n, d)
            }
            None => BigRational::from_integer(s.parse().map_err(|_| bad())?),
        };
        Ok(Self::rational(q))
    }
}

impl From<BigRational> for QuadExt {
    fn from(q: BigRational) -> Self {
        Self::rational(q)
    }
}

impl From<i64> for QuadExt {
    fn from(v: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(v)))
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt {
            rational: -self.rational,
            surd: -self.surd,
            radicand: self.radicand,
        }
    }
}

macro_rules! panicking_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: QuadExt) -> QuadExt {
                self.$checked(&rhs).unwrap_or_else(|e| panic!("QuadExt::{}: {e}", stringify!($method)))
            }
        }

        impl<'a> $trait<&'a QuadExt> for &'a QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: &'a QuadExt) -> QuadExt {
                self.$checked(rhs).unwrap_or_else(|e| panic!("QuadExt::{}: {e}", stringify!($method)))
            }
        }
    };
}

panicking_op!(Add, add, try_add);
panicking_op!(Sub, sub, try_sub);
panicking_op!(Mul, mul, try_mul);
panicking_op!(Div, div, try_div);

impl Scalar for QuadExt {
    const EXACT: bool = true;

    fn zero() -> Self {
        Self::rational(BigRational::zero())
    }

    fn one() -> Self {
        Self::rational(BigRational::one())
    }

    fn from_i64(v: i64) -> Self {
        v.into()
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_ratio_i64(num, den)
    }

    fn to_f64(&self) -> f64 {
        let a = self.rational.to_f64().unwrap_or(f64::NAN);
        if self.surd.is_zero() {
            return a;
        }
        let b = self.surd.to_f64().unwrap_or(f64::NAN);
        let n = self.radicand.to_f64().unwrap_or(f64::NAN);
        if (a >= 0.0) == (b >= 0.0) {
            a + b * n.sqrt()
        } else {
            // a + b√n = (a² − n·b²)/(a − b√n) avoids cancellation
            self.norm().to_f64().unwrap_or(f64::NAN) / (a - b * n.sqrt())
        }
    }

    fn sign(&self, _tol: f64) -> Ordering {
        self.signum_exact()
    }

    fn sqrt_principal(&self) -> Option<Self> {
        self.sqrt_impl()
    }
}
