//! Coefficient fields shared by the map, the series and the determinants.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::cayley::linalg;

/// An ordered field the billiard computations can run over.
///
/// `f64` decides signs with a tolerance; exact implementations ignore the
/// tolerance argument.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn to_f64(&self) -> f64;

    /// Sign of the value; `f64` treats `|v| <= tol` as zero.
    fn sign(&self, tol: f64) -> Ordering;

    /// Principal (non-negative) square root, if it lies in the field.
    fn sqrt_principal(&self) -> Option<Self>;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }

    fn is_zero_within(&self, tol: f64) -> bool {
        self.sign(tol) == Ordering::Equal
    }

    fn abs(&self) -> Self {
        if self.sign(0.0) == Ordering::Less {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }

    /// Determinant of a square matrix given by rows.
    fn determinant(rows: Vec<Vec<Self>>) -> Self {
        linalg::determinant_exact(rows)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn sign(&self, tol: f64) -> Ordering {
        if self.abs() <= tol {
            Ordering::Equal
        } else if *self > 0.0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    fn sqrt_principal(&self) -> Option<Self> {
        (*self >= 0.0).then(|| self.sqrt())
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn determinant(rows: Vec<Vec<Self>>) -> Self {
        linalg::determinant_f64(rows)
    }
}
