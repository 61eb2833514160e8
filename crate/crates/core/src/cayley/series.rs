//! Truncated formal power series `c₀ + c₁ξ + … + c_N ξ^N`.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> TruncatedSeries<T> {
    /// Pads or truncates `coeffs` to exactly `order + 1` terms.
    pub fn new(mut coeffs: Vec<T>, order: usize) -> Self {
        coeffs.resize(order + 1, T::zero());
        TruncatedSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order).map(|k| self.coeff(k) + other.coeff(k)).collect();
        TruncatedSeries { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order).map(|k| self.coeff(k) - other.coeff(k)).collect();
        TruncatedSeries { coeffs }
    }

    pub fn scale(&self, c: &T) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|v| v.clone() * c.clone()).collect(),
        }
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|k| {
                (0..=k).fold(T::zero(), |acc, i| {
                    acc + self.coeffs[i].clone() * other.coeffs[k - i].clone()
                })
            })
            .collect();
        TruncatedSeries { coeffs }
    }

    /// Square root with principal constant term.
    ///
    /// Solves `t² = s` term by term: `t₀ = √c₀` and
    /// `t_k = (c_k − Σ_{i=1}^{k−1} t_i t_{k−i}) / (2 t₀)`.
    pub fn sqrt(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        match c0.sign(0.0) {
            Ordering::Equal => return Err(Error::ZeroConstantTerm),
            Ordering::Less => return Err(Error::NotASquare),
            Ordering::Greater => {}
        }
        let t0 = c0.sqrt_principal().ok_or(Error::NotASquare)?;
        let two_t0 = t0.clone() + t0.clone();
        let mut t = Vec::with_capacity(self.coeffs.len());
        t.push(t0);
        for k in 1..self.coeffs.len() {
            let cross = (1..k).fold(T::zero(), |acc, i| acc + t[i].clone() * t[k - i].clone());
            t.push((self.coeffs[k].clone() - cross) / two_t0.clone());
        }
        Ok(TruncatedSeries { coeffs: t })
    }
}
