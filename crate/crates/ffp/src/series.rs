//! Truncated formal power series arithmetic (mod `s^k`).
//!
//! A series of order `k` carries exactly `k` coefficients; no operation ever
//! claims a coefficient at index `>= k`.  Binary operations truncate to the
//! smaller order.  `ln`/`exp` use the standard `O(k^2)` recurrences and are
//! mutually inverse mod `s^k`; compositional reversion runs Newton iteration
//! with doubling precision.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<T: Scalar> {
    coeffs: Vec<T>,
}

impl<T: Scalar> TruncatedSeries<T> {
    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "series order must be positive");
        TruncatedSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![T::zero(); order.max(1)],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = T::one();
        s
    }

    /// The identity series `s` (requires order >= 2).
    pub fn identity(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 2 {
            s.coeffs[1] = T::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn truncated(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(order.max(1));
        while coeffs.len() < order {
            coeffs.push(T::zero());
        }
        TruncatedSeries { coeffs }
    }

    pub fn add(&self, other: &Self) -> Self {
        let k = self.order().min(other.order());
        TruncatedSeries {
            coeffs: (0..k).map(|i| self.coeff(i) + other.coeff(i)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let k = self.order().min(other.order());
        TruncatedSeries {
            coeffs: (0..k).map(|i| self.coeff(i) - other.coeff(i)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let k = self.order().min(other.order());
        let mut coeffs = vec![T::zero(); k];
        for i in 0..k {
            if self.coeff(i).is_zero() {
                continue;
            }
            for j in 0..k - i {
                coeffs[i + j] =
                    coeffs[i + j].clone() + self.coeff(i) * other.coeff(j);
            }
        }
        TruncatedSeries { coeffs }
    }

    /// Formal derivative; order drops by one.
    pub fn derive(&self) -> Self {
        if self.order() == 1 {
            return Self::zero(1);
        }
        TruncatedSeries {
            coeffs: (1..self.order())
                .map(|i| self.coeff(i) * T::from_int(i as i64))
                .collect(),
        }
    }

    /// Formal antiderivative with zero constant term; order grows by one.
    pub fn integrate(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.order() + 1);
        coeffs.push(T::zero());
        for i in 0..self.order() {
            coeffs.push(self.coeff(i) / T::from_int((i + 1) as i64));
        }
        TruncatedSeries { coeffs }
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn invert(&self) -> Result<Self> {
        let c0 = self.coeff(0);
        if c0.is_zero() {
            return Err(Error::NotInvertible);
        }
        let k = self.order();
        let inv0 = T::one() / c0.clone();
        let mut out = vec![T::zero(); k];
        out[0] = inv0.clone();
        for n in 1..k {
            let mut acc = T::zero();
            for j in 1..=n {
                acc = acc + self.coeff(j) * out[n - j].clone();
            }
            out[n] = -(inv0.clone() * acc);
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// `ln` of a series with constant term 1.
    pub fn ln(&self) -> Result<Self> {
        if !self.coeff(0).is_one() {
            return Err(Error::InvalidConstantTerm);
        }
        let k = self.order();
        // n L_n = n f_n - sum_{j=1}^{n-1} j L_j f_{n-j}
        let mut out = vec![T::zero(); k];
        for n in 1..k {
            let mut acc = T::from_int(n as i64) * self.coeff(n);
            for j in 1..n {
                acc = acc - T::from_int(j as i64) * out[j].clone() * self.coeff(n - j);
            }
            out[n] = acc / T::from_int(n as i64);
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// `exp` of a series with constant term 0.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeff(0).is_zero() {
            return Err(Error::InvalidConstantTerm);
        }
        let k = self.order();
        // n g_n = sum_{j=1}^{n} j f_j g_{n-j}
        let mut out = vec![T::zero(); k];
        out[0] = T::one();
        for n in 1..k {
            let mut acc = T::zero();
            for j in 1..=n {
                acc = acc + T::from_int(j as i64) * self.coeff(j) * out[n - j].clone();
            }
            out[n] = acc / T::from_int(n as i64);
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// Composition `self(g)`; requires `g(0) = 0`.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        if !g.coeff(0).is_zero() {
            return Err(Error::InvalidConstantTerm);
        }
        let k = self.order().min(g.order());
        let g = g.truncated(k);
        let mut acc = TruncatedSeries::zero(k);
        for i in (0..self.order().min(k)).rev() {
            acc = acc.mul(&g);
            acc.coeffs[0] = acc.coeffs[0].clone() + self.coeff(i);
        }
        // Horner: remaining self-coefficients beyond k never contribute.
        Ok(acc)
    }

    /// Compositional inverse: `self(revert(self)) = s mod s^k`.  Newton
    /// iteration with doubling precision.
    pub fn revert(&self) -> Result<Self> {
        if !self.coeff(0).is_zero() {
            return Err(Error::NotInvertible);
        }
        let c1 = self.coeff(1);
        if c1.is_zero() {
            return Err(Error::NotInvertible);
        }
        let k = self.order();
        let deriv_full = self.derive();
        let mut g = TruncatedSeries::from_coeffs(vec![T::zero(), T::one() / c1]);
        let mut prec = 2usize;
        while prec < k {
            prec = (prec * 2).min(k);
            let gp = g.truncated(prec);
            let f = self.truncated(prec);
            let err = f.compose(&gp)?.sub(&TruncatedSeries::identity(prec));
            let dfg = deriv_full.truncated(prec).compose(&gp)?;
            g = gp.sub(&err.mul(&dfg.invert()?));
        }
        Ok(g.truncated(k))
    }

    pub fn to_f64(&self) -> TruncatedSeries<f64> {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| c.to_f64_lossy()).collect(),
        }
    }

    pub fn max_coeff_dev(&self, other: &Self) -> f64 {
        let k = self.order().min(other.order());
        (0..k)
            .map(|i| (self.coeff(i) - other.coeff(i)).to_f64_lossy().abs())
            .fold(0.0, f64::max)
    }
}

/// A simple-pole Laurent expansion `pole/s + tail(s)`; the carrier of the
/// m-finite K-transform.  The pole of the zero distribution is `1 + 1/m`.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentK<T: Scalar> {
    pub pole: T,
    pub tail: TruncatedSeries<T>,
}
