//! Scalar modes: exact big rationals and `f64`.
//!
//! Every algebraic structure in the crate is generic over [`Scalar`].  The
//! exact mode is used for coefficient-identity checks (convolution identities,
//! Poisson limit, mixed discriminants); the float mode for Monte Carlo,
//! quadrature and root extraction.  Conversions are explicit.

#[allow(unused_imports)] // f64 math comes from the Float trait in no_std
use num_traits::{Float, FromPrimitive, Num, Signed, ToPrimitive};

/// Exact rational scalar backed by arbitrary-precision integers.
pub type Rat = num_rational::BigRational;

pub trait Scalar:
    Num
    + Signed
    + Clone
    + PartialOrd
    + FromPrimitive
    + ToPrimitive
    + core::fmt::Debug
    + core::fmt::Display
    + 'static
{
    /// True when arithmetic is exact (equality is coefficient identity).
    const EXACT: bool;

    fn from_int(n: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn to_f64_lossy(&self) -> f64;
    /// Exact binary expansion of a float (rational mode) or the float itself.
    fn from_f64_lossy(v: f64) -> Self;
    /// True when the value is an integer (exactly in rational mode, within
    /// `1e-9` in float mode).
    fn is_integral(&self) -> bool;
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_int(n: i64) -> Self {
        n as f64
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
    fn to_f64_lossy(&self) -> f64 {
        *self
    }
    fn from_f64_lossy(v: f64) -> Self {
        v
    }
    fn is_integral(&self) -> bool {
        (*self - Float::round(*self)).abs() <= 1e-9
    }
}

impl Scalar for Rat {
    const EXACT: bool = true;

    fn from_int(n: i64) -> Self {
        Rat::from_integer(n.into())
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Rat::new(num.into(), den.into())
    }
    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
    fn from_f64_lossy(v: f64) -> Self {
        Rat::from_float(v).expect("finite float")
    }
    fn is_integral(&self) -> bool {
        self.is_integer()
    }
}

/// Binomial coefficient computed multiplicatively; exact in rational mode and
/// overflow-free in float mode for the sizes used here.
pub fn binomial<T: Scalar>(n: usize, k: usize) -> T {
    if k > n {
        return T::zero();
    }
    let k = k.min(n - k);
    let mut acc = T::one();
    for i in 0..k {
        acc = acc * T::from_int((n - k + 1 + i) as i64) / T::from_int((i + 1) as i64);
    }
    acc
}

/// Falling factorial `n (n-1) ... (n-k+1)` as a scalar.
pub fn falling<T: Scalar>(n: i64, k: usize) -> T {
    let mut acc = T::one();
    for i in 0..k {
        acc = acc * T::from_int(n - i as i64);
    }
    acc
}
