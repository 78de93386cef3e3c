//! The U transform: the unique size-`m` multiset `T` with
//! `Π (x - s_i) = E[(x - T)^m]`, equivalently `p_k = C(m,k) E[T^k]` on
//! signed coefficients.
//!
//! Moments are the canonical internal representation; roots of `T` are
//! materialized only on demand (they may be complex and ill-conditioned).
//! Moments beyond the multiset size follow the Newton-identity recurrence of
//! the degree-`m` polynomial with roots `T`, which keeps them real for real
//! input (exactly so in rational mode).
//!
//! The size is load-bearing: a larger multiset matching only the first `m`
//! moments would not inherit the realness guarantee beyond them, so the
//! transform accepts realized multisets only and always works at the
//! realization's own size.

use alloc::vec::Vec;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::poly::{Multiset, Poly};
use crate::scalar::{binomial, Scalar};

fn c<T: Scalar>(re: T) -> Complex<T> {
    Complex::new(re, T::zero())
}

/// Moments `E[T^k]` for `k = 0..=kmax` of the U transform of `S`, computed
/// by the moment solve alone (no root extraction).
pub fn u_moments<T: Scalar>(s: &Multiset<T>, kmax: usize) -> Result<Vec<Complex<T>>> {
    if s.is_empty() {
        return Err(Error::Invalid("U transform requires a nonempty multiset"));
    }
    let m = s.len();
    let coeffs = s.complex_poly_coeffs();
    // p_k = (-1)^k c_{m-k}; E[T^k] = p_k / C(m, k)
    let mut moments: Vec<Complex<T>> = Vec::with_capacity(kmax + 1);
    for k in 0..=kmax.min(m) {
        let ck = coeffs[m - k].clone();
        let signed = if k % 2 == 0 { ck } else { -ck };
        let b = binomial::<T>(m, k);
        moments.push(Complex::new(signed.re / b.clone(), signed.im / b));
    }
    if kmax > m {
        extend_moments(&mut moments, m, kmax);
    }
    Ok(moments)
}

/// Extends `E[T^k]` beyond `k = m` via the power-sum recurrence of the
/// monic polynomial with roots `T` (Newton identities, no roots needed).
fn extend_moments<T: Scalar>(moments: &mut Vec<Complex<T>>, m: usize, kmax: usize) {
    // Elementary symmetric functions of T from its first m power sums.
    let mc = T::from_int(m as i64);
    let sums: Vec<Complex<T>> = (1..=m)
        .map(|k| moments[k].clone() * c(mc.clone()))
        .collect();
    let mut e: Vec<Complex<T>> = Vec::with_capacity(m + 1);
    e.push(c(T::one()));
    for k in 1..=m {
        let mut acc = c(T::zero());
        for i in 1..=k {
            let term = e[k - i].clone() * sums[i - 1].clone();
            acc = if i % 2 == 1 { acc + term } else { acc - term };
        }
        let kk = T::from_int(k as i64);
        e.push(Complex::new(acc.re / kk.clone(), acc.im / kk));
    }
    // P_k = Σ_{i=1}^{m} (-1)^{i+1} e_i P_{k-i} for k > m.
    let mut power: Vec<Complex<T>> = sums;
    for k in (m + 1)..=kmax {
        let mut acc = c(T::zero());
        for i in 1..=m {
            let term = e[i].clone() * power[k - i - 1].clone();
            acc = if i % 2 == 1 { acc + term } else { acc - term };
        }
        power.push(acc.clone());
        moments.push(Complex::new(acc.re / mc.clone(), acc.im / mc.clone()));
    }
}

/// Moments of the U transform straight from a monic real polynomial's signed
/// coefficients (`E[T^k] = p_k / C(m,k)`); stays in the real scalar field.
pub fn u_moments_of_poly<T: Scalar>(p: &Poly<T>, kmax: usize) -> Result<Vec<T>> {
    let m = p.degree();
    if m == 0 {
        return Err(Error::Invalid("U transform requires degree >= 1"));
    }
    let mut moments = Vec::with_capacity(kmax + 1);
    for k in 0..=kmax.min(m) {
        moments.push(p.signed_coeff(k)? / binomial::<T>(m, k));
    }
    if kmax > m {
        let mut cplx: Vec<Complex<T>> = moments.iter().cloned().map(c).collect();
        extend_moments(&mut cplx, m, kmax);
        moments = cplx.into_iter().map(|z| z.re).collect();
    }
    Ok(moments)
}

/// The monic degree-`m` polynomial with the U transform `T` of `S` as roots,
/// built from the moment solve (complex coefficients in general).
fn u_polynomial<T: Scalar>(s: &Multiset<T>) -> Result<Vec<Complex<T>>> {
    let m = s.len();
    let moments = u_moments(s, m)?;
    let mc = T::from_int(m as i64);
    // Newton: elementary symmetric functions of T, then signed coefficients.
    let sums: Vec<Complex<T>> = (1..=m)
        .map(|k| moments[k].clone() * c(mc.clone()))
        .collect();
    let mut e: Vec<Complex<T>> = Vec::with_capacity(m + 1);
    e.push(c(T::one()));
    for k in 1..=m {
        let mut acc = c(T::zero());
        for i in 1..=k {
            let term = e[k - i].clone() * sums[i - 1].clone();
            acc = if i % 2 == 1 { acc + term } else { acc - term };
        }
        let kk = T::from_int(k as i64);
        e.push(Complex::new(acc.re / kk.clone(), acc.im / kk));
    }
    // ascending coefficients of Π (x - t_i)
    let mut coeffs = Vec::with_capacity(m + 1);
    for j in 0..=m {
        let i = m - j;
        let v = e[i].clone();
        coeffs.push(if i % 2 == 0 { v } else { -v });
    }
    Ok(coeffs)
}

fn complex_roots<T: Scalar>(coeffs: &[Complex<T>]) -> Result<Multiset<f64>> {
    let f: Vec<Complex<f64>> = coeffs
        .iter()
        .map(|z| Complex::new(z.re.to_f64_lossy(), z.im.to_f64_lossy()))
        .collect();
    let roots = crate::roots::aberth(&f, crate::roots::RootConfig::default())?;
    Ok(Multiset::from_complex(roots))
}

/// The U transform of `S` as a materialized multiset of (complex) roots.
pub fn u_transform<T: Scalar>(s: &Multiset<T>) -> Result<Multiset<f64>> {
    if s.is_empty() {
        return Err(Error::Invalid("U transform requires a nonempty multiset"));
    }
    if s.len() == 1 {
        return Ok(s.to_f64());
    }
    complex_roots(&u_polynomial(s)?)
}

/// Expanded polynomial `E[(x - T)^m]` of a prospective U transform `T`
/// (ascending complex coefficients).
fn binomial_expansion<T: Scalar>(t: &Multiset<T>) -> Result<Vec<Complex<T>>> {
    if t.is_empty() {
        return Err(Error::Invalid("U inverse requires a nonempty multiset"));
    }
    let m = t.len();
    let moments = t.moments(m);
    let mut coeffs = Vec::with_capacity(m + 1);
    for j in 0..=m {
        let k = m - j; // coefficient of x^j is C(m,k) (-1)^k E[T^k]
        let b = binomial::<T>(m, k);
        let v = moments[k].clone() * c(b);
        coeffs.push(if k % 2 == 0 { v } else { -v });
    }
    Ok(coeffs)
}

/// Inverse U transform: the multiset `S` with `Π (x - s_i) = E[(x - T)^m]`.
pub fn u_inverse<T: Scalar>(t: &Multiset<T>) -> Result<Multiset<f64>> {
    if t.len() == 1 {
        return Ok(t.to_f64());
    }
    complex_roots(&binomial_expansion(t)?)
}

/// Exact-mode inverse: the polynomial `E[(x - T)^m]` itself, which must have
/// real coefficients for conjugate-closed input.
pub fn u_inverse_poly<T: Scalar>(t: &Multiset<T>, tol: f64) -> Result<Poly<T>> {
    let coeffs = binomial_expansion(t)?;
    let scale = coeffs
        .iter()
        .map(|z| z.re.to_f64_lossy().abs())
        .fold(1.0, f64::max);
    let mut real = Vec::with_capacity(coeffs.len());
    for z in coeffs {
        let ok = if T::EXACT {
            z.im.is_zero()
        } else {
            z.im.to_f64_lossy().abs() <= tol * scale
        };
        if !ok {
            return Err(Error::NonRealRoots);
        }
        real.push(z.re);
    }
    Ok(Poly::from_ascending(real))
}
