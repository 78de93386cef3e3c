//! Finite limit theorems: law of large numbers, central limit theorem,
//! Poisson limit, and the Marchenko-Pastur support report.
//!
//! LLN: `[q_1 ⊞ ... ⊞ q_n]` with `q_i(x) = n^{-m} p_i(nx)` contracts to
//! `(x - μ)^m`.  CLT: `q_i(x) = n^{-m/2} p(√n x)` converges to the finite
//! Gaussian at the input variance; the scaling is exact in rational mode
//! when `n` is a perfect square.  The Poisson limit is a coefficient
//! identity at every finite size, checked exactly.

use alloc::vec::Vec;
use num_traits::Float;

use crate::compound::sorted_roots_desc;
use crate::conv::additive_convolve;
use crate::dist::{finite_gaussian, finite_poisson};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::{Rat, Scalar};
use num_traits::{One, Zero};

/// `n^{-m} p(n x)`: coefficient of `x^{m-k}` scaled by `n^{-k}`.
fn lln_scale<T: Scalar>(p: &Poly<T>, n: usize) -> Poly<T> {
    let inv_n = T::one() / T::from_int(n as i64);
    p.scale_roots(&inv_n)
}

/// Law of large numbers run: the `⊞`-product of `n` rescaled polynomials
/// (cycling `ps` when fewer are given).  Returns the result and the largest
/// distance of its roots from the common root mean.
pub fn lln_run<T: Scalar>(ps: &[Poly<T>], n: usize) -> Result<(Poly<T>, f64)> {
    if ps.is_empty() || n == 0 {
        return Err(Error::Invalid("need at least one polynomial"));
    }
    let m = ps[0].degree();
    if m == 0 {
        return Err(Error::Invalid("degree must be >= 1"));
    }
    let mu = ps[0].signed_coeff(1)? / T::from_int(m as i64);
    for p in ps {
        if p.degree() != m {
            return Err(Error::DegreeMismatch { expected: m });
        }
        let mean = p.signed_coeff(1)? / T::from_int(m as i64);
        if T::EXACT && mean != mu {
            return Err(Error::HypothesisViolated("all inputs must share the root mean"));
        }
    }
    let mut acc = Poly::x_pow(m);
    for i in 0..n {
        let q = lln_scale(&ps[i % ps.len()], n);
        acc = additive_convolve(&acc, &q, m)?;
    }
    let roots = sorted_roots_desc(&acc.to_f64(), 1e-7)?;
    let muf = mu.to_f64_lossy();
    let dist = roots
        .iter()
        .map(|r| (r - muf).abs())
        .fold(0.0, f64::max);
    Ok((acc, dist))
}

/// `n^{-m/2} p(√n x)`: coefficient of `x^{m-k}` scaled by `n^{-k/2}`.
/// Exact in rational mode only for perfect-square `n`.
pub fn clt_scale<T: Scalar>(p: &Poly<T>, n: usize) -> Result<Poly<T>> {
    let inv_sqrt = if T::EXACT {
        let r = Float::round(Float::sqrt(n as f64)) as i64;
        if (r * r) as usize != n {
            return Err(Error::Invalid(
                "rational CLT scaling requires a perfect-square n",
            ));
        }
        T::from_ratio(1, r)
    } else {
        T::from_f64_lossy(1.0 / Float::sqrt(n as f64))
    };
    Ok(p.scale_roots(&inv_sqrt))
}

/// Central limit theorem run: the `n`-fold `⊞`-power of the rescaled input
/// and the sorted-root `ℓ∞` distance to the finite Gaussian at the input
/// variance.
pub fn clt_run<T: Scalar>(p: &Poly<T>, n: usize) -> Result<(Poly<T>, f64)> {
    let m = p.degree();
    if m == 0 || n == 0 {
        return Err(Error::Invalid("degree and n must be >= 1"));
    }
    if !p.signed_coeff(1)?.is_zero() && T::EXACT {
        return Err(Error::HypothesisViolated("input must have zero root sum"));
    }
    let sums = p.power_sums(2)?;
    let sigma2 = sums[1].clone() / T::from_int(m as i64);
    if !(sigma2.clone() > T::zero()) {
        return Err(Error::Invalid("input variance must be positive"));
    }
    let q = clt_scale(p, n)?;
    let mut acc = Poly::x_pow(m);
    for _ in 0..n {
        acc = additive_convolve(&acc, &q, m)?;
    }
    let target = finite_gaussian(m, &T::zero(), &sigma2)?;
    let got = sorted_roots_desc(&acc.to_f64(), 1e-7)?;
    let want = sorted_roots_desc(&target.to_f64(), 1e-7)?;
    let dist = got
        .iter()
        .zip(&want)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    Ok((acc, dist))
}

/// Exact Poisson limit: the `λm`-fold `⊞`-power of `x^{m-1}(x - 1)` equals
/// `𝔓_m[λ]` coefficient-for-coefficient.
pub fn poisson_limit_exact(m: usize, lambda: &Rat) -> Result<bool> {
    if m == 0 {
        return Err(Error::Invalid("degree must be >= 1"));
    }
    let lm_rat = lambda.clone() * Rat::from_int(m as i64);
    if !lm_rat.is_integral() || !(lm_rat > Rat::zero()) {
        return Err(Error::NonIntegerLambdaM);
    }
    let lm = Float::round(lm_rat.to_f64_lossy()) as usize;
    let mut base = vec![Rat::zero(); m + 1];
    base[m] = Rat::one();
    base[m - 1] = -Rat::one();
    let base = Poly::from_ascending(base);
    let mut acc: Poly<Rat> = Poly::x_pow(m);
    for _ in 0..lm {
        acc = additive_convolve(&acc, &base, m)?;
    }
    Ok(acc == finite_poisson(m, lambda)?)
}

/// Support report for the finite Poisson family against the
/// Marchenko-Pastur interval `[(1-√λ)², (1+√λ)²]`.
#[derive(Clone, Debug)]
pub struct MpReport {
    pub m: usize,
    pub zero_multiplicity: usize,
    pub min_nonzero: f64,
    pub max_nonzero: f64,
    pub mp_lo: f64,
    pub mp_hi: f64,
    /// How far the extreme nonzero roots fall outside the MP interval
    /// (zero when contained).
    pub margin_lo: f64,
    pub margin_hi: f64,
}

pub fn mp_support_check(m: usize, lambda: &Rat) -> Result<MpReport> {
    let p = finite_poisson(m, lambda)?;
    let zero_multiplicity = p.zero_root_multiplicity();
    let roots = p.roots_f64(1e-7)?;
    let mut nonzero: Vec<f64> = roots
        .elems()
        .iter()
        .filter(|z| z.norm() > 0.0)
        .map(|z| z.re)
        .collect();
    nonzero.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let lam = lambda.to_f64_lossy();
    let mp_lo = (1.0 - lam.sqrt()).powi(2);
    let mp_hi = (1.0 + lam.sqrt()).powi(2);
    let (min_nonzero, max_nonzero) = match (nonzero.first(), nonzero.last()) {
        (Some(a), Some(b)) => (*a, *b),
        _ => (f64::NAN, f64::NAN),
    };
    Ok(MpReport {
        m,
        zero_multiplicity,
        min_nonzero,
        max_nonzero,
        mp_lo,
        mp_hi,
        margin_lo: (mp_lo - min_nonzero).max(0.0),
        margin_hi: (max_nonzero - mp_hi).max(0.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{poly_from_roots, Multiset};
    use crate::rng::Rng;

    fn q(n: i64, d: i64) -> Rat {
        Rat::from_ratio(n, d)
    }

    #[test]
    fn lln_constant_inputs_are_exact() {
        let mu = q(3, 2);
        let p = poly_from_roots(&Multiset::from_reals(&vec![mu.clone(); 3]), 0.0)
            .unwrap();
        for n in [1usize, 4, 9] {
            let (out, dist) = lln_run(core::slice::from_ref(&p), n).unwrap();
            assert_eq!(out, p, "polynomial identity is exact");
            // the reported root distance is limited by triple-root extraction
            assert!(dist < 1e-4);
        }
    }

    #[test]
    fn lln_contracts_symmetric_bernoulli() {
        let p: Poly<Rat> = Poly::from_leading(vec![q(1, 1), q(0, 1), q(-1, 1)]);
        let mut prev = f64::INFINITY;
        for n in [4usize, 16, 64, 256] {
            let (_, dist) = lln_run(core::slice::from_ref(&p), n).unwrap();
            assert!(dist < prev, "n={n}: {dist} vs {prev}");
            prev = dist;
        }
        assert!(prev < 0.07, "1/sqrt(256) scale: {prev}");
    }

    #[test]
    fn lln_mixed_inputs_with_common_mean() {
        let p1 = poly_from_roots(
            &Multiset::from_reals(&[q(0, 1), q(2, 1)]),
            0.0,
        )
        .unwrap();
        let p2 = poly_from_roots(
            &Multiset::from_reals(&[q(1, 2), q(3, 2)]),
            0.0,
        )
        .unwrap();
        let (_, dist) = lln_run(&[p1, p2], 64).unwrap();
        assert!(dist < 0.15, "{dist}");
    }

    #[test]
    fn clt_fixed_point_x2_minus_1() {
        let p: Poly<Rat> = Poly::from_leading(vec![q(1, 1), q(0, 1), q(-1, 1)]);
        for n in [1usize, 4, 16, 64] {
            let (out, dist) = clt_run(&p, n).unwrap();
            assert_eq!(out, p, "x^2 - 1 is the variance-1 fixed point");
            assert!(dist < 1e-9);
        }
    }

    #[test]
    fn clt_converges_for_asymmetric_input() {
        // roots {-1, -1, 2}: zero mean, nonzero third cumulant
        let p = poly_from_roots(
            &Multiset::from_reals(&[q(-1, 1), q(-1, 1), q(2, 1)]),
            0.0,
        )
        .unwrap();
        let mut prev = f64::INFINITY;
        for n in [4usize, 16, 64, 256] {
            let (_, dist) = clt_run(&p, n).unwrap();
            assert!(dist <= prev + 1e-9, "n={n}");
            prev = dist;
        }
        assert!(prev < 0.1, "{prev}");
    }

    #[test]
    fn clt_rational_requires_perfect_square() {
        let p: Poly<Rat> = Poly::from_leading(vec![q(1, 1), q(0, 1), q(-1, 1)]);
        assert!(clt_run(&p, 3).is_err());
        assert!(clt_run(&p, 4).is_ok());
    }

    #[test]
    fn poisson_limit_small_cases() {
        assert!(poisson_limit_exact(2, &q(1, 1)).unwrap());
        assert!(poisson_limit_exact(4, &q(1, 1)).unwrap());
        assert!(poisson_limit_exact(3, &q(2, 1)).unwrap());
    }

    #[test]
    fn poisson_limit_rejects_bad_lambda() {
        assert_eq!(
            poisson_limit_exact(2, &q(1, 3)).unwrap_err(),
            Error::NonIntegerLambdaM
        );
    }

    #[test]
    fn mp_support_lambda_one() {
        let mut prev_margin = f64::INFINITY;
        for m in [4usize, 8, 16, 32] {
            let rep = mp_support_check(m, &q(1, 1)).unwrap();
            assert_eq!(rep.zero_multiplicity, 0);
            let margin = rep.margin_lo.max(rep.margin_hi).max(
                // roots live inside [0,4]: also track how close they come
                0.0,
            );
            assert!(rep.min_nonzero > -0.01, "{}", rep.min_nonzero);
            assert!(rep.max_nonzero < 4.2, "{}", rep.max_nonzero);
            assert!(margin <= prev_margin + 1e-12);
            prev_margin = margin;
        }
    }

    #[test]
    fn mp_support_atom_and_lambda4() {
        let rep = mp_support_check(8, &q(1, 2)).unwrap();
        assert_eq!(rep.zero_multiplicity, 4, "atom of mass 1/2");
        let rep = mp_support_check(8, &q(4, 1)).unwrap();
        assert_eq!(rep.zero_multiplicity, 0);
        assert!(rep.min_nonzero > 1.0 - 0.5, "{}", rep.min_nonzero);
        assert!(rep.max_nonzero < 9.0 + 0.5, "{}", rep.max_nonzero);
    }

    #[test]
    fn clt_float_mode_runs() {
        let mut rng = Rng::seed(61);
        let mut roots: Vec<f64> = (0..4).map(|_| rng.uniform(-1.0, 1.0)).collect();
        let mean: f64 = roots.iter().sum::<f64>() / 4.0;
        for r in roots.iter_mut() {
            *r -= mean;
        }
        let p = poly_from_roots(&Multiset::from_reals(&roots), 1e-9).unwrap();
        let (_, dist) = clt_run(&p, 100).unwrap();
        assert!(dist < 0.1, "{dist}");
    }
}
