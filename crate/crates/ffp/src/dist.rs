//! Finite free analogues of the classical laws.
//!
//! * Gaussian: `𝔑_m[μ, σ²]`, a rescaled probabilists' Hermite polynomial
//!   (three-term recurrence `H_{n+1} = x H_n - n H_{n-1}`), cross-checked
//!   against the heat-operator construction
//!   `exp(-σ² D²/(2(m-1))) {(x-μ)^m}` — the two agree exactly in rational
//!   mode.
//! * Poisson: `𝔓_m[λ] = m!(-m)^{-m} L_m^{((λ-1)m)}(mx)` with `λm` a
//!   positive integer; for `λ < 1` the equivalent atom form
//!   `(λm)!(-m)^{-λm} x^{m(1-λ)} L_{λm}^{(m(1-λ))}(mx)` makes the zero atom
//!   of mass `1-λ` explicit.
//! * Compound Poisson: the `⊞`-product over the jump roots `r_i` of
//!   root-scaled Poisson factors, equal to the operator product
//!   `Π (1 - (r_i/m)D)^{λm} {x^m}` (the defining form, used as the oracle).

use alloc::vec::Vec;

use crate::conv::{additive_convolve, DiffOperator};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::Scalar;

/// Probabilists' Hermite polynomial `H_n` (monic).
pub fn hermite_poly<T: Scalar>(n: usize) -> Poly<T> {
    let mut prev: Poly<T> = Poly::constant(T::one());
    if n == 0 {
        return prev;
    }
    let mut cur: Poly<T> = Poly::x_pow(1);
    for k in 1..n {
        // H_{k+1} = x H_k - k H_{k-1}
        let mut shifted = vec![T::zero()];
        shifted.extend(cur.coeffs().iter().cloned());
        let x_cur = Poly::from_ascending(shifted);
        let next = x_cur.sub(&prev.scale(&T::from_int(k as i64)));
        prev = cur;
        cur = next;
    }
    cur
}

/// Finite Gaussian `𝔑_m[μ, σ²]`: monic, root variance exactly `σ²`.
pub fn finite_gaussian<T: Scalar>(m: usize, mu: &T, sigma2: &T) -> Result<Poly<T>> {
    if m == 0 {
        return Err(Error::Invalid("degree must be >= 1"));
    }
    if !(sigma2.clone() > T::zero()) {
        return Err(Error::Invalid("sigma^2 must be positive"));
    }
    if m == 1 {
        return Ok(Poly::from_ascending(vec![-mu.clone(), T::one()]));
    }
    // H_m(λx) λ^{-m} with λ = sqrt((m-1)/σ²): the coefficient of x^{m-2j}
    // picks up (σ²/(m-1))^j, which stays rational.
    let h = hermite_poly::<T>(m);
    let ratio = sigma2.clone() / T::from_int((m - 1) as i64);
    let mut coeffs = vec![T::zero(); m + 1];
    let mut power = T::one();
    let mut j = 0usize;
    while 2 * j <= m {
        let deg = m - 2 * j;
        coeffs[deg] = h.coeff(deg) * power.clone();
        power = power * ratio.clone();
        j += 1;
    }
    Ok(Poly::from_ascending(coeffs).translate(mu))
}

/// Heat-operator route to the finite Gaussian:
/// `exp(-σ² D²/(2(m-1))) {(x-μ)^m}`.
pub fn finite_gaussian_heat<T: Scalar>(m: usize, mu: &T, sigma2: &T) -> Result<Poly<T>> {
    if m == 0 {
        return Err(Error::Invalid("degree must be >= 1"));
    }
    if m == 1 {
        return Ok(Poly::from_ascending(vec![-mu.clone(), T::one()]));
    }
    let rate = -(sigma2.clone() / T::from_int(2 * (m - 1) as i64));
    let mut op = vec![T::zero(); m + 1];
    let mut term = T::one(); // rate^k / k!
    let mut k = 0usize;
    while 2 * k <= m {
        op[2 * k] = term.clone();
        term = term * rate.clone() / T::from_int((k + 1) as i64);
        k += 1;
    }
    let base = Poly::x_pow(m).translate(mu);
    Ok(DiffOperator::from_coeffs(op, m).apply(&base))
}

/// Associated Laguerre value `L_n^{(α)}(x) = Σ_i (-x)^i/i! C(n+α, n-i)` for
/// scalar (possibly non-integer) `α`.
pub fn laguerre_value<T: Scalar>(n: usize, alpha: &T, x: &T) -> T {
    let mut acc = T::zero();
    for i in 0..=n {
        // C(n+α, n-i) = Π_{t=1}^{n-i} (α + i + t)/t
        let mut binom = T::one();
        for t in 1..=(n - i) {
            binom = binom * (alpha.clone() + T::from_int((i + t) as i64))
                / T::from_int(t as i64);
        }
        // (-x)^i / i!
        let mut pow = T::one();
        for t in 0..i {
            pow = pow * (-x.clone()) / T::from_int((t + 1) as i64);
        }
        acc = acc + pow * binom;
    }
    acc
}

/// Coefficients of `L_n^{(α)}(c x)` for integer `α` (as a polynomial in x).
fn laguerre_poly_scaled<T: Scalar>(n: usize, alpha: i64, c: &T) -> Poly<T> {
    let mut coeffs = vec![T::zero(); n + 1];
    let mut cpow = T::one(); // (-c)^i / i!
    for (i, slot) in coeffs.iter_mut().enumerate() {
        let upper = n as i64 + alpha;
        // integer binomial C(n+α, n-i), zero when out of range
        let k = (n - i) as i64;
        let binom = if upper >= 0 && k >= 0 && k <= upper {
            let mut b = T::one();
            for t in 0..k {
                b = b * T::from_int(upper - t) / T::from_int(t + 1);
            }
            b
        } else if k == 0 {
            T::one()
        } else {
            T::zero()
        };
        *slot = cpow.clone() * binom;
        cpow = cpow * (-c.clone()) / T::from_int((i + 1) as i64);
    }
    Poly::from_ascending(coeffs)
}

fn lambda_m_as_int<T: Scalar>(m: usize, lambda: &T) -> Result<i64> {
    let lm = lambda.clone() * T::from_int(m as i64);
    if !lm.is_integral() || !(lm > T::zero()) {
        return Err(Error::NonIntegerLambdaM);
    }
    Ok(num_traits::Float::round(lm.to_f64_lossy()) as i64)
}

/// Finite Poisson `𝔓_m[λ] = m!(-m)^{-m} L_m^{((λ-1)m)}(mx)`, monic.
pub fn finite_poisson<T: Scalar>(m: usize, lambda: &T) -> Result<Poly<T>> {
    if m == 0 {
        return Err(Error::Invalid("degree must be >= 1"));
    }
    let lm = lambda_m_as_int(m, lambda)?;
    // coefficient of x^i: m!(-m)^{i-m}/i! * C(λm, m-i)
    let mut coeffs = vec![T::zero(); m + 1];
    for (i, slot) in coeffs.iter_mut().enumerate() {
        let k = (m - i) as i64;
        if k > lm {
            continue;
        }
        let mut binom = T::one();
        for t in 0..k {
            binom = binom * T::from_int(lm - t) / T::from_int(t + 1);
        }
        // m!/i! / (-m)^{m-i} = Π_{t=i+1}^{m} t/(-m)
        let mut factor = T::one();
        for t in (i + 1)..=m {
            factor = factor * T::from_int(t as i64) / T::from_int(-(m as i64));
        }
        *slot = factor * binom;
    }
    Ok(Poly::from_ascending(coeffs))
}

/// Atom form of the finite Poisson for `λ <= 1`
/// (`(λm)!(-m)^{-λm} x^{m(1-λ)} L_{λm}^{(m(1-λ))}(mx)`); the factor
/// `x^{m(1-λ)}` carries the zero atom of mass `1-λ`.
pub fn finite_poisson_atom_form<T: Scalar>(m: usize, lambda: &T) -> Result<Poly<T>> {
    let lm = lambda_m_as_int(m, lambda)?;
    let lm_usize = lm as usize;
    if lm_usize > m {
        return Err(Error::Invalid("atom form requires lambda <= 1"));
    }
    let atom = m - lm_usize; // m(1-λ)
    let lag = laguerre_poly_scaled::<T>(lm_usize, atom as i64, &T::from_int(m as i64));
    // normalize: (λm)! / (-m)^{λm}
    let mut factor = T::one();
    for t in 1..=lm_usize {
        factor = factor * T::from_int(t as i64) / T::from_int(-(m as i64));
    }
    let mut coeffs = vec![T::zero(); m + 1];
    for (i, c) in lag.coeffs().iter().enumerate() {
        coeffs[i + atom] = factor.clone() * c.clone();
    }
    Ok(Poly::from_ascending(coeffs))
}

/// One compound-Poisson factor: the Poisson polynomial with roots scaled by
/// the jump size `r` (degenerates to `x^m` at `r = 0`).
pub fn compound_poisson_factor<T: Scalar>(m: usize, lambda: &T, r: &T) -> Result<Poly<T>> {
    Ok(finite_poisson(m, lambda)?.scale_roots(r))
}

/// Finite compound Poisson from the jump roots: the iterated `⊞`-product of
/// the per-root factors.
pub fn finite_compound_poisson_from_roots<T: Scalar>(
    m: usize,
    lambda: &T,
    roots: &[T],
) -> Result<Poly<T>> {
    if roots.len() != m {
        return Err(Error::DegreeMismatch { expected: m });
    }
    let mut acc = Poly::x_pow(m);
    for r in roots {
        let factor = compound_poisson_factor(m, lambda, r)?;
        acc = additive_convolve(&acc, &factor, m)?;
    }
    Ok(acc)
}

/// Finite compound Poisson of a real-rooted jump polynomial `h` (float
/// mode: the roots are extracted; use
/// [`finite_compound_poisson_from_roots`] when the roots are known exactly).
pub fn finite_compound_poisson(m: usize, lambda: &f64, h: &Poly<f64>) -> Result<Poly<f64>> {
    if h.degree() != m {
        return Err(Error::DegreeMismatch { expected: m });
    }
    let roots = h.roots(1e-7)?;
    let mut reals = Vec::with_capacity(m);
    for z in roots.elems() {
        if z.im.abs() > 1e-5 * (1.0 + z.re.abs()) {
            return Err(Error::NonRealRoots);
        }
        reals.push(z.re);
    }
    finite_compound_poisson_from_roots(m, lambda, &reals)
}

/// The defining operator product `Π_i (1 - (r_i/m) D)^{λm} {x^m}`, written
/// through the elementary symmetric functions of the roots (no root data
/// beyond the polynomial itself): used as the oracle for the `⊞`-route.
pub fn compound_poisson_operator_route<T: Scalar>(
    m: usize,
    lambda: &T,
    h: &Poly<T>,
) -> Result<Poly<T>> {
    if h.degree() != m {
        return Err(Error::DegreeMismatch { expected: m });
    }
    let lm = lambda_m_as_int(m, lambda)? as usize;
    // Π (1 - r_i y) = Σ_k (-1)^k e_k y^k with e_k the signed coefficients.
    let e = h.make_monic()?.signed_coeffs()?;
    let mut base = vec![T::zero(); m + 1];
    let mut mpow = T::one(); // m^{-k}
    for (k, slot) in base.iter_mut().enumerate() {
        let v = e[k].clone() * mpow.clone();
        *slot = if k % 2 == 0 { v } else { -v };
        mpow = mpow / T::from_int(m as i64);
    }
    let op = DiffOperator::from_coeffs(base, m).pow(lm);
    Ok(op.apply(&Poly::x_pow(m)))
}
