//! The m-finite K/R and N/S transforms.
//!
//! The transforms are represented by their closed forms: for a monic
//! real-rooted `p` of degree `m` with U transform `T`,
//!
//! ```text
//! R_m(s) ≡ -(1/m) d/ds ln E[e^{-msT}]   (mod s^m)
//! K_m(s) = (1 + 1/m)/s + R_m(s)
//! ```
//!
//! and the S-side data grid is `f(-k/m) = E[(T/ρ)^k]` with `ρ` the largest
//! root.  The integral definitions (an `L^m` norm of `e^{-xs}` against the
//! normalized determinant) survive as validation quadratures: the m-th power
//! of the norm is integrated numerically and compared with the closed form,
//! to relative deviation `1e-6` on the validation grids.
//!
//! Additivity of `R` under `⊞` and multiplicativity of the S moments under
//! `⊠` are checked with both sides computed independently.

use alloc::vec::Vec;
#[allow(unused_imports)] // f64 math comes from the Float trait in no_std
use num_traits::Float;

use crate::conv::{additive_convolve, multiplicative_convolve};
use crate::error::{Error, Result};
use crate::poly::{Multiset, Poly};
use crate::quad::integrate;
use crate::scalar::{binomial, Scalar};
use crate::series::{LaurentK, TruncatedSeries};
use crate::utransform::u_moments_of_poly;
use crate::voiculescu::voiculescu_r_series;

/// `E[e^{-msT}] mod s^{m+1}` as a truncated series (constant term 1).
fn laplace_moment_series<T: Scalar>(p: &Poly<T>) -> Result<TruncatedSeries<T>> {
    let m = p.degree();
    let moments = u_moments_of_poly(p, m)?;
    let mut coeffs = Vec::with_capacity(m + 1);
    let mut factor = T::one(); // (-m)^k / k!
    for (k, ek) in moments.iter().enumerate() {
        coeffs.push(factor.clone() * ek.clone());
        factor = factor * T::from_int(-(m as i64)) / T::from_int((k + 1) as i64);
    }
    Ok(TruncatedSeries::from_coeffs(coeffs))
}

/// m-finite R-transform of a monic degree-`m` polynomial, as a series of
/// order `m` (`κ_1 + κ_2 s + ...`).  The constant term is the root mean.
pub fn finite_r_transform<T: Scalar>(p: &Poly<T>) -> Result<TruncatedSeries<T>> {
    let m = p.degree();
    if m == 0 {
        return Err(Error::Invalid("transform requires degree >= 1"));
    }
    let log = laplace_moment_series(p)?.ln()?;
    let neg_inv_m = T::from_ratio(-1, m as i64);
    Ok(log.derive().scale(&neg_inv_m))
}

/// m-finite K-transform: simple pole `(1 + 1/m)/s` plus the R-transform
/// tail.
pub fn finite_k_transform<T: Scalar>(p: &Poly<T>) -> Result<LaurentK<T>> {
    let m = p.degree();
    let tail = finite_r_transform(p)?;
    Ok(LaurentK {
        pole: T::one() + T::from_ratio(1, m as i64),
        tail,
    })
}

/// Checks `R(p) + R(q) ≡ R(p ⊞ q) mod s^m`; returns the verdict and the
/// largest coefficient residual (exactly zero in rational mode).
pub fn r_additivity_check<T: Scalar>(p: &Poly<T>, q: &Poly<T>) -> Result<(bool, f64)> {
    let m = p.degree();
    if q.degree() != m {
        return Err(Error::DegreeMismatch { expected: m });
    }
    let sum = finite_r_transform(p)?.add(&finite_r_transform(q)?);
    let conv = additive_convolve(p, q, m)?;
    let whole = finite_r_transform(&conv)?;
    let residual = sum.max_coeff_dev(&whole);
    let ok = if T::EXACT {
        residual == 0.0
    } else {
        residual <= 1e-8
    };
    Ok((ok, residual))
}

/// Largest root and realness/positivity validation for the S-side.  The
/// realness guard is loose (a root of multiplicity k extracts with
/// `eps^(1/k)` scatter, ~2.4e-3 at k = 6); downstream formulas use exact
/// coefficient data, and the quadrature identities hold for any cutoff at
/// or above the largest root.
fn positive_rho(p: &Poly<f64>) -> Result<f64> {
    let roots = p.roots(1e-7)?;
    let mut rho = f64::NEG_INFINITY;
    for z in roots.elems() {
        if z.im.abs() > 1e-2 * (1.0 + z.re.abs()) || z.re <= 0.0 {
            return Err(Error::NonPositiveRoots);
        }
        rho = rho.max(z.re);
    }
    Ok(rho)
}

/// Largest real part of the roots, with a realness guard at the same loose
/// tolerance.
fn real_rho(p: &Poly<f64>) -> Result<f64> {
    let roots = p.roots(1e-7)?;
    let mut rho = f64::NEG_INFINITY;
    for z in roots.elems() {
        if z.im.abs() > 1e-2 * (1.0 + z.re.abs()) {
            return Err(Error::NonRealRoots);
        }
        rho = rho.max(z.re);
    }
    Ok(rho)
}

/// S-transform data grid `f(-k/m) = E[(T/ρ)^k]` for `k = 0..=m`.
pub fn s_moment_values(p: &Poly<f64>) -> Result<Vec<f64>> {
    let m = p.degree();
    let rho = positive_rho(p)?;
    let moments = u_moments_of_poly(p, m)?;
    let mut out = Vec::with_capacity(m + 1);
    let mut scale = 1.0;
    for ek in moments {
        out.push(ek / scale);
        scale *= rho;
    }
    Ok(out)
}

/// Moment form of S-transform multiplicativity:
/// `E[T_p^k] E[T_q^k] = E[T_{p⊠q}^k]` for `k = 0..=m`.
pub fn s_multiplicativity_check<T: Scalar>(p: &Poly<T>, q: &Poly<T>) -> Result<(bool, f64)> {
    let m = p.degree();
    if q.degree() != m {
        return Err(Error::DegreeMismatch { expected: m });
    }
    let mp = u_moments_of_poly(p, m)?;
    let mq = u_moments_of_poly(q, m)?;
    let prod = multiplicative_convolve(p, q, m)?;
    let mpq = u_moments_of_poly(&prod, m)?;
    let mut residual = 0.0f64;
    let mut exact = true;
    for k in 0..=m {
        let lhs = mp[k].clone() * mq[k].clone();
        let diff = lhs - mpq[k].clone();
        if !diff.is_zero() {
            exact = false;
        }
        residual = residual.max(diff.to_f64_lossy().abs());
    }
    let ok = if T::EXACT { exact } else { residual <= 1e-8 };
    Ok((ok, residual))
}

/// Relative deviation between the numeric integral
/// `∫_ρ^∞ e^{-mxs} p(x) dx` (the m-th power of the K-transform norm) and the
/// Laplace closed form `e^{-mρs} m! Σ_i E[(ρ-T)^{m-i}] (ms)^{-i-1}/(m-i)!`.
pub fn quadrature_k_check(p: &Poly<f64>, s: f64) -> Result<f64> {
    if s <= 0.0 {
        return Err(Error::Invalid("s must be positive"));
    }
    let m = p.degree();
    if m == 0 {
        return Err(Error::Invalid("degree must be >= 1"));
    }
    let rho = real_rho(p)?;
    let ms = m as f64 * s;

    // Closed form from the U-transform moments.
    let moments = u_moments_of_poly(p, m)?;
    let shifted: Vec<f64> = (0..=m)
        .map(|j| {
            // E[(ρ - T)^j]
            let mut acc = 0.0;
            let mut rp = 1.0; // ρ^{j-l}
            for l in (0..=j).rev() {
                let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
                acc += binomial::<f64>(j, l) * sign * moments[l] * rp;
                rp *= rho;
            }
            acc
        })
        .collect();
    let mut closed = 0.0;
    let mut factor = 1.0 / ms; // m!/(m-i)! * (ms)^{-i-1}
    for i in 0..=m {
        closed += shifted[m - i] * factor;
        factor *= (m - i) as f64 / ms;
    }
    closed *= (-ms * rho).exp();

    // Numeric integral with the substitution y = x - ρ.
    let shifted_poly = p.translate(&(-rho)); // p(y + ρ)
    let mut upper = 50.0 / ms;
    for _ in 0..8 {
        upper = (50.0 + (m as f64) * (1.0 + upper).ln()) / ms;
    }
    let numeric = integrate(
        |y| (-ms * y).exp() * shifted_poly.eval(&y),
        0.0,
        upper,
        1e-300,
        1e-10,
    )? * (-ms * rho).exp();

    if closed == 0.0 {
        return Err(Error::QuadratureFailure);
    }
    Ok(((numeric - closed) / closed).abs())
}

/// Relative deviation between `∫_{ln ρ}^∞ e^{-mxs} Π(1 - e^{-x} r_i) dx` and
/// the pole expansion `ρ^{-ms} Σ_i C(m,i) E[(-T/ρ)^i]/(ms + i)`.
pub fn quadrature_n_check(p: &Poly<f64>, s: f64) -> Result<f64> {
    if s <= 0.0 {
        return Err(Error::Invalid("s must be positive"));
    }
    let m = p.degree();
    let rho = positive_rho(p)?;
    let ms = m as f64 * s;

    let moments = u_moments_of_poly(p, m)?;
    let mut closed = 0.0;
    let mut rp = 1.0; // ρ^{-i}
    for (i, ek) in moments.iter().enumerate() {
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        closed += binomial::<f64>(m, i) * sign * ek * rp / (ms + i as f64);
        rp /= rho;
    }
    // the global ρ^{-ms} factor cancels in the relative comparison but is
    // kept so both sides are the actual integral value
    let rho_pow = (-ms * rho.ln()).exp();
    closed *= rho_pow;

    // Π(1 - e^{-y} r_i/ρ) = p(ρ e^y) e^{-my} ρ^{-m}: evaluate from the
    // coefficients, no root extraction in the integrand.
    let rho_neg_m = rho.powi(-(m as i32));
    let mut upper = 50.0 / ms;
    for _ in 0..8 {
        upper = (50.0 + (m as f64) * (1.0 + upper).ln()) / ms;
    }
    let numeric = integrate(
        |y| {
            (-ms * y).exp() * p.eval(&(rho * y.exp())) * (-(m as f64) * y).exp() * rho_neg_m
        },
        0.0,
        upper,
        1e-300,
        1e-10,
    )? * rho_pow;

    if closed == 0.0 {
        return Err(Error::QuadratureFailure);
    }
    Ok(((numeric - closed) / closed).abs())
}

/// Digamma via the recurrence `ψ(x+1) = ψ(x) + 1/x` into the asymptotic
/// region, then the standard expansion.
pub fn digamma(mut x: f64) -> f64 {
    let mut acc = 0.0;
    while x < 20.0 {
        acc -= 1.0 / x;
        x += 1.0;
    }
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    acc + x.ln()
        - 0.5 * inv
        - inv2
            * (1.0 / 12.0
                - inv2
                    * (1.0 / 120.0
                        - inv2
                            * (1.0 / 252.0
                                - inv2 * (1.0 / 240.0 - inv2 * (1.0 / 132.0)))))
}

/// `ln` of the m-finite N-transform of the identity:
/// `ψ(ms + m + 1) - ψ(ms)`; converges to `ln((s+1)/s)` as `m -> ∞`.
pub fn identity_s_reference(m: usize, s: f64) -> f64 {
    let ms = m as f64 * s;
    digamma(ms + m as f64 + 1.0) - digamma(ms)
}

/// One row of the R-transform convergence study.
#[derive(Clone, Debug)]
pub struct ConvergenceRow {
    pub replication: usize,
    pub degree: usize,
    pub coeffs: Vec<f64>,
}

/// Finite R-transform coefficients of k-fold replicated realizations,
/// tabulated against the Voiculescu reference (convergence is observed, not
/// asserted).
#[derive(Clone, Debug)]
pub struct ConvergenceStudy {
    pub rows: Vec<ConvergenceRow>,
    pub reference: Vec<f64>,
    pub columns: usize,
}

pub fn r_convergence_study(base: &[f64], replications: &[usize]) -> Result<ConvergenceStudy> {
    if base.is_empty() {
        return Err(Error::Invalid("empty base multiset"));
    }
    let columns = base.len().min(4);
    let mu = Multiset::from_reals(base);
    let reference: Vec<f64> = voiculescu_r_series(&mu, columns)?
        .coeffs()
        .iter()
        .map(|c| c + 0.0)
        .collect();
    let mut rows = Vec::with_capacity(replications.len());
    for &k in replications {
        if k == 0 {
            return Err(Error::Invalid("replication factor must be positive"));
        }
        let rep = mu.replicate(k);
        let p = rep.monic_poly(1e-9)?;
        let r = finite_r_transform(&p)?;
        rows.push(ConvergenceRow {
            replication: k,
            degree: p.degree(),
            // + 0.0 normalizes IEEE negative zeros out of the table
            coeffs: (0..columns.min(r.order())).map(|i| r.coeff(i) + 0.0).collect(),
        });
    }
    Ok(ConvergenceStudy {
        rows,
        reference,
        columns,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::poly_from_roots;
    use crate::rng::Rng;
    use crate::scalar::Rat;
    use num_traits::Zero;

    fn q(n: i64, d: i64) -> Rat {
        Rat::from_ratio(n, d)
    }

    fn qs(v: &[(i64, i64)]) -> TruncatedSeries<Rat> {
        TruncatedSeries::from_coeffs(v.iter().map(|(n, d)| q(*n, *d)).collect())
    }

    fn rational_rooted(rng: &mut Rng, m: usize, lo: i64, hi: i64) -> Poly<Rat> {
        let roots: Vec<Rat> = (0..m)
            .map(|_| q(rng.below((hi - lo) as u64) as i64 + lo, 2))
            .collect();
        poly_from_roots(&Multiset::from_reals(&roots), 0.0).unwrap()
    }

    #[test]
    fn r_of_constant_poly() {
        let c = q(5, 1);
        let p = poly_from_roots(&Multiset::from_reals(&vec![c; 3]), 0.0).unwrap();
        let r = finite_r_transform(&p).unwrap();
        assert_eq!(r.coeffs(), qs(&[(5, 1), (0, 1), (0, 1)]).coeffs());
    }

    #[test]
    fn r_of_x2_minus_1() {
        let p: Poly<Rat> = Poly::from_leading(vec![q(1, 1), q(0, 1), q(-1, 1)]);
        let r = finite_r_transform(&p).unwrap();
        assert_eq!(r.coeffs(), qs(&[(0, 1), (2, 1)]).coeffs());
    }

    #[test]
    fn r_translation_shifts_constant_term_only() {
        let mut rng = Rng::seed(21);
        for m in 2..=6 {
            let p = rational_rooted(&mut rng, m, -4, 4);
            let c = q(7, 3);
            let shifted = p.translate(&c);
            let r0 = finite_r_transform(&p).unwrap();
            let r1 = finite_r_transform(&shifted).unwrap();
            assert_eq!(r1.coeff(0), r0.coeff(0) + c);
            for i in 1..m {
                assert_eq!(r1.coeff(i), r0.coeff(i));
            }
        }
    }

    #[test]
    fn k_transform_pole() {
        let p: Poly<Rat> = Poly::x_pow(4);
        let k = finite_k_transform(&p).unwrap();
        assert_eq!(k.pole, q(5, 4));
        assert!(k.tail.coeffs().iter().all(|c| c.is_zero()));

        let p: Poly<Rat> = Poly::from_leading(vec![q(1, 1), q(0, 1), q(-1, 1)]);
        let k = finite_k_transform(&p).unwrap();
        assert_eq!(k.pole, q(3, 2));
        assert_eq!(k.tail.coeffs(), qs(&[(0, 1), (2, 1)]).coeffs());
    }

    #[test]
    fn additivity_worked_example() {
        let p: Poly<Rat> = Poly::from_leading(vec![q(1, 1), q(0, 1), q(-1, 1)]);
        let (ok, res) = r_additivity_check(&p, &p).unwrap();
        assert!(ok);
        assert_eq!(res, 0.0);
        // R(x^2 - 2) = 4s: sum of 2s + 2s
        let sum2: Poly<Rat> = Poly::from_leading(vec![q(1, 1), q(0, 1), q(-2, 1)]);
        let r = finite_r_transform(&sum2).unwrap();
        assert_eq!(r.coeffs(), qs(&[(0, 1), (4, 1)]).coeffs());
    }

    #[test]
    fn additivity_with_x_pow_is_trivial() {
        let mut rng = Rng::seed(22);
        let p = rational_rooted(&mut rng, 5, -4, 4);
        let (ok, res) = r_additivity_check(&p, &Poly::x_pow(5)).unwrap();
        assert!(ok);
        assert_eq!(res, 0.0);
        let rq = finite_r_transform(&Poly::<Rat>::x_pow(5)).unwrap();
        assert!(rq.coeffs().iter().all(|c| c.is_zero()));
    }

    #[test]
    fn additivity_random_exact() {
        let mut rng = Rng::seed(23);
        for m in 2..=5 {
            let p = rational_rooted(&mut rng, m, -4, 4);
            let qq = rational_rooted(&mut rng, m, -4, 4);
            let (ok, res) = r_additivity_check(&p, &qq).unwrap();
            assert!(ok, "m={m}, residual={res}");
        }
    }

    #[test]
    fn multiplicativity_examples() {
        // q = (x-1)^m is trivial
        let mut rng = Rng::seed(24);
        let p = rational_rooted(&mut rng, 4, 1, 6);
        let ones = poly_from_roots(
            &Multiset::from_reals(&vec![q(1, 1); 4]),
            0.0,
        )
        .unwrap();
        let (ok, res) = s_multiplicativity_check(&p, &ones).unwrap();
        assert!(ok && res == 0.0);

        // the worked pair p = q = (x-1)(x-2)(x-3)
        let p3 = poly_from_roots(
            &Multiset::from_reals(&[q(1, 1), q(2, 1), q(3, 1)]),
            0.0,
        )
        .unwrap();
        let (ok, _) = s_multiplicativity_check(&p3, &p3).unwrap();
        assert!(ok);

        for m in 2..=6 {
            let a = rational_rooted(&mut rng, m, 1, 8);
            let b = rational_rooted(&mut rng, m, 1, 8);
            let (ok, res) = s_multiplicativity_check(&a, &b).unwrap();
            assert!(ok, "m={m} residual={res}");
        }
    }

    #[test]
    fn quadrature_k_closed_form_cases() {
        // p = x^m: closed form m!/(ms)^{m+1}
        for m in 1..=6 {
            let p: Poly<f64> = Poly::x_pow(m);
            let dev = quadrature_k_check(&p, 0.8).unwrap();
            assert!(dev <= 1e-6, "m={m}, dev={dev}");
        }
        let p = Poly::from_leading(vec![1.0, -2.0, 1.0]); // (x-1)^2
        assert!(quadrature_k_check(&p, 1.0).unwrap() <= 1e-6);
        let p = Poly::from_leading(vec![1.0, 0.0, -1.0]); // x^2 - 1
        assert!(quadrature_k_check(&p, 0.5).unwrap() <= 1e-6);
    }

    #[test]
    fn quadrature_n_closed_form_cases() {
        // (x-1)^m at s=1
        for m in 1..=6 {
            let ones = poly_from_roots(
                &Multiset::from_reals(&vec![1.0f64; m]),
                1e-12,
            )
            .unwrap();
            let dev = quadrature_n_check(&ones, 1.0).unwrap();
            assert!(dev <= 1e-6, "m={m}, dev={dev}");
        }
        let p = Poly::from_leading(vec![1.0, -3.0, 2.0]); // roots 1, 2
        assert!(quadrature_n_check(&p, 0.7).unwrap() <= 1e-6);
        // scaling p(x/c) c^m scales the integral per the change of variables;
        // the relative deviation must stay small
        let scaled = p.scale_roots(&3.0);
        assert!(quadrature_n_check(&scaled, 0.7).unwrap() <= 1e-6);
    }

    #[test]
    fn quadrature_rejects_bad_input() {
        let p = Poly::from_leading(vec![1.0, 0.0, -1.0]);
        assert!(quadrature_n_check(&p, 0.5).is_err());
        assert!(quadrature_k_check(&p, -1.0).is_err());
    }

    #[test]
    fn digamma_values() {
        // ψ(1) = -γ
        assert!((digamma(1.0) + 0.5772156649015329).abs() < 1e-12);
        // recurrence ψ(n+1) = ψ(n) + 1/n: ψ(3) - ψ(1) = 1 + 1/2
        assert!((digamma(3.0) - digamma(1.0) - 1.5).abs() < 1e-12);
    }

    #[test]
    fn identity_s_reference_limits() {
        // m = 1, s = 1: ψ(3) - ψ(1) = 3/2
        assert!((identity_s_reference(1, 1.0) - 1.5).abs() < 1e-12);
        // m large: ln 2 within 1e-3
        let v = identity_s_reference(10_000, 1.0);
        assert!((v - core::f64::consts::LN_2).abs() < 1e-3, "{v}");
        // s large: decays to 0+
        let v = identity_s_reference(50, 1e4);
        assert!(v > 0.0 && v < 1e-3);
    }

    #[test]
    fn convergence_study_bernoulli() {
        let study =
            r_convergence_study(&[-1.0, 1.0], &[1, 2, 4, 8, 16, 32, 64]).unwrap();
        assert_eq!(study.reference[1], 1.0, "Voiculescu κ_2 of Bernoulli");
        // κ_2 column is 2k/(2k-1), decreasing toward 1
        let mut prev = f64::INFINITY;
        for row in &study.rows {
            let k2 = row.coeffs[1];
            let m = row.degree as f64;
            assert!((k2 - m / (m - 1.0)).abs() < 1e-9);
            assert!(k2 < prev);
            prev = k2;
        }
        assert!((study.rows.last().unwrap().coeffs[1] - 1.0).abs() < 0.01);
    }

    #[test]
    fn convergence_study_constant_and_mean() {
        let study = r_convergence_study(&[2.5], &[1, 3, 9]).unwrap();
        for row in &study.rows {
            assert!((row.coeffs[0] - 2.5).abs() < 1e-12);
        }
        let study = r_convergence_study(&[0.0, 1.0, 2.0], &[1, 2, 4]).unwrap();
        for row in &study.rows {
            assert!((row.coeffs[0] - 1.0).abs() < 1e-12, "κ_1 column constant");
        }
    }
}
