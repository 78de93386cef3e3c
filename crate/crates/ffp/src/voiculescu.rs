//! Voiculescu's R- and (modified) S-transforms as truncated-series oracles.
//!
//! For a finite multiset these are the asymptotic references the m-finite
//! transforms converge to; additivity/multiplicativity cannot be asserted at
//! finite size (freeness is asymptotic), so the crate only uses them as
//! comparison columns in convergence studies.
//!
//! `R`: build the moment form `g(x) = Σ M_i x^{i+1}` of the Cauchy
//! transform, revert it, and strip the `1/s` pole.  `S` (modified
//! convention): revert `m(x) = Σ_{i>=1} M_i x^i` of `M(z) = zG(z) - 1` and
//! multiply by `s/(1+s)`; the modified S of a point mass at `c` is the
//! constant `c`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::poly::Multiset;
use crate::scalar::Scalar;
use crate::series::TruncatedSeries;

fn real_moments<T: Scalar>(mu: &Multiset<T>, kmax: usize) -> Result<Vec<T>> {
    if mu.is_empty() {
        return Err(Error::Invalid("transform of an empty multiset"));
    }
    if !mu.is_real(1e-12) {
        return Err(Error::NonRealRoots);
    }
    Ok(mu.moments(kmax).into_iter().map(|z| z.re).collect())
}

/// R-transform series `R(s) = κ_1 + κ_2 s + ...` with `order` coefficients.
pub fn voiculescu_r_series<T: Scalar>(
    mu: &Multiset<T>,
    order: usize,
) -> Result<TruncatedSeries<T>> {
    let order = order.max(1);
    let k = order + 2;
    let moments = real_moments(mu, k - 1)?;
    // g(x) = x + M_1 x^2 + ... = Σ M_i x^{i+1}, with M_0 = 1.
    let mut coeffs = vec![T::zero(); k];
    for (i, mi) in moments.iter().enumerate() {
        if i + 1 < k {
            coeffs[i + 1] = mi.clone();
        }
    }
    let g = TruncatedSeries::from_coeffs(coeffs);
    let ghat = g.revert()?;
    // R(s) = 1/ghat(s) - 1/s = ((s/ghat) - 1)/s
    let tail = TruncatedSeries::from_coeffs(
        (0..k - 1).map(|i| ghat.coeff(i + 1)).collect::<Vec<T>>(),
    );
    let inv = tail.invert()?;
    Ok(TruncatedSeries::from_coeffs(
        (0..order).map(|i| inv.coeff(i + 1)).collect::<Vec<T>>(),
    ))
}

/// Modified S-transform series with `order` coefficients; all elements must
/// be positive (the first moment in particular must be nonzero).
pub fn voiculescu_s_values<T: Scalar>(
    mu: &Multiset<T>,
    order: usize,
) -> Result<TruncatedSeries<T>> {
    let order = order.max(1);
    let k = order + 1;
    let moments = real_moments(mu, k)?;
    if moments[1].is_zero() {
        return Err(Error::NotInvertible);
    }
    if mu.elems().iter().any(|z| z.re <= T::zero()) {
        return Err(Error::NonPositiveRoots);
    }
    // m(x) = Σ_{i>=1} M_i x^i, revert, then S = s / ((1+s) mhat(s)).
    let mut coeffs = vec![T::zero(); k + 1];
    for (i, item) in coeffs.iter_mut().enumerate().take(k + 1).skip(1) {
        *item = moments[i].clone();
    }
    let m_series = TruncatedSeries::from_coeffs(coeffs);
    let mhat = m_series.revert()?;
    let tail = TruncatedSeries::from_coeffs(
        (0..k).map(|i| mhat.coeff(i + 1)).collect::<Vec<T>>(),
    );
    let s_over_mhat = tail.invert()?;
    // 1/(1+s) = Σ (-1)^i s^i
    let geo = TruncatedSeries::from_coeffs(
        (0..k)
            .map(|i| if i % 2 == 0 { T::one() } else { -T::one() })
            .collect::<Vec<T>>(),
    );
    Ok(s_over_mhat.mul(&geo).truncated(order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;
    use num_traits::Zero;

    fn q(n: i64, d: i64) -> Rat {
        Rat::from_ratio(n, d)
    }

    #[test]
    fn r_of_point_mass_is_constant() {
        let mu = Multiset::from_reals(&vec![q(5, 2); 4]);
        let r = voiculescu_r_series(&mu, 4).unwrap();
        assert_eq!(r.coeff(0), q(5, 2));
        for i in 1..4 {
            assert_eq!(r.coeff(i), q(0, 1));
        }
    }

    #[test]
    fn r_of_symmetric_bernoulli() {
        let mu = Multiset::from_reals(&[q(-1, 1), q(1, 1)]);
        let r = voiculescu_r_series(&mu, 4).unwrap();
        assert_eq!(
            r.coeffs(),
            &[q(0, 1), q(1, 1), q(0, 1), q(-1, 1)],
            "R(s) = s - s^3 + ..."
        );
    }

    #[test]
    fn r_of_zeros_is_zero() {
        let mu = Multiset::from_reals(&[q(0, 1), q(0, 1), q(0, 1)]);
        let r = voiculescu_r_series(&mu, 3).unwrap();
        assert!(r.coeffs().iter().all(|c| c.is_zero()));
    }

    #[test]
    fn r_translation_shifts_constant_term() {
        let mu = Multiset::from_reals(&[q(0, 1), q(1, 1), q(2, 1)]);
        let r = voiculescu_r_series(&mu, 3).unwrap();
        assert_eq!(r.coeff(0), q(1, 1), "κ_1 is the mean");
        let shifted = voiculescu_r_series(&mu.translate(&q(7, 2)), 3).unwrap();
        assert_eq!(shifted.coeff(0), r.coeff(0) + q(7, 2));
        for i in 1..3 {
            assert_eq!(shifted.coeff(i), r.coeff(i));
        }
    }

    #[test]
    fn s_of_point_mass_is_constant() {
        let mu = Multiset::from_reals(&vec![q(3, 1); 3]);
        let s = voiculescu_s_values(&mu, 3).unwrap();
        assert_eq!(s.coeffs(), &[q(3, 1), q(0, 1), q(0, 1)]);

        let ones = Multiset::from_reals(&vec![q(1, 1); 4]);
        let s = voiculescu_s_values(&ones, 2).unwrap();
        assert_eq!(s.coeffs(), &[q(1, 1), q(0, 1)]);
    }

    #[test]
    fn s_of_one_two() {
        let mu = Multiset::from_reals(&[q(1, 1), q(2, 1)]);
        let s = voiculescu_s_values(&mu, 4).unwrap();
        assert_eq!(s.coeffs(), &[q(3, 2), q(1, 6), q(-1, 54), q(-7, 486)]);
    }

    #[test]
    fn s_rejects_zero_mean_and_nonpositive() {
        let mu = Multiset::from_reals(&[q(0, 1), q(0, 1)]);
        assert_eq!(
            voiculescu_s_values(&mu, 2).unwrap_err(),
            Error::NotInvertible
        );
        let mixed = Multiset::from_reals(&[q(-1, 1), q(2, 1)]);
        assert!(voiculescu_s_values(&mixed, 2).is_err());
    }
}
