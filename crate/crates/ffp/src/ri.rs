//! Restricted invertibility: the expected characteristic polynomial of `k`
//! rank-one updates drawn uniformly with replacement from a Parseval frame
//! equals a rescaled associated Laguerre polynomial
//! `m!(-n)^{-m} L_m^{(k-m)}(nx)`, with the Marchenko-Pastur quantity
//! `(1 - √(k/m))² (m/n)` as the lower bound on the k-th largest root.
//!
//! The expectation is computed by exact enumeration over all `n^k`
//! with-replacement draws (budgeted), which is the oracle side of the
//! identity.

use alloc::vec::Vec;
#[allow(unused_imports)] // f64 math comes from the Float trait in no_std
use num_traits::Float;

use crate::compound::sorted_roots_desc;
use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::poly::Poly;

#[derive(Clone, Debug)]
pub struct RiReport {
    /// Enumerated `E[det(xI - Σ u_i u_i^T)]`.
    pub expected: Poly<f64>,
    /// `m!(-n)^{-m} L_m^{(k-m)}(nx)`.
    pub reference: Poly<f64>,
    pub max_coeff_dev: f64,
    pub kth_largest_root: f64,
    pub mp_bound: f64,
    pub draws: usize,
}

/// `m!(-n)^{-m} L_m^{(k-m)}(nx)`: coefficient of `x^i` is
/// `m!(-n)^{i-m}/i! C(k, m-i)`.
pub fn laguerre_reference(m: usize, n: usize, k: usize) -> Poly<f64> {
    let mut coeffs = vec![0.0f64; m + 1];
    for (i, slot) in coeffs.iter_mut().enumerate() {
        let need = m - i;
        if need > k {
            continue;
        }
        let mut binom = 1.0;
        for t in 0..need {
            binom *= (k - t) as f64 / (t + 1) as f64;
        }
        // m!/i! / (-n)^{m-i}
        let mut factor = 1.0;
        for t in (i + 1)..=m {
            factor *= t as f64 / -(n as f64);
        }
        *slot = factor * binom;
    }
    Poly::from_ascending(coeffs)
}

/// Exact enumeration of the expected characteristic polynomial over all
/// `n^k` ordered with-replacement draws, compared against the Laguerre
/// reference.  `budget` caps `n^k`.
pub fn restricted_invertibility_demo(
    vectors: &[Vec<f64>],
    k: usize,
    budget: usize,
) -> Result<RiReport> {
    let n = vectors.len();
    if n == 0 {
        return Err(Error::Invalid("need at least one vector"));
    }
    let m = vectors[0].len();
    if vectors.iter().any(|v| v.len() != m) {
        return Err(Error::DimensionMismatch);
    }
    if k >= n {
        return Err(Error::Invalid("k must be smaller than the frame size"));
    }
    // Parseval check: Σ v v^T = I within 1e-10.
    let mut gram: Mat<f64> = Mat::zero(m);
    for v in vectors {
        for i in 0..m {
            for j in 0..m {
                let val = gram.get(i, j) + v[i] * v[j];
                gram.set(i, j, val);
            }
        }
    }
    if gram.max_abs_diff(&Mat::identity(m)) > 1e-10 {
        return Err(Error::HypothesisViolated("vectors must form a Parseval frame"));
    }
    let draws = n.checked_pow(k as u32).ok_or(Error::BudgetExceeded)?;
    if draws > budget {
        return Err(Error::BudgetExceeded);
    }

    let outers: Vec<Mat<f64>> = vectors
        .iter()
        .map(|v| Mat::from_fn(m, |i, j| v[i] * v[j]))
        .collect();
    let mut mean = vec![0.0f64; m + 1];
    let mut idx = vec![0usize; k];
    loop {
        let mut g: Mat<f64> = Mat::zero(m);
        for &i in &idx {
            g = g.add(&outers[i])?;
        }
        let cp = g.char_poly();
        for (j, slot) in mean.iter_mut().enumerate() {
            *slot += cp.coeff(j);
        }
        // odometer
        let mut pos = 0;
        loop {
            if pos == k {
                let scale = 1.0 / draws as f64;
                let expected = Poly::from_ascending(
                    mean.iter().map(|c| c * scale).collect::<Vec<f64>>(),
                );
                let reference = laguerre_reference(m, n, k);
                let max_coeff_dev = expected.max_coeff_dev(&reference);
                let roots = sorted_roots_desc(&reference, 1e-9)?;
                let kth_largest_root = roots[k.min(roots.len()) - 1];
                let ratio = k as f64 / m as f64;
                let mp_bound = (1.0 - ratio.sqrt()).powi(2) * (m as f64 / n as f64);
                return Ok(RiReport {
                    expected,
                    reference,
                    max_coeff_dev,
                    kth_largest_root,
                    mp_bound,
                    draws,
                });
            }
            idx[pos] += 1;
            if idx[pos] < n {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Two orthonormal bases scaled by `1/√2`: the 6-vector Parseval frame in
/// `R^3` used by the demo and the acceptance suite.
pub fn demo_frame_r3() -> Vec<Vec<f64>> {
    let s = core::f64::consts::FRAC_1_SQRT_2;
    // second basis: a rational rotation (orthogonal with 1/3 entries)
    let q = [
        [2.0 / 3.0, -2.0 / 3.0, 1.0 / 3.0],
        [1.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0],
        [2.0 / 3.0, 1.0 / 3.0, -2.0 / 3.0],
    ];
    let mut frame = Vec::with_capacity(6);
    for i in 0..3 {
        let mut e = vec![0.0; 3];
        e[i] = s;
        frame.push(e);
    }
    for col in 0..3 {
        frame.push((0..3).map(|row| q[row][col] * s).collect());
    }
    frame
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn demo_frame_is_parseval() {
        let frame = demo_frame_r3();
        let mut gram: Mat<f64> = Mat::zero(3);
        for v in &frame {
            for i in 0..3 {
                for j in 0..3 {
                    let val = gram.get(i, j) + v[i] * v[j];
                    gram.set(i, j, val);
                }
            }
        }
        assert!(gram.max_abs_diff(&Mat::identity(3)) < 1e-15);
    }

    #[test]
    fn k1_gives_trace_polynomial() {
        // E[det(xI - u u^T)] = x^{m-1}(x - m/n)
        let frame = demo_frame_r3();
        let rep = restricted_invertibility_demo(&frame, 1, 1000).unwrap();
        let want = Poly::from_leading(vec![1.0, -0.5, 0.0, 0.0]);
        assert!(rep.expected.max_coeff_dev(&want) < 1e-12);
        assert!(rep.max_coeff_dev < 1e-12, "{}", rep.max_coeff_dev);
    }

    #[test]
    fn orthonormal_basis_k1() {
        // n = m, v_i = e_i: the average of coordinate projections.
        let mut basis = Vec::new();
        for i in 0..3 {
            let mut e = vec![0.0; 3];
            e[i] = 1.0;
            basis.push(e);
        }
        let rep = restricted_invertibility_demo(&basis, 1, 100).unwrap();
        // x^2(x - 1): every draw is a rank-one projection
        let want = Poly::from_leading(vec![1.0, -1.0, 0.0, 0.0]);
        assert!(rep.expected.max_coeff_dev(&want) < 1e-12);
    }

    #[test]
    fn frame_k2_matches_laguerre() {
        let frame = demo_frame_r3();
        let rep = restricted_invertibility_demo(&frame, 2, 100).unwrap();
        assert_eq!(rep.draws, 36);
        assert!(rep.max_coeff_dev <= 1e-10, "{}", rep.max_coeff_dev);
        // reference is x^3 - x^2 + x/6
        let want = Poly::from_leading(vec![1.0, -1.0, 1.0 / 6.0, 0.0]);
        assert!(rep.reference.max_coeff_dev(&want) < 1e-12);
        // k-th largest root >= MP bound
        assert!(rep.kth_largest_root >= rep.mp_bound);
        assert!((rep.mp_bound - (1.0 - (2.0f64 / 3.0).sqrt()).powi(2) * 0.5).abs() < 1e-15);
    }

    #[test]
    fn laguerre_kth_root_beats_mp_bound() {
        // The k-th largest root of the reference polynomial dominates the
        // Marchenko-Pastur quantity across small (m, n, k) grids.
        for m in 2..=5usize {
            for n in (m + 1)..=(2 * m + 2) {
                for k in 1..m.min(n) {
                    let reference = laguerre_reference(m, n, k);
                    let roots = sorted_roots_desc(&reference, 1e-9).unwrap();
                    let bound =
                        (1.0 - (k as f64 / m as f64).sqrt()).powi(2) * (m as f64 / n as f64);
                    assert!(
                        roots[k - 1] >= bound - 1e-12,
                        "m={m} n={n} k={k}: {} < {bound}",
                        roots[k - 1]
                    );
                }
            }
        }
    }

    #[test]
    fn budget_and_hypothesis_errors() {
        let frame = demo_frame_r3();
        assert_eq!(
            restricted_invertibility_demo(&frame, 2, 10).unwrap_err(),
            Error::BudgetExceeded
        );
        let bad = vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]];
        assert!(matches!(
            restricted_invertibility_demo(&bad, 1, 100).unwrap_err(),
            Error::HypothesisViolated(_)
        ));
    }
}
