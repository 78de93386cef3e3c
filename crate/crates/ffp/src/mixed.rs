//! Mixed discriminants of square matrices, normalized so that
//! `D(A, ..., A) = m! det A`.
//!
//! The generic evaluation is the `2^m` subset-determinant polarization
//!
//! ```text
//! D(X_1, ..., X_m) = Σ_{S ⊆ [m]} (-1)^{m-|S|} det(Σ_{i∈S} X_i)
//! ```
//!
//! exact in rational mode and capped at `m <= 14`.  Repeated-argument
//! patterns like `D(A[i], B[j], I[m-i-j])` collapse the subset sum to
//! multiplicity counters with multinomial weights, which is what the finite
//! free position identities evaluate.
//!
//! With this normalization the characteristic-polynomial decomposition reads
//! `m! det(xI + A) = Σ_i x^{m-i} C(m,i) D(A[i], I[m-i])`, equivalently
//! `D(A[i], I[m-i]) = i!(m-i)! e_i(λ(A))`; for diagonal arguments `D` is the
//! permanent of the matrix whose columns are the diagonals.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::scalar::{binomial, Scalar};

const POLARIZATION_CAP: usize = 14;

/// Mixed discriminant of exactly `m` square matrices of dimension `m`.
pub fn mixed_discriminant<T: Scalar>(xs: &[Mat<T>]) -> Result<T> {
    let m = xs.len();
    if m == 0 {
        return Err(Error::Invalid("mixed discriminant of no matrices"));
    }
    if xs.iter().any(|x| x.dim() != m) {
        return Err(Error::DimensionMismatch);
    }
    if m > POLARIZATION_CAP {
        return Err(Error::Invalid("polarization capped at m <= 14"));
    }
    let mut acc = T::zero();
    for mask in 0u32..(1u32 << m) {
        let mut sum = Mat::zero(m);
        let mut bits = 0;
        for (i, x) in xs.iter().enumerate() {
            if mask & (1 << i) != 0 {
                sum = sum.add(x)?;
                bits += 1;
            }
        }
        let det = sum.det();
        acc = if (m - bits) % 2 == 0 {
            acc + det
        } else {
            acc - det
        };
    }
    Ok(acc)
}

/// Mixed discriminant of a repeated-argument pattern `(X_g, n_g)` with
/// `Σ n_g = m`, via the collapsed polarization with multinomial weights.
pub fn md_pattern_counts<T: Scalar>(parts: &[(&Mat<T>, usize)]) -> Result<T> {
    let m: usize = parts.iter().map(|(_, n)| n).sum();
    if m == 0 {
        return Err(Error::Invalid("mixed discriminant of no matrices"));
    }
    if parts.iter().any(|(x, _)| x.dim() != m) {
        return Err(Error::DimensionMismatch);
    }
    // Odometer over counts a_g <= n_g.
    let g = parts.len();
    let mut counts = vec![0usize; g];
    let mut acc = T::zero();
    loop {
        let taken: usize = counts.iter().sum();
        let mut weight = T::one();
        for (idx, (_, n)) in parts.iter().enumerate() {
            weight = weight * binomial::<T>(*n, counts[idx]);
        }
        let mut sum = Mat::zero(m);
        for (idx, (x, _)) in parts.iter().enumerate() {
            if counts[idx] > 0 {
                sum = sum.add(&x.scale(&T::from_int(counts[idx] as i64)))?;
            }
        }
        let det = sum.det();
        let term = weight * det;
        acc = if (m - taken) % 2 == 0 {
            acc + term
        } else {
            acc - term
        };
        // advance odometer
        let mut pos = 0;
        loop {
            if pos == g {
                return Ok(acc);
            }
            counts[pos] += 1;
            if counts[pos] <= parts[pos].1 {
                break;
            }
            counts[pos] = 0;
            pos += 1;
        }
    }
}

/// `D(A[i], B[j], I[m-i-j])` with repeated arguments.
pub fn md_pattern<T: Scalar>(a: &Mat<T>, b: &Mat<T>, i: usize, j: usize) -> Result<T> {
    let m = a.dim();
    if b.dim() != m {
        return Err(Error::DimensionMismatch);
    }
    if i + j > m {
        return Err(Error::IndexOutOfRange);
    }
    let id = Mat::identity(m);
    md_pattern_counts(&[(a, i), (b, j), (&id, m - i - j)])
}

/// Residual of the trace distributivity
/// `Tr(A) D(X_1..X_m) = Σ_i D(X_1, ..., A X_i, ..., X_m)`
/// (unnormalized trace); exactly zero in rational mode.
pub fn trace_distributivity_check<T: Scalar>(a: &Mat<T>, xs: &[Mat<T>]) -> Result<f64> {
    let lhs = a.trace() * mixed_discriminant(xs)?;
    let mut rhs = T::zero();
    for i in 0..xs.len() {
        let mut modified: Vec<Mat<T>> = xs.to_vec();
        modified[i] = a.matmul(&xs[i])?;
        rhs = rhs + mixed_discriminant(&modified)?;
    }
    Ok((lhs - rhs).to_f64_lossy().abs())
}

/// Permanent by Ryser-style expansion over subsets (small `m` only).
pub fn permanent<T: Scalar>(q: &Mat<T>) -> Result<T> {
    let m = q.dim();
    if m > POLARIZATION_CAP {
        return Err(Error::Invalid("permanent capped at m <= 14"));
    }
    // Ryser: perm = (-1)^m Σ_{S} (-1)^{|S|} Π_i Σ_{j∈S} q_ij
    let mut acc = T::zero();
    for mask in 1u32..(1u32 << m) {
        let bits = mask.count_ones() as usize;
        let mut prod = T::one();
        for i in 0..m {
            let mut row = T::zero();
            for j in 0..m {
                if mask & (1 << j) != 0 {
                    row = row + q.get(i, j);
                }
            }
            prod = prod * row;
        }
        acc = if (m - bits) % 2 == 0 {
            acc + prod
        } else {
            acc - prod
        };
    }
    Ok(acc)
}

/// Exact combinatorial identity
/// `Σ_t (-1)^t C(k,t) C(n-t, n-j-k-t) = C(n-k, n-j-k)` for all `j+k <= n`,
/// checked over every `n <= nmax` in big-integer arithmetic.
pub fn binomial_identity_check(nmax: usize) -> bool {
    use num_bigint::BigInt;
    fn big_binom(n: i64, k: i64) -> BigInt {
        if k < 0 || k > n {
            return BigInt::from(0);
        }
        let mut acc = BigInt::from(1);
        for t in 0..k {
            acc = acc * BigInt::from(n - t) / BigInt::from(t + 1);
        }
        acc
    }
    for n in 1..=nmax as i64 {
        for k in 0..=n {
            for j in 0..=(n - k) {
                let mut lhs = BigInt::from(0);
                for t in 0..=k {
                    let term = big_binom(k, t) * big_binom(n - t, n - j - k - t);
                    lhs = if t % 2 == 0 { lhs + term } else { lhs - term };
                }
                if lhs != big_binom(n - k, n - j - k) {
                    return false;
                }
            }
        }
    }
    true
}

/// Residuals of the projection identity
/// `m! f(i,j,k) = f(i+k,0,0) f(0,j+k,0)` over all `i+j+k <= m`, where
/// `f(i,j,k) = D(A[i], B[j], (AB)[k], I[m-i-j-k])`.  Requires `A^2 = A`
/// exactly and `A, B` in finite free position.
pub fn projection_identity_check(
    a: &Mat<f64>,
    b: &Mat<f64>,
    tol: f64,
) -> Result<Vec<f64>> {
    let m = a.dim();
    if b.dim() != m {
        return Err(Error::DimensionMismatch);
    }
    if a.matmul(a)?.max_abs_diff(a) > tol {
        return Err(Error::HypothesisViolated("A^2 = A fails"));
    }
    // finite free position precondition, checked through the same identities
    // with k = 0 (these are the ff_equality identities).
    let ab = a.matmul(b)?;
    let id = Mat::identity(m);
    let f = |i: usize, j: usize, k: usize| -> Result<f64> {
        md_pattern_counts(&[(a, i), (b, j), (&ab, k), (&id, m - i - j - k)])
    };
    let m_fact: f64 = (1..=m).map(|t| t as f64).product();
    for i in 0..=m {
        for j in 0..=(m - i) {
            let lhs = m_fact * f(i, j, 0)?;
            let rhs = f(i, 0, 0)? * f(0, j, 0)?;
            if (lhs - rhs).abs() > tol * (1.0 + lhs.abs().max(rhs.abs())) {
                return Err(Error::HypothesisViolated(
                    "A and B are not in finite free position",
                ));
            }
        }
    }
    let mut residuals = Vec::new();
    for i in 0..=m {
        for j in 0..=(m - i) {
            for k in 0..=(m - i - j) {
                let lhs = m_fact * f(i, j, k)?;
                let rhs = f(i + k, 0, 0)? * f(0, j + k, 0)?;
                residuals.push((lhs - rhs).abs());
            }
        }
    }
    Ok(residuals)
}
