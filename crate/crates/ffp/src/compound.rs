//! Additive compound matrices and majorization.
//!
//! `Δ_k(A) = d/dt C_k(I + tA)|_{t=0}` has dimension `C(m,k)`, is additive in
//! `A`, and its eigenvalues are the k-element sums of the eigenvalues of
//! `A`.  Majorization is prefix-sum dominance of equal-total sorted
//! collections; the flow `r_t = [p ⊞ t^m q(x/t)]` for zero-root-sum `q`
//! produces root collections that majorize downward in `t`.

use alloc::vec::Vec;
#[allow(unused_imports)] // f64 math comes from the Float trait in no_std
use num_traits::Float;

use crate::conv::additive_convolve;
use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::poly::Poly;
use crate::scalar::Scalar;

/// All k-element subsets of `0..m` in lexicographic order.
pub fn k_subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > m {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + m - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in (i + 1)..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Linear coefficient in `t` of `det(M + tN)`: the sum over rows of the
/// determinant with that row replaced by the corresponding row of `N`.
fn det_linear_coeff<T: Scalar>(m_rows: &[Vec<T>], n_rows: &[Vec<T>]) -> T {
    let k = m_rows.len();
    let mut acc = T::zero();
    for r in 0..k {
        let mixed: Vec<Vec<T>> = (0..k)
            .map(|i| {
                if i == r {
                    n_rows[i].clone()
                } else {
                    m_rows[i].clone()
                }
            })
            .collect();
        acc = acc + Mat::from_rows(&mixed).expect("square").det();
    }
    acc
}

/// The k-th additive compound matrix `Δ_k(A)`, dimension `C(m,k)`.
pub fn additive_compound<T: Scalar>(a: &Mat<T>, k: usize) -> Result<Mat<T>> {
    let m = a.dim();
    if k == 0 || k > m {
        return Err(Error::IndexOutOfRange);
    }
    let subsets = k_subsets(m, k);
    let n = subsets.len();
    let mut out = Mat::zero(n);
    for (ri, rows) in subsets.iter().enumerate() {
        for (ci, cols) in subsets.iter().enumerate() {
            // d/dt det((I + tA)[rows, cols]) at t = 0
            let m_rows: Vec<Vec<T>> = rows
                .iter()
                .map(|&i| {
                    cols.iter()
                        .map(|&j| if i == j { T::one() } else { T::zero() })
                        .collect()
                })
                .collect();
            let n_rows: Vec<Vec<T>> = rows
                .iter()
                .map(|&i| cols.iter().map(|&j| a.get(i, j)).collect())
                .collect();
            out.set(ri, ci, det_linear_coeff(&m_rows, &n_rows));
        }
    }
    Ok(out)
}

/// Prefix-sum dominance of two equal-length collections with equal totals
/// (within `tol`); inputs are sorted descending internally.
pub fn majorizes(x: &[f64], y: &[f64], tol: f64) -> Result<bool> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch);
    }
    let mut xs = x.to_vec();
    let mut ys = y.to_vec();
    xs.sort_by(|a, b| b.partial_cmp(a).unwrap_or(core::cmp::Ordering::Equal));
    ys.sort_by(|a, b| b.partial_cmp(a).unwrap_or(core::cmp::Ordering::Equal));
    let mut px = 0.0;
    let mut py = 0.0;
    for (a, b) in xs.iter().zip(&ys) {
        px += a;
        py += b;
        if px < py - tol {
            return Ok(false);
        }
    }
    Ok((px - py).abs() <= tol)
}

/// One comparison of the majorization flow.
#[derive(Clone, Debug)]
pub struct FlowVerdict {
    pub t: f64,
    pub s: f64,
    pub majorizes: bool,
}

/// Sorted real roots of a float polynomial (descending), realness enforced
/// loosely (repeated-root scatter).
pub fn sorted_roots_desc(p: &Poly<f64>, tol: f64) -> Result<Vec<f64>> {
    let roots = p.roots(tol)?;
    let mut out = Vec::with_capacity(roots.len());
    for z in roots.elems() {
        if z.im.abs() > 1e-5 * (1.0 + z.re.abs()) {
            return Err(Error::NonRealRoots);
        }
        out.push(z.re);
    }
    out.sort_by(|a, b| b.partial_cmp(a).unwrap_or(core::cmp::Ordering::Equal));
    Ok(out)
}

/// Computes `r_t = [p ⊞ t^m q(x/t)]` for every `t` and checks pairwise
/// majorization of root collections for `t >= s` (`t = 0` gives `r_0 = p`).
pub fn majorization_flow(
    p: &Poly<f64>,
    q: &Poly<f64>,
    ts: &[f64],
    tol: f64,
) -> Result<Vec<FlowVerdict>> {
    let m = p.degree();
    if q.degree() > m {
        return Err(Error::DegreeExceeded {
            got: q.degree(),
            max: m,
        });
    }
    let qsum = q.signed_coeff(1)?;
    if qsum.abs() > 1e-9 {
        return Err(Error::HypothesisViolated("q must have zero root sum"));
    }
    if ts.iter().any(|t| *t < 0.0) {
        return Err(Error::Invalid("flow times must be nonnegative"));
    }
    let mut roots_at: Vec<(f64, Vec<f64>)> = Vec::with_capacity(ts.len());
    for &t in ts {
        let scaled = q.scale_roots(&t);
        let rt = additive_convolve(p, &scaled, m)?;
        roots_at.push((t, sorted_roots_desc(&rt, 1e-7)?));
    }
    let mut verdicts = Vec::new();
    for i in 0..roots_at.len() {
        for j in 0..roots_at.len() {
            if roots_at[i].0 > roots_at[j].0 {
                verdicts.push(FlowVerdict {
                    t: roots_at[i].0,
                    s: roots_at[j].0,
                    majorizes: majorizes(&roots_at[i].1, &roots_at[j].1, tol)?,
                });
            }
        }
    }
    Ok(verdicts)
}
