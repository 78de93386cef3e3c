//! Finite free position: coefficient identities, the multiplicative
//! identity, and heuristic rotation searches.
//!
//! Two symmetric `A`, `B` are in finite free position iff
//! `m! D(A[j], B[i], I[m-j-i]) = D(A[j], I[m-j]) D(B[i], I[m-i])` for all
//! `i + j <= m` — a finite, exact set of identities, used here instead of
//! `(y, z)` evaluation grids.  A rotation placing any pair in free position
//! exists; the search is a derivative-free optimization (Cayley-parameterized
//! rotations, Nelder-Mead with random restarts, Gauss-Newton polish) and is
//! not guaranteed to succeed within budget.

use alloc::vec::Vec;
#[allow(unused_imports)] // f64 math comes from the Float trait in no_std
use num_traits::Float;

use crate::conv::multiplicative_convolve;
use crate::error::{Error, Result};
use crate::matrix::{Mat, SymMatrix};
use crate::mixed::md_pattern_counts;
use crate::rng::Rng;
use crate::scalar::Scalar;

/// All finite-free-position residuals
/// `m! D(A[j], B[i], I[m-i-j]) - D(A[j], I[m-j]) D(B[i], I[m-i])`
/// over `i + j <= m` (the `i = 0` / `j = 0` rows are identically zero and
/// are skipped).
pub fn ff_residuals<T: Scalar>(a: &SymMatrix<T>, b: &SymMatrix<T>) -> Result<Vec<T>> {
    let m = a.dim();
    if b.dim() != m {
        return Err(Error::DimensionMismatch);
    }
    let id = Mat::identity(m);
    let am = a.as_mat();
    let bm = b.as_mat();
    let mut mfact = T::one();
    for t in 1..=m as i64 {
        mfact = mfact * T::from_int(t);
    }
    let da: Vec<T> = (0..=m)
        .map(|j| md_pattern_counts(&[(am, j), (&id, m - j)]))
        .collect::<Result<_>>()?;
    let db: Vec<T> = (0..=m)
        .map(|i| md_pattern_counts(&[(bm, i), (&id, m - i)]))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for j in 1..=m {
        for i in 1..=(m - j) {
            let mixed = md_pattern_counts(&[(am, j), (bm, i), (&id, m - i - j)])?;
            out.push(mfact.clone() * mixed - da[j].clone() * db[i].clone());
        }
    }
    Ok(out)
}

/// Finite free position check: all residuals within `tol`; returns the
/// verdict and the worst absolute residual.
pub fn check_free_position<T: Scalar>(
    a: &SymMatrix<T>,
    b: &SymMatrix<T>,
    tol: f64,
) -> Result<(bool, f64)> {
    let res = ff_residuals(a, b)?;
    let worst = res
        .iter()
        .map(|r| r.to_f64_lossy().abs())
        .fold(0.0, f64::max);
    let ok = if T::EXACT {
        res.iter().all(|r| r.is_zero())
    } else {
        worst <= tol
    };
    Ok((ok, worst))
}

/// Outcome of the multiplicative identity check
/// `det(xI - AB) = det(xI - A) ⊠ det(xI - B)`, both sides computed
/// independently.
#[derive(Clone, Debug)]
pub struct MultIdentity<T: Scalar> {
    pub holds: bool,
    pub lhs: crate::poly::Poly<T>,
    pub rhs: crate::poly::Poly<T>,
    pub residual: f64,
}

pub fn check_mult_identity<T: Scalar>(
    a: &SymMatrix<T>,
    b: &SymMatrix<T>,
    tol: f64,
) -> Result<MultIdentity<T>> {
    let m = a.dim();
    if b.dim() != m {
        return Err(Error::DimensionMismatch);
    }
    let lhs = a.as_mat().matmul(b.as_mat())?.char_poly();
    let rhs = multiplicative_convolve(&a.char_poly(), &b.char_poly(), m)?;
    let residual = lhs.max_coeff_dev(&rhs);
    let holds = if T::EXACT {
        lhs == rhs
    } else {
        residual <= tol
    };
    Ok(MultIdentity {
        holds,
        lhs,
        rhs,
        residual,
    })
}

/// Cayley map: skew-symmetric parameters (upper triangle, row major) to a
/// rotation `(I - S)(I + S)^{-1}`.
pub fn cayley_rotation(params: &[f64], m: usize) -> Result<Mat<f64>> {
    if params.len() != m * (m - 1) / 2 {
        return Err(Error::LengthMismatch);
    }
    let mut s = Mat::zero(m);
    let mut idx = 0;
    for i in 0..m {
        for j in (i + 1)..m {
            s.set(i, j, params[idx]);
            s.set(j, i, -params[idx]);
            idx += 1;
        }
    }
    let id = Mat::identity(m);
    let i_minus = id.sub(&s)?;
    let i_plus = id.add(&s)?;
    i_minus.matmul(&i_plus.inverse()?)
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub rotation: Mat<f64>,
    pub residual: f64,
    pub evaluations: usize,
    pub converged: bool,
}

struct Objective<'a> {
    a: &'a SymMatrix<f64>,
    b: &'a SymMatrix<f64>,
    diag_penalty: bool,
    evaluations: usize,
}

impl Objective<'_> {
    /// Sum of squared residuals (plus the squared diagonal of `R^T B R` when
    /// normalizing); also returns the worst absolute identity residual.
    fn eval(&mut self, params: &[f64]) -> (f64, f64, f64) {
        self.evaluations += 1;
        let m = self.a.dim();
        let Ok(r) = cayley_rotation(params, m) else {
            return (f64::INFINITY, f64::INFINITY, f64::INFINITY);
        };
        // B -> R^T B R, i.e. rotate by R^T.
        let Ok(rotated) = self.b.rotate(&r.transpose()) else {
            return (f64::INFINITY, f64::INFINITY, f64::INFINITY);
        };
        let Ok(res) = ff_residuals(self.a, &rotated) else {
            return (f64::INFINITY, f64::INFINITY, f64::INFINITY);
        };
        let mut cost = 0.0;
        let mut worst = 0.0f64;
        for v in &res {
            cost += v * v;
            worst = worst.max(v.abs());
        }
        let mut diag_worst = 0.0f64;
        if self.diag_penalty {
            for i in 0..m {
                let d = rotated.as_mat().get(i, i);
                cost += d * d;
                diag_worst = diag_worst.max(d.abs());
            }
        }
        (cost, worst, diag_worst)
    }
}

/// Nelder-Mead on `f`, counting evaluations against `budget`; returns the
/// best point found.
fn nelder_mead(
    f: &mut impl FnMut(&[f64]) -> f64,
    start: &[f64],
    scale: f64,
    budget: &mut usize,
) -> (Vec<f64>, f64) {
    let d = start.len();
    let (alpha, gamma, rho, sigma) = (1.0, 2.0, 0.5, 0.5);
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(d + 1);
    let spend = |f: &mut dyn FnMut(&[f64]) -> f64, x: &[f64], budget: &mut usize| -> f64 {
        if *budget == 0 {
            return f64::INFINITY;
        }
        *budget -= 1;
        f(x)
    };
    simplex.push((start.to_vec(), spend(f, start, budget)));
    for i in 0..d {
        let mut x = start.to_vec();
        x[i] += scale;
        let v = spend(f, &x, budget);
        simplex.push((x, v));
    }
    while *budget > 0 {
        simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(core::cmp::Ordering::Equal));
        let best = simplex[0].1;
        let worst = simplex[d].1;
        if !(worst - best > 1e-24 * (1.0 + best.abs())) {
            break;
        }
        // centroid of all but the worst
        let mut centroid = vec![0.0; d];
        for (x, _) in simplex.iter().take(d) {
            for (c, xi) in centroid.iter_mut().zip(x) {
                *c += xi / d as f64;
            }
        }
        let reflect: Vec<f64> = centroid
            .iter()
            .zip(&simplex[d].0)
            .map(|(c, w)| c + alpha * (c - w))
            .collect();
        let fr = spend(f, &reflect, budget);
        if fr < simplex[0].1 {
            let expand: Vec<f64> = centroid
                .iter()
                .zip(&reflect)
                .map(|(c, r)| c + gamma * (r - c))
                .collect();
            let fe = spend(f, &expand, budget);
            simplex[d] = if fe < fr { (expand, fe) } else { (reflect, fr) };
        } else if fr < simplex[d - 1].1 {
            simplex[d] = (reflect, fr);
        } else {
            let contract: Vec<f64> = centroid
                .iter()
                .zip(&simplex[d].0)
                .map(|(c, w)| c + rho * (w - c))
                .collect();
            let fc = spend(f, &contract, budget);
            if fc < simplex[d].1 {
                simplex[d] = (contract, fc);
            } else {
                let best_x = simplex[0].0.clone();
                for entry in simplex.iter_mut().skip(1) {
                    let x: Vec<f64> = best_x
                        .iter()
                        .zip(&entry.0)
                        .map(|(b, xi)| b + sigma * (xi - b))
                        .collect();
                    let v = spend(f, &x, budget);
                    *entry = (x, v);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(core::cmp::Ordering::Equal));
    simplex.swap_remove(0)
}

/// Levenberg-style Gauss-Newton polish on the residual vector with a
/// finite-difference Jacobian.
fn gauss_newton_polish(
    residuals: &mut impl FnMut(&[f64]) -> Option<Vec<f64>>,
    x0: &[f64],
    budget: &mut usize,
) -> Vec<f64> {
    let d = x0.len();
    let mut x = x0.to_vec();
    let mut lambda = 1e-8;
    for _ in 0..20 {
        if *budget < d + 2 {
            break;
        }
        let Some(r0) = residuals(&x) else { break };
        *budget -= 1;
        let cost0: f64 = r0.iter().map(|v| v * v).sum();
        if cost0 == 0.0 {
            break;
        }
        let n = r0.len();
        let h = 1e-7;
        let mut jac = vec![vec![0.0; d]; n];
        for c in 0..d {
            let mut xp = x.clone();
            xp[c] += h;
            let Some(rp) = residuals(&xp) else { return x };
            *budget -= 1;
            for (row, (a, b)) in jac.iter_mut().zip(rp.iter().zip(&r0)) {
                row[c] = (a - b) / h;
            }
        }
        // solve (J^T J + λI) δ = -J^T r
        let mut jtj = Mat::zero(d);
        let mut jtr = vec![0.0; d];
        for i in 0..d {
            for j in 0..d {
                let mut v = 0.0;
                for row in &jac {
                    v += row[i] * row[j];
                }
                jtj.set(i, j, v + if i == j { lambda } else { 0.0 });
            }
            for (row, rv) in jac.iter().zip(&r0) {
                jtr[i] += row[i] * rv;
            }
        }
        let Ok(inv) = jtj.inverse() else { break };
        let mut xn = x.clone();
        for i in 0..d {
            let mut step = 0.0;
            for j in 0..d {
                step += inv.get(i, j) * jtr[j];
            }
            xn[i] -= step;
        }
        let Some(rn) = residuals(&xn) else { break };
        *budget -= 1;
        let cost_n: f64 = rn.iter().map(|v| v * v).sum();
        if cost_n < cost0 {
            x = xn;
            lambda = (lambda * 0.25).max(1e-14);
            if cost_n < 1e-30 {
                break;
            }
        } else {
            lambda *= 8.0;
        }
    }
    x
}

fn run_search(
    a: &SymMatrix<f64>,
    b: &SymMatrix<f64>,
    budget: usize,
    tol: f64,
    seed: u64,
    diag_penalty: bool,
) -> Result<(Vec<f64>, SearchOutcome, f64)> {
    let m = a.dim();
    if b.dim() != m {
        return Err(Error::DimensionMismatch);
    }
    let d = m * (m - 1) / 2;
    let mut rng = Rng::seed(seed);
    let mut obj = Objective {
        a,
        b,
        diag_penalty,
        evaluations: 0,
    };
    if d == 0 {
        // m = 1: the only rotations are ±1 and B is already diagonal.
        let (_, worst, dw) = obj.eval(&[]);
        let outcome = SearchOutcome {
            rotation: Mat::identity(1),
            residual: worst,
            evaluations: 1,
            converged: worst <= tol,
        };
        return Ok((vec![], outcome, dw));
    }
    let restarts = 20;
    let mut remaining = budget;
    let mut best_params: Vec<f64> = vec![0.0; d];
    let mut best_cost = f64::INFINITY;
    for restart in 0..restarts {
        if remaining == 0 {
            break;
        }
        let start: Vec<f64> = if restart == 0 {
            vec![0.0; d]
        } else {
            (0..d).map(|_| rng.uniform(-1.5, 1.5)).collect()
        };
        let share = (budget / restarts).max(50).min(remaining);
        let mut share_budget = share;
        let (params, cost) = {
            let mut f = |x: &[f64]| obj.eval(x).0;
            nelder_mead(&mut f, &start, 0.4, &mut share_budget)
        };
        remaining = remaining.saturating_sub(share - share_budget);
        if cost < best_cost {
            best_cost = cost;
            best_params = params;
        }
        if best_cost < 1e-22 {
            break;
        }
    }
    // Polish the best candidate with Gauss-Newton on the residual vector.
    if remaining > 0 {
        let mut residual_fn = |x: &[f64]| -> Option<Vec<f64>> {
            let r = cayley_rotation(x, m).ok()?;
            let rotated = b.rotate(&r.transpose()).ok()?;
            let mut res = ff_residuals(a, &rotated).ok()?;
            if diag_penalty {
                for i in 0..m {
                    res.push(rotated.as_mat().get(i, i));
                }
            }
            Some(res)
        };
        best_params = gauss_newton_polish(&mut residual_fn, &best_params, &mut remaining);
    }
    let (_, worst, diag_worst) = obj.eval(&best_params);
    let rotation = cayley_rotation(&best_params, m)?;
    let evaluations = obj.evaluations.min(budget + 1);
    let outcome = SearchOutcome {
        rotation,
        residual: worst,
        evaluations,
        converged: worst <= tol,
    };
    Ok((best_params, outcome, diag_worst))
}

/// Searches for a rotation `R` minimizing the free-position residuals of
/// `(A, R^T B R)`.  Budget exhaustion is not an error: the best rotation
/// found is returned with `converged = false`.
pub fn search_free_rotation(
    a: &SymMatrix<f64>,
    b: &SymMatrix<f64>,
    budget: usize,
    tol: f64,
    seed: u64,
) -> Result<SearchOutcome> {
    let (_, outcome, _) = run_search(a, b, budget, tol, seed, false)?;
    Ok(outcome)
}

#[derive(Clone, Debug)]
pub struct NormalizeOutcome {
    pub rotation: Mat<f64>,
    pub ff_residual: f64,
    pub diag_residual: f64,
    pub evaluations: usize,
    pub converged: bool,
}

/// Free-position search with an added penalty driving the diagonal of
/// `R^T B R` to zero (callers pre-center `B` to trace zero); `A` must be
/// diagonal.
pub fn zero_diagonal_normalize(
    a: &SymMatrix<f64>,
    b: &SymMatrix<f64>,
    budget: usize,
    tol: f64,
    seed: u64,
) -> Result<NormalizeOutcome> {
    let m = a.dim();
    for i in 0..m {
        for j in 0..m {
            if i != j && a.as_mat().get(i, j) != 0.0 {
                return Err(Error::HypothesisViolated("A must be diagonal"));
            }
        }
    }
    if b.trace().abs() > 1e-9 * (1.0 + b.as_mat().max_abs_diff(&Mat::zero(m))) {
        return Err(Error::HypothesisViolated("B must have zero trace"));
    }
    let (params, outcome, diag_worst) = run_search(a, b, budget, tol, seed, true)?;
    let rotation = if params.is_empty() {
        Mat::identity(m)
    } else {
        cayley_rotation(&params, m)?
    };
    Ok(NormalizeOutcome {
        rotation,
        ff_residual: outcome.residual,
        diag_residual: diag_worst,
        evaluations: outcome.evaluations,
        converged: outcome.residual <= tol && diag_worst <= tol.max(1e-8),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;
    use crate::scalar::Rat;

    fn q(n: i64, d: i64) -> Rat {
        Rat::from_ratio(n, d)
    }

    fn worked_pair() -> (SymMatrix<Rat>, SymMatrix<Rat>) {
        let a = SymMatrix::diag(&[q(1, 1), q(2, 1), q(3, 1)]);
        let b = SymMatrix::from_rows(&[
            vec![q(2, 1), q(0, 1), q(1, 1)],
            vec![q(0, 1), q(2, 1), q(0, 1)],
            vec![q(1, 1), q(0, 1), q(2, 1)],
        ])
        .unwrap();
        (a, b)
    }

    #[test]
    fn worked_example_is_in_free_position() {
        let (a, b) = worked_pair();
        let (ok, worst) = check_free_position(&a, &b, 1e-12).unwrap();
        assert!(ok, "worst residual {worst}");
        // ... and realizes the additive convolution
        let sum = SymMatrix::from_mat(a.as_mat().add(b.as_mat()).unwrap()).unwrap();
        let conv = crate::conv::additive_convolve(&a.char_poly(), &b.char_poly(), 3).unwrap();
        assert_eq!(sum.char_poly(), conv);
    }

    #[test]
    fn constant_b_always_free() {
        let a = SymMatrix::from_rows(&[
            vec![1.0, 0.5, 0.0],
            vec![0.5, -2.0, 0.25],
            vec![0.0, 0.25, 0.75],
        ])
        .unwrap();
        let b = SymMatrix::diag(&[1.5, 1.5, 1.5]);
        let (ok, worst) = check_free_position(&a, &b, 1e-9).unwrap();
        assert!(ok, "{worst}");
    }

    #[test]
    fn self_pair_generically_not_free() {
        let a = SymMatrix::diag(&[q(1, 1), q(2, 1), q(3, 1)]);
        let (ok, worst) = check_free_position(&a, &a, 1e-9).unwrap();
        assert!(!ok);
        assert!(worst > 0.1);
    }

    #[test]
    fn mult_identity_worked_example() {
        let (a, b) = worked_pair();
        // det(xI - AB) = x^3 - 12x^2 + 41x - 36 differs from the ⊠ result
        let out = check_mult_identity(&a, &b, 1e-12).unwrap();
        assert!(!out.holds);
        assert_eq!(
            out.lhs.leading_coeffs(),
            vec![q(1, 1), q(-12, 1), q(41, 1), q(-36, 1)]
        );
        assert_eq!(
            out.rhs.leading_coeffs(),
            vec![q(1, 1), q(-12, 1), q(121, 3), q(-36, 1)]
        );
        // B = I is trivially multiplicative
        let out = check_mult_identity(&a, &SymMatrix::identity(3), 1e-12).unwrap();
        assert!(out.holds);
    }

    #[test]
    fn cayley_is_orthogonal() {
        let r = cayley_rotation(&[0.3, -1.2, 0.77], 3).unwrap();
        let rtr = r.transpose().matmul(&r).unwrap();
        assert!(rtr.max_abs_diff(&Mat::identity(3)) < 1e-12);
    }

    #[test]
    fn search_with_constant_b_converges_immediately() {
        let a = SymMatrix::diag(&[1.0, -1.0, 0.5]);
        let b = SymMatrix::diag(&[2.0, 2.0, 2.0]);
        let out = search_free_rotation(&a, &b, 500, 1e-10, 1).unwrap();
        assert!(out.converged);
        assert!(out.residual <= 1e-10);
    }

    #[test]
    fn search_m1_degenerate() {
        // one-dimensional rotations are ±1 and act trivially
        let a = SymMatrix::diag(&[2.0]);
        let b = SymMatrix::diag(&[-3.0]);
        let out = search_free_rotation(&a, &b, 10, 1e-10, 1).unwrap();
        assert!(out.converged);
        assert_eq!(out.residual, 0.0);
    }

    #[test]
    fn search_m2_sign_matrices() {
        // A = B = diag(1, -1): a residual-zero rotation exists; compare with
        // a 1-parameter sweep oracle over the rotation angle.
        let a = SymMatrix::diag(&[1.0, -1.0]);
        let b = SymMatrix::diag(&[1.0, -1.0]);
        let out = search_free_rotation(&a, &b, 10_000, 1e-10, 7).unwrap();
        assert!(out.converged, "residual {}", out.residual);

        // sweep oracle: residual as a function of angle has a true zero
        let mut best = f64::INFINITY;
        for k in 0..=1000 {
            let theta = core::f64::consts::PI * k as f64 / 1000.0;
            let r = Mat::from_rows(&[
                vec![theta.cos(), -theta.sin()],
                vec![theta.sin(), theta.cos()],
            ])
            .unwrap();
            let rotated = b.rotate(&r.transpose()).unwrap();
            let res = ff_residuals(&a, &rotated).unwrap();
            let worst = res.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
            best = best.min(worst);
        }
        assert!(best < 1e-2, "sweep should approach zero, best {best}");
        assert!(out.residual <= best + 1e-10);
    }

    #[test]
    fn search_m3_worked_b() {
        let a = SymMatrix::diag(&[1.0, 2.0, 3.0]);
        let b = SymMatrix::from_rows(&[
            vec![2.0, 0.0, 1.0],
            vec![0.0, 2.0, 0.0],
            vec![1.0, 0.0, 2.0],
        ])
        .unwrap();
        let out = search_free_rotation(&a, &b, 10_000, 1e-8, 3).unwrap();
        assert!(
            out.converged,
            "residual {} after {} evaluations",
            out.residual, out.evaluations
        );
    }

    #[test]
    fn normalize_zero_diagonal() {
        // m = 2, A diagonal, B traceless: the sweep case made normal.
        let a = SymMatrix::diag(&[1.0, -1.0]);
        let b = SymMatrix::from_rows(&[vec![1.0, 0.5], vec![0.5, -1.0]]).unwrap();
        let out = zero_diagonal_normalize(&a, &b, 10_000, 1e-8, 11).unwrap();
        assert!(out.converged, "ff {} diag {}", out.ff_residual, out.diag_residual);
        assert!(out.diag_residual <= 1e-8);

        // A = I: free position is automatic, penalty drives the diagonal.
        let a = SymMatrix::identity(2);
        let out = zero_diagonal_normalize(&a, &b, 5_000, 1e-8, 13).unwrap();
        assert!(out.diag_residual <= 1e-6, "diag {}", out.diag_residual);
    }

    #[test]
    fn off_diagonal_realizations_recomputed() {
        // The two sqrt(2)/2 tridiagonal matrices share the characteristic
        // polynomial of diag(1,2,3); with A = diag(1,2,3) they realize the
        // additive convolution, and det(xI - AB±) has the 40x middle
        // coefficient (recomputed from the matrices themselves).
        let r = core::f64::consts::FRAC_1_SQRT_2;
        let a = SymMatrix::diag(&[1.0, 2.0, 3.0]);
        for sign in [1.0, -1.0] {
            let b = SymMatrix::from_rows(&[
                vec![2.0, r, 0.0],
                vec![r, 2.0, sign * r],
                vec![0.0, sign * r, 2.0],
            ])
            .unwrap();
            let want_b = Poly::from_leading(vec![1.0, -6.0, 11.0, -6.0]);
            assert!(b.char_poly().max_coeff_dev(&want_b) < 1e-12);

            let sum = SymMatrix::from_mat(a.as_mat().add(b.as_mat()).unwrap()).unwrap();
            let want_sum = Poly::from_leading(vec![1.0, -12.0, 46.0, -56.0]);
            assert!(sum.char_poly().max_coeff_dev(&want_sum) < 1e-12);
            let (free, worst) = check_free_position(&a, &b, 1e-9).unwrap();
            assert!(free, "worst {worst}");

            let prod = a.as_mat().matmul(b.as_mat()).unwrap().char_poly();
            let want_prod = Poly::from_leading(vec![1.0, -12.0, 40.0, -36.0]);
            assert!(prod.max_coeff_dev(&want_prod) < 1e-12);
        }
    }

    #[test]
    fn normalize_rejects_bad_hypotheses() {
        let a = SymMatrix::from_rows(&[vec![1.0, 0.1], vec![0.1, 2.0]]).unwrap();
        let b = SymMatrix::diag(&[1.0, -1.0]);
        assert!(zero_diagonal_normalize(&a, &b, 100, 1e-8, 1).is_err());
        let a = SymMatrix::diag(&[1.0, 2.0]);
        let b = SymMatrix::diag(&[1.0, 1.0]);
        assert!(zero_diagonal_normalize(&a, &b, 100, 1e-8, 1).is_err());
    }
}
