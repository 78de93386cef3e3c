//! Symmetric additive and multiplicative polynomial convolutions.
//!
//! The additive convolution is computed by the linear coefficient formula
//!
//! ```text
//! [p ⊞_m q](x) = Σ_{i+j<=m} x^{m-i-j} (-1)^{i+j} (m-i)!(m-j)!/((m-i-j)! m!) p_i q_j
//! ```
//!
//! with an independent differential-operator route
//! `(1/m!) Σ_i p^(i)(x) q^(m-i)(0)` that must agree exactly in rational mode
//! (both are exposed; tests pin the agreement).  The multiplicative
//! convolution is `Σ_i x^{m-i} (-1)^i p_i q_i / C(m,i)`.
//!
//! `m` is always an explicit parameter: the algebra convolves polynomials of
//! degree *at most* m inside the degree-m algebra.  The weight factors are
//! built as falling-factorial ratios, so float mode never forms a raw
//! factorial; the documented float cap `m <= 170` is enforced anyway.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::{binomial, Scalar};

const FLOAT_DEGREE_CAP: usize = 170;

fn check_degree<T: Scalar>(p: &Poly<T>, m: usize) -> Result<()> {
    if p.degree() > m {
        return Err(Error::DegreeExceeded {
            got: p.degree(),
            max: m,
        });
    }
    if !T::EXACT && m > FLOAT_DEGREE_CAP {
        return Err(Error::DegreeExceeded {
            got: m,
            max: FLOAT_DEGREE_CAP,
        });
    }
    Ok(())
}

/// Signed coefficients of `p` against the degree-`m` basis:
/// `p(x) = Σ x^{m-i} (-1)^i p_i` with zeros where `deg p < m - i`.
fn signed_vs_m<T: Scalar>(p: &Poly<T>, m: usize) -> Vec<T> {
    (0..=m)
        .map(|i| {
            let c = if m - i <= p.degree() { p.coeff(m - i) } else { T::zero() };
            if i % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .collect()
}

fn poly_from_signed_vs_m<T: Scalar>(signed: &[T]) -> Poly<T> {
    let m = signed.len() - 1;
    let mut coeffs = vec![T::zero(); m + 1];
    for (i, s) in signed.iter().enumerate() {
        coeffs[m - i] = if i % 2 == 0 { s.clone() } else { -s.clone() };
    }
    Poly::from_ascending(coeffs)
}

/// Weight `(m-i)!(m-j)!/((m-i-j)! m!)` as a product of `i` ratios, each at
/// most one.
fn add_weight<T: Scalar>(m: usize, i: usize, j: usize) -> T {
    let mut w = T::one();
    for t in 0..i {
        w = w * T::from_int((m - j - t) as i64) / T::from_int((m - t) as i64);
    }
    w
}

/// Symmetric additive convolution `[p ⊞_m q]` by the linear formula.
pub fn additive_convolve<T: Scalar>(p: &Poly<T>, q: &Poly<T>, m: usize) -> Result<Poly<T>> {
    check_degree(p, m)?;
    check_degree(q, m)?;
    let ps = signed_vs_m(p, m);
    let qs = signed_vs_m(q, m);
    let mut out = vec![T::zero(); m + 1];
    for k in 0..=m {
        let mut acc = T::zero();
        for i in 0..=k {
            let j = k - i;
            if ps[i].is_zero() || qs[j].is_zero() {
                continue;
            }
            acc = acc + add_weight::<T>(m, i, j) * ps[i].clone() * qs[j].clone();
        }
        out[k] = acc;
    }
    Ok(poly_from_signed_vs_m(&out))
}

/// Symmetric additive convolution via the operator form
/// `(1/m!) Σ_i p^(i)(x) q^(m-i)(0)`; agrees exactly with
/// [`additive_convolve`] in rational mode.
pub fn additive_convolve_operator<T: Scalar>(
    p: &Poly<T>,
    q: &Poly<T>,
    m: usize,
) -> Result<Poly<T>> {
    check_degree(p, m)?;
    check_degree(q, m)?;
    let mut out = Poly::zero();
    let mut dp = p.clone();
    let mut dq_at_0: Vec<T> = Vec::with_capacity(m + 1);
    {
        let mut dq = q.clone();
        for _ in 0..=m {
            dq_at_0.push(dq.coeff(0));
            dq = dq.derivative();
        }
    }
    for i in 0..=m {
        let qv = dq_at_0[m - i].clone();
        if !qv.is_zero() {
            out = out.add(&dp.scale(&qv));
        }
        dp = dp.derivative();
    }
    // Divide by m! one factor at a time to stay inside f64 range.
    let mut result = out;
    for t in 1..=m {
        result = result.scale(&(T::one() / T::from_int(t as i64)));
    }
    Ok(result)
}

/// Symmetric multiplicative convolution `[p ⊠_m q]`:
/// `Σ_i x^{m-i} (-1)^i p_i q_i / C(m,i)`.
pub fn multiplicative_convolve<T: Scalar>(
    p: &Poly<T>,
    q: &Poly<T>,
    m: usize,
) -> Result<Poly<T>> {
    if p.degree() != m || q.degree() != m {
        return Err(Error::DegreeMismatch { expected: m });
    }
    if !T::EXACT && m > FLOAT_DEGREE_CAP {
        return Err(Error::DegreeExceeded {
            got: m,
            max: FLOAT_DEGREE_CAP,
        });
    }
    let ps = signed_vs_m(p, m);
    let qs = signed_vs_m(q, m);
    let out: Vec<T> = (0..=m)
        .map(|i| ps[i].clone() * qs[i].clone() / binomial::<T>(m, i))
        .collect();
    Ok(poly_from_signed_vs_m(&out))
}

/// Linear differential operator `R = Σ a_i D^i` acting on the degree-`m`
/// algebra; determined by `R{x^m}`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiffOperator<T: Scalar> {
    coeffs: Vec<T>,
}

impl<T: Scalar> DiffOperator<T> {
    pub fn identity(m: usize) -> Self {
        let mut coeffs = vec![T::zero(); m + 1];
        coeffs[0] = T::one();
        DiffOperator { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<T>, m: usize) -> Self {
        coeffs.truncate(m + 1);
        while coeffs.len() < m + 1 {
            coeffs.push(T::zero());
        }
        DiffOperator { coeffs }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// The unique operator with `R{x^m} = p`: `a_i = c_{m-i} (m-i)!/m!`.
    pub fn from_poly(p: &Poly<T>, m: usize) -> Result<Self> {
        check_degree(p, m)?;
        let mut coeffs = Vec::with_capacity(m + 1);
        let mut ratio = T::one(); // (m-i)!/m!
        for i in 0..=m {
            if i > 0 {
                ratio = ratio / T::from_int((m - i + 1) as i64);
            }
            coeffs.push(p.coeff(m - i) * ratio.clone());
        }
        Ok(DiffOperator { coeffs })
    }

    /// Applies the operator: `Σ a_i p^(i)`.
    pub fn apply(&self, p: &Poly<T>) -> Poly<T> {
        let mut out = Poly::zero();
        let mut dp = p.clone();
        for a in &self.coeffs {
            if !a.is_zero() {
                out = out.add(&dp.scale(a));
            }
            if dp.is_zero() {
                break;
            }
            dp = dp.derivative();
        }
        out
    }

    /// Operator product, truncated to the degree-`m` algebra.
    pub fn compose(&self, other: &Self) -> Self {
        let m = self.coeffs.len() - 1;
        let mut coeffs = vec![T::zero(); m + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j > m {
                    break;
                }
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        DiffOperator { coeffs }
    }

    pub fn pow(&self, k: usize) -> Self {
        let m = self.coeffs.len() - 1;
        let mut acc = DiffOperator::identity(m);
        for _ in 0..k {
            acc = acc.compose(self);
        }
        acc
    }

    /// Multiplicative inverse as a truncated power series in `D`; requires a
    /// nonzero identity term.
    pub fn invert(&self) -> Result<Self> {
        let a0 = self.coeffs[0].clone();
        if a0.is_zero() {
            return Err(Error::NotInvertible);
        }
        let m = self.coeffs.len() - 1;
        let inv0 = T::one() / a0;
        let mut out = vec![T::zero(); m + 1];
        out[0] = inv0.clone();
        for n in 1..=m {
            let mut acc = T::zero();
            for j in 1..=n {
                acc = acc + self.coeffs[j].clone() * out[n - j].clone();
            }
            out[n] = -(inv0.clone() * acc);
        }
        Ok(DiffOperator { coeffs: out })
    }
}

/// `operator_of(p){x^m} = p`; operation-level alias for
/// [`DiffOperator::from_poly`].
pub fn operator_of<T: Scalar>(p: &Poly<T>, m: usize) -> Result<DiffOperator<T>> {
    DiffOperator::from_poly(p, m)
}

/// The degree-`m` polynomial `q` with `[p ⊞_m q] = x^m`, computed by
/// truncated series inversion of the operator of `p`.
pub fn additive_inverse<T: Scalar>(p: &Poly<T>, m: usize) -> Result<Poly<T>> {
    if p.degree() != m {
        return Err(Error::NotInvertible);
    }
    let r = DiffOperator::from_poly(p, m)?;
    Ok(r.invert()?.apply(&Poly::x_pow(m)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{poly_from_roots, Multiset};
    use crate::rng::Rng;
    use crate::scalar::Rat;

    fn q(n: i64, d: i64) -> Rat {
        Rat::from_ratio(n, d)
    }

    fn p123() -> Poly<Rat> {
        Poly::from_leading(vec![q(1, 1), q(-6, 1), q(11, 1), q(-6, 1)])
    }

    fn random_rooted(rng: &mut Rng, m: usize, lo: i64, hi: i64) -> Poly<Rat> {
        let roots: Vec<Rat> = (0..m)
            .map(|_| q(rng.below((hi - lo) as u64) as i64 + lo, 2))
            .collect();
        poly_from_roots(&Multiset::from_reals(&roots), 0.0).unwrap()
    }

    #[test]
    fn worked_example_additive() {
        let r = additive_convolve(&p123(), &p123(), 3).unwrap();
        assert_eq!(
            r.leading_coeffs(),
            vec![q(1, 1), q(-12, 1), q(46, 1), q(-56, 1)]
        );
    }

    #[test]
    fn worked_example_multiplicative() {
        let r = multiplicative_convolve(&p123(), &p123(), 3).unwrap();
        assert_eq!(
            r.leading_coeffs(),
            vec![q(1, 1), q(-12, 1), q(121, 3), q(-36, 1)]
        );
    }

    #[test]
    fn x_pow_is_additive_identity() {
        let mut rng = Rng::seed(2);
        for m in 1..=6 {
            let p = random_rooted(&mut rng, m, -4, 4);
            let r = additive_convolve(&p, &Poly::x_pow(m), m).unwrap();
            assert_eq!(r, p);
        }
    }

    #[test]
    fn self_convolution_of_x2_minus_x() {
        let p = Poly::from_leading(vec![q(1, 1), q(-1, 1), q(0, 1)]);
        let r = additive_convolve(&p, &p, 2).unwrap();
        assert_eq!(r.leading_coeffs(), vec![q(1, 1), q(-2, 1), q(1, 2)]);
    }

    #[test]
    fn mult_identity_element() {
        let mut rng = Rng::seed(3);
        for m in 1..=5 {
            let p = random_rooted(&mut rng, m, -4, 4);
            let ones = poly_from_roots(&Multiset::from_reals(&vec![q(1, 1); m]), 0.0).unwrap();
            assert_eq!(multiplicative_convolve(&p, &ones, m).unwrap(), p);
        }
    }

    #[test]
    fn mult_with_constant_scales_roots() {
        let mut rng = Rng::seed(4);
        let c = q(3, 1);
        for m in 1..=5 {
            let p = random_rooted(&mut rng, m, -4, 4);
            let cs = poly_from_roots(&Multiset::from_reals(&vec![c.clone(); m]), 0.0).unwrap();
            let got = multiplicative_convolve(&p, &cs, m).unwrap();
            assert_eq!(got, p.scale_roots(&c));
        }
    }

    #[test]
    fn linear_and_operator_routes_agree_exactly() {
        let mut rng = Rng::seed(5);
        for m in 1..=8 {
            let p = random_rooted(&mut rng, m, -5, 5);
            let deg_q = 1 + (rng.below(m as u64) as usize);
            let qq = random_rooted(&mut rng, deg_q, -5, 5);
            let a = additive_convolve(&p, &qq, m).unwrap();
            let b = additive_convolve_operator(&p, &qq, m).unwrap();
            assert_eq!(a, b, "m={m}");
        }
    }

    #[test]
    fn bilinearity_commutativity_associativity() {
        let mut rng = Rng::seed(6);
        for m in 2..=6 {
            let p = random_rooted(&mut rng, m, -4, 4);
            let a = random_rooted(&mut rng, m, -4, 4);
            let b = random_rooted(&mut rng, m, -4, 4);
            let alpha = q(5, 3);
            // [p ⊞ (αa + b)] = α[p ⊞ a] + [p ⊞ b]
            let lhs = additive_convolve(&p, &a.scale(&alpha).add(&b), m).unwrap();
            let rhs = additive_convolve(&p, &a, m)
                .unwrap()
                .scale(&alpha)
                .add(&additive_convolve(&p, &b, m).unwrap());
            assert_eq!(lhs, rhs);
            // commutativity
            assert_eq!(
                additive_convolve(&p, &a, m).unwrap(),
                additive_convolve(&a, &p, m).unwrap()
            );
            // associativity
            let l = additive_convolve(&additive_convolve(&p, &a, m).unwrap(), &b, m).unwrap();
            let r = additive_convolve(&p, &additive_convolve(&a, &b, m).unwrap(), m).unwrap();
            assert_eq!(l, r);
            // same for ⊠ on positive-rooted triples
            let pp = random_rooted(&mut rng, m, 1, 6);
            let aa = random_rooted(&mut rng, m, 1, 6);
            let bb = random_rooted(&mut rng, m, 1, 6);
            let l = multiplicative_convolve(
                &multiplicative_convolve(&pp, &aa, m).unwrap(),
                &bb,
                m,
            )
            .unwrap();
            let r = multiplicative_convolve(
                &pp,
                &multiplicative_convolve(&aa, &bb, m).unwrap(),
                m,
            )
            .unwrap();
            assert_eq!(l, r);
            assert_eq!(
                multiplicative_convolve(&pp, &aa, m).unwrap(),
                multiplicative_convolve(&aa, &pp, m).unwrap()
            );
        }
    }

    #[test]
    fn derivative_commutation() {
        let mut rng = Rng::seed(7);
        for m in 2..=6 {
            let p = random_rooted(&mut rng, m, -4, 4);
            let qq = random_rooted(&mut rng, m, -4, 4);
            for k in 1..=2 {
                let lhs = additive_convolve(&p.nth_derivative(k), &qq, m).unwrap();
                let mid = additive_convolve(&p, &qq.nth_derivative(k), m).unwrap();
                let rhs = additive_convolve(&p, &qq, m).unwrap().nth_derivative(k);
                assert_eq!(lhs, mid);
                assert_eq!(mid, rhs);
            }
        }
    }

    #[test]
    fn operator_round_trip_and_examples() {
        // x^m -> identity operator
        let m = 4;
        let r = operator_of(&Poly::<Rat>::x_pow(m), m).unwrap();
        assert_eq!(r, DiffOperator::identity(m));

        // x^2 - x -> 1 - D/2
        let p = Poly::from_leading(vec![q(1, 1), q(-1, 1), q(0, 1)]);
        let r = operator_of(&p, 2).unwrap();
        assert_eq!(r.coeffs(), &[q(1, 1), q(-1, 2), q(0, 1)]);
        assert_eq!(r.apply(&Poly::x_pow(2)), p);

        // 1 - D^2/2 applied to x^m
        let mut rng = Rng::seed(8);
        for m in 2..=7 {
            let p = random_rooted(&mut rng, m, -4, 4);
            let r = operator_of(&p, m).unwrap();
            assert_eq!(r.apply(&Poly::x_pow(m)), p);
        }
        let half_d2 = DiffOperator::from_coeffs(vec![q(1, 1), q(0, 1), q(-1, 2)], 4);
        let applied = half_d2.apply(&Poly::<Rat>::x_pow(4));
        // x^4 - 6x^2
        assert_eq!(
            applied.leading_coeffs(),
            vec![q(1, 1), q(0, 1), q(-6, 1), q(0, 1), q(0, 1)]
        );
    }

    #[test]
    fn additive_inverse_examples() {
        // (x - c)^m -> (x + c)^m
        let c = q(3, 1);
        let p = poly_from_roots(&Multiset::from_reals(&vec![c.clone(); 4]), 0.0).unwrap();
        let inv = additive_inverse(&p, 4).unwrap();
        let want =
            poly_from_roots(&Multiset::from_reals(&vec![-c.clone(); 4]), 0.0).unwrap();
        assert_eq!(inv, want);
        assert_eq!(
            additive_convolve(&p, &inv, 4).unwrap(),
            Poly::x_pow(4)
        );

        // x^m -> x^m
        assert_eq!(
            additive_inverse(&Poly::<Rat>::x_pow(5), 5).unwrap(),
            Poly::x_pow(5)
        );

        // x^2 - 1 -> x^2 + 1 (leaves the real-rooted cone)
        let p = Poly::from_leading(vec![q(1, 1), q(0, 1), q(-1, 1)]);
        let inv = additive_inverse(&p, 2).unwrap();
        assert_eq!(inv.leading_coeffs(), vec![q(1, 1), q(0, 1), q(1, 1)]);
    }

    #[test]
    fn inverse_requires_full_degree() {
        let p: Poly<Rat> = Poly::from_leading(vec![q(1, 1), q(0, 1)]);
        assert_eq!(additive_inverse(&p, 2).unwrap_err(), Error::NotInvertible);
    }

    #[test]
    fn degree_errors() {
        let p: Poly<Rat> = Poly::x_pow(4);
        assert!(matches!(
            additive_convolve(&p, &p, 3).unwrap_err(),
            Error::DegreeExceeded { .. }
        ));
        let q3: Poly<Rat> = Poly::x_pow(3);
        assert!(matches!(
            multiplicative_convolve(&p, &q3, 4).unwrap_err(),
            Error::DegreeMismatch { .. }
        ));
    }
}
