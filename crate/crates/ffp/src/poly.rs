//! Univariate polynomials and root multisets.
//!
//! A [`Poly`] stores coefficients in ascending order with a nonzero leading
//! coefficient (the zero polynomial is the single coefficient `0`).  Spectral
//! distributions are carried by monic polynomials through their roots; a
//! [`Multiset`] is the corresponding collection of complex numbers counted
//! with multiplicity, equipped with moment accessors.
//!
//! Coefficients and power sums of the roots are connected by Newton's
//! identities ([`Poly::power_sums`] / [`Poly::from_power_sums`]), which lets
//! most of the crate avoid root extraction entirely.

use alloc::vec::Vec;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Dense univariate polynomial, coefficients ascending (constant term first).
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<T: Scalar> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Poly<T> {
    /// Builds from ascending coefficients, trimming trailing zeros.
    pub fn from_ascending(mut coeffs: Vec<T>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(T::zero());
        }
        Poly { coeffs }
    }

    /// Builds from leading-first coefficients (the serialized order).
    pub fn from_leading(mut coeffs: Vec<T>) -> Self {
        coeffs.reverse();
        Poly::from_ascending(coeffs)
    }

    pub fn zero() -> Self {
        Poly {
            coeffs: vec![T::zero()],
        }
    }

    pub fn constant(c: T) -> Self {
        Poly::from_ascending(vec![c])
    }

    /// The monomial `x^m`.
    pub fn x_pow(m: usize) -> Self {
        let mut coeffs = vec![T::zero(); m + 1];
        coeffs[m] = T::one();
        Poly { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Leading-first coefficient vector (serialization order).
    pub fn leading_coeffs(&self) -> Vec<T> {
        self.coeffs.iter().rev().cloned().collect()
    }

    pub fn leading(&self) -> T {
        self.coeffs.last().cloned().unwrap()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn eval_complex(&self, z: &Complex<T>) -> Complex<T> {
        let mut acc = Complex::new(T::zero(), T::zero());
        for c in self.coeffs.iter().rev() {
            acc = acc * z.clone() + Complex::new(c.clone(), T::zero());
        }
        acc
    }

    pub fn derivative(&self) -> Poly<T> {
        if self.degree() == 0 {
            return Poly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.clone() * T::from_int(k as i64))
            .collect();
        Poly::from_ascending(coeffs)
    }

    pub fn nth_derivative(&self, k: usize) -> Poly<T> {
        let mut p = self.clone();
        for _ in 0..k {
            p = p.derivative();
        }
        p
    }

    pub fn scale(&self, c: &T) -> Poly<T> {
        Poly::from_ascending(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn add(&self, other: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect();
        Poly::from_ascending(coeffs)
    }

    pub fn sub(&self, other: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - other.coeff(k)).collect();
        Poly::from_ascending(coeffs)
    }

    pub fn mul(&self, other: &Poly<T>) -> Poly<T> {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![T::zero(); self.degree() + other.degree() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::from_ascending(coeffs)
    }

    pub fn make_monic(&self) -> Result<Poly<T>> {
        if self.is_zero() {
            return Err(Error::NotInvertible);
        }
        let lead = self.leading();
        Ok(Poly::from_ascending(
            self.coeffs.iter().map(|c| c.clone() / lead.clone()).collect(),
        ))
    }

    /// `p(x - c)`: shifts every root by `+c`.
    pub fn translate(&self, c: &T) -> Poly<T> {
        let mut result = vec![T::zero(); self.coeffs.len()];
        // Accumulate c_j (x - c)^j by iterated multiplication.
        let mut pw = vec![T::one()];
        for (j, cj) in self.coeffs.iter().enumerate() {
            for (k, w) in pw.iter().enumerate() {
                result[k] = result[k].clone() + cj.clone() * w.clone();
            }
            if j + 1 < self.coeffs.len() {
                let mut next = vec![T::zero(); pw.len() + 1];
                for (k, w) in pw.iter().enumerate() {
                    next[k + 1] = next[k + 1].clone() + w.clone();
                    next[k] = next[k].clone() - c.clone() * w.clone();
                }
                pw = next;
            }
        }
        Poly::from_ascending(result)
    }

    /// `t^m p(x/t)` for `m = deg p`: scales every root by `t`.  `t = 0` gives
    /// the degenerate limit `x^m`.
    pub fn scale_roots(&self, t: &T) -> Poly<T> {
        let m = self.degree();
        if t.is_zero() {
            return Poly::x_pow(m);
        }
        let mut coeffs = Vec::with_capacity(m + 1);
        let mut tp = T::one();
        // coefficient of x^j picks up t^{m-j}
        let mut powers = vec![T::one(); m + 1];
        for j in (0..=m).rev() {
            powers[j] = tp.clone();
            tp = tp * t.clone();
        }
        for (j, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c.clone() * powers[j].clone());
        }
        Poly::from_ascending(coeffs)
    }

    /// Signed coefficient `p_i` of a monic polynomial written
    /// `p(x) = Σ x^{m-i} (-1)^i p_i`.
    pub fn signed_coeff(&self, i: usize) -> Result<T> {
        let m = self.degree();
        if i > m {
            return Err(Error::IndexOutOfRange);
        }
        if !self.is_monic() {
            return Err(Error::Invalid("signed coefficients require a monic polynomial"));
        }
        let c = self.coeff(m - i);
        Ok(if i % 2 == 0 { c } else { -c })
    }

    /// All signed coefficients `p_0..p_m`.
    pub fn signed_coeffs(&self) -> Result<Vec<T>> {
        (0..=self.degree()).map(|i| self.signed_coeff(i)).collect()
    }

    /// Rebuilds a monic polynomial from signed coefficients (`p_0` must be 1).
    pub fn from_signed(signed: &[T]) -> Result<Poly<T>> {
        if signed.is_empty() || !signed[0].is_one() {
            return Err(Error::Invalid("signed coefficient p_0 must be 1"));
        }
        let m = signed.len() - 1;
        let mut coeffs = vec![T::zero(); m + 1];
        for (i, p) in signed.iter().enumerate() {
            coeffs[m - i] = if i % 2 == 0 { p.clone() } else { -p.clone() };
        }
        Ok(Poly::from_ascending(coeffs))
    }

    /// Power sums `Σ r_i^k` for `k = 1..=kmax` via Newton's identities; no
    /// root extraction.  Exact in rational mode.
    pub fn power_sums(&self, kmax: usize) -> Result<Vec<T>> {
        let m = self.degree();
        let e = self.signed_coeffs()?;
        let mut sums: Vec<T> = Vec::with_capacity(kmax);
        for k in 1..=kmax {
            let mut acc = T::zero();
            for i in 1..=k.min(m) {
                if i == k {
                    break;
                }
                let term = e[i].clone() * sums[k - i - 1].clone();
                acc = if i % 2 == 1 { acc + term } else { acc - term };
            }
            if k <= m {
                let term = T::from_int(k as i64) * e[k].clone();
                acc = if k % 2 == 1 { acc + term } else { acc - term };
            }
            sums.push(acc);
        }
        Ok(sums)
    }

    /// Inverse of [`Poly::power_sums`]: the monic polynomial of degree
    /// `sums.len()` whose roots have the given power sums.  Round-trips
    /// exactly in rational mode.
    pub fn from_power_sums(sums: &[T]) -> Poly<T> {
        let m = sums.len();
        let mut e: Vec<T> = Vec::with_capacity(m + 1);
        e.push(T::one());
        for k in 1..=m {
            let mut acc = T::zero();
            for i in 1..=k {
                let term = e[k - i].clone() * sums[i - 1].clone();
                acc = if i % 2 == 1 { acc + term } else { acc - term };
            }
            e.push(acc / T::from_int(k as i64));
        }
        Poly::from_signed(&e).expect("e_0 = 1")
    }

    pub fn to_f64(&self) -> Poly<f64> {
        Poly::from_ascending(self.coeffs.iter().map(|c| c.to_f64_lossy()).collect())
    }

    /// Largest absolute coefficient difference, in float.
    pub fn max_coeff_dev(&self, other: &Poly<T>) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n)
            .map(|k| (self.coeff(k) - other.coeff(k)).to_f64_lossy().abs())
            .fold(0.0, f64::max)
    }

    /// Multiplicity of the root 0, read off the trailing coefficients
    /// (exact in rational mode).
    pub fn zero_root_multiplicity(&self) -> usize {
        if self.is_zero() {
            return 0;
        }
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }
}

/// Finite multiset of complex numbers (roots, eigenvalues, or a U transform).
#[derive(Clone, Debug, PartialEq)]
pub struct Multiset<T: Scalar> {
    elems: Vec<Complex<T>>,
}

impl<T: Scalar> Multiset<T> {
    pub fn from_complex(elems: Vec<Complex<T>>) -> Self {
        Multiset { elems }
    }

    pub fn from_reals(elems: &[T]) -> Self {
        Multiset {
            elems: elems
                .iter()
                .map(|r| Complex::new(r.clone(), T::zero()))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elems(&self) -> &[Complex<T>] {
        &self.elems
    }

    /// `k`-th moment `(1/m) Σ s_i^k`; `moment(0) = 1`.
    pub fn moment(&self, k: usize) -> Complex<T> {
        let m = T::from_int(self.elems.len() as i64);
        let mut acc = Complex::new(T::zero(), T::zero());
        for s in &self.elems {
            let mut p = Complex::new(T::one(), T::zero());
            for _ in 0..k {
                p = p * s.clone();
            }
            acc = acc + p;
        }
        Complex::new(acc.re / m.clone(), acc.im / m)
    }

    pub fn moments(&self, kmax: usize) -> Vec<Complex<T>> {
        // Incremental powers, one pass per element.
        let m = T::from_int(self.elems.len() as i64);
        let mut sums = vec![Complex::new(T::zero(), T::zero()); kmax + 1];
        for s in &self.elems {
            let mut p = Complex::new(T::one(), T::zero());
            for e in sums.iter_mut() {
                *e = e.clone() + p.clone();
                p = p * s.clone();
            }
        }
        sums.into_iter()
            .map(|c| Complex::new(c.re / m.clone(), c.im / m.clone()))
            .collect()
    }

    pub fn translate(&self, c: &T) -> Multiset<T> {
        Multiset {
            elems: self
                .elems
                .iter()
                .map(|s| Complex::new(s.re.clone() + c.clone(), s.im.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, k: &T) -> Multiset<T> {
        Multiset {
            elems: self
                .elems
                .iter()
                .map(|s| Complex::new(s.re.clone() * k.clone(), s.im.clone() * k.clone()))
                .collect(),
        }
    }

    /// Concatenates `k` copies of the multiset (a `km`-realization of the
    /// same distribution).
    pub fn replicate(&self, k: usize) -> Multiset<T> {
        let mut elems = Vec::with_capacity(self.elems.len() * k);
        for _ in 0..k {
            elems.extend(self.elems.iter().cloned());
        }
        Multiset { elems }
    }

    /// True when every element is real (exact in rational mode, within `tol`
    /// relative in float mode).
    pub fn is_real(&self, tol: f64) -> bool {
        self.elems.iter().all(|s| {
            if T::EXACT {
                s.im.is_zero()
            } else {
                s.im.to_f64_lossy().abs() <= tol * (1.0 + s.re.to_f64_lossy().abs())
            }
        })
    }

    /// Real parts, requiring realness first.
    pub fn real_parts(&self, tol: f64) -> Result<Vec<T>> {
        if !self.is_real(tol) {
            return Err(Error::NonRealRoots);
        }
        Ok(self.elems.iter().map(|s| s.re.clone()).collect())
    }

    /// Coefficients (ascending) of `Π (x - s_i)` over the complex scalars.
    pub fn complex_poly_coeffs(&self) -> Vec<Complex<T>> {
        let zero = Complex::new(T::zero(), T::zero());
        let one = Complex::new(T::one(), T::zero());
        let mut coeffs = vec![one];
        for s in &self.elems {
            let mut next = vec![zero.clone(); coeffs.len() + 1];
            for (k, a) in coeffs.iter().enumerate() {
                next[k + 1] = next[k + 1].clone() + a.clone();
                next[k] = next[k].clone() - s.clone() * a.clone();
            }
            coeffs = next;
        }
        coeffs
    }

    /// Monic polynomial with the multiset as roots.  The imaginary parts of
    /// the expanded coefficients must vanish (exactly in rational mode,
    /// within `tol` in float mode).
    pub fn monic_poly(&self, tol: f64) -> Result<Poly<T>> {
        let coeffs = self.complex_poly_coeffs();
        let scale = coeffs
            .iter()
            .map(|c| c.re.to_f64_lossy().abs())
            .fold(1.0, f64::max);
        let mut real = Vec::with_capacity(coeffs.len());
        for c in coeffs {
            let ok = if T::EXACT {
                c.im.is_zero()
            } else {
                c.im.to_f64_lossy().abs() <= tol * scale
            };
            if !ok {
                return Err(Error::NonRealRoots);
            }
            real.push(c.re);
        }
        Ok(Poly::from_ascending(real))
    }

    pub fn to_f64(&self) -> Multiset<f64> {
        Multiset {
            elems: self
                .elems
                .iter()
                .map(|s| Complex::new(s.re.to_f64_lossy(), s.im.to_f64_lossy()))
                .collect(),
        }
    }
}

impl Multiset<f64> {
    /// Real parts sorted descending (requires realness within `tol`).
    pub fn sorted_desc(&self, tol: f64) -> Result<Vec<f64>> {
        let mut xs = self.real_parts(tol)?;
        xs.sort_by(|a, b| b.partial_cmp(a).unwrap());
        Ok(xs)
    }
}

/// Monic polynomial from roots; alias of [`Multiset::monic_poly`] matching
/// the operation vocabulary of the crate.
pub fn poly_from_roots<T: Scalar>(roots: &Multiset<T>, tol: f64) -> Result<Poly<T>> {
    roots.monic_poly(tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;

    fn q(n: i64, d: i64) -> Rat {
        Rat::from_ratio(n, d)
    }

    fn p123() -> Poly<Rat> {
        Poly::from_leading(vec![q(1, 1), q(-6, 1), q(11, 1), q(-6, 1)])
    }

    #[test]
    fn from_roots_examples() {
        let s = Multiset::from_reals(&[q(1, 1), q(2, 1), q(3, 1)]);
        assert_eq!(poly_from_roots(&s, 0.0).unwrap(), p123());

        let empty: Multiset<Rat> = Multiset::from_reals(&[]);
        assert_eq!(
            poly_from_roots(&empty, 0.0).unwrap(),
            Poly::constant(q(1, 1))
        );

        let rep = Multiset::from_reals(&vec![q(2, 1); 4]);
        let p = poly_from_roots(&rep, 0.0).unwrap();
        // (x-2)^4 = x^4 - 8x^3 + 24x^2 - 32x + 16
        assert_eq!(
            p.coeffs(),
            &[q(16, 1), q(-32, 1), q(24, 1), q(-8, 1), q(1, 1)]
        );
    }

    #[test]
    fn signed_coeffs_match_elementary_symmetric() {
        let p = p123();
        assert_eq!(p.signed_coeff(0).unwrap(), q(1, 1));
        assert_eq!(p.signed_coeff(1).unwrap(), q(6, 1));
        assert_eq!(p.signed_coeff(2).unwrap(), q(11, 1));
        assert_eq!(p.signed_coeff(3).unwrap(), q(6, 1));
        assert!(p.signed_coeff(4).is_err());

        let sq = Poly::from_leading(vec![q(1, 1), q(-2, 1), q(1, 1)]);
        assert_eq!(sq.signed_coeff(2).unwrap(), q(1, 1));
    }

    #[test]
    fn power_sums_examples() {
        let p = Poly::from_leading(vec![q(1, 1), q(0, 1), q(-1, 1)]);
        assert_eq!(p.power_sums(2).unwrap(), vec![q(0, 1), q(2, 1)]);

        assert_eq!(p123().power_sums(2).unwrap(), vec![q(6, 1), q(14, 1)]);

        let c = q(3, 1);
        let rep = poly_from_roots(&Multiset::from_reals(&vec![c.clone(); 5]), 0.0).unwrap();
        let sums = rep.power_sums(3).unwrap();
        assert_eq!(sums, vec![q(15, 1), q(45, 1), q(135, 1)]);
    }

    #[test]
    fn power_sums_round_trip() {
        let p = p123();
        let sums = p.power_sums(3).unwrap();
        assert_eq!(Poly::from_power_sums(&sums), p);
    }

    #[test]
    fn power_sums_beyond_degree_follow_recurrence() {
        // x^2 - 1: sums alternate 0, 2, 0, 2, ...
        let p = Poly::from_leading(vec![q(1, 1), q(0, 1), q(-1, 1)]);
        assert_eq!(
            p.power_sums(5).unwrap(),
            vec![q(0, 1), q(2, 1), q(0, 1), q(2, 1), q(0, 1)]
        );
    }

    #[test]
    fn translate_and_scale_roots() {
        let p = p123();
        let t = p.translate(&q(2, 1));
        // roots 3,4,5
        let expect = poly_from_roots(
            &Multiset::from_reals(&[q(3, 1), q(4, 1), q(5, 1)]),
            0.0,
        )
        .unwrap();
        assert_eq!(t, expect);

        let s = p.scale_roots(&q(2, 1));
        let expect = poly_from_roots(
            &Multiset::from_reals(&[q(2, 1), q(4, 1), q(6, 1)]),
            0.0,
        )
        .unwrap();
        assert_eq!(s, expect);

        assert_eq!(p.scale_roots(&q(0, 1)), Poly::x_pow(3));
    }

    #[test]
    fn zero_root_multiplicity_exact() {
        let p: Poly<Rat> = Poly::from_leading(vec![q(1, 1), q(-1, 1), q(0, 1), q(0, 1)]);
        assert_eq!(p.zero_root_multiplicity(), 2);
        assert_eq!(p123().zero_root_multiplicity(), 0);
    }

    #[test]
    fn multiset_moments() {
        let s = Multiset::from_reals(&[q(-1, 1), q(1, 1)]);
        let ms = s.moments(4);
        assert_eq!(ms[0].re, q(1, 1));
        assert_eq!(ms[1].re, q(0, 1));
        assert_eq!(ms[2].re, q(1, 1));
    }
}
