//! Root extraction: simultaneous Aberth-Ehrlich iteration with
//! Newton-polygon initial guesses, plus an exact-arithmetic Newton polish for
//! rational polynomials whose float images are ill-conditioned.
//!
//! Roots at zero are deflated exactly beforehand (trailing-coefficient count)
//! so atoms at the origin keep their exact multiplicity.

use alloc::vec::Vec;
use num_complex::Complex;
#[allow(unused_imports)] // f64 math comes from the Float trait in no_std
use num_traits::{Float, Zero};

use crate::error::{Error, Result};
use crate::poly::{Multiset, Poly};
use crate::scalar::Rat;

pub type C64 = Complex<f64>;

#[derive(Clone, Copy, Debug)]
pub struct RootConfig {
    pub max_iters: usize,
    /// Relative convergence tolerance on the Newton correction.
    pub tol: f64,
}

impl Default for RootConfig {
    fn default() -> Self {
        RootConfig {
            max_iters: 400,
            tol: 1e-13,
        }
    }
}

/// Horner evaluation of `p`, `p'` and the running bound `Σ |c_k| |z|^k`
/// that limits the attainable accuracy of the evaluation itself.
fn horner_with_derivative(coeffs: &[C64], z: C64) -> (C64, C64, f64) {
    let mut p = C64::zero();
    let mut dp = C64::zero();
    let mut bound = 0.0f64;
    let az = z.norm();
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
        bound = bound * az + c.norm();
    }
    (p, dp, bound)
}

/// Initial moduli from the upper convex hull of `(k, ln |c_k|)` (the Newton
/// polygon), angles spread per hull edge.
fn initial_guesses(coeffs: &[C64]) -> Vec<C64> {
    let n = coeffs.len() - 1;
    let logs: Vec<f64> = coeffs
        .iter()
        .map(|c| {
            let a = c.norm();
            if a > 0.0 {
                a.ln()
            } else {
                f64::NEG_INFINITY
            }
        })
        .collect();
    // Upper convex hull over indices with finite log-modulus.
    let mut hull: Vec<usize> = Vec::new();
    for k in 0..=n {
        if logs[k] == f64::NEG_INFINITY {
            continue;
        }
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            let cross = (logs[b] - logs[a]) * (k as f64 - a as f64)
                - (logs[k] - logs[a]) * (b as f64 - a as f64);
            if cross <= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(k);
    }
    let mut guesses = Vec::with_capacity(n);
    let golden = 0.618_033_988_749_894_9;
    let mut phase = 0.37;
    for w in hull.windows(2) {
        let (k1, k2) = (w[0], w[1]);
        let count = k2 - k1;
        let r = ((logs[k1] - logs[k2]) / count as f64).exp();
        for j in 0..count {
            let theta =
                2.0 * core::f64::consts::PI * (j as f64 / count as f64 + phase);
            guesses.push(C64::new(r * theta.cos(), r * theta.sin()));
            phase += golden / count as f64;
        }
        phase += golden;
    }
    // Degenerate hull (e.g. all but one coefficient zero after deflation).
    while guesses.len() < n {
        let theta = 2.0 * core::f64::consts::PI * phase;
        guesses.push(C64::new(theta.cos(), theta.sin()));
        phase += golden;
    }
    guesses
}

/// All complex roots of the polynomial with ascending coefficients `coeffs`
/// (leading coefficient nonzero, degree >= 1).
pub fn aberth(coeffs: &[C64], cfg: RootConfig) -> Result<Vec<C64>> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return Err(Error::Invalid("degree must be at least 1"));
    }
    let mut z = initial_guesses(coeffs);
    let mut settled = vec![false; n];
    for _ in 0..cfg.max_iters {
        let mut done = true;
        for i in 0..n {
            if settled[i] {
                continue;
            }
            let (p, dp, bound) = horner_with_derivative(coeffs, z[i]);
            // The evaluation itself cannot distinguish p(z) from zero below
            // its round-off bound; that is the convergence floor.
            if p.norm() <= 4.0 * f64::EPSILON * bound {
                settled[i] = true;
                continue;
            }
            let w = if dp.is_zero() {
                C64::new(cfg.tol.sqrt(), cfg.tol.sqrt())
            } else {
                p / dp
            };
            let mut s = C64::zero();
            for j in 0..n {
                if j != i {
                    let d = z[i] - z[j];
                    if d.norm_sqr() > 0.0 {
                        s += C64::new(1.0, 0.0) / d;
                    }
                }
            }
            let denom = C64::new(1.0, 0.0) - w * s;
            let step = if denom.norm_sqr() > 0.0 { w / denom } else { w };
            z[i] -= step;
            if step.norm() <= cfg.tol * (1.0 + z[i].norm()) {
                settled[i] = true;
            } else {
                done = false;
            }
            if !z[i].re.is_finite() || !z[i].im.is_finite() {
                return Err(Error::NonConvergence);
            }
        }
        if done {
            return Ok(z);
        }
    }
    Err(Error::NonConvergence)
}

/// Pairs near-conjugate roots of a real-coefficient polynomial into exact
/// conjugates and flattens near-real roots onto the axis.
fn enforce_conjugate_pairs(roots: &mut [C64], tol: f64) {
    let scale = roots.iter().map(|r| r.norm()).fold(1.0, f64::max);
    let eps = tol * scale;
    let n = roots.len();
    let mut used = vec![false; n];
    for i in 0..n {
        if used[i] {
            continue;
        }
        if roots[i].im.abs() <= eps {
            roots[i].im = 0.0;
            used[i] = true;
            continue;
        }
        // Find the closest conjugate partner.
        let target = roots[i].conj();
        let mut best: Option<(usize, f64)> = None;
        for j in (i + 1)..n {
            if used[j] {
                continue;
            }
            let d = (roots[j] - target).norm();
            if best.is_none_or(|(_, bd)| d < bd) {
                best = Some((j, d));
            }
        }
        if let Some((j, d)) = best {
            if d <= 64.0 * eps {
                let re = 0.5 * (roots[i].re + roots[j].re);
                let im = 0.5 * (roots[i].im - roots[j].im);
                roots[i] = C64::new(re, im);
                roots[j] = C64::new(re, -im);
                used[i] = true;
                used[j] = true;
            }
        }
    }
}

impl Poly<f64> {
    /// Extracts all roots.  Zero roots are deflated exactly; the rest go
    /// through Aberth iteration.  Conjugate pairing is enforced on output.
    pub fn roots(&self, tol: f64) -> Result<Multiset<f64>> {
        if self.degree() == 0 {
            return Err(Error::Invalid("roots() requires degree >= 1"));
        }
        let zeros = self.coeffs().iter().take_while(|c| **c == 0.0).count();
        let mut out: Vec<C64> = vec![C64::zero(); zeros];
        let rest: Vec<C64> = self.coeffs()[zeros..]
            .iter()
            .map(|c| C64::new(*c, 0.0))
            .collect();
        if rest.len() > 1 {
            let cfg = RootConfig::default();
            let mut found = aberth(&rest, cfg)?;
            enforce_conjugate_pairs(&mut found, tol.max(1e-12));
            out.extend(found);
        }
        Ok(Multiset::from_complex(out))
    }
}

impl Poly<Rat> {
    /// Roots of an exact-rational polynomial: float Aberth start, then a few
    /// Newton steps evaluated in exact complex-rational arithmetic so badly
    /// conditioned float coefficient images still give full float accuracy.
    pub fn roots_f64(&self, tol: f64) -> Result<Multiset<f64>> {
        if self.degree() == 0 {
            return Err(Error::Invalid("roots() requires degree >= 1"));
        }
        let zeros = self.zero_root_multiplicity();
        let mut ascending = self.coeffs()[zeros..].to_vec();
        let deflated = Poly::from_ascending(core::mem::take(&mut ascending));
        let mut out: Vec<C64> = vec![C64::zero(); zeros];
        if deflated.degree() >= 1 {
            let approx = deflated.to_f64().roots(tol)?;
            let polisher = IntPolish::new(&deflated);
            for z0 in approx.elems() {
                out.push(polisher.polish(*z0));
            }
        }
        let mut roots = out;
        enforce_conjugate_pairs(&mut roots, tol.max(1e-12));
        Ok(Multiset::from_complex(roots))
    }
}

/// Exact Newton polish in cleared-denominator integer arithmetic: no
/// rational normalization inside the loop, so even high-degree polynomials
/// with huge coefficients polish in milliseconds.
struct IntPolish {
    coeffs: Vec<num_bigint::BigInt>,
    deriv: Vec<num_bigint::BigInt>,
}

impl IntPolish {
    fn new(p: &Poly<Rat>) -> Self {
        use num_bigint::BigInt;
        let mut denom_lcm = num_bigint::BigInt::from(1);
        for c in p.coeffs() {
            let d = c.denom();
            denom_lcm = num_integer::lcm(denom_lcm, d.clone());
        }
        let coeffs: Vec<BigInt> = p
            .coeffs()
            .iter()
            .map(|c| c.numer() * (&denom_lcm / c.denom()))
            .collect();
        let deriv: Vec<BigInt> = coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigInt::from(k))
            .collect();
        IntPolish { coeffs, deriv }
    }

    fn polish(&self, mut z: C64) -> C64 {
        use num_bigint::BigInt;
        for _ in 0..16 {
            if !z.re.is_finite() || !z.im.is_finite() {
                return z;
            }
            let (ar, kr) = f64_to_scaled_int(z.re);
            let (ai, ki) = f64_to_scaled_int(z.im);
            let k = kr.max(ki);
            let ar = ar << (k - kr) as usize;
            let ai = ai << (k - ki) as usize;
            // p at scale 2^{k n}, p' at scale 2^{k (n-1)}:
            // step = p/p' = S_p / (S_p' * 2^k)
            let (pr, pi) = eval_horner(&self.coeffs, &ar, &ai, k);
            let (dr, di) = eval_horner(&self.deriv, &ar, &ai, k);
            let dr = dr << k as usize;
            let di = di << k as usize;
            // complex division (pr + i pi)/(dr + i di)
            let num_re = &pr * &dr + &pi * &di;
            let num_im = &pi * &dr - &pr * &di;
            let den = &dr * &dr + &di * &di;
            if den == BigInt::from(0) {
                return z;
            }
            let step = C64::new(
                big_ratio_f64(&num_re, &den),
                big_ratio_f64(&num_im, &den),
            );
            if !step.re.is_finite() || !step.im.is_finite() {
                return z;
            }
            if step.norm() <= 1e-17 * (1.0 + z.norm()) {
                break;
            }
            z -= step;
        }
        z
    }
}

/// `x = a / 2^k` with integer `a` (exact for finite floats).
fn f64_to_scaled_int(x: f64) -> (num_bigint::BigInt, u64) {
    use crate::scalar::Scalar;
    let r = Rat::from_f64_lossy(x);
    let k = r.denom().bits().saturating_sub(1);
    (r.numer().clone(), k)
}

/// Horner for `Σ c_j (w/2^k)^j` scaled by `2^{k n}`: accumulate
/// `S ← S·w + c_j·2^{k(n-j)}`.
fn eval_horner(
    coeffs: &[num_bigint::BigInt],
    ar: &num_bigint::BigInt,
    ai: &num_bigint::BigInt,
    k: u64,
) -> (num_bigint::BigInt, num_bigint::BigInt) {
    use num_bigint::BigInt;
    let n = coeffs.len() - 1;
    let mut sre = BigInt::from(0);
    let mut sim = BigInt::from(0);
    for (j, c) in coeffs.iter().enumerate().rev() {
        let shift = (k as usize) * (n - j);
        let nre = &sre * ar - &sim * ai + (c << shift);
        let nim = &sre * ai + &sim * ar;
        sre = nre;
        sim = nim;
    }
    (sre, sim)
}

/// `n/d` as f64 with a shared right shift to keep both in range.
fn big_ratio_f64(n: &num_bigint::BigInt, d: &num_bigint::BigInt) -> f64 {
    use num_traits::ToPrimitive;
    let bits = n.bits().max(d.bits());
    if bits > 900 {
        let shift = (bits - 900) as usize;
        let ns = n >> shift;
        let ds = d >> shift;
        ns.to_f64().unwrap_or(f64::NAN) / ds.to_f64().unwrap_or(f64::NAN)
    } else {
        n.to_f64().unwrap_or(f64::NAN) / d.to_f64().unwrap_or(f64::NAN)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::poly_from_roots;
    use crate::scalar::Scalar;

    fn close(a: C64, b: C64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    fn assert_root_set(mut got: Vec<C64>, mut want: Vec<C64>, tol: f64) {
        assert_eq!(got.len(), want.len());
        let cmp = |a: &C64, b: &C64| {
            a.re.partial_cmp(&b.re)
                .unwrap()
                .then(a.im.partial_cmp(&b.im).unwrap())
        };
        got.sort_by(cmp);
        want.sort_by(cmp);
        for (g, w) in got.iter().zip(&want) {
            assert!(close(*g, *w, tol), "got {g}, want {w}");
        }
    }

    #[test]
    fn simple_real_roots() {
        let p = Poly::from_leading(vec![1.0, 0.0, -1.0]);
        let r = p.roots(1e-7).unwrap();
        assert_root_set(
            r.elems().to_vec(),
            vec![C64::new(-1.0, 0.0), C64::new(1.0, 0.0)],
            1e-10,
        );

        let p = Poly::from_leading(vec![1.0, -6.0, 11.0, -6.0]);
        let r = p.roots(1e-7).unwrap();
        assert_root_set(
            r.elems().to_vec(),
            vec![
                C64::new(1.0, 0.0),
                C64::new(2.0, 0.0),
                C64::new(3.0, 0.0),
            ],
            1e-9,
        );
    }

    #[test]
    fn conjugate_pair() {
        let p = Poly::from_leading(vec![1.0, 0.0, 1.0]);
        let r = p.roots(1e-7).unwrap();
        assert_root_set(
            r.elems().to_vec(),
            vec![C64::new(0.0, -1.0), C64::new(0.0, 1.0)],
            1e-10,
        );
        // pairing must be exact
        assert_eq!(r.elems()[0].re, r.elems()[1].re);
        assert_eq!(r.elems()[0].im, -r.elems()[1].im);
    }

    #[test]
    fn zero_atoms_deflated_exactly() {
        let p = Poly::from_leading(vec![1.0, -1.0, 0.0, 0.0]);
        let r = p.roots(1e-7).unwrap();
        let zeros = r.elems().iter().filter(|z| z.norm() == 0.0).count();
        assert_eq!(zeros, 2);
    }

    #[test]
    fn round_trip_random_degree_12() {
        let mut rng = crate::rng::Rng::seed(11);
        for _ in 0..20 {
            let roots: Vec<f64> = (0..12).map(|_| rng.uniform(-3.0, 3.0)).collect();
            let ms = Multiset::from_reals(&roots);
            let p = poly_from_roots(&ms, 1e-9).unwrap();
            let got = p.roots(1e-7).unwrap();
            let mut got: Vec<f64> = got.elems().iter().map(|z| z.re).collect();
            let mut want = roots.clone();
            got.sort_by(|a, b| a.partial_cmp(b).unwrap());
            want.sort_by(|a, b| a.partial_cmp(b).unwrap());
            for (g, w) in got.iter().zip(&want) {
                assert!((g - w).abs() < 1e-6, "{g} vs {w}");
            }
        }
    }

    #[test]
    fn rational_polish_high_degree() {
        // Roots 1..=20 scaled: the float image of the Wilkinson-style
        // polynomial is catastrophically conditioned; exact polish recovers
        // the roots anyway.
        let roots: Vec<Rat> = (1..=20).map(|k| Rat::from_ratio(k, 10)).collect();
        let ms = Multiset::from_reals(&roots);
        let p = poly_from_roots(&ms, 0.0).unwrap();
        let got = p.roots_f64(1e-7).unwrap();
        let mut re: Vec<f64> = got.elems().iter().map(|z| z.re).collect();
        re.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (k, g) in re.iter().enumerate() {
            let want = (k + 1) as f64 / 10.0;
            assert!((g - want).abs() < 2e-7, "root {k}: {g} vs {want}");
        }
    }
}
