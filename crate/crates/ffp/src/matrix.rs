//! Dense matrices: exact/float determinants, characteristic polynomials, and
//! Haar-random orthogonal sampling with Monte Carlo validation of the
//! polynomial convolutions.
//!
//! [`Mat`] is a plain square matrix; [`SymMatrix`] wraps one with symmetry
//! enforced at construction (`A_ij == A_ji` exactly).  Characteristic
//! polynomials use the Faddeev-LeVerrier recurrence, which stays exact over
//! the rationals.

use alloc::vec::Vec;
#[allow(unused_imports)] // f64 math comes from the Float trait in no_std
use num_traits::Float;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rng::Rng;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Mat<T: Scalar> {
    n: usize,
    a: Vec<T>,
}

impl<T: Scalar> Mat<T> {
    pub fn zero(n: usize) -> Self {
        Mat {
            n,
            a: vec![T::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn diag(d: &[T]) -> Self {
        let mut m = Mat::zero(d.len());
        for (i, v) in d.iter().enumerate() {
            m.set(i, i, v.clone());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch);
        }
        let mut a = Vec::with_capacity(n * n);
        for r in rows {
            a.extend(r.iter().cloned());
        }
        Ok(Mat { n, a })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut m = Mat::zero(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.a[i * self.n + j].clone()
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.a[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j)).collect())
            .collect()
    }

    pub fn transpose(&self) -> Mat<T> {
        Mat::from_fn(self.n, |i, j| self.get(j, i))
    }

    pub fn add(&self, other: &Mat<T>) -> Result<Mat<T>> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch);
        }
        Ok(Mat {
            n: self.n,
            a: self
                .a
                .iter()
                .zip(&other.a)
                .map(|(x, y)| x.clone() + y.clone())
                .collect(),
        })
    }

    pub fn sub(&self, other: &Mat<T>) -> Result<Mat<T>> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch);
        }
        Ok(Mat {
            n: self.n,
            a: self
                .a
                .iter()
                .zip(&other.a)
                .map(|(x, y)| x.clone() - y.clone())
                .collect(),
        })
    }

    pub fn scale(&self, c: &T) -> Mat<T> {
        Mat {
            n: self.n,
            a: self.a.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    pub fn matmul(&self, other: &Mat<T>) -> Result<Mat<T>> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch);
        }
        let n = self.n;
        let mut out = Mat::zero(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self.get(i, k);
                if aik.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = out.get(i, j) + aik.clone() * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn trace(&self) -> T {
        (0..self.n).fold(T::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn is_symmetric(&self) -> bool {
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.get(i, j) != self.get(j, i) {
                    return false;
                }
            }
        }
        true
    }

    /// Determinant by Gaussian elimination over the scalar field.
    pub fn det(&self) -> T {
        let n = self.n;
        if n == 0 {
            return T::one();
        }
        let mut a = self.a.clone();
        let mut det = T::one();
        for col in 0..n {
            // Pivot: largest float magnitude (best numeric pivot; any nonzero
            // works in exact mode).
            let mut pivot = None;
            let mut best = 0.0f64;
            for row in col..n {
                let v = a[row * n + col].clone();
                if !v.is_zero() {
                    let mag = v.to_f64_lossy().abs();
                    if pivot.is_none() || mag > best {
                        pivot = Some(row);
                        best = mag;
                    }
                }
            }
            let Some(p) = pivot else {
                return T::zero();
            };
            if p != col {
                for j in 0..n {
                    a.swap(col * n + j, p * n + j);
                }
                det = -det;
            }
            let d = a[col * n + col].clone();
            det = det * d.clone();
            for row in (col + 1)..n {
                let factor = a[row * n + col].clone() / d.clone();
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    let v = a[row * n + j].clone() - factor.clone() * a[col * n + j].clone();
                    a[row * n + j] = v;
                }
            }
        }
        det
    }

    /// Characteristic polynomial `det(xI - A)` via Faddeev-LeVerrier; monic,
    /// exact in rational mode.
    pub fn char_poly(&self) -> Poly<T> {
        let n = self.n;
        let mut coeffs = vec![T::zero(); n + 1];
        coeffs[n] = T::one();
        let mut m = Mat::identity(n);
        for k in 1..=n {
            let am = self.matmul(&m).expect("square");
            let c = -(am.trace() / T::from_int(k as i64));
            coeffs[n - k] = c.clone();
            m = am;
            for i in 0..n {
                let v = m.get(i, i) + c.clone();
                m.set(i, i, v);
            }
        }
        Poly::from_ascending(coeffs)
    }

    /// Inverse by Gauss-Jordan; `NotInvertible` on singular input.
    pub fn inverse(&self) -> Result<Mat<T>> {
        let n = self.n;
        let mut a = self.a.clone();
        let mut inv: Mat<T> = Mat::identity(n);
        for col in 0..n {
            let mut pivot = None;
            let mut best = 0.0f64;
            for row in col..n {
                let v = a[row * n + col].clone();
                if !v.is_zero() {
                    let mag = v.to_f64_lossy().abs();
                    if pivot.is_none() || mag > best {
                        pivot = Some(row);
                        best = mag;
                    }
                }
            }
            let Some(p) = pivot else {
                return Err(Error::NotInvertible);
            };
            if p != col {
                for j in 0..n {
                    a.swap(col * n + j, p * n + j);
                    inv.a.swap(col * n + j, p * n + j);
                }
            }
            let d = a[col * n + col].clone();
            for j in 0..n {
                a[col * n + j] = a[col * n + j].clone() / d.clone();
                inv.a[col * n + j] = inv.a[col * n + j].clone() / d.clone();
            }
            for row in 0..n {
                if row == col {
                    continue;
                }
                let f = a[row * n + col].clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = a[row * n + j].clone() - f.clone() * a[col * n + j].clone();
                    a[row * n + j] = v;
                    let w = inv.a[row * n + j].clone() - f.clone() * inv.a[col * n + j].clone();
                    inv.a[row * n + j] = w;
                }
            }
        }
        Ok(inv)
    }

    pub fn to_f64(&self) -> Mat<f64> {
        Mat {
            n: self.n,
            a: self.a.iter().map(|x| x.to_f64_lossy()).collect(),
        }
    }

    pub fn max_abs_diff(&self, other: &Mat<T>) -> f64 {
        self.a
            .iter()
            .zip(&other.a)
            .map(|(x, y)| (x.clone() - y.clone()).to_f64_lossy().abs())
            .fold(0.0, f64::max)
    }
}

/// Dense real symmetric matrix; symmetry is exact at construction.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix<T: Scalar> {
    inner: Mat<T>,
}

impl<T: Scalar> SymMatrix<T> {
    pub fn from_mat(m: Mat<T>) -> Result<Self> {
        if !m.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(SymMatrix { inner: m })
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        SymMatrix::from_mat(Mat::from_rows(rows)?)
    }

    pub fn diag(d: &[T]) -> Self {
        SymMatrix {
            inner: Mat::diag(d),
        }
    }

    pub fn identity(n: usize) -> Self {
        SymMatrix {
            inner: Mat::identity(n),
        }
    }

    pub fn zero(n: usize) -> Self {
        SymMatrix { inner: Mat::zero(n) }
    }

    pub fn dim(&self) -> usize {
        self.inner.dim()
    }

    pub fn as_mat(&self) -> &Mat<T> {
        &self.inner
    }

    pub fn char_poly(&self) -> Poly<T> {
        self.inner.char_poly()
    }

    pub fn det(&self) -> T {
        self.inner.det()
    }

    pub fn trace(&self) -> T {
        self.inner.trace()
    }

    /// `Q A Q^T` for an orthogonal `Q` (symmetry preserved by construction).
    pub fn rotate(&self, q: &Mat<T>) -> Result<SymMatrix<T>> {
        let qa = q.matmul(&self.inner)?;
        let m = qa.matmul(&q.transpose())?;
        // Symmetrize to kill float round-off; exact mode is already symmetric.
        let n = m.dim();
        let half = T::from_ratio(1, 2);
        let sym = Mat::from_fn(n, |i, j| {
            (m.get(i, j) + m.get(j, i)) * half.clone()
        });
        Ok(SymMatrix { inner: sym })
    }

    pub fn to_f64(&self) -> SymMatrix<f64> {
        SymMatrix {
            inner: self.inner.to_f64(),
        }
    }
}

/// Characteristic polynomial `det(xI - A)`; operation-level alias.
pub fn char_poly<T: Scalar>(a: &SymMatrix<T>) -> Poly<T> {
    a.char_poly()
}

/// Haar-distributed random orthogonal matrix: QR of an i.i.d. Gaussian
/// matrix with the R-diagonal sign correction.
pub fn haar_orthogonal(m: usize, rng: &mut Rng) -> Mat<f64> {
    let g = Mat::from_fn(m, |_, _| rng.normal());
    // Modified Gram-Schmidt on columns, tracking the R diagonal sign.
    let mut q = g;
    for j in 0..m {
        for k in 0..j {
            let mut dot = 0.0;
            for i in 0..m {
                dot += q.get(i, k) * q.get(i, j);
            }
            for i in 0..m {
                let v = q.get(i, j) - dot * q.get(i, k);
                q.set(i, j, v);
            }
        }
        let mut norm = 0.0;
        for i in 0..m {
            norm += q.get(i, j) * q.get(i, j);
        }
        let norm = norm.sqrt();
        // R_jj = norm before sign fix; Haar requires multiplying the column
        // by sign(R_jj), and R_jj > 0 here, so columns keep a random sign
        // from the Gaussian draw itself.  Degenerate draws are measure zero.
        for i in 0..m {
            q.set(i, j, q.get(i, j) / norm);
        }
    }
    q
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConvKind {
    Add,
    Mult,
}

/// Sample-mean characteristic polynomial with per-coefficient standard
/// errors.
#[derive(Clone, Debug)]
pub struct McResult {
    pub mean: Poly<f64>,
    /// Standard error per coefficient, ascending, length `m + 1` (leading
    /// entry zero: the polynomial is monic).
    pub std_err: Vec<f64>,
    pub samples: usize,
}

#[derive(Clone)]
struct Welford {
    count: usize,
    mean: Vec<f64>,
    m2: Vec<f64>,
}

impl Welford {
    fn new(len: usize) -> Self {
        Welford {
            count: 0,
            mean: vec![0.0; len],
            m2: vec![0.0; len],
        }
    }

    fn push(&mut self, xs: &[f64]) {
        self.count += 1;
        let n = self.count as f64;
        for (i, x) in xs.iter().enumerate() {
            let d = x - self.mean[i];
            self.mean[i] += d / n;
            self.m2[i] += d * (x - self.mean[i]);
        }
    }

    fn merge(&mut self, other: &Welford) {
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            *self = other.clone();
            return;
        }
        let (na, nb) = (self.count as f64, other.count as f64);
        let n = na + nb;
        for i in 0..self.mean.len() {
            let delta = other.mean[i] - self.mean[i];
            self.mean[i] += delta * nb / n;
            self.m2[i] += other.m2[i] + delta * delta * na * nb / n;
        }
        self.count += other.count;
    }
}

/// One worker's share of the Monte Carlo run; deterministic for a fixed
/// `(seed, worker)` pair.  Exposed so a std host can fan workers out across
/// threads and merge in index order.
pub fn mc_worker(
    a: &SymMatrix<f64>,
    b: &SymMatrix<f64>,
    kind: ConvKind,
    samples: usize,
    seed: u64,
    worker: u64,
) -> Result<McSketch> {
    let m = a.dim();
    if b.dim() != m {
        return Err(Error::DimensionMismatch);
    }
    let mut rng = Rng::stream(seed, worker);
    let mut acc = Welford::new(m + 1);
    for _ in 0..samples {
        let q = haar_orthogonal(m, &mut rng);
        let rotated = b.rotate(&q)?;
        let combined = match kind {
            ConvKind::Add => a.as_mat().add(rotated.as_mat())?,
            ConvKind::Mult => a.as_mat().matmul(rotated.as_mat())?,
        };
        let cp = combined.char_poly();
        let coeffs: Vec<f64> = (0..=m).map(|k| cp.coeff(k)).collect();
        acc.push(&coeffs);
    }
    Ok(McSketch { acc })
}

/// Mergeable partial Monte Carlo state.
#[derive(Clone)]
pub struct McSketch {
    acc: Welford,
}

impl McSketch {
    pub fn empty(m: usize) -> Self {
        McSketch {
            acc: Welford::new(m + 1),
        }
    }

    pub fn merge(&mut self, other: &McSketch) {
        self.acc.merge(&other.acc);
    }

    pub fn finish(self) -> McResult {
        let n = self.acc.count.max(1) as f64;
        let std_err = self
            .acc
            .m2
            .iter()
            .map(|m2| {
                if self.acc.count > 1 {
                    (m2 / (n - 1.0) / n).sqrt()
                } else {
                    0.0
                }
            })
            .collect();
        McResult {
            mean: Poly::from_ascending(self.acc.mean.clone()),
            std_err,
            samples: self.acc.count,
        }
    }
}

/// Coefficient-wise sample mean of `det(xI - A - QBQ^T)` (or
/// `det(xI - A Q B Q^T)`) over `n` Haar draws, split across `workers`
/// deterministic streams and merged in order.
pub fn mc_expected_charpoly(
    a: &SymMatrix<f64>,
    b: &SymMatrix<f64>,
    kind: ConvKind,
    n: usize,
    seed: u64,
    workers: usize,
) -> Result<McResult> {
    let workers = workers.max(1);
    let mut sketch = McSketch::empty(a.dim());
    for w in 0..workers {
        let share = n / workers + usize::from(w < n % workers);
        let part = mc_worker(a, b, kind, share, seed, w as u64)?;
        sketch.merge(&part);
    }
    Ok(sketch.finish())
}
