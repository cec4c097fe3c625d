//! Complex matrices, their Hermitian parts, and eigenvalues along the pencil
//! `x Re(A) + y Im(A)`.

pub mod gauss;

use nalgebra::{Complex, DMatrix};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poly_core::rational::{q, q_from_f64, qi, Q};
pub use gauss::{GaussMatrix, GaussQ};

pub type C64 = Complex<f64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

/// Square complex matrix. Float entries are held as the exact rational value of the double.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ComplexMatrix {
    n: usize,
    entries: Vec<GaussQ>,
    mode: Mode,
}

impl ComplexMatrix {
    pub fn from_rows(rows: Vec<Vec<GaussQ>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Dimension("matrix must have at least one row".into()));
        }
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::Dimension(format!("row {} has {} entries, expected {}", i, r.len(), n)));
            }
        }
        Ok(ComplexMatrix { n, entries: rows.into_iter().flatten().collect(), mode: Mode::Exact })
    }

    /// Rows of `(re, im)` integer pairs.
    pub fn from_int_rows(rows: &[&[(i64, i64)]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&(a, b)| GaussQ::new(qi(a), qi(b))).collect())
                .collect(),
        )
    }

    /// Real integer matrix.
    pub fn from_real_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&a| GaussQ::real(qi(a))).collect()).collect())
    }

    pub fn from_f64_rows(rows: &[Vec<(f64, f64)>]) -> Result<Self> {
        if rows.iter().flatten().any(|(a, b)| !a.is_finite() || !b.is_finite()) {
            return Err(Error::Domain("matrix entries must be finite".into()));
        }
        let mut m = Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&(a, b)| GaussQ::new(q_from_f64(a), q_from_f64(b))).collect())
                .collect(),
        )?;
        m.mode = Mode::Float;
        Ok(m)
    }

    pub fn zeros(n: usize) -> Self {
        ComplexMatrix { n, entries: vec![GaussQ::zero(); n * n], mode: Mode::Exact }
    }

    pub fn identity(n: usize) -> Self {
        Self::diag(vec![GaussQ::one(); n])
    }

    pub fn diag(d: Vec<GaussQ>) -> Self {
        let n = d.len();
        let mut m = Self::zeros(n);
        for (i, v) in d.into_iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    /// Diagonal matrix from `(re, im)` integer pairs.
    pub fn diag_int(d: &[(i64, i64)]) -> Self {
        Self::diag(d.iter().map(|&(a, b)| GaussQ::new(qi(a), qi(b))).collect())
    }

    pub fn block_diag(blocks: &[&ComplexMatrix]) -> Self {
        let n = blocks.iter().map(|b| b.n).sum();
        let mut m = Self::zeros(n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.n {
                for j in 0..b.n {
                    m.set(off + i, off + j, b.get(i, j).clone());
                }
            }
            off += b.n;
        }
        m.mode = if blocks.iter().any(|b| b.mode == Mode::Float) { Mode::Float } else { Mode::Exact };
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn get(&self, i: usize, j: usize) -> &GaussQ {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: GaussQ) {
        self.entries[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<GaussQ>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn conj_transpose(&self) -> Self {
        let mut m = self.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                m.set(i, j, self.get(j, i).conj());
            }
        }
        m
    }

    pub fn is_hermitian(&self) -> bool {
        *self == self.conj_transpose().with_mode(self.mode)
    }

    pub fn add(&self, other: &ComplexMatrix) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::Dimension(format!("sizes {} and {} differ", self.n, other.n)));
        }
        let mut m = self.clone();
        for (e, o) in m.entries.iter_mut().zip(&other.entries) {
            *e = &*e + o;
        }
        Ok(m)
    }

    pub fn scale(&self, c: &GaussQ) -> Self {
        let mut m = self.clone();
        for e in m.entries.iter_mut() {
            *e = &*e * c;
        }
        m
    }

    /// Entrywise `(re, im)` doubles.
    pub fn to_f64(&self) -> DMatrix<C64> {
        DMatrix::from_fn(self.n, self.n, |i, j| {
            let (a, b) = self.get(i, j).to_f64();
            C64::new(a, b)
        })
    }

    /// Largest absolute value among the real and imaginary parts.
    pub fn max_abs_entry(&self) -> f64 {
        self.entries.iter().map(|e| e.to_f64()).fold(0.0, |m, (a, b)| m.max(a.abs()).max(b.abs()))
    }
}

/// `Re(A) = (A + A*)/2` and `Im(A) = (A - A*)/(2i)`.
#[derive(Clone, Debug)]
pub struct HermitianPair {
    pub re: ComplexMatrix,
    pub im: ComplexMatrix,
    re_f: DMatrix<C64>,
    im_f: DMatrix<C64>,
}

pub fn hermitian_parts(a: &ComplexMatrix) -> HermitianPair {
    let n = a.n();
    let mut re = ComplexMatrix::zeros(n).with_mode(a.mode());
    let mut im = ComplexMatrix::zeros(n).with_mode(a.mode());
    let half = q(1, 2);
    for j in 0..n {
        for l in 0..n {
            let x = a.get(j, l);
            let y = a.get(l, j);
            re.set(j, l, GaussQ::new((&x.re + &y.re) * &half, (&x.im - &y.im) * &half));
            im.set(j, l, GaussQ::new((&x.im + &y.im) * &half, (&y.re - &x.re) * &half));
        }
    }
    HermitianPair::new(re, im)
}

impl HermitianPair {
    pub fn new(re: ComplexMatrix, im: ComplexMatrix) -> Self {
        let re_f = re.to_f64();
        let im_f = im.to_f64();
        HermitianPair { re, im, re_f, im_f }
    }

    pub fn n(&self) -> usize {
        self.re.n()
    }

    /// `Re(A) + i Im(A)`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        self.re.add(&self.im.scale(&GaussQ::i())).expect("same size").with_mode(self.re.mode())
    }

    /// `c I + x Re(A) + y Im(A)` in floating point, symmetrized.
    pub fn pencil_f64(&self, c: f64, x: f64, y: f64) -> DMatrix<C64> {
        let n = self.n();
        let mut m = &self.re_f * C64::new(x, 0.0) + &self.im_f * C64::new(y, 0.0);
        for i in 0..n {
            m[(i, i)] += C64::new(c, 0.0);
        }
        (&m + m.adjoint()) * C64::new(0.5, 0.0)
    }

    /// `p0 I + p1 Re(A) + p2 Im(A)` over `Q(i)`.
    pub fn pencil_exact(&self, p: &[Q; 3]) -> GaussMatrix {
        let n = self.n();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut v = &self.re.get(i, j).scale(&p[1]) + &self.im.get(i, j).scale(&p[2]);
                        if i == j {
                            v.re += &p[0];
                        }
                        v
                    })
                    .collect()
            })
            .collect()
    }

    /// Eigenvalues of `c I + x Re(A) + y Im(A)` in descending order.
    pub fn eigenvalues_shifted(&self, c: f64, x: f64, y: f64) -> Vec<f64> {
        let m = self.pencil_f64(c, x, y);
        let mut ev: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(|a, b| b.total_cmp(a));
        ev
    }

    pub fn eigenvalues(&self, x: f64, y: f64) -> Vec<f64> {
        self.eigenvalues_shifted(0.0, x, y)
    }

    pub fn check_index(&self, k: usize) -> Result<()> {
        if k == 0 || k > self.n() {
            return Err(Error::Index(format!("k = {} outside 1..={}", k, self.n())));
        }
        Ok(())
    }

    /// Approximate numerical radius `max_theta lambda_1(theta)` from `m` angles.
    pub fn numerical_radius(&self, m: usize) -> f64 {
        (0..m)
            .into_par_iter()
            .map(|j| {
                let th = std::f64::consts::TAU * j as f64 / m as f64;
                self.eigenvalues(th.cos(), th.sin())[0]
            })
            .collect::<Vec<_>>()
            .into_iter()
            .fold(0.0, f64::max)
    }
}

/// `k`-th largest eigenvalue of `x Re(A) + y Im(A)`.
pub fn lambda_k(pair: &HermitianPair, k: usize, x: f64, y: f64) -> Result<f64> {
    pair.check_index(k)?;
    Ok(pair.eigenvalues(x, y)[k - 1])
}

/// `lambda_k(cos theta, sin theta)`.
pub fn lambda_k_theta(pair: &HermitianPair, k: usize, theta: f64) -> Result<f64> {
    lambda_k(pair, k, theta.cos(), theta.sin())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SupportSample {
    pub theta: f64,
    /// `(lambda_k(theta), -cos theta, -sin theta)`.
    pub point: [f64; 3],
}

/// Samples of the curve of `k`-th eigenvalues at `m` equally spaced angles.
pub fn sample_ok(pair: &HermitianPair, k: usize, m: usize) -> Result<Vec<SupportSample>> {
    pair.check_index(k)?;
    if m < 4 {
        return Err(Error::Parameter(format!("need at least 4 samples, got {}", m)));
    }
    Ok((0..m)
        .into_par_iter()
        .map(|j| {
            let theta = std::f64::consts::TAU * j as f64 / m as f64;
            let (c, s) = (theta.cos(), theta.sin());
            SupportSample { theta, point: [pair.eigenvalues(c, s)[k - 1], -c, -s] }
        })
        .collect())
}

/// Exact corank of `p0 I + p1 Re(A) + p2 Im(A)` for rational `p`.
pub fn exact_corank(pair: &HermitianPair, p: &[Q; 3]) -> usize {
    pair.n() - gauss::rank(&pair.pencil_exact(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn okplane() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[&[0, 0, 0], &[0, 0, 2], &[0, 0, 0]]).unwrap()
    }

    #[test]
    fn hermitian_parts_of_nilpotent_block() {
        let h = hermitian_parts(&okplane());
        assert_eq!(*h.re.get(1, 2), GaussQ::real(qi(1)));
        assert_eq!(*h.re.get(2, 1), GaussQ::real(qi(1)));
        assert_eq!(*h.im.get(1, 2), GaussQ::new(qi(0), qi(-1)));
        assert_eq!(*h.im.get(2, 1), GaussQ::new(qi(0), qi(1)));
        assert!(h.re.is_hermitian() && h.im.is_hermitian());
        assert_eq!(h.reconstruct(), okplane());
    }

    #[test]
    fn hermitian_and_skew_inputs() {
        let herm = ComplexMatrix::from_int_rows(&[&[(1, 0), (2, 3)], &[(2, -3), (-1, 0)]]).unwrap();
        let h = hermitian_parts(&herm);
        assert_eq!(h.im, ComplexMatrix::zeros(2));
        let h = hermitian_parts(&ComplexMatrix::diag_int(&[(0, 1), (0, 1)]));
        assert_eq!(h.re, ComplexMatrix::zeros(2));
        assert_eq!(h.im, ComplexMatrix::identity(2));
    }

    #[test]
    fn lambda_two_of_okplane_vanishes() {
        let h = hermitian_parts(&okplane());
        for s in sample_ok(&h, 2, 8).unwrap() {
            assert!(s.point[0].abs() < 1e-12);
        }
    }

    #[test]
    fn diagonal_support_samples() {
        let h = hermitian_parts(&ComplexMatrix::diag_int(&[(1, 0), (-1, 0)]));
        let s = sample_ok(&h, 1, 4).unwrap();
        let want = [[1.0, -1.0, 0.0], [0.0, 0.0, -1.0], [1.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
        for (a, b) in s.iter().zip(want) {
            for i in 0..3 {
                assert!((a.point[i] - b[i]).abs() < 1e-12);
            }
        }
        assert!(sample_ok(&h, 1, 3).is_err());
        assert!(lambda_k(&h, 3, 1.0, 0.0).is_err());
    }

    #[test]
    fn non_square_rejected() {
        let r = ComplexMatrix::from_rows(vec![vec![GaussQ::one(), GaussQ::one()]]);
        assert!(matches!(r, Err(Error::Dimension(_))));
    }
}
