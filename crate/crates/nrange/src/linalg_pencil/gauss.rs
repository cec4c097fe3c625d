//! Gaussian rationals and exact linear algebra over `Q(i)`.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::poly_core::rational::{q_to_f64, Q};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussQ {
    pub re: Q,
    pub im: Q,
}

impl GaussQ {
    pub fn new(re: Q, im: Q) -> Self {
        GaussQ { re, im }
    }

    pub fn real(re: Q) -> Self {
        GaussQ { re, im: Q::zero() }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::real(Q::one())
    }

    pub fn i() -> Self {
        GaussQ { re: Q::zero(), im: Q::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussQ { re: self.re.clone(), im: -&self.im }
    }

    pub fn norm_sqr(&self) -> Q {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn scale(&self, c: &Q) -> Self {
        GaussQ { re: &self.re * c, im: &self.im * c }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (q_to_f64(&self.re), q_to_f64(&self.im))
    }
}

impl Add for &GaussQ {
    type Output = GaussQ;
    fn add(self, o: &GaussQ) -> GaussQ {
        GaussQ { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl Sub for &GaussQ {
    type Output = GaussQ;
    fn sub(self, o: &GaussQ) -> GaussQ {
        GaussQ { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl Mul for &GaussQ {
    type Output = GaussQ;
    fn mul(self, o: &GaussQ) -> GaussQ {
        GaussQ {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Div for &GaussQ {
    type Output = GaussQ;
    fn div(self, o: &GaussQ) -> GaussQ {
        let n = o.norm_sqr();
        (self * &o.conj()).scale(&n.recip())
    }
}

impl Neg for &GaussQ {
    type Output = GaussQ;
    fn neg(self) -> GaussQ {
        GaussQ { re: -&self.re, im: -&self.im }
    }
}

/// Square matrix over `Q(i)` in row-major order.
pub type GaussMatrix = Vec<Vec<GaussQ>>;

/// Row echelon form by Gaussian elimination; returns the rank and the determinant
/// (zero when singular).
fn eliminate(mut m: GaussMatrix) -> (usize, GaussQ) {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut det = GaussQ::one();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            det = GaussQ::zero();
            continue;
        };
        if p != rank {
            m.swap(p, rank);
            det = -&det;
        }
        let piv = m[rank][c].clone();
        det = &det * &piv;
        for r in rank + 1..rows {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] / &piv;
            for j in c..cols {
                let v = &m[r][j] - &(&f * &m[rank][j]);
                m[r][j] = v;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    if rank < rows.min(cols) || rows != cols {
        det = GaussQ::zero();
    }
    (rank, det)
}

pub fn det(m: &GaussMatrix) -> GaussQ {
    if m.is_empty() {
        return GaussQ::one();
    }
    eliminate(m.clone()).1
}

pub fn rank(m: &GaussMatrix) -> usize {
    eliminate(m.clone()).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly_core::rational::qi;

    fn g(a: i64, b: i64) -> GaussQ {
        GaussQ::new(qi(a), qi(b))
    }

    #[test]
    fn field_ops() {
        let x = g(1, 2);
        let y = g(3, -1);
        assert_eq!(&(&x * &y) / &y, x);
        assert_eq!(&x * &x.conj(), GaussQ::real(qi(5)));
    }

    #[test]
    fn det_and_rank() {
        let m = vec![vec![g(0, 1), g(1, 0)], vec![g(1, 0), g(0, 1)]];
        // i*i - 1 = -2
        assert_eq!(det(&m), g(-2, 0));
        assert_eq!(rank(&m), 2);
        let s = vec![vec![g(1, 1), g(2, 2)], vec![g(1, 0), g(2, 0)]];
        assert_eq!(rank(&s), 1);
        assert!(det(&s).is_zero());
    }
}
