//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{gcd_of_numerators, lcm_of_denominators, q_to_f64, Q};

/// Coefficients are stored lowest degree first; trailing zeros are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Q>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| Q::from_integer(c.into())).collect())
    }

    pub fn from_integers(cs: &[BigInt]) -> Self {
        Self::new(cs.iter().map(|c| Q::from_integer(c.clone())).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: Q, d: usize) -> Self {
        let mut v = vec![Q::zero(); d + 1];
        v[d] = c;
        Self::new(v)
    }

    /// `x - r`
    pub fn linear_root(r: &Q) -> Self {
        Self::new(vec![-r.clone(), Q::one()])
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Q> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.coeffs.get(i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to -1.
    pub fn deg(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn lc(&self) -> Q {
        self.coeffs.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + q_to_f64(c);
        }
        acc
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(q_to_f64).collect()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Q::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.lc();
        self.scale(&lc.recip())
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut out = UniPoly::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Composition `self(other(x))`.
    pub fn compose(&self, other: &UniPoly) -> Self {
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * other) + &UniPoly::constant(c.clone());
        }
        acc
    }

    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let inv = d.lc().recip();
        let mut r = self.coeffs.clone();
        let mut quot = vec![Q::zero(); r.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &r[i + dd] * &inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[i + j] -= &c * dc;
                }
            }
            quot[i] = c;
        }
        r.truncate(dd);
        (UniPoly::new(quot), UniPoly::new(r))
    }

    pub fn exact_div(&self, d: &UniPoly) -> Option<UniPoly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Splits off a rational content: `self = c * p` where `p` has coprime integer
    /// coefficients and positive leading coefficient.
    pub fn primitive_integer(&self) -> (Q, Vec<BigInt>) {
        if self.is_zero() {
            return (Q::zero(), vec![]);
        }
        let den = lcm_of_denominators(&self.coeffs);
        let num = gcd_of_numerators(&self.coeffs);
        let mut c = Q::new(num, den);
        if self.lc().is_negative() {
            c = -c;
        }
        let ints = self
            .coeffs
            .iter()
            .map(|x| (x / &c).to_integer())
            .collect();
        (c, ints)
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let (_, a) = self.primitive_integer();
        let (_, b) = other.primitive_integer();
        UniPoly::from_integers(&int_gcd(a, b)).monic()
    }

    pub fn squarefree_part(&self) -> UniPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).expect("gcd divides").monic()
    }

    /// Yun decomposition: `self = lc * prod s_i^i` with squarefree, pairwise coprime `s_i`.
    /// Constant factors are dropped.
    pub fn squarefree_decomposition(&self) -> Vec<(UniPoly, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.exact_div(&a0).unwrap();
        let mut c = df.exact_div(&a0).unwrap();
        let mut d = &c - &b.derivative();
        let mut i = 1;
        loop {
            let a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.exact_div(&a).unwrap();
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            c = d.exact_div(&a).unwrap();
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    /// `p(x + s)`.
    pub fn shift(&self, s: &Q) -> UniPoly {
        self.compose(&UniPoly::new(vec![s.clone(), Q::one()]))
    }

    pub fn max_abs_coeff(&self) -> Q {
        super::rational::abs_max(&self.coeffs)
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", c)?,
                1 => write!(f, "({})*z", c)?,
                _ => write!(f, "({})*z^{}", c, i)?,
            }
        }
        Ok(())
    }
}

// Integer polynomial helpers, lowest degree first.

pub(crate) fn int_trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

pub(crate) fn int_primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let v = int_trim(v);
    if v.is_empty() {
        return v;
    }
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let neg = v.last().unwrap().is_negative();
    v.into_iter()
        .map(|c| {
            let c = c / &g;
            if neg {
                -c
            } else {
                c
            }
        })
        .collect()
}

/// Pseudo-remainder of `a` by `b`, returned primitive.
fn int_prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    while r.len() > db {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, bc) in b.iter().enumerate() {
            r[shift + j] -= &lr * bc;
        }
        r = int_trim(r);
        if r.len() > db {
            r = int_primitive(r);
        }
    }
    int_primitive(r)
}

/// Primitive gcd of two nonzero primitive integer polynomials.
pub(crate) fn int_gcd(a: Vec<BigInt>, b: Vec<BigInt>) -> Vec<BigInt> {
    if !a.is_empty() && !b.is_empty() {
        if let Some(g) = super::modular::int_gcd_modular(&a, &b) {
            return g;
        }
    }
    let (mut a, mut b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    loop {
        if b.is_empty() {
            return int_primitive(a);
        }
        if b.len() == 1 {
            return vec![BigInt::one()];
        }
        let r = int_prem(&a, &b);
        a = b;
        b = r;
    }
}
