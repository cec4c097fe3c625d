//! Homogeneous polynomials in three variables `(t, x, y)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::bivariate::{monomial, BiPoly};
use super::rational::{gcd_of_numerators, lcm_of_denominators, q_to_f64, Q};
use super::univariate::UniPoly;

pub type Exp = [u32; 3];

pub const VAR_NAMES: [&str; 3] = ["t", "x", "y"];

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct HomPoly3 {
    terms: BTreeMap<Exp, Q>,
}

impl HomPoly3 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Self::from_terms([([0, 0, 0], c)])
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        Self::from_terms([(e, Q::one())])
    }

    /// `l[0]*t + l[1]*x + l[2]*y`.
    pub fn linear(l: &[Q; 3]) -> Self {
        Self::from_terms((0..3).map(|i| {
            let mut e = [0; 3];
            e[i] = 1;
            (e, l[i].clone())
        }))
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Exp, Q)>) -> Self {
        let mut terms: BTreeMap<Exp, Q> = BTreeMap::new();
        for (e, c) in it {
            *terms.entry(e).or_insert_with(Q::zero) += c;
        }
        terms.retain(|_, c| !c.is_zero());
        HomPoly3 { terms }
    }

    pub fn from_i64_terms(ts: &[(Exp, i64)]) -> Self {
        Self::from_terms(ts.iter().map(|(e, c)| (*e, Q::from_integer(BigInt::from(*c)))))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: Exp) -> Q {
        self.terms.get(&e).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> isize {
        self.terms
            .keys()
            .map(|e| (e[0] + e[1] + e[2]) as isize)
            .max()
            .unwrap_or(-1)
    }

    pub fn is_homogeneous(&self) -> bool {
        let d = self.degree();
        self.terms.keys().all(|e| (e[0] + e[1] + e[2]) as isize == d)
    }

    pub fn deg_in(&self, var: usize) -> isize {
        self.terms.keys().map(|e| e[var] as isize).max().unwrap_or(-1)
    }

    /// Largest power of `var` dividing the polynomial.
    pub fn min_deg_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).min().unwrap_or(0)
    }

    pub fn eval(&self, p: &[Q; 3]) -> Q {
        let mut pows: [Vec<Q>; 3] = Default::default();
        let d = self.degree().max(0) as usize;
        for (i, pw) in pows.iter_mut().enumerate() {
            pw.push(Q::one());
            for k in 0..d {
                let v = &pw[k] * &p[i];
                pw.push(v);
            }
        }
        let mut acc = Q::zero();
        for (e, c) in &self.terms {
            acc += c * &pows[0][e[0] as usize] * &pows[1][e[1] as usize] * &pows[2][e[2] as usize];
        }
        acc
    }

    pub fn eval_f64(&self, p: [f64; 3]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                q_to_f64(c) * p[0].powi(e[0] as i32) * p[1].powi(e[1] as i32) * p[2].powi(e[2] as i32)
            })
            .sum()
    }

    /// Sum of absolute term values, a scale for relative residuals.
    pub fn abs_eval_f64(&self, p: [f64; 3]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                q_to_f64(c).abs()
                    * p[0].abs().powi(e[0] as i32)
                    * p[1].abs().powi(e[1] as i32)
                    * p[2].abs().powi(e[2] as i32)
            })
            .sum()
    }

    pub fn partial(&self, var: usize) -> Self {
        Self::from_terms(self.terms.iter().filter(|(e, _)| e[var] > 0).map(|(e, c)| {
            let mut f = *e;
            f[var] -= 1;
            (f, c * Q::from_integer(BigInt::from(e[var])))
        }))
    }

    pub fn gradient(&self) -> [HomPoly3; 3] {
        [self.partial(0), self.partial(1), self.partial(2)]
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, x)| (*e, x * c)))
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// `self(l0 . v, l1 . v, l2 . v)` where `v = (t, x, y)` and `li` are linear forms.
    pub fn substitute_linear(&self, forms: &[[Q; 3]; 3]) -> Self {
        let d = self.degree().max(0) as usize;
        let lin: Vec<HomPoly3> = forms.iter().map(HomPoly3::linear).collect();
        let mut pows: Vec<Vec<HomPoly3>> = Vec::new();
        for l in &lin {
            let mut v = vec![Self::one()];
            for k in 0..d {
                let nx = &v[k] * l;
                v.push(nx);
            }
            pows.push(v);
        }
        let mut acc = Self::zero();
        for (e, c) in &self.terms {
            let m = &(&pows[0][e[0] as usize] * &pows[1][e[1] as usize]) * &pows[2][e[2] as usize];
            acc = &acc + &m.scale(c);
        }
        acc
    }

    /// `s -> self(p + s*q)`.
    pub fn restrict(&self, p: &[Q; 3], q: &[Q; 3]) -> UniPoly {
        let lines: [UniPoly; 3] = std::array::from_fn(|i| UniPoly::new(vec![p[i].clone(), q[i].clone()]));
        let d = self.degree().max(0) as usize;
        let pows: Vec<Vec<UniPoly>> = lines
            .iter()
            .map(|l| {
                let mut v = vec![UniPoly::one()];
                for k in 0..d {
                    let nx = &v[k] * l;
                    v.push(nx);
                }
                v
            })
            .collect();
        let mut acc = UniPoly::zero();
        for (e, c) in &self.terms {
            let m = &(&pows[0][e[0] as usize] * &pows[1][e[1] as usize]) * &pows[2][e[2] as usize];
            acc = &acc + &m.scale(c);
        }
        acc
    }

    /// Sets `var = 1`; the result has the remaining variables in order as (main, other).
    pub fn dehomogenize(&self, var: usize) -> BiPoly {
        let rest: Vec<usize> = (0..3).filter(|&i| i != var).collect();
        BiPoly::from_terms(
            self.terms
                .iter()
                .map(|(e, c)| (e[rest[0]] as usize, e[rest[1]] as usize, c.clone())),
        )
    }

    /// Inverse of [`HomPoly3::dehomogenize`] at the given total degree.
    pub fn homogenize(p: &BiPoly, var: usize, degree: usize) -> Self {
        let rest: Vec<usize> = (0..3).filter(|&i| i != var).collect();
        Self::from_terms(p.terms().into_iter().map(|(i, j, c)| {
            let mut e = [0u32; 3];
            e[rest[0]] = i as u32;
            e[rest[1]] = j as u32;
            e[var] = (degree - i - j) as u32;
            (e, c)
        }))
    }

    /// Integral, content one, first term in descending exponent order positive.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let cs: Vec<&Q> = self.terms.values().collect();
        let den = lcm_of_denominators(cs.iter().copied());
        let num = gcd_of_numerators(cs.iter().copied());
        let mut c = Q::new(num, den);
        if self.terms.values().next_back().unwrap().is_negative() {
            c = -c;
        }
        self.scale(&c.recip())
    }

    fn div_var_power(&self, var: usize, k: u32) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| {
            let mut f = *e;
            f[var] -= k;
            (f, c.clone())
        }))
    }

    /// Product of the distinct irreducible factors, normalized.
    pub fn squarefree(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let ey = self.min_deg_in(2);
        let rest = self.div_var_power(2, ey);
        let p = rest.dehomogenize(2).squarefree();
        let mut out = Self::homogenize(&p, 2, p.total_degree().max(0) as usize);
        if ey > 0 {
            out = &out * &Self::var(2);
        }
        out.normalized()
    }

    /// Exact quotient of homogeneous polynomials.
    pub fn exact_div(&self, d: &HomPoly3) -> Option<Self> {
        assert!(!d.is_zero());
        if self.is_zero() {
            return Some(Self::zero());
        }
        let deg = self.degree() - d.degree();
        if deg < 0 {
            return None;
        }
        let (ea, ed) = (self.min_deg_in(2), d.min_deg_in(2));
        if ed > ea {
            return None;
        }
        let a = self.div_var_power(2, ea).dehomogenize(2);
        let b = d.div_var_power(2, ed).dehomogenize(2);
        let qb = a.exact_div(&b)?;
        let qdeg = deg as usize - (ea - ed) as usize;
        if qb.total_degree() > qdeg as isize {
            return None;
        }
        let mut out = Self::homogenize(&qb, 2, qdeg);
        if ea > ed {
            out = &out * &Self::var(2).pow((ea - ed) as usize);
        }
        if &out * d == *self {
            Some(out)
        } else {
            None
        }
    }

    /// Divides by `t` as often as possible.
    pub fn strip_t(&self) -> (Self, u32) {
        let m = self.min_deg_in(0);
        (self.div_var_power(0, m), m)
    }

    pub fn max_abs_coeff(&self) -> Q {
        self.terms.values().fold(Q::zero(), |m, c| if c.abs() > m { c.abs() } else { m })
    }
}

impl Add for &HomPoly3 {
    type Output = HomPoly3;
    fn add(self, rhs: &HomPoly3) -> HomPoly3 {
        HomPoly3::from_terms(self.terms.iter().chain(rhs.terms.iter()).map(|(e, c)| (*e, c.clone())))
    }
}

impl Sub for &HomPoly3 {
    type Output = HomPoly3;
    fn sub(self, rhs: &HomPoly3) -> HomPoly3 {
        self + &(-rhs)
    }
}

impl Neg for &HomPoly3 {
    type Output = HomPoly3;
    fn neg(self) -> HomPoly3 {
        HomPoly3::from_terms(self.terms.iter().map(|(e, c)| (*e, -c)))
    }
}

impl Mul for &HomPoly3 {
    type Output = HomPoly3;
    fn mul(self, rhs: &HomPoly3) -> HomPoly3 {
        let mut terms: BTreeMap<Exp, Q> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
                *terms.entry(e).or_insert_with(Q::zero) += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        HomPoly3 { terms }
    }
}

impl fmt::Display for HomPoly3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mono = monomial(&[
                (VAR_NAMES[0], e[0] as usize),
                (VAR_NAMES[1], e[1] as usize),
                (VAR_NAMES[2], e[2] as usize),
            ]);
            let mag = c.abs();
            if mono.is_empty() {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "{}", mono)?;
            } else {
                write!(f, "{}*{}", mag, mono)?;
            }
        }
        Ok(())
    }
}
