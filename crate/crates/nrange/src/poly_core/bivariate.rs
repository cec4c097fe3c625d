//! Bivariate polynomials over the rationals, stored as polynomials in a main variable
//! whose coefficients are univariate polynomials in the second variable.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::interp::{interpolate, symmetric_nodes};
use super::rational::{gcd_of_numerators, lcm_of_denominators, q_to_f64, Q};
use super::univariate::UniPoly;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    /// `rows[i]` is the coefficient of `main^i`.
    rows: Vec<UniPoly>,
}

impl BiPoly {
    pub fn new(mut rows: Vec<UniPoly>) -> Self {
        while rows.last().is_some_and(|r| r.is_zero()) {
            rows.pop();
        }
        BiPoly { rows }
    }

    pub fn zero() -> Self {
        BiPoly { rows: vec![] }
    }

    pub fn constant(c: Q) -> Self {
        Self::new(vec![UniPoly::constant(c)])
    }

    /// Polynomial in the second variable only.
    pub fn from_other(p: UniPoly) -> Self {
        Self::new(vec![p])
    }

    /// Polynomial in the main variable only.
    pub fn from_main(p: &UniPoly) -> Self {
        Self::new(p.coeffs().iter().map(|c| UniPoly::constant(c.clone())).collect())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (usize, usize, Q)>) -> Self {
        let mut rows: Vec<Vec<Q>> = Vec::new();
        for (i, j, c) in terms {
            if rows.len() <= i {
                rows.resize(i + 1, Vec::new());
            }
            if rows[i].len() <= j {
                rows[i].resize(j + 1, Q::zero());
            }
            rows[i][j] += c;
        }
        Self::new(rows.into_iter().map(UniPoly::new).collect())
    }

    pub fn from_i64_terms(terms: &[(usize, usize, i64)]) -> Self {
        Self::from_terms(terms.iter().map(|&(i, j, c)| (i, j, Q::from_integer(c.into()))))
    }

    pub fn rows(&self) -> &[UniPoly] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> UniPoly {
        self.rows.get(i).cloned().unwrap_or_default()
    }

    pub fn coeff(&self, i: usize, j: usize) -> Q {
        self.rows.get(i).map(|r| r.coeff(j)).unwrap_or_else(Q::zero)
    }

    /// Nonzero terms `(main exponent, other exponent, coefficient)`.
    pub fn terms(&self) -> Vec<(usize, usize, Q)> {
        let mut out = Vec::new();
        for (i, r) in self.rows.iter().enumerate() {
            for (j, c) in r.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    out.push((i, j, c.clone()));
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.rows.len() <= 1 && self.rows.first().is_none_or(|r| r.is_constant())
    }

    pub fn deg_main(&self) -> isize {
        self.rows.len() as isize - 1
    }

    pub fn deg_other(&self) -> isize {
        self.rows.iter().map(|r| r.deg()).max().unwrap_or(-1)
    }

    pub fn total_degree(&self) -> isize {
        self.rows
            .iter()
            .enumerate()
            .filter(|(_, r)| !r.is_zero())
            .map(|(i, r)| i as isize + r.deg())
            .max()
            .unwrap_or(-1)
    }

    /// Leading coefficient in the main variable.
    pub fn lc_main(&self) -> UniPoly {
        self.rows.last().cloned().unwrap_or_default()
    }

    pub fn eval(&self, a: &Q, b: &Q) -> Q {
        self.eval_other(b).eval(a)
    }

    pub fn eval_f64(&self, a: f64, b: f64) -> f64 {
        let mut acc = 0.0;
        for r in self.rows.iter().rev() {
            acc = acc * a + r.eval_f64(b);
        }
        acc
    }

    /// Sum of absolute values of the terms at `(a, b)`; a scale for relative residuals.
    pub fn abs_eval_f64(&self, a: f64, b: f64) -> f64 {
        self.terms()
            .iter()
            .map(|(i, j, c)| q_to_f64(c).abs() * a.abs().powi(*i as i32) * b.abs().powi(*j as i32))
            .sum()
    }

    /// Substitutes the second variable, leaving a polynomial in the main variable.
    pub fn eval_other(&self, b: &Q) -> UniPoly {
        UniPoly::new(self.rows.iter().map(|r| r.eval(b)).collect())
    }

    /// Substitutes the main variable, leaving a polynomial in the second variable.
    pub fn eval_main(&self, a: &Q) -> UniPoly {
        let mut acc = UniPoly::zero();
        for r in self.rows.iter().rev() {
            acc = &acc.scale(a) + r;
        }
        acc
    }

    pub fn partial_main(&self) -> Self {
        Self::new(
            self.rows
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, r)| r.scale(&Q::from_integer(BigInt::from(i))))
                .collect(),
        )
    }

    pub fn partial_other(&self) -> Self {
        Self::new(self.rows.iter().map(|r| r.derivative()).collect())
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self::new(self.rows.iter().map(|r| r.scale(c)).collect())
    }

    pub fn mul_uni_other(&self, p: &UniPoly) -> Self {
        Self::new(self.rows.iter().map(|r| r * p).collect())
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut out = BiPoly::constant(Q::one());
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Exchanges the roles of the two variables.
    pub fn swap(&self) -> Self {
        Self::from_terms(self.terms().into_iter().map(|(i, j, c)| (j, i, c)))
    }

    /// `self(a0 + ha * a, b0 + hb * b)`, one variable at a time.
    pub fn shift_scale(&self, a0: &Q, ha: &Q, b0: &Q, hb: &Q) -> Self {
        let lin = |c: &Q, h: &Q| UniPoly::new(vec![c.clone(), h.clone()]);
        let (la, lb) = (lin(a0, ha), lin(b0, hb));
        let rows: Vec<UniPoly> = self.rows.par_iter().map(|r| r.compose(&lb)).collect();
        let swapped = BiPoly::new(rows).swap();
        let cols: Vec<UniPoly> = swapped.rows.par_iter().map(|r| r.compose(&la)).collect();
        BiPoly::new(cols).swap()
    }

    /// `self(u0 + u1*a + u2*b, v0 + v1*a + v2*b)`.
    pub fn affine_substitute(&self, u: [&Q; 3], v: [&Q; 3]) -> Self {
        let lu = BiPoly::from_terms([(0, 0, u[0].clone()), (1, 0, u[1].clone()), (0, 1, u[2].clone())]);
        let lv = BiPoly::from_terms([(0, 0, v[0].clone()), (1, 0, v[1].clone()), (0, 1, v[2].clone())]);
        let dm = self.deg_main().max(0) as usize;
        let d_o = self.deg_other().max(0) as usize;
        let mut pu = vec![BiPoly::constant(Q::one())];
        for _ in 0..dm {
            pu.push(pu.last().unwrap() * &lu);
        }
        let mut pv = vec![BiPoly::constant(Q::one())];
        for _ in 0..d_o {
            pv.push(pv.last().unwrap() * &lv);
        }
        let mut acc = BiPoly::zero();
        for (i, j, c) in self.terms() {
            acc = &acc + &(&pu[i] * &pv[j]).scale(&c);
        }
        acc
    }

    /// `self = c * p` with `p` integral, content one, lexicographically leading
    /// coefficient (highest main power, then highest second power) positive.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let terms = self.terms();
        let cs: Vec<Q> = terms.iter().map(|t| t.2.clone()).collect();
        let den = lcm_of_denominators(&cs);
        let num = gcd_of_numerators(&cs);
        let mut c = Q::new(num, den);
        if self.lc_main().lc().is_negative() {
            c = -c;
        }
        self.scale(&c.recip())
    }

    /// Content with respect to the main variable (monic gcd of the rows).
    pub fn content_main(&self) -> UniPoly {
        let mut g = UniPoly::zero();
        for r in &self.rows {
            g = g.gcd(r);
            if g.is_constant() && !g.is_zero() {
                return UniPoly::one();
            }
        }
        g
    }

    pub fn div_uni_other(&self, p: &UniPoly) -> Option<Self> {
        let mut rows = Vec::with_capacity(self.rows.len());
        for r in &self.rows {
            rows.push(r.exact_div(p)?);
        }
        Some(Self::new(rows))
    }

    pub fn primitive_part_main(&self) -> Self {
        let c = self.content_main();
        if c.is_zero() {
            return self.clone();
        }
        self.div_uni_other(&c).expect("content divides")
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &BiPoly) -> Option<BiPoly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(BiPoly::zero());
        }
        let dm = d.rows.len() - 1;
        if self.rows.len() < d.rows.len() {
            return None;
        }
        let lcd = d.lc_main();
        let mut r = self.rows.clone();
        let mut quot = vec![UniPoly::zero(); r.len() - dm];
        for i in (0..quot.len()).rev() {
            let c = r[i + dm].exact_div(&lcd)?;
            if !c.is_zero() {
                for (j, dc) in d.rows.iter().enumerate() {
                    r[i + j] = &r[i + j] - &(&c * dc);
                }
            }
            quot[i] = c;
        }
        if r.iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(BiPoly::new(quot))
    }

    /// Greatest common divisor, normalized.
    pub fn gcd(&self, other: &BiPoly) -> BiPoly {
        if self.is_zero() {
            return other.normalized();
        }
        if other.is_zero() {
            return self.normalized();
        }
        let c = self.content_main().gcd(&other.content_main());
        let a = self.primitive_part_main();
        let b = other.primitive_part_main();
        let g = primitive_gcd(&a, &b);
        g.mul_uni_other(&c).normalized()
    }

    /// Product of the distinct irreducible factors, normalized.
    pub fn squarefree(&self) -> BiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content_main().squarefree_part();
        let p = self.primitive_part_main();
        let pp = if p.deg_main() <= 0 {
            BiPoly::constant(Q::one())
        } else {
            let g = primitive_gcd(&p, &p.partial_main());
            p.exact_div(&g).expect("gcd divides")
        };
        pp.mul_uni_other(&c).normalized()
    }

    pub fn is_squarefree(&self) -> bool {
        self.squarefree().total_degree() == self.total_degree()
    }

    /// Dense interpolation from values on the tensor grid `xs x ys` (`vals[i][j]` at
    /// `(xs[i], ys[j])`), with degree below the grid size in each variable.
    pub fn interpolate_grid(xs: &[Q], ys: &[Q], vals: &[Vec<Q>]) -> BiPoly {
        // interpolate along the second variable for each main node
        let along: Vec<UniPoly> = vals.par_iter().map(|row| interpolate(ys, row)).collect();
        let dmax = along.iter().map(|p| p.deg()).max().unwrap_or(-1);
        if dmax < 0 {
            return BiPoly::zero();
        }
        let mut terms = Vec::new();
        for j in 0..=dmax as usize {
            let col: Vec<Q> = along.iter().map(|p| p.coeff(j)).collect();
            let pj = interpolate(xs, &col);
            for (i, c) in pj.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    terms.push((i, j, c.clone()));
                }
            }
        }
        BiPoly::from_terms(terms)
    }

    pub fn to_string_with(&self, main: &str, other: &str) -> String {
        let mut terms = self.terms();
        terms.sort_by(|x, y| (y.0 + y.1, y.0).cmp(&(x.0 + x.1, x.0)));
        if terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (i, j, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = monomial(&[(main, *i), (other, *j)]);
            if mono.is_empty() {
                s.push_str(&mag.to_string());
            } else if mag.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{}*{}", mag, mono));
            }
        }
        s
    }
}

pub(crate) fn monomial(parts: &[(&str, usize)]) -> String {
    let v: Vec<String> = parts
        .iter()
        .filter(|(_, e)| *e > 0)
        .map(|(n, e)| if *e == 1 { n.to_string() } else { format!("{}^{}", n, e) })
        .collect();
    v.join("*")
}

/// Gcd of two polynomials that are primitive in the main variable, by evaluating the
/// second variable, taking univariate gcds and interpolating.
fn primitive_gcd(a: &BiPoly, b: &BiPoly) -> BiPoly {
    if a.deg_main() <= 0 || b.deg_main() <= 0 {
        return BiPoly::constant(Q::one());
    }
    let gamma = a.lc_main().gcd(&b.lc_main());
    let need = gamma.deg().max(0) as usize + a.deg_other().min(b.deg_other()).max(0) as usize + 2;
    let mut nodes: Vec<Q> = Vec::new();
    let mut images: Vec<UniPoly> = Vec::new();
    let mut best_deg = usize::MAX;
    let mut tried = 0;
    let candidates = symmetric_nodes(10 * need + 200);
    let mut idx = 0;
    loop {
        // collect batches of images
        while images.len() < need && idx < candidates.len() {
            let x = &candidates[idx];
            idx += 1;
            tried += 1;
            let la = a.lc_main().eval(x);
            let lb = b.lc_main().eval(x);
            if la.is_zero() || lb.is_zero() {
                continue;
            }
            let g = a.eval_other(x).gcd(&b.eval_other(x));
            let d = g.degree().unwrap_or(0);
            if d == 0 {
                return BiPoly::constant(Q::one());
            }
            if d < best_deg {
                best_deg = d;
                nodes.clear();
                images.clear();
            }
            if d == best_deg {
                nodes.push(x.clone());
                images.push(g.scale(&gamma.eval(x)));
            }
        }
        if images.len() < need {
            // out of nodes; fall back to the trivial divisor
            return BiPoly::constant(Q::one());
        }
        let mut rows = Vec::with_capacity(best_deg + 1);
        for i in 0..=best_deg {
            let ys: Vec<Q> = images.iter().map(|g| g.coeff(i)).collect();
            rows.push(interpolate(&nodes, &ys));
        }
        let cand = BiPoly::new(rows).primitive_part_main();
        if a.exact_div(&cand).is_some() && b.exact_div(&cand).is_some() {
            return cand;
        }
        // unlucky images; gather more
        let extra = need.max(4);
        let _ = tried;
        if idx + extra > candidates.len() {
            return BiPoly::constant(Q::one());
        }
        nodes.clear();
        images.clear();
        best_deg = usize::MAX;
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let n = self.rows.len().max(rhs.rows.len());
        BiPoly::new((0..n).map(|i| &self.row(i) + &rhs.row(i)).collect())
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let n = self.rows.len().max(rhs.rows.len());
        BiPoly::new((0..n).map(|i| &self.row(i) - &rhs.row(i)).collect())
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        if self.is_zero() || rhs.is_zero() {
            return BiPoly::zero();
        }
        let mut out = vec![UniPoly::zero(); self.rows.len() + rhs.rows.len() - 1];
        for (i, a) in self.rows.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.rows.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        BiPoly::new(out)
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly::new(self.rows.iter().map(|r| -r).collect())
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_with("a", "b"))
    }
}
