//! Certified real root isolation by Descartes' rule of signs with bisection
//! (Vincent–Collins–Akritas), followed by exact bisection refinement.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{q_to_f64, Q};
use super::univariate::{int_primitive, UniPoly};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct RootInterval {
    /// `lo == hi` marks an exactly known rational root; otherwise the root lies in `(lo, hi)`.
    pub lo: Q,
    pub hi: Q,
    pub multiplicity: usize,
}

impl RootInterval {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn mid(&self) -> Q {
        (&self.lo + &self.hi) / Q::from_integer(2.into())
    }

    pub fn approx(&self) -> f64 {
        q_to_f64(&self.mid())
    }

    pub fn width(&self) -> Q {
        &self.hi - &self.lo
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct RootIsolation {
    pub intervals: Vec<RootInterval>,
}

impl RootIsolation {
    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn approximations(&self) -> Vec<f64> {
        self.intervals.iter().map(|r| r.approx()).collect()
    }

    pub fn midpoints(&self) -> Vec<Q> {
        self.intervals.iter().map(|r| r.mid()).collect()
    }
}

/// Sign of an integer polynomial at a rational point.
pub(crate) fn int_sign_at(p: &[BigInt], x: &Q) -> i8 {
    let (u, v) = (x.numer(), x.denom());
    let mut acc = BigInt::zero();
    let mut vpow = BigInt::one();
    // sum p_i u^i v^(n-1-i), a positive multiple of p(u/v)
    for c in p.iter().rev() {
        acc = acc * u + c * &vpow;
        vpow *= v;
    }
    if acc.is_zero() {
        0
    } else if acc.is_positive() {
        1
    } else {
        -1
    }
}

fn sign_variations(p: &[BigInt]) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for c in p {
        let s = if c.is_zero() {
            0
        } else if c.is_positive() {
            1
        } else {
            -1
        };
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

fn taylor_shift_one(p: &[BigInt]) -> Vec<BigInt> {
    let mut a = p.to_vec();
    let n = a.len();
    for i in 0..n {
        for j in (i..n.saturating_sub(1)).rev() {
            let t = a[j + 1].clone();
            a[j] += t;
        }
    }
    a
}

/// Number of roots in (0,1), up to the Descartes bound.
fn descartes_01(p: &[BigInt]) -> usize {
    let rev: Vec<BigInt> = p.iter().rev().cloned().collect();
    sign_variations(&taylor_shift_one(&rev))
}

fn bit_len(x: &BigInt) -> i64 {
    x.bits() as i64
}

/// Isolating intervals for the positive roots of a squarefree integer polynomial with
/// nonzero constant term. Returns `(lo, hi, exact)`.
fn isolate_positive(p: &[BigInt]) -> Vec<(Q, Q, bool)> {
    let n = p.len() - 1;
    if n == 0 {
        return vec![];
    }
    let lead_bits = bit_len(&p[n]);
    let mut k: i64 = 0;
    for i in 1..=n {
        let c = &p[n - i];
        if c.is_zero() {
            continue;
        }
        let e = (bit_len(c) - lead_bits + 1 + i as i64 - 1).div_euclid(i as i64);
        k = k.max(e);
    }
    let k = (k + 2).max(0) as u64;
    // r(x) = p(2^k x) has its positive roots in (0,1)
    let mut scaled = Vec::with_capacity(p.len());
    for (i, c) in p.iter().enumerate() {
        scaled.push(c << (k as usize * i));
    }
    let scaled = int_primitive(scaled);
    let mut out = Vec::new();
    let mut stack: Vec<(Vec<BigInt>, BigInt, u64)> = vec![(scaled, BigInt::zero(), 0)];
    while let Some((poly, c, depth)) = stack.pop() {
        let v = descartes_01(&poly);
        if v == 0 {
            continue;
        }
        let lo = Q::new(&c << k as usize, BigInt::one() << depth as usize);
        let hi = Q::new((&c + 1) << k as usize, BigInt::one() << depth as usize);
        if v == 1 {
            out.push((lo, hi, false));
            continue;
        }
        let deg = poly.len() - 1;
        // left(x) = 2^deg poly(x/2)
        let mut left: Vec<BigInt> = poly
            .iter()
            .enumerate()
            .map(|(i, a)| a << (deg - i))
            .collect();
        if left.iter().fold(BigInt::zero(), |s, a| s + a).is_zero() {
            // root exactly at the midpoint; divide out (2x - 1) in the original scale
            let mid = (&lo + &hi) / Q::from_integer(2.into());
            out.push((mid.clone(), mid, true));
            left = divide_by_root_one(&left);
        }
        let right = taylor_shift_one(&left);
        stack.push((int_primitive(left), &c << 1, depth + 1));
        stack.push((int_primitive(right), (&c << 1) + 1, depth + 1));
    }
    out
}

/// Divides an integer polynomial with root x = 1 by (x - 1).
fn divide_by_root_one(p: &[BigInt]) -> Vec<BigInt> {
    let n = p.len() - 1;
    let mut q = vec![BigInt::zero(); n];
    let mut acc = BigInt::zero();
    for i in (1..=n).rev() {
        acc += &p[i];
        q[i - 1] = acc.clone();
    }
    q
}

struct Pending {
    lo: Q,
    hi: Q,
    exact: bool,
    poly: usize,
    mult: usize,
}

fn bisect(p: &[BigInt], r: &mut Pending) {
    if r.exact {
        return;
    }
    let mid = (&r.lo + &r.hi) / Q::from_integer(2.into());
    let sm = int_sign_at(p, &mid);
    if sm == 0 {
        r.lo = mid.clone();
        r.hi = mid;
        r.exact = true;
        return;
    }
    let slo = int_sign_at(p, &r.lo);
    if sm == slo {
        r.lo = mid;
    } else {
        r.hi = mid;
    }
}

fn isolate_sqfree(p: &[BigInt]) -> Vec<(Q, Q, bool)> {
    let mut p = p.to_vec();
    let mut out = Vec::new();
    if p[0].is_zero() {
        out.push((Q::zero(), Q::zero(), true));
        p.remove(0);
    }
    out.extend(isolate_positive(&p));
    let neg: Vec<BigInt> = p
        .iter()
        .enumerate()
        .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
        .collect();
    for (lo, hi, ex) in isolate_positive(&int_primitive(neg)) {
        out.push((-hi, -lo, ex));
    }
    out
}

/// Isolates all distinct real roots of `p`, refined to width at most `precision`.
pub fn real_roots(p: &UniPoly, precision: &Q) -> Result<RootIsolation> {
    if p.is_zero() {
        return Err(Error::Domain("root isolation of the zero polynomial".into()));
    }
    let mut polys: Vec<Vec<BigInt>> = Vec::new();
    let mut pending: Vec<Pending> = Vec::new();
    for (factor, mult) in p.squarefree_decomposition() {
        let (_, ints) = factor.primitive_integer();
        let idx = polys.len();
        let mut deflated = factor.clone();
        for (lo, hi, exact) in isolate_sqfree(&ints) {
            if exact {
                deflated = deflated.exact_div(&UniPoly::linear_root(&lo)).expect("exact root");
            }
            pending.push(Pending { lo, hi, exact, poly: idx, mult });
        }
        // dyadic interval endpoints that are roots were all recorded as exact, so the
        // deflated factor has no root on any endpoint
        polys.push(deflated.primitive_integer().1);
    }
    // separate intervals coming from different factors
    loop {
        pending.sort_by(|a, b| a.lo.cmp(&b.lo).then(a.hi.cmp(&b.hi)));
        let mut clash = None;
        for i in 1..pending.len() {
            let (a, b) = (&pending[i - 1], &pending[i]);
            let overlap = if a.exact && b.exact {
                false
            } else if a.exact {
                a.lo > b.lo
            } else if b.exact {
                b.lo < a.hi
            } else {
                b.lo < a.hi
            };
            if overlap {
                clash = Some(i);
                break;
            }
        }
        match clash {
            None => break,
            Some(i) => {
                for j in [i - 1, i] {
                    let pi = pending[j].poly;
                    bisect(&polys[pi], &mut pending[j]);
                }
            }
        }
    }
    for r in pending.iter_mut() {
        while !r.exact && &(&r.hi - &r.lo) > precision {
            let pi = r.poly;
            bisect(&polys[pi], r);
        }
    }
    pending.sort_by(|a, b| a.lo.cmp(&b.lo));
    Ok(RootIsolation {
        intervals: pending
            .into_iter()
            .map(|r| RootInterval { lo: r.lo, hi: r.hi, multiplicity: r.mult })
            .collect(),
    })
}

/// Rational points strictly between consecutive roots, plus one point beyond each end
/// (`r1 - 1`, `rm + 1`) when `with_ends` is set.
pub fn separating_points(iso: &RootIsolation, with_ends: bool) -> Vec<Q> {
    let mut out = Vec::new();
    let one = Q::one();
    let ivs = &iso.intervals;
    if ivs.is_empty() {
        return out;
    }
    if with_ends {
        out.push(&ivs[0].lo - &one);
    }
    for w in ivs.windows(2) {
        out.push((&w[0].hi + &w[1].lo) / Q::from_integer(2.into()));
    }
    if with_ends {
        out.push(&ivs[ivs.len() - 1].hi + &one);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly_core::rational::{pow10_inv, q};

    fn p(cs: &[i64]) -> UniPoly {
        UniPoly::from_i64(cs)
    }

    #[test]
    fn quadratic_irrational_roots() {
        // (15 - y^2)/16
        let f = UniPoly::new(vec![q(15, 16), q(0, 1), q(-1, 16)]);
        let iso = real_roots(&f, &pow10_inv(12)).unwrap();
        assert_eq!(iso.len(), 2);
        let s = 15f64.sqrt();
        assert!((iso.intervals[0].approx() + s).abs() < 1e-11);
        assert!((iso.intervals[1].approx() - s).abs() < 1e-11);
    }

    #[test]
    fn no_real_roots() {
        assert!(real_roots(&p(&[1, 0, 1]), &pow10_inv(12)).unwrap().is_empty());
    }

    #[test]
    fn cubic_with_zero_root() {
        let iso = real_roots(&p(&[0, -2, 0, 1]), &pow10_inv(12)).unwrap();
        let a = iso.approximations();
        assert_eq!(a.len(), 3);
        assert!((a[0] + 2f64.sqrt()).abs() < 1e-11);
        assert!(iso.intervals[1].is_exact() && a[1] == 0.0);
        assert!((a[2] - 2f64.sqrt()).abs() < 1e-11);
    }

    #[test]
    fn multiplicities_reported() {
        // (x-1)^2 (x+1/2)^3 (x^2-2)
        let f = &(&p(&[-1, 1]).pow(2) * &UniPoly::new(vec![q(1, 2), q(1, 1)]).pow(3)) * &p(&[-2, 0, 1]);
        let iso = real_roots(&f, &pow10_inv(10)).unwrap();
        let m: Vec<usize> = iso.intervals.iter().map(|r| r.multiplicity).collect();
        assert_eq!(m, vec![1, 3, 2, 1]);
    }

    #[test]
    fn rational_roots_found_exactly_or_tightly() {
        let f = &(&p(&[-1, 3]) * &p(&[1, 2])) * &p(&[-5, 1]);
        let iso = real_roots(&f, &pow10_inv(15)).unwrap();
        let a = iso.approximations();
        assert!((a[0] + 0.5).abs() < 1e-14);
        assert!((a[1] - 1.0 / 3.0).abs() < 1e-14);
        assert!((a[2] - 5.0).abs() < 1e-14);
    }

    #[test]
    fn clustered_roots() {
        // (x - 1)(x - 1 - 1e-9)
        let e = q(1, 1_000_000_000);
        let f = &UniPoly::linear_root(&q(1, 1)) * &UniPoly::linear_root(&(q(1, 1) + e));
        let iso = real_roots(&f, &pow10_inv(14)).unwrap();
        assert_eq!(iso.len(), 2);
    }
}
