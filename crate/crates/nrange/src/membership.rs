//! Membership of a point `a + ib` in the rank-k numerical range.
//!
//! With `l = t + a x + b y`, the largest power of `l` is divided out of `f_A`, the
//! remaining factor is restricted to the line `(-a - b y, 1, y)`, and the Hermitian
//! matrix `Re(A) + s Im(A) - (a + b s) I` is checked at one test point in each interval
//! cut out by the real roots of that restriction.

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kippenhahn::KippenhahnData;
use crate::linalg_pencil::HermitianPair;
use crate::poly_core::linear::{divide_out_shifted, shift_to_line};
use crate::poly_core::rational::{pow10_inv, q_from_f64, q_to_f64, Q};
use crate::poly_core::roots::{real_roots, separating_points};
use crate::poly_core::{HomPoly3, UniPoly};

pub const DEFAULT_TOL: f64 = 1e-9;
pub const DIVTOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq)]
pub struct TestPoint {
    pub s: f64,
    /// `lambda_k(H) / sqrt(1 + s^2)`, must be nonnegative.
    pub upper: f64,
    /// `-lambda_{n-k+1}(H) / sqrt(1 + s^2)`, must be nonnegative.
    pub lower: f64,
    pub positives: usize,
    pub negatives: usize,
}

impl TestPoint {
    pub fn margin(&self) -> f64 {
        self.upper.min(self.lower)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MembershipVerdict {
    pub member: bool,
    /// Smallest normalized slack over the test points; negative outside.
    pub margin: f64,
    /// Decided by exact sign counts rather than floating eigenvalues.
    pub certified: bool,
    /// `|margin| <= tol` without an exact decision.
    pub ambiguous: bool,
    /// Power of `t + a x + b y` dividing `f_A`.
    pub divided: usize,
    pub witnesses: Vec<TestPoint>,
}

/// Membership of a floating point `a + ib`.
pub fn membership_test(kd: &KippenhahnData, k: usize, a: f64, b: f64, tol: f64) -> Result<MembershipVerdict> {
    run(kd, k, &q_from_f64(a), &q_from_f64(b), false, tol)
}

/// Membership of a rational point, decided with exact arithmetic.
pub fn membership_test_exact(kd: &KippenhahnData, k: usize, a: &Q, b: &Q, tol: f64) -> Result<MembershipVerdict> {
    run(kd, k, a, b, true, tol)
}

/// Membership of a point given by rational approximations of irrational coordinates.
pub fn membership_test_approx(kd: &KippenhahnData, k: usize, a: &Q, b: &Q, tol: f64) -> Result<MembershipVerdict> {
    run(kd, k, a, b, false, tol)
}

/// Eigenvalue sign counts `(positive, negative, zero)` of `(-a - b s) I + Re(A) + s Im(A)`.
pub fn eigen_sign_profile(pair: &HermitianPair, a: f64, b: f64, s: f64, tol: f64) -> (usize, usize, usize) {
    let ev = pair.eigenvalues_shifted(-a - b * s, 1.0, s);
    let pos = ev.iter().filter(|&&v| v > tol).count();
    let neg = ev.iter().filter(|&&v| v < -tol).count();
    (pos, neg, ev.len() - pos - neg)
}

fn sign_variations(cs: &[Q]) -> usize {
    let mut last = 0i8;
    let mut n = 0;
    for c in cs {
        let s = if c.is_positive() {
            1
        } else if c.is_negative() {
            -1
        } else {
            continue;
        };
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

/// Exact counts of positive and negative eigenvalues of `H(s)` from the real-rooted
/// polynomial `u -> det(u I + H(s)) = fs(u, 1, s)`.
fn exact_counts(fs: &HomPoly3, s: &Q) -> (usize, usize) {
    let p = fs.restrict(&[Q::zero(), Q::one(), s.clone()], &[Q::one(), Q::zero(), Q::zero()]);
    let cs = p.coeffs();
    let neg_roots: Vec<Q> = cs.iter().enumerate().map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() }).collect();
    // positive eigenvalues are negative roots in u
    (sign_variations(&neg_roots), sign_variations(cs))
}

fn run(kd: &KippenhahnData, k: usize, a: &Q, b: &Q, exact: bool, tol: f64) -> Result<MembershipVerdict> {
    let n = kd.n;
    kd.pair.check_index(k)?;
    if !(tol > 0.0) {
        return Err(Error::Parameter(format!("tolerance must be positive, got {}", tol)));
    }
    let fs = shift_to_line(&kd.f, a, b);
    let (d, g) = divide_out_shifted(&fs, if exact { None } else { Some(DIVTOL) });
    // h(y) = ftilde(-a - b y, 1, y) = g(0, 1, y)
    let h = UniPoly::new({
        let mut v = vec![Q::zero(); g.deg_in(2).max(0) as usize + 1];
        for (e, c) in g.terms().filter(|(e, _)| e[0] == 0) {
            v[e[2] as usize] += c;
        }
        v
    });
    if h.is_zero() {
        return Err(Error::Inconsistency("restricted cofactor vanishes identically".into()));
    }
    let points = if h.deg() <= 0 {
        vec![Q::zero()]
    } else {
        let iso = real_roots(&h, &pow10_inv(12))?;
        if iso.is_empty() {
            vec![Q::zero()]
        } else {
            separating_points(&iso, true)
        }
    };
    let (af, bf) = (q_to_f64(a), q_to_f64(b));
    let witnesses: Vec<TestPoint> = points
        .par_iter()
        .map(|s| {
            let sf = q_to_f64(s);
            let ev = kd.pair.eigenvalues_shifted(-af - bf * sf, 1.0, sf);
            let norm = (1.0 + sf * sf).sqrt();
            let (positives, negatives) = if exact {
                exact_counts(&fs, s)
            } else {
                let p = ev.iter().filter(|&&v| v > tol * norm).count();
                let m = ev.iter().filter(|&&v| v < -tol * norm).count();
                (p, m)
            };
            TestPoint { s: sf, upper: ev[k - 1] / norm, lower: -ev[n - k] / norm, positives, negatives }
        })
        .collect();
    let margin = witnesses.iter().map(TestPoint::margin).fold(f64::INFINITY, f64::min);
    let member = if exact {
        witnesses.iter().all(|w| w.positives <= n - k && w.negatives <= n - k)
    } else {
        margin >= -tol
    };
    Ok(MembershipVerdict {
        member,
        margin,
        certified: exact,
        ambiguous: !exact && margin.abs() <= tol,
        divided: d,
        witnesses,
    })
}
