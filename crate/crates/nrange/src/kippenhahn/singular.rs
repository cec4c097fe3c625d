use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::{KippenhahnData, ProjPointR};
use crate::error::{Error, Result};
use crate::poly_core::rational::{pow10_inv, q, q_to_f64, rational_approx, Q};
use crate::poly_core::resultant::resultant_bi;
use crate::poly_core::roots::real_roots;
use crate::poly_core::{BiPoly, HomPoly3, UniPoly};

const SHEARS: [(i64, i64); 8] = [(3, 7), (-5, 11), (2, 13), (-7, 17), (11, 19), (-13, 23), (17, 29), (-19, 31)];

/// Real singular points of `fred`, coordinates refined to width `10^-digits`.
pub fn real_singular_points(k: &KippenhahnData) -> Result<Vec<ProjPointR>> {
    real_singular_points_with(&k.fred, 60)
}

pub fn real_singular_points_with(fred: &HomPoly3, digits: u32) -> Result<Vec<ProjPointR>> {
    if fred.degree() <= 0 {
        return Err(Error::Domain("curve polynomial is constant".into()));
    }
    let grad = fred.gradient();
    let prec = pow10_inv(digits);
    let mut pts: Vec<ProjPointR> = Vec::new();
    for p in affine_chart(fred, &grad, &prec) {
        push_unique(&mut pts, p);
    }
    // points [0:1:y]
    let at_inf = |g: &HomPoly3| g.restrict(&[Q::zero(), Q::one(), Q::zero()], &[Q::zero(), Q::zero(), Q::one()]);
    let mut h = at_inf(fred);
    for g in &grad {
        h = h.gcd(&at_inf(g));
    }
    if !h.is_zero() && h.deg() > 0 {
        for iv in real_roots(&h, &prec)?.intervals {
            let (y, exact) = recover(&iv.mid(), |c| h.eval(c).is_zero());
            push_unique(&mut pts, ProjPointR::new([Q::zero(), Q::one(), y], exact)?);
        }
    }
    let e2 = [Q::zero(), Q::zero(), Q::one()];
    if fred.eval(&e2).is_zero() && grad.iter().all(|g| g.eval(&e2).is_zero()) {
        push_unique(&mut pts, ProjPointR::exact(e2)?);
    }
    pts.sort_by(|a, b| {
        let (x, y) = (a.to_f64(), b.to_f64());
        x.partial_cmp(&y).unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(pts)
}

fn push_unique(pts: &mut Vec<ProjPointR>, p: ProjPointR) {
    if !pts.iter().any(|o| o.approx_eq(&p, 1e-20) || *o == p) {
        pts.push(p);
    }
}

/// Continued-fraction recovery of a small rational, confirmed by `check`.
fn recover(x: &Q, check: impl Fn(&Q) -> bool) -> (Q, bool) {
    let c = rational_approx(x, &BigInt::from(1_000_000));
    if check(&c) {
        (c, true)
    } else {
        (x.clone(), false)
    }
}

/// Projection of the singular set of `P(x, y) = fred(1, x, y)` to the functional
/// `x - s*y`: returns the univariate polynomial vanishing there.
fn projection(p: &BiPoly, swap: bool, s: &Q) -> Option<UniPoly> {
    let (z, o) = (Q::zero(), Q::one());
    // new main variable m eliminated, other variable w is the functional value
    let sheared = if swap {
        // y = s*m' ... coordinates x = m, y = w + s*m
        p.affine_substitute([&z, &o, &z], [&z, s, &o])
    } else {
        // x = w + s*m, y = m
        p.affine_substitute([&z, s, &o], [&z, &o, &z])
    };
    if sheared.deg_main() <= 0 || !sheared.lc_main().is_constant() {
        return None;
    }
    let pm = sheared.partial_main();
    let r1 = resultant_bi(&sheared, &pm);
    let r2 = resultant_bi(&sheared.partial_other(), &pm);
    let g = if r2.is_zero() { r1.clone() } else { r1.gcd(&r2) };
    Some(if g.is_zero() { r1 } else { g })
}

fn affine_chart(fred: &HomPoly3, grad: &[HomPoly3; 3], prec: &Q) -> Vec<ProjPointR> {
    let p = fred.dehomogenize(0);
    if p.total_degree() <= 1 {
        return vec![];
    }
    let find = |swap: bool| {
        SHEARS
            .iter()
            .find_map(|&(a, b)| {
                let s = q(a, b);
                projection(&p, swap, &s).map(|u| (s, u))
            })
            .expect("a generic shear exists")
    };
    let ((s1, u1), (s2, u2)) = rayon::join(|| find(false), || find(true));
    let roots = |u: &UniPoly| -> Vec<Q> {
        if u.deg() <= 0 {
            return vec![];
        }
        real_roots(u, prec).map(|iso| iso.midpoints()).unwrap_or_default()
    };
    let (us, ws) = (roots(&u1), roots(&u2));
    // u = x - s1 y, w = y - s2 x
    let det = Q::one() - &s1 * &s2;
    let pairs: Vec<(Q, Q)> = us
        .iter()
        .flat_map(|u| ws.iter().map(move |w| (u.clone(), w.clone())))
        .collect();
    let px = p.partial_main();
    let py = p.partial_other();
    let found: Vec<Option<ProjPointR>> = pairs
        .par_iter()
        .map(|(u, w)| {
            let x = (u + &s1 * w) / &det;
            let y = (w + &s2 * u) / &det;
            let (xf, yf) = (q_to_f64(&x), q_to_f64(&y));
            for g in [&p, &px, &py] {
                if g.eval_f64(xf, yf).abs() > 1e-6 * (1.0 + g.abs_eval_f64(xf, yf)) {
                    return None;
                }
            }
            for g in [&p, &px, &py] {
                let scale = Q::from_float(1.0 + g.abs_eval_f64(xf, yf)).unwrap();
                if g.eval(&x, &y).abs() > pow10_inv(30) * scale {
                    return None;
                }
            }
            let cx = rational_approx(&x, &BigInt::from(1_000_000));
            let cy = rational_approx(&y, &BigInt::from(1_000_000));
            let c = [Q::one(), cx, cy];
            if fred.eval(&c).is_zero() && grad.iter().all(|g| g.eval(&c).is_zero()) {
                return ProjPointR::exact(c).ok();
            }
            ProjPointR::new([Q::one(), x, y], false).ok()
        })
        .collect();
    let mut out: Vec<ProjPointR> = Vec::new();
    for p in found.into_iter().flatten() {
        push_unique(&mut out, p);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly_core::rational::qi;

    #[test]
    fn circle_and_line_singularities() {
        // (t + x)(16t^2 - x^2 - y^2)
        let f = &HomPoly3::linear(&[qi(1), qi(1), qi(0)])
            * &HomPoly3::from_i64_terms(&[([2, 0, 0], 16), ([0, 2, 0], -1), ([0, 0, 2], -1)]);
        let pts = real_singular_points_with(&f, 40).unwrap();
        assert_eq!(pts.len(), 2);
        for (p, sgn) in pts.iter().zip([-1.0, 1.0]) {
            let c = p.to_f64();
            assert!(!p.exact);
            assert_eq!(c[0], 1.0);
            assert!((c[1] + 1.0).abs() < 1e-15);
            assert!((c[2] - sgn * 15f64.sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn pringle_origin_and_smooth_conic() {
        let f = HomPoly3::from_i64_terms(&[([4, 0, 0], 1), ([2, 2, 0], -5), ([0, 4, 0], 4), ([2, 0, 2], -1)]);
        let pts = real_singular_points_with(&f, 40).unwrap();
        assert!(pts.iter().any(|p| p.exact && p.coords == [qi(0), qi(0), qi(1)]));
        let conic = HomPoly3::from_i64_terms(&[([2, 0, 0], 1), ([0, 2, 0], -1), ([0, 0, 2], -1)]);
        assert!(real_singular_points_with(&conic, 40).unwrap().is_empty());
    }

    #[test]
    fn lines_meeting_at_infinity_and_rational_points() {
        // t * x * (t - x - y): singular points [0:0:1], [0:1:-1], [1:0:1]
        let f = &(&HomPoly3::var(0) * &HomPoly3::var(1)) * &HomPoly3::linear(&[qi(1), qi(-1), qi(-1)]);
        let pts = real_singular_points_with(&f, 40).unwrap();
        assert_eq!(pts.len(), 3);
        assert!(pts.iter().all(|p| p.exact));
        let want = [[qi(0), qi(0), qi(1)], [qi(0), qi(1), qi(-1)], [qi(1), qi(0), qi(1)]];
        for w in want {
            assert!(pts.iter().any(|p| p.coords == w), "missing {:?}", w);
        }
    }
}
