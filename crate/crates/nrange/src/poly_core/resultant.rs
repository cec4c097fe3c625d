//! Determinants, resultants and discriminants.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::bivariate::BiPoly;
use super::modular::resultant_bi_int;
use super::rational::{lcm_of_denominators, Q};
use super::univariate::UniPoly;

/// Fraction-free Gaussian elimination.
pub fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = 1;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Determinant of a rational matrix.
pub fn det_q(m: &[Vec<Q>]) -> Q {
    let mut scale = Q::one();
    let rows: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| {
            let l = lcm_of_denominators(row);
            scale *= Q::from_integer(l.clone());
            row.iter().map(|x| (x * Q::from_integer(l.clone())).to_integer()).collect()
        })
        .collect();
    Q::from_integer(bareiss_det(rows)) / scale
}

fn integer_coeffs(p: &UniPoly, len: usize) -> (Q, Vec<BigInt>) {
    let l = Q::from_integer(lcm_of_denominators(p.coeffs()));
    let v = (0..len).map(|i| (p.coeff(i) * &l).to_integer()).collect();
    (l, v)
}

/// Resultant of `p` and `q` viewed as polynomials of formal degrees `dp` and `dq`.
pub fn resultant_formal(p: &UniPoly, dp: usize, q: &UniPoly, dq: usize) -> Q {
    assert!(p.deg() <= dp as isize && q.deg() <= dq as isize);
    let n = dp + dq;
    if n == 0 {
        return Q::one();
    }
    let (lp, cp) = integer_coeffs(p, dp + 1);
    let (lq, cq) = integer_coeffs(q, dq + 1);
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for r in 0..dq {
        for i in 0..=dp {
            m[r][r + i] = cp[dp - i].clone();
        }
    }
    for r in 0..dp {
        for i in 0..=dq {
            m[dq + r][r + i] = cq[dq - i].clone();
        }
    }
    let scale = num_traits::pow(lp, dq) * num_traits::pow(lq, dp);
    Q::from_integer(bareiss_det(m)) / scale
}

pub fn resultant(p: &UniPoly, q: &UniPoly) -> Q {
    resultant_formal(p, p.deg().max(0) as usize, q, q.deg().max(0) as usize)
}

/// `(-1)^(d(d-1)/2) Res(p, p') / lc(p)`.
pub fn discriminant(p: &UniPoly) -> Q {
    let d = p.deg();
    if d <= 0 {
        return Q::one();
    }
    let r = resultant(p, &p.derivative()) / p.lc();
    if (d * (d - 1) / 2) % 2 == 1 {
        -r
    } else {
        r
    }
}

/// Resultant eliminating the main variable, with formal main degrees `dp`, `dq`.
pub fn resultant_bi_formal(p: &BiPoly, dp: usize, q: &BiPoly, dq: usize) -> UniPoly {
    assert!(p.deg_main() <= dp as isize && q.deg_main() <= dq as isize);
    if dp + dq == 0 {
        return UniPoly::one();
    }
    let int_rows = |b: &BiPoly| -> (BigInt, Vec<Vec<BigInt>>) {
        let l = lcm_of_denominators(b.rows().iter().flat_map(|r| r.coeffs()));
        let lq = Q::from_integer(l.clone());
        let rows = b.rows().iter().map(|r| r.coeffs().iter().map(|c| (c * &lq).to_integer()).collect()).collect();
        (l, rows)
    };
    let (lp, pr) = int_rows(p);
    let (lq, qr) = int_rows(q);
    let r = resultant_bi_int(&pr, dp, &qr, dq);
    let scale = Q::from_integer(num_traits::pow(lp, dq) * num_traits::pow(lq, dp));
    UniPoly::from_integers(&r).scale(&scale.recip())
}

pub fn resultant_bi(p: &BiPoly, q: &BiPoly) -> UniPoly {
    resultant_bi_formal(p, p.deg_main().max(0) as usize, q, q.deg_main().max(0) as usize)
}

/// Discriminant with respect to the main variable.
pub fn discriminant_bi(p: &BiPoly) -> UniPoly {
    let d = p.deg_main();
    if d <= 0 {
        return UniPoly::one();
    }
    let r = resultant_bi(p, &p.partial_main())
        .exact_div(&p.lc_main())
        .expect("leading coefficient divides the resultant");
    if (d * (d - 1) / 2) % 2 == 1 {
        -&r
    } else {
        r
    }
}
