//! Greatest common divisors of integer polynomials by reduction modulo word-size primes.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub(crate) fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut v = Vec::new();
        let mut n = (1u64 << 62) - 1;
        while v.len() < 1024 {
            if is_prime(n) {
                v.push(n);
            }
            n -= 2;
        }
        v
    })
}

fn reduce(c: &BigInt, p: u64) -> u64 {
    c.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Monic gcd over `Z/p`; inputs lowest degree first.
fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let inv = pow_mod(*b.last().unwrap(), p - 2, p);
        let db = b.len() - 1;
        while a.len() > db {
            let c = mul_mod(*a.last().unwrap(), inv, p);
            let shift = a.len() - 1 - db;
            for (j, &bc) in b.iter().enumerate() {
                a[shift + j] = (a[shift + j] + p - mul_mod(c, bc, p)) % p;
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(&l) = a.last() {
        let inv = pow_mod(l, p - 2, p);
        for c in a.iter_mut() {
            *c = mul_mod(*c, inv, p);
        }
    }
    a
}

/// `Some(q)` with `a = q d` over the integers.
pub(crate) fn int_exact_div(a: &[BigInt], d: &[BigInt]) -> Option<Vec<BigInt>> {
    let dd = d.len() - 1;
    if a.len() < d.len() {
        return if a.iter().all(Zero::is_zero) { Some(vec![]) } else { None };
    }
    let ld = &d[dd];
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - dd];
    for i in (0..q.len()).rev() {
        let (c, rem) = r[i + dd].div_rem(ld);
        if !rem.is_zero() {
            return None;
        }
        if !c.is_zero() {
            for (j, dc) in d.iter().enumerate() {
                r[i + j] -= &c * dc;
            }
        }
        q[i] = c;
    }
    r.iter().all(Zero::is_zero).then_some(q)
}

/// Primitive gcd of two primitive integer polynomials of positive length, or `None` if the
/// prime supply runs out.
pub(crate) fn int_gcd_modular(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let (la, lb) = (a.last().unwrap(), b.last().unwrap());
    let gamma = la.gcd(lb);
    let mut m = BigInt::one();
    let mut h: Vec<BigInt> = Vec::new();
    let mut deg = usize::MAX;
    for &p in primes() {
        if reduce(la, p) == 0 || reduce(lb, p) == 0 {
            continue;
        }
        let ap: Vec<u64> = a.iter().map(|c| reduce(c, p)).collect();
        let bp: Vec<u64> = b.iter().map(|c| reduce(c, p)).collect();
        let gp = gcd_mod(ap, bp, p);
        let d = gp.len() - 1;
        if d == 0 {
            return Some(vec![BigInt::one()]);
        }
        if d > deg {
            continue;
        }
        let gm = reduce(&gamma, p);
        let gp: Vec<u64> = gp.iter().map(|&c| mul_mod(c, gm, p)).collect();
        let pb = BigInt::from(p);
        if d < deg {
            deg = d;
            m = pb.clone();
            h = gp.iter().map(|&c| symmetric(BigInt::from(c), &m)).collect();
            continue;
        }
        // Chinese remainder: x = h mod m, x = g mod p
        let minv = BigInt::from(pow_mod(reduce(&m, p), p - 2, p));
        let mp = &m * &pb;
        let next: Vec<BigInt> = h
            .iter()
            .zip(&gp)
            .map(|(hc, &gc)| {
                let t = ((BigInt::from(gc) - hc) * &minv).mod_floor(&pb);
                symmetric(hc + &m * t, &mp)
            })
            .collect();
        m = mp;
        let stable = next == h;
        h = next;
        if stable {
            let cand = primitive(&h);
            if int_exact_div(a, &cand).is_some() && int_exact_div(b, &cand).is_some() {
                return Some(cand);
            }
        }
    }
    None
}


fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Determinant over `Z/p` by Gaussian elimination.
fn det_mod(mut m: Vec<Vec<u64>>, p: u64) -> u64 {
    let n = m.len();
    let mut det = 1u64;
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| m[i][k] != 0) else { return 0 };
        if piv != k {
            m.swap(piv, k);
            det = (p - det) % p;
        }
        det = mul_mod(det, m[k][k], p);
        let inv = inv_mod(m[k][k], p);
        for i in k + 1..n {
            if m[i][k] == 0 {
                continue;
            }
            let f = mul_mod(m[i][k], inv, p);
            for j in k..n {
                m[i][j] = (m[i][j] + p - mul_mod(f, m[k][j], p)) % p;
            }
        }
    }
    det
}

/// Coefficients, lowest first, of the polynomial taking the values `ys` at `0, 1, ..`
/// over `Z/p`.
fn interpolate_consecutive_mod(ys: &[u64], p: u64) -> Vec<u64> {
    let n = ys.len();
    let inv: Vec<u64> = (0..n as u64).map(|j| if j == 0 { 0 } else { inv_mod(j, p) }).collect();
    let mut dd = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = mul_mod((dd[i] + p - dd[i - 1]) % p, inv[j], p);
        }
    }
    let mut acc: Vec<u64> = Vec::with_capacity(n);
    for i in (0..n).rev() {
        // acc = acc * (x - i) + dd[i]
        acc.insert(0, 0);
        let xi = i as u64 % p;
        for j in 0..acc.len() - 1 {
            let c = acc[j + 1];
            acc[j] = (acc[j] + p - mul_mod(c, xi, p)) % p;
        }
        acc[0] = (acc[0] + dd[i]) % p;
    }
    acc
}

fn bits(x: &BigInt) -> u64 {
    x.bits()
}

/// Resultant in the main variable of two bivariate integer polynomials with formal main
/// degrees `dp`, `dq`. `p[i][j]` is the coefficient of `main^i other^j`. Returns the
/// coefficients in the other variable, lowest first.
pub(crate) fn resultant_bi_int(p: &[Vec<BigInt>], dp: usize, q: &[Vec<BigInt>], dq: usize) -> Vec<BigInt> {
    let n = dp + dq;
    let deg_other = |v: &[Vec<BigInt>]| v.iter().map(|r| r.len().saturating_sub(1)).max().unwrap_or(0);
    let count = deg_other(p) * dq + deg_other(q) * dp + 1;
    let norm1 = |v: &[Vec<BigInt>]| v.iter().flatten().fold(BigInt::zero(), |s, c| s + c.abs());
    // coefficients are bounded by the 1-norm of the determinant, at most the product of
    // the row 1-norms of the Sylvester matrix
    let need = bits(&norm1(p)) * dq as u64 + bits(&norm1(q)) * dp as u64 + 2;
    let mut m = BigInt::one();
    let mut acc: Vec<BigInt> = vec![BigInt::zero(); count];
    for &pr in primes() {
        if m.bits() > need {
            break;
        }
        let red = |v: &[Vec<BigInt>]| -> Vec<Vec<u64>> { v.iter().map(|r| r.iter().map(|c| reduce(c, pr)).collect()).collect() };
        let (pm, qm) = (red(p), red(q));
        let horner = |r: &[u64], x: u64| r.iter().rev().fold(0u64, |a, &c| (mul_mod(a, x, pr) + c) % pr);
        let xs: Vec<u64> = (0..count as u64).collect();
        let ys: Vec<u64> = xs
            .iter()
            .map(|&x| {
                let coef = |v: &[Vec<u64>], i: usize| v.get(i).map_or(0, |r| horner(r, x));
                let mut s = vec![vec![0u64; n]; n];
                for r in 0..dq {
                    for i in 0..=dp {
                        s[r][r + i] = coef(&pm, dp - i);
                    }
                }
                for r in 0..dp {
                    for i in 0..=dq {
                        s[dq + r][r + i] = coef(&qm, dq - i);
                    }
                }
                det_mod(s, pr)
            })
            .collect();
        let res = interpolate_consecutive_mod(&ys, pr);
        crt_step(&mut acc, &res, &m, pr);
        m *= pr;
    }
    assert!(m.bits() > need, "prime supply exhausted");
    while acc.len() > 1 && acc.last().is_some_and(Zero::is_zero) {
        acc.pop();
    }
    acc
}

fn crt_step(acc: &mut [BigInt], res: &[u64], m: &BigInt, pr: u64) {
    let pb = BigInt::from(pr);
    let minv = BigInt::from(inv_mod(reduce(m, pr), pr));
    let mp = m * &pb;
    for (j, a) in acc.iter_mut().enumerate() {
        let r = res.get(j).copied().unwrap_or(0);
        let t = ((BigInt::from(r) - &*a) * &minv).mod_floor(&pb);
        *a = symmetric(&*a + m * t, &mp);
    }
}

fn sylvester_det_mod(f: &[u64], df: usize, g: &[u64], dg: usize, p: u64) -> u64 {
    let n = df + dg;
    let c = |v: &[u64], i: usize| v.get(i).copied().unwrap_or(0);
    let mut s = vec![vec![0u64; n]; n];
    for r in 0..dg {
        for i in 0..=df {
            s[r][r + i] = c(f, df - i);
        }
    }
    for r in 0..df {
        for i in 0..=dg {
            s[dg + r][r + i] = c(g, dg - i);
        }
    }
    det_mod(s, p)
}

/// Coefficients `[i][j]` of `a^i b^j` in `Res_x(F_x, F_y)`, where `F(x, y) = f(-a x - b y, x, y)`
/// for an integer form `f` of degree `d`, both derivatives taken with formal degree `d - 1`.
/// The degree in each of `a`, `b` is assumed to be below `count`.
pub(crate) fn tangency_grid_int(terms: &[([u32; 3], BigInt)], d: usize, count: usize) -> Vec<Vec<BigInt>> {
    assert!(d >= 2);
    let norm: BigInt = terms.iter().map(|(e, c)| c.abs() << e[0] as usize).sum();
    // product of the row 1-norms of the Sylvester matrix
    let need = (d as u64 - 1) * (bits(&(&norm * d)) + bits(&(&norm * (2 * d)))) + 2;
    let mut m = BigInt::one();
    let mut acc = vec![BigInt::zero(); count * count];
    for &pr in primes() {
        if m.bits() > need {
            break;
        }
        let tm: Vec<([u32; 3], u64)> = terms.iter().map(|(e, c)| (*e, reduce(c, pr))).collect();
        let dm = d as u64 % pr;
        let rows: Vec<Vec<u64>> = (0..count as u64)
            .map(|a| {
                let ys: Vec<u64> = (0..count as u64)
                    .map(|b| {
                        // powers of -b - a x
                        let mut lin = vec![vec![1u64]];
                        for k in 0..d {
                            let prev = &lin[k];
                            let mut nx = vec![0u64; prev.len() + 1];
                            for (i, &c) in prev.iter().enumerate() {
                                nx[i] = (nx[i] + mul_mod(c, pr - b % pr, pr)) % pr;
                                nx[i + 1] = (nx[i + 1] + mul_mod(c, pr - a % pr, pr)) % pr;
                            }
                            lin.push(nx);
                        }
                        let mut f = vec![0u64; d + 1];
                        for (e, c) in &tm {
                            for (i, &l) in lin[e[0] as usize].iter().enumerate() {
                                let k = i + e[1] as usize;
                                f[k] = (f[k] + mul_mod(l, *c, pr)) % pr;
                            }
                        }
                        let fx: Vec<u64> = (1..=d).map(|k| mul_mod(f[k], k as u64, pr)).collect();
                        // Euler: y F_y = d F - x F_x, at y = 1
                        let fy: Vec<u64> = (0..d).map(|k| (mul_mod(f[k], dm, pr) + pr - mul_mod(f[k], k as u64, pr)) % pr).collect();
                        sylvester_det_mod(&fx, d - 1, &fy, d - 1, pr)
                    })
                    .collect();
                interpolate_consecutive_mod(&ys, pr)
            })
            .collect();
        let mut res = vec![0u64; count * count];
        for j in 0..count {
            let col: Vec<u64> = rows.iter().map(|r| r.get(j).copied().unwrap_or(0)).collect();
            for (i, c) in interpolate_consecutive_mod(&col, pr).into_iter().enumerate() {
                res[i * count + j] = c;
            }
        }
        crt_step(&mut acc, &res, &m, pr);
        m *= pr;
    }
    assert!(m.bits() > need, "prime supply exhausted");
    acc.chunks(count).map(|r| r.to_vec()).collect()
}

fn symmetric(x: BigInt, m: &BigInt) -> BigInt {
    let r = x.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let neg = v.last().is_some_and(|c| c.is_negative());
    v.iter().map(|c| if neg { -(c / &g) } else { c / &g }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn common_factor_recovered() {
        // (x - 3)(2x + 5) and (x - 3)(x^2 + 1)
        let a = ints(&[-15, -1, 2]);
        let b = ints(&[-3, 1, -3, 1]);
        assert_eq!(int_gcd_modular(&a, &b).unwrap(), ints(&[-3, 1]));
        assert_eq!(int_gcd_modular(&ints(&[1, 1]), &ints(&[-1, 1])).unwrap(), ints(&[1]));
        assert!(is_prime(primes()[0]) && primes()[0] > 1 << 61);
    }

    #[test]
    fn modular_resultant_matches_sylvester() {
        // p = m^2 + o^2 - 1, q = m - o: Res_m = 2 o^2 - 1
        let p = vec![ints(&[-1, 0, 1]), ints(&[]), ints(&[1])];
        let q = vec![ints(&[0, -1]), ints(&[1])];
        assert_eq!(resultant_bi_int(&p, 2, &q, 1), ints(&[-1, 0, 2]));
        // huge coefficients force several primes
        let big = BigInt::from(10).pow(60);
        let p = vec![vec![big.clone(), BigInt::one()], vec![BigInt::one()]];
        let q = vec![vec![-big.clone()], vec![BigInt::one()]];
        // Res_m(m + o + B, m - B) = 2B + o
        assert_eq!(resultant_bi_int(&p, 1, &q, 1), vec![-(&big * BigInt::from(2)), -BigInt::one()]);
    }
}
