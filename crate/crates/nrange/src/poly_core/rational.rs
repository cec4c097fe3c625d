//! Helpers around arbitrary-precision rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Exact binary value of a finite double.
pub fn q_from_f64(x: f64) -> Q {
    Q::from_float(x).unwrap_or_else(Q::zero)
}

pub fn q_to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Parses `p/q`, an integer, or a decimal literal such as `-0.125` or `1e-3`.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Q::new(n, d));
    }
    if let Ok(n) = s.parse::<BigInt>() {
        return Some(Q::from_integer(n));
    }
    parse_decimal(s)
}

fn parse_decimal(s: &str) -> Option<Q> {
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().ok()?),
        None => (s, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (int_part, frac_part) = mant.split_once('.').unwrap_or((mant, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{}{}", int_part, frac_part).parse().ok()?;
    let scale = exp - frac_part.len() as i64;
    let ten = BigInt::from(10);
    let mut v = if scale >= 0 {
        Q::from_integer(digits * num_traits::pow(ten, scale as usize))
    } else {
        Q::new(digits, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        v = -v;
    }
    Some(v)
}

pub fn lcm_of_denominators<'a>(xs: impl IntoIterator<Item = &'a Q>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

pub fn gcd_of_numerators<'a>(xs: impl IntoIterator<Item = &'a Q>) -> BigInt {
    xs.into_iter().fold(BigInt::zero(), |acc, x| acc.gcd(x.numer()))
}

/// Best rational approximation with denominator at most `max_den` (continued fractions).
pub fn rational_approx(x: &Q, max_den: &BigInt) -> Q {
    let (mut p0, mut q0, mut p1, mut q1) = (BigInt::zero(), BigInt::one(), BigInt::one(), BigInt::zero());
    let mut r = x.clone();
    loop {
        let a = r.floor().to_integer();
        let p2 = &a * &p1 + &p0;
        let q2 = &a * &q1 + &q0;
        if &q2 > max_den {
            break;
        }
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
        let frac = &r - Q::from_integer(a);
        if frac.is_zero() {
            break;
        }
        r = frac.recip();
    }
    if q1.is_zero() {
        return x.round();
    }
    Q::new(p1, q1)
}

/// Rational with at most `digits` significant binary digits after the point, close to `x`.
pub fn round_to_bits(x: &Q, bits: u32) -> Q {
    let scale = BigInt::one() << bits;
    let n = (x * Q::from_integer(scale.clone())).round().to_integer();
    Q::new(n, scale)
}

pub fn abs_max<'a>(xs: impl IntoIterator<Item = &'a Q>) -> Q {
    xs.into_iter().fold(Q::zero(), |m, x| if x.abs() > m { x.abs() } else { m })
}

pub fn pow10_inv(e: u32) -> Q {
    Q::new(BigInt::one(), num_traits::pow(BigInt::from(10), e as usize))
}

pub fn sign(x: &Q) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}
