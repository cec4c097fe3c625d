use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::kippenhahn::{KippenhahnData, ProjPointR};
use crate::poly_core::rational::{pow10_inv, q_to_f64, rational_approx, Q};
use crate::poly_core::resultant::resultant_bi_formal;
use crate::poly_core::roots::real_roots;
use crate::poly_core::{BiPoly, HomPoly3, UniPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TangentSource {
    /// Factor of the lowest-degree part at the point: extra vanishing order there.
    LowestPart,
    /// Repeated root of the restriction away from the point.
    Discriminant,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TangentPoint {
    pub a: Q,
    pub b: Q,
    pub exact: bool,
    pub source: TangentSource,
}

impl TangentPoint {
    pub fn to_f64(&self) -> (f64, f64) {
        (q_to_f64(&self.a), q_to_f64(&self.b))
    }
}

/// Lines `t + a x + b y` through a singular point that are tangent there or elsewhere.
#[derive(Clone, Debug)]
pub struct TangentSet {
    pub origin: ProjPointR,
    /// Multiplicity of the reduced curve at the origin.
    pub multiplicity: usize,
    pub points: Vec<TangentPoint>,
}

fn on_curve(fred: &HomPoly3, p: &ProjPointR) -> bool {
    if p.exact {
        fred.eval(&p.coords).is_zero()
    } else {
        let c = p.to_f64();
        let v = fred.eval(&p.coords);
        q_to_f64(&v).abs() <= 1e-20 * (1.0 + fred.abs_eval_f64(c))
    }
}

pub fn singularity_tangents(kd: &KippenhahnData, p: &ProjPointR) -> Result<TangentSet> {
    let fred = &kd.fred;
    let [p0, p1, p2] = &p.coords;
    if p1.is_zero() && p2.is_zero() {
        return Err(Error::Domain("point [1:0:0] is never on the curve".into()));
    }
    if !on_curve(fred, p) {
        return Err(Error::Domain("point is not on the curve".into()));
    }
    // coordinates with p at [0:0:1]: (t, x, y) = (T + p0 Y, p2 X + p1 Y, -p1 X + p2 Y)
    let z = Q::zero;
    let big = fred.substitute_linear(&[
        [Q::one(), z(), p0.clone()],
        [z(), p2.clone(), p1.clone()],
        [z(), -p1, p2.clone()],
    ]);
    let low_deg = |e: &[u32; 3]| (e[0] + e[1]) as usize;
    let m = if p.exact {
        big.terms().map(|(e, _)| low_deg(e)).min().unwrap_or(0)
    } else {
        let scale = q_to_f64(&big.max_abs_coeff());
        (0..=fred.degree() as usize)
            .find(|&j| {
                big.terms()
                    .filter(|(e, _)| low_deg(e) == j)
                    .any(|(_, c)| q_to_f64(c).abs() > 1e-20 * scale)
            })
            .unwrap_or(0)
    };
    let big = HomPoly3::from_terms(big.terms().filter(|(e, _)| low_deg(e) >= m).map(|(e, c)| (*e, c.clone())));
    let sign = |e0: u32, c: &Q| if e0 % 2 == 1 { -c } else { c.clone() };
    // h_m(-c, 1)
    let mut hv = vec![Q::zero(); fred.degree() as usize + 1];
    for (e, c) in big.terms().filter(|(e, _)| low_deg(e) == m) {
        hv[e[0] as usize] += sign(e[0], c);
    }
    let hm = UniPoly::new(hv);
    // P(c, y) = F(-c, 1, y), main variable y
    let pp = BiPoly::from_terms(big.terms().map(|(e, c)| (e[2] as usize, e[0] as usize, sign(e[0], c))));
    let e = pp.deg_main().max(0) as usize;
    let disc = if e >= 2 {
        resultant_bi_formal(&pp, e, &pp.partial_main(), e - 1)
    } else {
        UniPoly::zero()
    };
    let prec = pow10_inv(30);
    let den = p1 * p1 + p2 * p2;
    let mut points: Vec<TangentPoint> = Vec::new();
    for (poly, source) in [(&hm, TangentSource::LowestPart), (&disc, TangentSource::Discriminant)] {
        if poly.deg() <= 0 {
            continue;
        }
        for iv in real_roots(poly, &prec)?.intervals {
            let mut c = iv.mid();
            let mut exact = false;
            if p.exact {
                let r = rational_approx(&c, &BigInt::from(1_000_000));
                if poly.eval(&r).is_zero() {
                    c = r;
                    exact = true;
                }
            }
            let a = (p2 * &c - p1 * p0) / &den;
            let b = (-(p1 * &c) - p2 * p0) / &den;
            let tp = TangentPoint { a, b, exact, source };
            let (af, bf) = tp.to_f64();
            let dup = points.iter().any(|o| {
                let (x, y) = o.to_f64();
                (x - af).abs() <= 1e-12 * (1.0 + af.abs()) && (y - bf).abs() <= 1e-12 * (1.0 + bf.abs())
            });
            if !dup {
                points.push(tp);
            }
        }
    }
    points.sort_by(|x, y| x.to_f64().partial_cmp(&y.to_f64()).unwrap_or(std::cmp::Ordering::Equal));
    Ok(TangentSet { origin: p.clone(), multiplicity: m, points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kippenhahn::kippenhahn_poly;
    use crate::linalg_pencil::ComplexMatrix;
    use crate::poly_core::rational::qi;

    #[test]
    fn two_point_spectrum() {
        let kd = kippenhahn_poly(&ComplexMatrix::diag_int(&[(1, 0), (-1, 0)]));
        let p = ProjPointR::exact([qi(0), qi(0), qi(1)]).unwrap();
        let ts = singularity_tangents(&kd, &p).unwrap();
        assert_eq!(ts.multiplicity, 2);
        let got: Vec<(Q, Q)> = ts.points.iter().map(|t| (t.a.clone(), t.b.clone())).collect();
        assert_eq!(got, vec![(qi(-1), qi(0)), (qi(1), qi(0))]);
        assert!(ts.points.iter().all(|t| t.exact && t.source == TangentSource::LowestPart));
        let off = ProjPointR::exact([qi(1), qi(0), qi(1)]).unwrap();
        assert!(singularity_tangents(&kd, &off).is_err());
    }
}
