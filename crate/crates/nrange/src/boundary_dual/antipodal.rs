use nalgebra::DMatrix;
use num_traits::Zero;

use crate::kippenhahn::{KippenhahnData, ProjPointR};
use crate::poly_core::linear::cross;
use crate::poly_core::rational::{q_to_f64, Q};

/// Singular points `p` with `-p0 = lambda_k(p1, p2) = lambda_{n-k+1}(p1, p2)` and their span.
#[derive(Clone, Debug)]
pub struct AntipodalSpan {
    pub points: Vec<ProjPointR>,
    /// Projective dimension of the span, `-1` when there are no such points.
    pub dim: i32,
    /// For a line span, the point `(a, b)` with `t + a x + b y` vanishing on it. `None`
    /// when the line is `t = 0`.
    pub vperp: Option<(Q, Q)>,
    pub vperp_exact: bool,
}

pub fn antipodal_span(kd: &KippenhahnData, k: usize, singular: &[ProjPointR]) -> AntipodalSpan {
    let n = kd.n;
    let points: Vec<ProjPointR> = singular
        .iter()
        .filter(|p| {
            let c = p.to_f64();
            if c[1] == 0.0 && c[2] == 0.0 {
                return false;
            }
            let ev = kd.pair.eigenvalues(c[1], c[2]);
            let (hi, lo) = (ev[k - 1], ev[n - k]);
            let tol = 1e-7 * (1.0 + hi.abs());
            (hi - lo).abs() <= tol && (hi + c[0]).abs() <= tol
        })
        .cloned()
        .collect();
    if points.is_empty() {
        return AntipodalSpan { points, dim: -1, vperp: None, vperp_exact: false };
    }
    let rows: Vec<f64> = points
        .iter()
        .flat_map(|p| {
            let c = p.to_f64();
            let nrm = (c[0] * c[0] + c[1] * c[1] + c[2] * c[2]).sqrt();
            c.map(|x| x / nrm)
        })
        .collect();
    let m = DMatrix::from_row_slice(points.len(), 3, &rows);
    let rank = m.singular_values().iter().filter(|&&s| s > 1e-9).count();
    let dim = rank as i32 - 1;
    let (mut vperp, mut vperp_exact) = (None, false);
    if dim == 1 {
        let mut best: Option<([Q; 3], f64, bool)> = None;
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                let c = cross(&points[i].coords, &points[j].coords);
                let cf: Vec<f64> = c.iter().map(q_to_f64).collect();
                let nrm = cf.iter().map(|x| x * x).sum::<f64>().sqrt();
                let (pi, pj) = (points[i].to_f64(), points[j].to_f64());
                let scale = pi.iter().map(|x| x * x).sum::<f64>().sqrt() * pj.iter().map(|x| x * x).sum::<f64>().sqrt();
                let rel = nrm / scale;
                if best.as_ref().is_none_or(|b| rel > b.1) {
                    best = Some((c, rel, points[i].exact && points[j].exact));
                }
            }
        }
        let (c, _, ex) = best.expect("rank two needs two points");
        let cf: Vec<f64> = c.iter().map(q_to_f64).collect();
        let nrm = cf.iter().map(|x| x * x).sum::<f64>().sqrt();
        if c[0].is_zero() || cf[0].abs() <= 1e-12 * nrm {
            vperp = None;
        } else {
            let t = c[0].clone();
            vperp = Some((&c[1] / &t, &c[2] / &t));
            vperp_exact = ex;
        }
    }
    AntipodalSpan { points, dim, vperp, vperp_exact }
}
