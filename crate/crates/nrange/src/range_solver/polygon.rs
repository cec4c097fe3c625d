use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg_pencil::{sample_ok, HermitianPair};

/// Outer approximation of the rank-k range by `m` supporting halfplanes
/// `a cos(theta) + b sin(theta) <= lambda_k(theta)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SupportPolygon {
    /// Counterclockwise; empty when the halfplanes have no common point.
    pub vertices: Vec<(f64, f64)>,
    pub thetas: Vec<f64>,
    /// `lambda_k(theta)` at each angle.
    pub support: Vec<f64>,
}

fn clip(poly: &[(f64, f64)], c: f64, s: f64, h: f64) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(poly.len() + 1);
    let val = |p: &(f64, f64)| p.0 * c + p.1 * s - h;
    for i in 0..poly.len() {
        let (p, q) = (poly[i], poly[(i + 1) % poly.len()]);
        let (vp, vq) = (val(&p), val(&q));
        if vp <= 0.0 {
            out.push(p);
        }
        if (vp < 0.0 && vq > 0.0) || (vp > 0.0 && vq < 0.0) {
            let t = vp / (vp - vq);
            out.push((p.0 + t * (q.0 - p.0), p.1 + t * (q.1 - p.1)));
        }
    }
    out
}

pub fn halfplane_polygon(pair: &HermitianPair, k: usize, m: usize) -> Result<SupportPolygon> {
    if m < 8 {
        return Err(Error::Parameter(format!("need at least 8 halfplanes, got {}", m)));
    }
    let samples = sample_ok(pair, k, m)?;
    let scale = samples.iter().fold(1e-300f64, |r, s| r.max(s.point[0].abs()));
    let r = 4.0 * scale + 1.0;
    let mut poly = vec![(-r, -r), (r, -r), (r, r), (-r, r)];
    let inflate = 1e-12 * scale;
    for s in &samples {
        poly = clip(&poly, -s.point[1], -s.point[2], s.point[0] + inflate);
        if poly.is_empty() {
            break;
        }
    }
    Ok(SupportPolygon {
        vertices: poly,
        thetas: samples.iter().map(|s| s.theta).collect(),
        support: samples.iter().map(|s| s.point[0]).collect(),
    })
}

impl SupportPolygon {
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn area(&self) -> f64 {
        let v = &self.vertices;
        let mut s = 0.0;
        for i in 0..v.len() {
            let (p, q) = (v[i], v[(i + 1) % v.len()]);
            s += p.0 * q.1 - q.0 * p.1;
        }
        (s / 2.0).abs()
    }

    pub fn diameter(&self) -> f64 {
        let v = &self.vertices;
        let mut d = 0.0f64;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                d = d.max(((v[i].0 - v[j].0).powi(2) + (v[i].1 - v[j].1).powi(2)).sqrt());
            }
        }
        d
    }

    pub fn centroid(&self) -> Option<(f64, f64)> {
        if self.vertices.is_empty() {
            return None;
        }
        let n = self.vertices.len() as f64;
        let (sa, sb) = self.vertices.iter().fold((0.0, 0.0), |(x, y), p| (x + p.0, y + p.1));
        Some((sa / n, sb / n))
    }

    /// `[a_min, a_max, b_min, b_max]`.
    pub fn bounding_box(&self) -> Option<[f64; 4]> {
        if self.vertices.is_empty() {
            return None;
        }
        let mut bx = [f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY];
        for &(a, b) in &self.vertices {
            bx = [bx[0].min(a), bx[1].max(a), bx[2].min(b), bx[3].max(b)];
        }
        Some(bx)
    }

    /// Largest violation of the sampled halfplanes at `(a, b)`; nonpositive inside.
    pub fn violation(&self, a: f64, b: f64) -> f64 {
        self.thetas
            .iter()
            .zip(&self.support)
            .map(|(t, h)| a * t.cos() + b * t.sin() - h)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Dimension read off the polygon: area above `eps` gives 2, diameter above `eps`
    /// gives 1, any other nonempty polygon gives 0, and the empty polygon gives -1.
    pub fn classify(&self, eps: f64) -> i32 {
        if self.is_empty() {
            -1
        } else if self.area() > eps {
            2
        } else if self.diameter() > eps {
            1
        } else {
            0
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery;
    use crate::linalg_pencil::{hermitian_parts, ComplexMatrix};

    #[test]
    fn nilpotent_rank_two_is_a_point() {
        let p = halfplane_polygon(&hermitian_parts(&gallery::ok_plane()), 2, 720).unwrap();
        assert!(!p.is_empty() && p.diameter() < 1e-6);
        let (a, b) = p.centroid().unwrap();
        assert!(a.abs() < 1e-6 && b.abs() < 1e-6);
        assert_eq!(p.classify(1e-5), 0);
    }

    #[test]
    fn two_point_spectrum_is_a_segment() {
        let h = hermitian_parts(&ComplexMatrix::diag_int(&[(1, 0), (-1, 0)]));
        let p = halfplane_polygon(&h, 1, 720).unwrap();
        assert!((p.diameter() - 2.0).abs() < 1e-6);
        assert_eq!(p.classify(1e-5), 1);
        assert!(halfplane_polygon(&h, 1, 7).is_err());
    }

    #[test]
    fn noncollinear_spectrum_rank_two_is_empty() {
        let h = hermitian_parts(&ComplexMatrix::diag_int(&[(0, 0), (1, 0), (0, 1)]));
        let p = halfplane_polygon(&h, 2, 720).unwrap();
        assert_eq!(p.classify(1e-5), -1);
        let full = halfplane_polygon(&h, 1, 720).unwrap();
        assert!((full.area() - 0.5).abs() < 1e-4);
    }
}
