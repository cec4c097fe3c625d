//! The Kippenhahn polynomial `det(t I + x Re(A) + y Im(A))`, multiplicities of its
//! points, affine changes of coordinates and real singular points.

mod singular;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg_pencil::{exact_corank, hermitian_parts, gauss, ComplexMatrix, GaussQ, HermitianPair};
use crate::poly_core::interp::symmetric_nodes;
use crate::poly_core::rational::{q_to_f64, Q};
use crate::poly_core::{BiPoly, HomPoly3};

pub use singular::{real_singular_points, real_singular_points_with};

#[derive(Clone, Debug)]
pub struct KippenhahnData {
    pub n: usize,
    /// `f_A`, with coefficient of `t^n` equal to one.
    pub f: HomPoly3,
    /// Squarefree part of `f_A`, scaled so the coefficient of `t^d` is one.
    pub fred: HomPoly3,
    pub pair: HermitianPair,
}

pub fn kippenhahn_poly(a: &ComplexMatrix) -> KippenhahnData {
    let pair = hermitian_parts(a);
    let n = a.n();
    let nodes = symmetric_nodes(n + 1);
    let one = Q::one();
    let vals: Vec<Vec<Q>> = nodes
        .iter()
        .map(|x| {
            nodes
                .iter()
                .map(|y| {
                    let d = gauss::det(&pair.pencil_exact(&[one.clone(), x.clone(), y.clone()]));
                    debug_assert!(d.im.is_zero());
                    d.re
                })
                .collect()
        })
        .collect();
    let p = BiPoly::interpolate_grid(&nodes, &nodes, &vals);
    let f = HomPoly3::homogenize(&p, 0, n);
    let fred = monic_in_t(&f.squarefree());
    KippenhahnData { n, f, fred, pair }
}

fn monic_in_t(f: &HomPoly3) -> HomPoly3 {
    let d = f.degree() as u32;
    let c = f.coeff([d, 0, 0]);
    f.scale(&c.recip())
}

impl KippenhahnData {
    /// `Some((a, b))` when `f_A = (t + a x + b y)^n`.
    pub fn linear_point(&self) -> Option<(Q, Q)> {
        if self.fred.degree() != 1 {
            return None;
        }
        Some((self.fred.coeff([0, 1, 0]), self.fred.coeff([0, 0, 1])))
    }

    pub fn degree_red(&self) -> usize {
        self.fred.degree().max(0) as usize
    }
}

/// Real projective point, normalized so that its first nonzero coordinate is one.
#[derive(Clone, Debug)]
pub struct ProjPointR {
    pub coords: [Q; 3],
    /// `false` when the coordinates approximate irrational numbers.
    pub exact: bool,
}

impl ProjPointR {
    pub fn new(coords: [Q; 3], exact: bool) -> Result<Self> {
        let i = (0..3)
            .find(|&i| !coords[i].is_zero())
            .ok_or_else(|| Error::Domain("projective point cannot be zero".into()))?;
        let c = coords[i].clone();
        Ok(ProjPointR { coords: std::array::from_fn(|j| &coords[j] / &c), exact })
    }

    pub fn exact(coords: [Q; 3]) -> Result<Self> {
        Self::new(coords, true)
    }

    pub fn to_f64(&self) -> [f64; 3] {
        std::array::from_fn(|i| q_to_f64(&self.coords[i]))
    }

    /// Same point up to `tol` in normalized coordinates.
    pub fn approx_eq(&self, other: &ProjPointR, tol: f64) -> bool {
        let (a, b) = (self.to_f64(), other.to_f64());
        let lead = |c: &[Q; 3]| (0..3).find(|&i| !c[i].is_zero());
        lead(&self.coords) == lead(&other.coords) && (0..3).all(|i| (a[i] - b[i]).abs() <= tol * (1.0 + a[i].abs()))
    }
}

impl PartialEq for ProjPointR {
    fn eq(&self, other: &Self) -> bool {
        if self.exact && other.exact {
            self.coords == other.coords
        } else {
            self.approx_eq(other, 1e-12)
        }
    }
}

/// Corank of `p0 I + p1 Re(A) + p2 Im(A)`, the multiplicity of `f_A` at `p`.
pub fn multiplicity_at(k: &KippenhahnData, p: &ProjPointR) -> Result<usize> {
    if p.coords[1].is_zero() && p.coords[2].is_zero() {
        return Err(Error::Domain("multiplicity needs (p1, p2) != (0, 0)".into()));
    }
    if p.exact {
        return Ok(exact_corank(&k.pair, &p.coords));
    }
    let c = p.to_f64();
    let ev = k.pair.eigenvalues_shifted(c[0], c[1], c[2]);
    let norm = ev.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let thr = 1e-9 * norm.max(f64::MIN_POSITIVE);
    Ok(ev.iter().filter(|v| v.abs() <= thr).count())
}

/// `L(a, b) = (u01 + u11 a + u21 b, u02 + u12 a + u22 b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    pub u01: Q,
    pub u02: Q,
    pub u11: Q,
    pub u12: Q,
    pub u21: Q,
    pub u22: Q,
}

impl AffineMap {
    pub fn new(u01: Q, u02: Q, u11: Q, u12: Q, u21: Q, u22: Q) -> Result<Self> {
        let m = AffineMap { u01, u02, u11, u12, u21, u22 };
        if m.det().is_zero() {
            return Err(Error::Domain("affine map is not invertible".into()));
        }
        Ok(m)
    }

    pub fn identity() -> Self {
        AffineMap {
            u01: Q::zero(),
            u02: Q::zero(),
            u11: Q::one(),
            u12: Q::zero(),
            u21: Q::zero(),
            u22: Q::one(),
        }
    }

    pub fn det(&self) -> Q {
        &self.u11 * &self.u22 - &self.u21 * &self.u12
    }

    pub fn apply(&self, a: &Q, b: &Q) -> (Q, Q) {
        (&self.u01 + &self.u11 * a + &self.u21 * b, &self.u02 + &self.u12 * a + &self.u22 * b)
    }

    pub fn apply_f64(&self, a: f64, b: f64) -> (f64, f64) {
        let u = |x: &Q| q_to_f64(x);
        (
            u(&self.u01) + u(&self.u11) * a + u(&self.u21) * b,
            u(&self.u02) + u(&self.u12) * a + u(&self.u22) * b,
        )
    }

    pub fn inverse(&self) -> AffineMap {
        let d = self.det();
        let (i11, i21) = (&self.u22 / &d, -&self.u21 / &d);
        let (i12, i22) = (-&self.u12 / &d, &self.u11 / &d);
        let i01 = -(&i11 * &self.u01 + &i21 * &self.u02);
        let i02 = -(&i12 * &self.u01 + &i22 * &self.u02);
        AffineMap { u01: i01, u02: i02, u11: i11, u12: i12, u21: i21, u22: i22 }
    }

    /// Linear part applied to a direction.
    pub fn apply_linear_f64(&self, a: f64, b: f64) -> (f64, f64) {
        let u = |x: &Q| q_to_f64(x);
        (u(&self.u11) * a + u(&self.u21) * b, u(&self.u12) * a + u(&self.u22) * b)
    }
}

/// `(u01 + i u02) I + (u11 + i u12) Re(A) + (u21 + i u22) Im(A)`.
pub fn apply_affine(a: &ComplexMatrix, l: &AffineMap) -> ComplexMatrix {
    let h = hermitian_parts(a);
    let n = a.n();
    let shift = ComplexMatrix::identity(n).scale(&GaussQ::new(l.u01.clone(), l.u02.clone()));
    let r = h.re.scale(&GaussQ::new(l.u11.clone(), l.u12.clone()));
    let i = h.im.scale(&GaussQ::new(l.u21.clone(), l.u22.clone()));
    shift.add(&r).and_then(|m| m.add(&i)).expect("same size").with_mode(a.mode())
}

/// `f(t + u01 x + u02 y, u11 x + u12 y, u21 x + u22 y)`.
pub fn transform_poly(f: &HomPoly3, l: &AffineMap) -> HomPoly3 {
    let z = Q::zero;
    f.substitute_linear(&[
        [Q::one(), l.u01.clone(), l.u02.clone()],
        [z(), l.u11.clone(), l.u12.clone()],
        [z(), l.u21.clone(), l.u22.clone()],
    ])
}

/// Order of vanishing at `s = 0` of `s -> f(p + s q)`; coefficients below `rel_tol`
/// relative to the largest one count as zero.
pub fn vanishing_order(f: &HomPoly3, p: &[Q; 3], q: &[Q; 3], rel_tol: f64) -> usize {
    let r = f.restrict(p, q);
    let scale = q_to_f64(&r.max_abs_coeff());
    r.coeffs()
        .iter()
        .position(|c| q_to_f64(&c.abs()) > rel_tol * scale)
        .unwrap_or(r.coeffs().len())
}
