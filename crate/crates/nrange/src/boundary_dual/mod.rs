//! The boundary polynomial `g_A`, tangent lines through singular points, antipodal
//! singular points and tritangent candidates.
//!
//! For a point `(a, b)` the line `t + a x + b y = 0` meets the curve in the binary form
//! `F(x, y) = fred(-a x - b y, x, y)`. Its discriminant `D(a, b) = Res(F_x, F_y)` vanishes
//! exactly on the lines tangent to the curve and on the lines through its singular
//! points; the latter appear with multiplicity at least two. `g_A` is the squarefree
//! part of `D`.

mod antipodal;
mod tangents;
mod tritangent;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::kippenhahn::KippenhahnData;
use crate::poly_core::modular::tangency_grid_int;
use crate::poly_core::rational::{lcm_of_denominators, qi, Q};
use crate::poly_core::resultant::resultant_formal;
use crate::poly_core::{BiPoly, HomPoly3, UniPoly};

pub use antipodal::{antipodal_span, AntipodalSpan};
pub use tangents::{singularity_tangents, TangentPoint, TangentSet, TangentSource};
pub use tritangent::{singular_points_in_box, tritangent_candidates, Candidate, CandidateSource};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComponentKind {
    /// Dual curves of the non-linear components of the curve.
    DualCurve,
    /// Product of the lines `p0 + p1 a + p2 b` over the singular points `p`, real or complex.
    SingularLines,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryPoly {
    /// Squarefree, integral, content one, leading coefficient positive.
    pub g: BiPoly,
    pub dual: BiPoly,
    pub lines: BiPoly,
}

impl BoundaryPoly {
    pub fn components(&self) -> Vec<(ComponentKind, &BiPoly)> {
        let mut v = Vec::new();
        if !self.dual.is_constant() {
            v.push((ComponentKind::DualCurve, &self.dual));
        }
        if !self.lines.is_constant() {
            v.push((ComponentKind::SingularLines, &self.lines));
        }
        v
    }

    pub fn eval_f64(&self, a: f64, b: f64) -> f64 {
        self.g.eval_f64(a, b)
    }

    /// `|g(a, b)|` divided by the sum of the absolute values of its terms.
    pub fn relative_value(&self, a: f64, b: f64) -> f64 {
        relative_value(&self.g, a, b)
    }
}

pub fn relative_value(g: &BiPoly, a: f64, b: f64) -> f64 {
    let s = g.abs_eval_f64(a, b);
    if s == 0.0 {
        0.0
    } else {
        g.eval_f64(a, b).abs() / s
    }
}

/// `x -> F(x, 1)` for the line `t + a x + b y`.
fn line_restriction(fred: &HomPoly3, a: &Q, b: &Q) -> UniPoly {
    fred.restrict(&[-b, Q::zero(), Q::one()], &[-a, Q::one(), Q::zero()])
}

/// `D(a, b) = Res(F_x(x, 1), F_y(x, 1))` with both of formal degree `d - 1`.
pub fn tangency_discriminant_at(fred: &HomPoly3, a: &Q, b: &Q) -> Q {
    let d = fred.degree() as usize;
    let f = line_restriction(fred, a, b);
    let fx = f.derivative();
    // Euler: x F_x + y F_y = d F
    let xfx = &UniPoly::monomial(Q::one(), 1) * &fx;
    let fy = &f.scale(&qi(d as i64)) - &xfx;
    resultant_formal(&fx, d - 1, &fy, d - 1)
}

fn discriminant_grid(fred: &HomPoly3, bound: usize) -> BiPoly {
    let d = fred.degree() as usize;
    let den = lcm_of_denominators(fred.terms().map(|(_, c)| c));
    let lq = Q::from_integer(den.clone());
    let terms: Vec<([u32; 3], BigInt)> = fred.terms().map(|(e, c)| (*e, (c * &lq).to_integer())).collect();
    let grid = tangency_grid_int(&terms, d, bound + 1);
    // scaling the form by den scales the resultant by den^(2d - 2)
    let scale = Q::from_integer(den.pow(2 * d as u32 - 2));
    let mut out = Vec::new();
    for (i, row) in grid.into_iter().enumerate() {
        for (j, c) in row.into_iter().enumerate() {
            if !c.is_zero() {
                out.push((i, j, Q::from_integer(c) / &scale));
            }
        }
    }
    BiPoly::from_terms(out)
}

/// `D(a, b)` as a polynomial.
pub fn tangency_discriminant(fred: &HomPoly3) -> BiPoly {
    let d = fred.degree() as usize;
    let mut bound = d * (d - 1);
    loop {
        let dd = discriminant_grid(fred, bound);
        let probe = [(qi(bound as i64 + 3), qi(-(bound as i64) - 7)), (qi(-5), qi(bound as i64 + 11))];
        if probe.iter().all(|(a, b)| dd.eval(a, b) == tangency_discriminant_at(fred, a, b)) {
            return dd;
        }
        bound *= 2;
    }
}

/// The boundary polynomial of the rank-k numerical ranges.
pub fn boundary_poly(kd: &KippenhahnData) -> Result<BoundaryPoly> {
    boundary_poly_of(&kd.fred)
}

pub fn boundary_poly_of(fred: &HomPoly3) -> Result<BoundaryPoly> {
    if fred.degree() <= 1 {
        return Err(Error::Domain(
            "Kippenhahn polynomial is a power of a linear form; the range is a single point".into(),
        ));
    }
    let dd = tangency_discriminant(fred);
    if dd.is_zero() {
        return Err(Error::Inconsistency("tangency discriminant vanishes identically".into()));
    }
    let g = dd.squarefree();
    let rest = dd.exact_div(&g).ok_or_else(|| Error::Inconsistency("squarefree part does not divide".into()))?;
    let lines = rest.squarefree();
    let dual = g
        .exact_div(&lines)
        .ok_or_else(|| Error::Inconsistency("singular lines do not divide g".into()))?
        .normalized();
    Ok(BoundaryPoly { g, dual, lines })
}
