//! Dimension and witnesses of the rank-k numerical range.
//!
//! Below the middle index the antipodal singular points decide which branch runs: a
//! spanning set of dimension two gives the empty set, a line or a point restricts the range
//! to a point or a segment, and otherwise the boundary polynomial supplies interior
//! representatives. At or above the middle index only linear factors of high multiplicity
//! can carry the range.

mod components;
mod polygon;

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::boundary_dual::{
    antipodal_span, boundary_poly, singularity_tangents, tritangent_candidates, BoundaryPoly,
};
use crate::error::{Error, Result};
use crate::kippenhahn::{kippenhahn_poly, real_singular_points, KippenhahnData, ProjPointR};
use crate::linalg_pencil::{ComplexMatrix, Mode};
use crate::membership::{membership_test_approx, membership_test_exact, MembershipVerdict, DEFAULT_TOL};
use crate::poly_core::linear::linear_factors;
use crate::poly_core::rational::{q_from_f64, q_to_f64, rational_approx, Q};

pub use components::{bounded_component_reps, sweep};
pub use polygon::{halfplane_polygon, SupportPolygon};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolverConfig {
    pub tol: f64,
    /// Halfplanes in the outer polygon used for prefiltering and plots.
    pub samples: usize,
    /// Largest degree of `g_A` for which representatives come from the exact sweep.
    pub exact_cad_max_degree: usize,
    /// Horizontal lines in the sweep used above that degree.
    pub sweep_lines: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { tol: DEFAULT_TOL, samples: 720, exact_cad_max_degree: 12, sweep_lines: 9 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    LinearPower,
    HighK,
    AntipodalPlane,
    AntipodalLine,
    AntipodalPoint,
    BoundaryComponents,
    Tritangent,
    EmptyPolygon,
}

/// A point that passed or failed the membership filter.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub a: Q,
    pub b: Q,
    /// `false` when `a`, `b` approximate irrational numbers.
    pub exact: bool,
    pub margin: f64,
    pub certified: bool,
    /// Margin stayed inside the tolerance band after the tighter retest.
    pub flagged: bool,
}

impl Witness {
    pub fn to_f64(&self) -> (f64, f64) {
        (q_to_f64(&self.a), q_to_f64(&self.b))
    }
}

#[derive(Clone, Debug)]
pub struct RangeResult {
    pub k: usize,
    pub dim: i32,
    pub point: Option<Witness>,
    pub endpoints: Option<[Witness; 2]>,
    pub g: Option<BoundaryPoly>,
    pub representatives: Vec<Witness>,
    pub branch: Branch,
    pub diagnostics: Vec<String>,
    /// Some candidate had a margin inside the tolerance band.
    pub ambiguous: bool,
    /// Representatives came from the line sweep rather than the exact decomposition.
    pub heuristic: bool,
}

impl RangeResult {
    fn new(k: usize, branch: Branch) -> Self {
        RangeResult {
            k,
            dim: -1,
            point: None,
            endpoints: None,
            g: None,
            representatives: Vec::new(),
            branch,
            diagnostics: Vec::new(),
            ambiguous: false,
            heuristic: false,
        }
    }

    fn with_point(mut self, w: Witness) -> Self {
        self.dim = 0;
        self.point = Some(w);
        self
    }

    pub fn witnesses(&self) -> Vec<&Witness> {
        let mut v: Vec<&Witness> = self.point.iter().collect();
        if let Some(e) = &self.endpoints {
            v.extend(e.iter());
        }
        v.extend(self.representatives.iter());
        v
    }
}

struct Assessed {
    witness: Witness,
    member: bool,
}

/// Computes rank-k ranges of one matrix, sharing the curve data between values of `k`.
pub struct RangeSolver {
    kd: KippenhahnData,
    config: SolverConfig,
    mode: Mode,
    radius: f64,
    singular: OnceLock<Result<Vec<ProjPointR>>>,
    boundary: OnceLock<Result<BoundaryPoly>>,
    exact_reps: OnceLock<Result<Vec<(Q, Q)>>>,
}

impl RangeSolver {
    pub fn new(a: &ComplexMatrix, config: SolverConfig) -> Self {
        Self::from_data(kippenhahn_poly(a), a.mode(), config)
    }

    pub fn from_data(kd: KippenhahnData, mode: Mode, config: SolverConfig) -> Self {
        let radius = kd.pair.numerical_radius(360);
        RangeSolver { kd, config, mode, radius, singular: OnceLock::new(), boundary: OnceLock::new(), exact_reps: OnceLock::new() }
    }

    pub fn data(&self) -> &KippenhahnData {
        &self.kd
    }

    pub fn config(&self) -> &SolverConfig {
        &self.config
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Length scale for comparing dimensions with the outer polygon.
    pub fn epsilon(&self) -> f64 {
        1e-5 * self.radius.max(1e-300)
    }

    pub fn singular_points(&self) -> Result<&[ProjPointR]> {
        self.singular
            .get_or_init(|| real_singular_points(&self.kd))
            .as_ref()
            .map(|v| v.as_slice())
            .map_err(Clone::clone)
    }

    pub fn boundary(&self) -> Result<&BoundaryPoly> {
        self.boundary.get_or_init(|| boundary_poly(&self.kd)).as_ref().map_err(Clone::clone)
    }

    pub fn polygon(&self, k: usize, m: usize) -> Result<SupportPolygon> {
        halfplane_polygon(&self.kd.pair, k, m)
    }

    fn is_high(&self, k: usize) -> bool {
        2 * k > self.kd.n
    }

    fn test(&self, k: usize, a: &Q, b: &Q, exact: bool) -> Result<MembershipVerdict> {
        if exact && self.mode == Mode::Exact {
            membership_test_exact(&self.kd, k, a, b, self.config.tol)
        } else {
            membership_test_approx(&self.kd, k, a, b, self.config.tol)
        }
    }

    fn assess(&self, k: usize, a: &Q, b: &Q, exact: bool) -> Result<Assessed> {
        let tol = self.config.tol;
        let v = self.test(k, a, b, exact)?;
        let noise = 1e-12 * (1.0 + self.radius);
        let m = v.margin;
        let (member, flagged) = if v.certified {
            (v.member, false)
        } else if m.abs() <= noise {
            (true, false)
        } else if m.abs() <= tol / 10.0 {
            (m >= -tol, true)
        } else {
            (m > 0.0, false)
        };
        Ok(Assessed {
            witness: Witness { a: a.clone(), b: b.clone(), exact, margin: m, certified: v.certified, flagged },
            member,
        })
    }

    fn assess_all(&self, k: usize, cands: &[(Q, Q, bool)]) -> Result<Vec<Assessed>> {
        cands.par_iter().map(|(a, b, e)| self.assess(k, a, b, *e)).collect()
    }

    fn note_flags(res: &mut RangeResult, assessed: &[Assessed]) {
        for x in assessed.iter().filter(|x| x.witness.flagged) {
            let (a, b) = x.witness.to_f64();
            res.ambiguous = true;
            res.diagnostics.push(format!("unresolved margin {:.3e} at ({:.12}, {:.12})", x.witness.margin, a, b));
        }
    }

    /// Dispatches on `k`: the low-k algorithm below the middle index, the linear-factor
    /// algorithm from it on.
    pub fn compute(&self, k: usize) -> Result<RangeResult> {
        self.kd.pair.check_index(k)?;
        if let Some(res) = self.linear_power(k)? {
            return Ok(res);
        }
        if self.is_high(k) {
            self.high_k(k)
        } else {
            self.low_k(k)
        }
    }

    pub fn compute_high_k(&self, k: usize) -> Result<RangeResult> {
        self.kd.pair.check_index(k)?;
        if !self.is_high(k) {
            return Err(Error::Parameter(format!("k = {} is below (n + 1) / 2 for n = {}", k, self.kd.n)));
        }
        if let Some(res) = self.linear_power(k)? {
            return Ok(res);
        }
        self.high_k(k)
    }

    fn linear_power(&self, k: usize) -> Result<Option<RangeResult>> {
        let Some((a, b)) = self.kd.linear_point() else { return Ok(None) };
        let x = self.assess(k, &a, &b, true)?;
        let mut res = RangeResult::new(k, Branch::LinearPower);
        res.diagnostics.push("Kippenhahn polynomial is a power of a linear form".into());
        if !x.member {
            return Err(Error::Inconsistency("scalar matrix fails membership at its eigenvalue".into()));
        }
        Ok(Some(res.with_point(x.witness)))
    }

    fn high_k(&self, k: usize) -> Result<RangeResult> {
        let n = self.kd.n;
        let need = 2 * k - n;
        let mut res = RangeResult::new(k, Branch::HighK);
        let factors = linear_factors(&self.kd.f);
        let cands: Vec<(Q, Q, bool)> = factors
            .iter()
            .filter(|lf| lf.multiplicity >= need)
            .filter_map(|lf| lf.point().map(|(a, b)| (a, b, lf.exact)))
            .collect();
        res.diagnostics.push(format!(
            "{} real linear factors, {} with multiplicity at least {}",
            factors.len(),
            cands.len(),
            need
        ));
        let assessed = self.assess_all(k, &cands)?;
        Self::note_flags(&mut res, &assessed);
        let passing: Vec<Witness> = dedup(assessed.into_iter().filter(|x| x.member).map(|x| x.witness).collect());
        match passing.len() {
            0 => Ok(res),
            1 => Ok(res.with_point(passing.into_iter().next().unwrap())),
            m => Err(Error::Inconsistency(format!("{} distinct linear factors pass membership", m))),
        }
    }

    fn low_k(&self, k: usize) -> Result<RangeResult> {
        let sing = self.singular_points()?;
        let span = antipodal_span(&self.kd, k, sing);
        let mut diag = vec![format!(
            "{} real singular points, {} antipodal, span dimension {}",
            sing.len(),
            span.points.len(),
            span.dim
        )];
        let mut res = match span.dim {
            2 => RangeResult::new(k, Branch::AntipodalPlane),
            1 => {
                let mut res = RangeResult::new(k, Branch::AntipodalLine);
                if let Some((a, b)) = &span.vperp {
                    let x = self.assess(k, a, b, span.vperp_exact)?;
                    Self::note_flags(&mut res, std::slice::from_ref(&x));
                    if x.member {
                        res = res.with_point(x.witness);
                    }
                } else {
                    diag.push("antipodal points span the line at infinity".into());
                }
                res
            }
            0 => self.segment_branch(k, &span.points[0])?,
            _ => self.boundary_branch(k)?,
        };
        diag.append(&mut res.diagnostics);
        res.diagnostics = diag;
        Ok(res)
    }

    fn segment_branch(&self, k: usize, p: &ProjPointR) -> Result<RangeResult> {
        let mut res = RangeResult::new(k, Branch::AntipodalPoint);
        let ts = singularity_tangents(&self.kd, p)?;
        let cands: Vec<(Q, Q, bool)> = ts.points.iter().map(|t| (t.a.clone(), t.b.clone(), t.exact && p.exact)).collect();
        res.diagnostics.push(format!("{} tangent lines through the antipodal point", cands.len()));
        let assessed = self.assess_all(k, &cands)?;
        Self::note_flags(&mut res, &assessed);
        let passing: Vec<Witness> = assessed.into_iter().filter(|x| x.member).map(|x| x.witness).collect();
        let pf = p.to_f64();
        let scale = 1.0 + self.radius;
        for w in &passing {
            let (a, b) = w.to_f64();
            if (pf[0] + pf[1] * a + pf[2] * b).abs() > 1e-8 * scale * (1.0 + pf[1].abs() + pf[2].abs()) {
                return Err(Error::Inconsistency("tangent point off the antipodal line".into()));
            }
        }
        let proj = |w: &Witness| {
            let (a, b) = w.to_f64();
            -pf[2] * a + pf[1] * b
        };
        let lo = passing.iter().min_by(|x, y| proj(x).total_cmp(&proj(y)));
        let hi = passing.iter().max_by(|x, y| proj(x).total_cmp(&proj(y)));
        match (lo, hi) {
            (Some(lo), Some(hi)) if (proj(hi) - proj(lo)).abs() > 1e-12 * scale => {
                res.dim = 1;
                let (mut lo, mut hi) = (lo.clone(), hi.clone());
                if hi.to_f64() < lo.to_f64() {
                    std::mem::swap(&mut lo, &mut hi);
                }
                res.endpoints = Some([lo, hi]);
                Ok(res)
            }
            (Some(lo), _) => Ok(res.with_point(lo.clone())),
            _ => Ok(res),
        }
    }

    /// Candidate sources in the order they are tried. Exact decomposition gives one batch;
    /// above the degree limit the polygon centroid comes first, then the sweep lines
    /// nearest to it.
    fn candidate_sources(&self, g: &BoundaryPoly, poly: &SupportPolygon) -> Result<(Vec<Source>, bool)> {
        if g.g.total_degree() as usize <= self.config.exact_cad_max_degree {
            let reps = self.exact_reps.get_or_init(|| bounded_component_reps(&g.g)).as_ref().map_err(Clone::clone)?;
            return Ok((vec![Source::Points(reps.clone())], false));
        }
        let [_, _, b0, b1] = poly.bounding_box().expect("nonempty polygon");
        let den = BigInt::from(1u64 << 20);
        let approx = |x: f64| rational_approx(&q_from_f64(x), &den);
        let l = self.config.sweep_lines.max(1);
        let mut bs: Vec<f64> = (0..l).map(|j| b0 + (b1 - b0) * (j as f64 + 0.5) / l as f64).collect();
        let mut out = Vec::new();
        if let Some((a, b)) = poly.centroid() {
            let (qa, qb) = (approx(a), approx(b));
            if !g.g.eval(&qa, &qb).is_zero() {
                out.push(Source::Points(vec![(qa, qb)]));
            }
            bs.sort_by(|x, y| (x - b).abs().total_cmp(&(y - b).abs()));
            bs.insert(0, b);
        }
        out.extend(bs.into_iter().map(|b| Source::Line(approx(b))));
        Ok((out, true))
    }

    fn boundary_branch(&self, k: usize) -> Result<RangeResult> {
        let poly = self.polygon(k, self.config.samples)?;
        if poly.is_empty() {
            let mut res = RangeResult::new(k, Branch::EmptyPolygon);
            res.diagnostics.push(format!("outer polygon with {} halfplanes is empty", self.config.samples));
            return Ok(res);
        }
        let g = self.boundary()?;
        let (sources, heuristic) = self.candidate_sources(g, &poly)?;
        let slack = 1e-9 * (1.0 + self.radius);
        let noise = 1e-12 * (1.0 + self.radius);
        let batch = rayon::current_num_threads().max(8);
        let mut res = RangeResult::new(k, Branch::BoundaryComponents);
        res.heuristic = heuristic;
        let (mut seen, mut tried) = (0, 0);
        let mut passing: Vec<Witness> = Vec::new();
        for src in sources {
            let reps = match src {
                Source::Points(p) => p,
                Source::Line(b) => sweep(&g.g, std::slice::from_ref(&b))?,
            };
            let mut inside: Vec<(f64, (Q, Q, bool))> = reps
                .into_iter()
                .map(|(a, b)| (poly.violation(q_to_f64(&a), q_to_f64(&b)), (a, b, true)))
                .filter(|(v, _)| *v <= slack)
                .collect();
            inside.sort_by(|x, y| x.0.total_cmp(&y.0));
            let inside: Vec<(Q, Q, bool)> = inside.into_iter().map(|(_, c)| c).collect();
            seen += inside.len();
            for chunk in inside.chunks(batch) {
                tried += chunk.len();
                let assessed = self.assess_all(k, chunk)?;
                Self::note_flags(&mut res, &assessed);
                passing.extend(assessed.into_iter().filter(|x| x.member && x.witness.margin > noise).map(|x| x.witness));
                if !passing.is_empty() {
                    break;
                }
            }
            if !passing.is_empty() {
                break;
            }
        }
        res.diagnostics.push(format!(
            "g has degree {}; {} of {} candidate representatives inside the outer polygon tested{}",
            g.g.total_degree(),
            tried,
            seen,
            if heuristic { " (centroid and line sweep)" } else { "" }
        ));
        if !passing.is_empty() {
            res.dim = 2;
            res.g = Some(g.clone());
            res.representatives = passing;
            return Ok(res);
        }
        let mut bx = poly.bounding_box().expect("nonempty polygon");
        let pad = 1e-6 * (1.0 + self.radius);
        bx = [bx[0] - pad, bx[1] + pad, bx[2] - pad, bx[3] + pad];
        let cands: Vec<(Q, Q, bool)> = tritangent_candidates(&self.kd, Some(&g.g), bx)
            .into_iter()
            .map(|c| match c.exact {
                Some((a, b)) => (a, b, true),
                None => (q_from_f64(c.a), q_from_f64(c.b), false),
            })
            .collect();
        res.branch = Branch::Tritangent;
        res.diagnostics.push(format!("no representative passed; {} tritangent candidates", cands.len()));
        let assessed = self.assess_all(k, &cands)?;
        Self::note_flags(&mut res, &assessed);
        let passing = dedup(assessed.into_iter().filter(|x| x.member).map(|x| x.witness).collect());
        match passing.len() {
            0 => Ok(res),
            1 => Ok(res.with_point(passing.into_iter().next().unwrap())),
            m => Err(Error::Inconsistency(format!("{} distinct tritangent candidates pass membership", m))),
        }
    }
}

enum Source {
    Points(Vec<(Q, Q)>),
    Line(Q),
}

/// Merges witnesses closer than `1e-8`, keeping the one with the largest margin.
fn dedup(ws: Vec<Witness>) -> Vec<Witness> {
    let mut out: Vec<Witness> = Vec::new();
    for w in ws {
        let (a, b) = w.to_f64();
        match out.iter_mut().find(|o| {
            let (x, y) = o.to_f64();
            (x - a).abs().max((y - b).abs()) <= 1e-8 * (1.0 + a.abs().max(b.abs()))
        }) {
            Some(o) if w.margin > o.margin => *o = w,
            Some(_) => {}
            None => out.push(w),
        }
    }
    out
}

/// Rank-k range for any valid `k`; indices at or above `(n + 1) / 2` go to the
/// linear-factor algorithm.
pub fn compute_range(a: &ComplexMatrix, k: usize, config: &SolverConfig) -> Result<RangeResult> {
    RangeSolver::new(a, config.clone()).compute(k)
}

pub fn compute_range_high_k(a: &ComplexMatrix, k: usize, config: &SolverConfig) -> Result<RangeResult> {
    RangeSolver::new(a, config.clone()).compute_high_k(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery;
    use crate::poly_core::rational::qi;

    #[test]
    fn two_point_spectrum_is_a_segment() {
        let r = compute_range(&ComplexMatrix::diag_int(&[(1, 0), (-1, 0)]), 1, &SolverConfig::default()).unwrap();
        assert_eq!(r.dim, 1);
        let [lo, hi] = r.endpoints.unwrap();
        assert_eq!((lo.a, hi.a), (qi(-1), qi(1)));
    }

    #[test]
    fn scalar_matrix_shortcut() {
        let a = ComplexMatrix::diag_int(&[(2, -1), (2, -1), (2, -1)]);
        let r = compute_range(&a, 2, &SolverConfig::default()).unwrap();
        assert_eq!((r.dim, r.branch), (0, Branch::LinearPower));
        assert_eq!(r.point.unwrap().b, qi(-1));
    }

    #[test]
    fn high_k_examples() {
        let cfg = SolverConfig::default();
        let r = compute_range_high_k(&gallery::ok_plane(), 2, &cfg).unwrap();
        assert_eq!(r.dim, 0);
        assert_eq!(r.point.unwrap().to_f64(), (0.0, 0.0));
        let r = compute_range_high_k(&ComplexMatrix::diag_int(&[(0, 0), (1, 0), (0, 1)]), 2, &cfg).unwrap();
        assert_eq!(r.dim, -1);
        let r = compute_range_high_k(&ComplexMatrix::diag_int(&[(1, 0), (1, 0), (0, 0)]), 2, &cfg).unwrap();
        assert_eq!(r.point.unwrap().to_f64(), (1.0, 0.0));
        assert!(compute_range_high_k(&gallery::ok_plane(), 1, &cfg).is_err());
    }

    #[test]
    fn pringle_rank_two_is_origin() {
        let r = compute_range(&gallery::pringle(), 2, &SolverConfig::default()).unwrap();
        assert_eq!((r.dim, r.branch), (0, Branch::AntipodalPoint));
        assert_eq!(r.point.unwrap().to_f64(), (0.0, 0.0));
    }
}
