use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::boundary_dual::BoundaryPoly;
use crate::linalg_pencil::Mode;
use crate::poly_core::rational::Q;
use crate::poly_core::{BiPoly, HomPoly3};
use crate::range_solver::{Branch, RangeResult, SolverConfig, Witness};

use super::matrix_file::MatrixFile;

pub const REPORT_SCHEMA: &str = "nrange-report/1";
pub const DECIMAL_PLACES: usize = 24;

/// `[numerator, denominator]`.
pub type Fraction = [String; 2];

pub fn fraction(x: &Q) -> Fraction {
    [x.numer().to_string(), x.denom().to_string()]
}

/// `x` rounded to `places` digits after the point, half away from zero.
pub fn decimal(x: &Q, places: usize) -> String {
    let scale = BigInt::from(10u32).pow(places as u32);
    let num: BigInt = x.numer().abs() * &scale * 2 + x.denom();
    let r = num.div_floor(&(x.denom() * 2));
    let digits = format!("{:0>width$}", r.to_string(), width = places + 1);
    let (int, frac) = digits.split_at(digits.len() - places);
    let sign = if x.is_negative() && !r.is_zero() { "-" } else { "" };
    format!("{}{}.{}", sign, int, frac)
}

#[derive(Clone, Debug, Serialize)]
pub struct Input {
    pub matrix_sha256: String,
    pub n: usize,
    pub k: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConfigEcho {
    pub tol: f64,
    pub samples: usize,
    pub precision: Mode,
    pub exact_cad_max_degree: usize,
    pub sweep_lines: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Term3 {
    pub exp: [u32; 3],
    pub coeff: Fraction,
}

#[derive(Clone, Debug, Serialize)]
pub struct Term2 {
    pub exp: [usize; 2],
    pub coeff: Fraction,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessReport {
    pub a: String,
    pub b: String,
    /// Bound on the distance of each decimal from the point that was tested, plus the
    /// approximation error when the point stands for an irrational one.
    pub error_bound: f64,
    /// Present when the coordinates are exact rationals.
    pub exact: Option<[Fraction; 2]>,
    pub margin: f64,
    pub certified: bool,
    pub flagged: bool,
}

impl WitnessReport {
    pub fn new(w: &Witness) -> Self {
        let rounding = 0.5 * 10f64.powi(-(DECIMAL_PLACES as i32));
        let (fa, fb) = w.to_f64();
        let approx = if w.exact { 0.0 } else { 1e-12 * (1.0 + fa.abs().max(fb.abs())) };
        WitnessReport {
            a: decimal(&w.a, DECIMAL_PLACES),
            b: decimal(&w.b, DECIMAL_PLACES),
            error_bound: rounding + approx,
            exact: w.exact.then(|| [fraction(&w.a), fraction(&w.b)]),
            margin: w.margin,
            certified: w.certified,
            flagged: w.flagged,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundaryReport {
    pub degree: isize,
    pub dual_degree: isize,
    pub lines_degree: isize,
    /// Terms `coeff a^i b^j` of `g_A`.
    pub terms: Vec<Term2>,
}

pub fn bipoly_terms(p: &BiPoly) -> Vec<Term2> {
    p.terms().into_iter().map(|(i, j, c)| Term2 { exp: [i, j], coeff: fraction(&c) }).collect()
}

pub fn hompoly_terms(p: &HomPoly3) -> Vec<Term3> {
    p.terms().map(|(e, c)| Term3 { exp: *e, coeff: fraction(c) }).collect()
}

impl BoundaryReport {
    pub fn new(bp: &BoundaryPoly) -> Self {
        BoundaryReport {
            degree: bp.g.total_degree(),
            dual_degree: bp.dual.total_degree(),
            lines_degree: bp.lines.total_degree(),
            terms: bipoly_terms(&bp.g),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RangeReport {
    pub k: usize,
    pub dim: i32,
    pub branch: Branch,
    pub point: Option<WitnessReport>,
    pub endpoints: Option<[WitnessReport; 2]>,
    pub representatives: Vec<WitnessReport>,
    pub g: Option<BoundaryReport>,
    pub ambiguous: bool,
    pub heuristic: bool,
    pub diagnostics: Vec<String>,
}

impl RangeReport {
    pub fn new(r: &RangeResult) -> Self {
        RangeReport {
            k: r.k,
            dim: r.dim,
            branch: r.branch,
            point: r.point.as_ref().map(WitnessReport::new),
            endpoints: r.endpoints.as_ref().map(|[p, q]| [WitnessReport::new(p), WitnessReport::new(q)]),
            representatives: r.representatives.iter().map(WitnessReport::new).collect(),
            g: r.g.as_ref().map(BoundaryReport::new),
            ambiguous: r.ambiguous,
            heuristic: r.heuristic,
            diagnostics: r.diagnostics.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportFile {
    pub schema: String,
    pub version: String,
    pub input: Input,
    pub config: ConfigEcho,
    pub kippenhahn: Vec<Term3>,
    pub ranges: Vec<RangeReport>,
}

impl ReportFile {
    pub fn new(matrix: &MatrixFile, mode: Mode, f: &HomPoly3, config: &SolverConfig, results: &[RangeResult]) -> Self {
        ReportFile {
            schema: REPORT_SCHEMA.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            input: Input { matrix_sha256: matrix.sha256(), n: matrix.n, k: results.iter().map(|r| r.k).collect() },
            config: ConfigEcho {
                tol: config.tol,
                samples: config.samples,
                precision: mode,
                exact_cad_max_degree: config.exact_cad_max_degree,
                sweep_lines: config.sweep_lines,
            },
            kippenhahn: hompoly_terms(f),
            ranges: results.iter().map(RangeReport::new).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
