use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kippenhahn::KippenhahnData;
use crate::range_solver::{RangeResult, SupportPolygon};

/// Largest accepted `|f_A(1, x, y)|` for a curve sample.
pub const CURVE_RESIDUAL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq)]
pub struct CurveSample {
    pub theta: f64,
    pub x: f64,
    pub y: f64,
    pub residual: f64,
}

/// Points of `f_A(1, x, y) = 0` on rays of angle `theta`, one polyline family per eigenvalue.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveBranch {
    pub index: usize,
    /// Runs of consecutive accepted samples.
    pub runs: Vec<Vec<CurveSample>>,
}

/// Samples the real affine curve `f_A(1, x, y) = 0`. Along the ray `r (cos theta, sin theta)`
/// the curve is met where `r lambda_j(theta) = -1`. Rays with `|lambda_j|` below an eighth
/// of the numerical radius are skipped, and each point is polished by Newton steps in `r`.
pub fn curve_samples(kd: &KippenhahnData, samples: usize) -> Result<Vec<CurveBranch>> {
    if samples < 8 {
        return Err(Error::Parameter(format!("need at least 8 samples, got {}", samples)));
    }
    let n = kd.n;
    let radius = kd.pair.numerical_radius(360).max(1e-300);
    let f = &kd.f;
    let (fx, fy) = (f.partial(1), f.partial(2));
    let per_angle: Vec<Vec<Option<CurveSample>>> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let theta = std::f64::consts::TAU * i as f64 / samples as f64;
            let (c, s) = (theta.cos(), theta.sin());
            kd.pair
                .eigenvalues(c, s)
                .into_iter()
                .map(|l| {
                    if l >= -radius / 8.0 {
                        return None;
                    }
                    let mut r = -1.0 / l;
                    for _ in 0..4 {
                        let p = [1.0, r * c, r * s];
                        let d = c * fx.eval_f64(p) + s * fy.eval_f64(p);
                        if d == 0.0 {
                            break;
                        }
                        let step = f.eval_f64(p) / d;
                        if !step.is_finite() || step.abs() > 1e-6 * r {
                            break;
                        }
                        r -= step;
                    }
                    let (x, y) = (r * c, r * s);
                    let residual = f.eval_f64([1.0, x, y]).abs();
                    (residual <= CURVE_RESIDUAL).then_some(CurveSample { theta, x, y, residual })
                })
                .collect()
        })
        .collect();
    Ok((0..n)
        .map(|j| {
            let mut runs: Vec<Vec<CurveSample>> = Vec::new();
            let mut cur: Vec<CurveSample> = Vec::new();
            for row in &per_angle {
                match &row[j] {
                    Some(p) => cur.push(p.clone()),
                    None => {
                        if !cur.is_empty() {
                            runs.push(std::mem::take(&mut cur));
                        }
                    }
                }
            }
            if !cur.is_empty() {
                // close the loop through theta = 0
                if per_angle[0][j].is_some() && !runs.is_empty() {
                    cur.extend(runs.remove(0));
                }
                runs.push(cur);
            }
            CurveBranch { index: j + 1, runs }
        })
        .collect())
}

pub fn curve_csv(branches: &[CurveBranch]) -> String {
    let mut s = String::from("branch,theta,x,y,residual\n");
    for b in branches {
        for p in b.runs.iter().flatten() {
            writeln!(s, "{},{:.17e},{:.17e},{:.17e},{:.3e}", b.index, p.theta, p.x, p.y, p.residual).unwrap();
        }
    }
    s
}

/// One rank-k range for plotting.
#[derive(Clone, Debug)]
pub struct RangeLayer {
    pub k: usize,
    pub dim: i32,
    pub polygon: Vec<(f64, f64)>,
    /// Marked points: the point of a zero-dimensional range or the ends of a segment.
    pub marks: Vec<(f64, f64)>,
}

impl RangeLayer {
    pub fn new(result: &RangeResult, polygon: &SupportPolygon) -> Self {
        let marks = match (&result.point, &result.endpoints) {
            (Some(p), _) => vec![p.to_f64()],
            (None, Some([p, q])) => vec![p.to_f64(), q.to_f64()],
            _ => Vec::new(),
        };
        let polygon = if result.dim == 2 { polygon.vertices.clone() } else { Vec::new() };
        RangeLayer { k: result.k, dim: result.dim, polygon, marks }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Plot {
    pub curve: Vec<CurveBranch>,
    pub ranges: Vec<RangeLayer>,
}

const BRANCH_COLORS: [&str; 6] = ["#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02"];

fn num(x: f64) -> String {
    let s = format!("{:.6}", x);
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

/// Deterministic SVG of the curve branches, the ranges and their marked points. The plane
/// is drawn with the second coordinate pointing up.
pub fn render_svg(plot: &Plot) -> Result<String> {
    let mut pts: Vec<(f64, f64)> = plot.curve.iter().flat_map(|b| b.runs.iter().flatten().map(|p| (p.x, p.y))).collect();
    for r in &plot.ranges {
        pts.extend(r.polygon.iter().copied());
        pts.extend(r.marks.iter().copied());
    }
    if plot.curve.iter().all(|b| b.runs.is_empty()) && plot.ranges.is_empty() {
        return Err(Error::Domain("nothing to draw".into()));
    }
    if pts.is_empty() {
        pts.push((0.0, 0.0));
    }
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in &pts {
        (x0, x1, y0, y1) = (x0.min(x), x1.max(x), y0.min(y), y1.max(y));
    }
    let span = (x1 - x0).max(y1 - y0).max(1e-6);
    let pad = 0.1 * span;
    let (vx, vy, vw, vh) = (x0 - pad, -y1 - pad, x1 - x0 + 2.0 * pad, y1 - y0 + 2.0 * pad);
    let stroke = span / 400.0;
    let mut s = String::new();
    writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\" width=\"640\" height=\"{}\">",
        num(vx),
        num(vy),
        num(vw),
        num(vh),
        (640.0 * vh / vw).round() as i64
    )
    .unwrap();
    writeln!(s, "<g id=\"ranges\">").unwrap();
    let kmax = plot.ranges.iter().map(|r| r.k).max().unwrap_or(1);
    for r in &plot.ranges {
        let level = 200 - (150 * r.k / kmax.max(1)) as i64;
        let fill = format!("rgb({},{},{})", level, level, 255.min(level + 55));
        if r.polygon.len() >= 3 {
            let p: Vec<String> = r.polygon.iter().map(|&(x, y)| format!("{},{}", num(x), num(-y))).collect();
            writeln!(
                s,
                "<polygon class=\"range\" data-k=\"{}\" points=\"{}\" fill=\"{}\" fill-opacity=\"0.6\" stroke=\"#333\" stroke-width=\"{}\"/>",
                r.k,
                p.join(" "),
                fill,
                num(stroke)
            )
            .unwrap();
        }
        if r.dim == 1 && r.marks.len() == 2 {
            let [(ax, ay), (bx, by)] = [r.marks[0], r.marks[1]];
            writeln!(
                s,
                "<line class=\"range\" data-k=\"{}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"{}\"/>",
                r.k,
                num(ax),
                num(-ay),
                num(bx),
                num(-by),
                fill,
                num(3.0 * stroke)
            )
            .unwrap();
        }
        for &(x, y) in &r.marks {
            writeln!(
                s,
                "<circle class=\"mark\" data-k=\"{}\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"#c00\"/>",
                r.k,
                num(x),
                num(-y),
                num(4.0 * stroke)
            )
            .unwrap();
        }
    }
    writeln!(s, "</g>").unwrap();
    writeln!(s, "<g id=\"curve\" fill=\"none\" stroke-width=\"{}\">", num(stroke)).unwrap();
    for b in &plot.curve {
        let color = BRANCH_COLORS[(b.index - 1) % BRANCH_COLORS.len()];
        for run in b.runs.iter().filter(|r| r.len() >= 2) {
            let p: Vec<String> = run.iter().map(|q| format!("{},{}", num(q.x), num(-q.y))).collect();
            writeln!(s, "<polyline class=\"branch\" data-branch=\"{}\" points=\"{}\" stroke=\"{}\"/>", b.index, p.join(" "), color)
                .unwrap();
        }
    }
    writeln!(s, "</g>").unwrap();
    writeln!(s, "<g id=\"legend\" font-family=\"sans-serif\" font-size=\"{}\">", num(vh / 30.0)).unwrap();
    for (i, r) in plot.ranges.iter().enumerate() {
        let label = match r.dim {
            -1 => format!("Λ_{} = ∅", r.k),
            d => format!("Λ_{}: dimension {}", r.k, d),
        };
        writeln!(
            s,
            "<text class=\"legend\" x=\"{}\" y=\"{}\">{}</text>",
            num(vx + vw / 40.0),
            num(vy + (i as f64 + 1.5) * vh / 25.0),
            label
        )
        .unwrap();
    }
    writeln!(s, "</g>").unwrap();
    s.push_str("</svg>\n");
    Ok(s)
}
