use rayon::prelude::*;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::kippenhahn::KippenhahnData;
use crate::poly_core::linear::linear_factors;
use crate::poly_core::rational::{q_from_f64, q_to_f64, rational_approx, round_to_bits, Q};
use crate::poly_core::BiPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CandidateSource {
    /// Linear factor `t + a x + b y` of the Kippenhahn polynomial.
    LinearFactor,
    /// Singular point of the boundary polynomial.
    BoundarySingularity,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Candidate {
    pub a: f64,
    pub b: f64,
    pub exact: Option<(Q, Q)>,
    pub source: CandidateSource,
}

/// Points that may form a zero-dimensional rank-k range: linear factors of `f_A` and, for
/// degree at least six, real singular points of `g` inside `bbox = [a0, a1, b0, b1]`.
pub fn tritangent_candidates(kd: &KippenhahnData, g: Option<&BiPoly>, bbox: [f64; 4]) -> Vec<Candidate> {
    let mut out: Vec<Candidate> = linear_factors(&kd.fred)
        .into_iter()
        .filter_map(|lf| {
            let (a, b) = lf.point_f64()?;
            let exact = if lf.exact { lf.point() } else { None };
            Some(Candidate { a, b, exact, source: CandidateSource::LinearFactor })
        })
        .collect();
    if kd.degree_red() >= 6 {
        if let Some(g) = g {
            for (a, b) in singular_points_in_box(g, bbox) {
                out.push(Candidate { a, b, exact: None, source: CandidateSource::BoundarySingularity });
            }
        }
    }
    out
}

struct Fast {
    terms: Vec<(i32, i32, f64)>,
}

impl Fast {
    fn new(p: &BiPoly) -> Self {
        Fast { terms: p.terms().into_iter().map(|(i, j, c)| (i as i32, j as i32, q_to_f64(&c))).collect() }
    }

    fn eval(&self, a: f64, b: f64) -> f64 {
        self.terms.iter().map(|&(i, j, c)| c * a.powi(i) * b.powi(j)).sum()
    }
}

struct Derivs {
    g: BiPoly,
    // ga, gb, gaa, gab, gbb, gaaa, gaab, gabb, gbbb
    exact: Vec<BiPoly>,
    fast: Vec<Fast>,
}

impl Derivs {
    fn new(g: &BiPoly) -> Self {
        let ga = g.partial_main();
        let gb = g.partial_other();
        let gaa = ga.partial_main();
        let gab = ga.partial_other();
        let gbb = gb.partial_other();
        let exact = vec![
            ga,
            gb,
            gaa.clone(),
            gab.clone(),
            gbb.clone(),
            gaa.partial_main(),
            gaa.partial_other(),
            gab.partial_other(),
            gbb.partial_other(),
        ];
        let fast = exact.iter().map(Fast::new).collect();
        Derivs { g: g.clone(), exact, fast }
    }

    fn values(&self, a: f64, b: f64, exact: bool) -> [f64; 9] {
        if exact {
            let (qa, qb) = (q_from_f64(a), q_from_f64(b));
            std::array::from_fn(|i| q_to_f64(&self.exact[i].eval(&qa, &qb)))
        } else {
            std::array::from_fn(|i| self.fast[i].eval(a, b))
        }
    }

    /// Newton step on the gradient and Gauss-Newton step on the Hessian entries.
    fn steps(v: &[f64; 9]) -> (Option<(f64, f64)>, Option<(f64, f64)>) {
        let (ga, gb, gaa, gab, gbb) = (v[0], v[1], v[2], v[3], v[4]);
        let hn = gaa.abs().max(gab.abs()).max(gbb.abs());
        let det = gaa * gbb - gab * gab;
        let newton = (hn > 0.0 && det.abs() > 1e-10 * hn * hn)
            .then(|| ((gbb * ga - gab * gb) / det, (gaa * gb - gab * ga) / det));
        // residual (gaa, gab, gbb), Jacobian rows (gaaa gaab), (gaab gabb), (gabb gbbb)
        let j = [[v[5], v[6]], [v[6], v[7]], [v[7], v[8]]];
        let r = [gaa, gab, gbb];
        let mut m = [[0.0; 2]; 2];
        let mut rhs = [0.0; 2];
        for k in 0..3 {
            for p in 0..2 {
                rhs[p] += j[k][p] * r[k];
                for q in 0..2 {
                    m[p][q] += j[k][p] * j[k][q];
                }
            }
        }
        let d = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        let mn = m[0][0].abs().max(m[1][1].abs());
        let gauss = (mn > 0.0 && d.abs() > 1e-14 * mn * mn)
            .then(|| ((m[1][1] * rhs[0] - m[0][1] * rhs[1]) / d, (m[0][0] * rhs[1] - m[1][0] * rhs[0]) / d));
        (newton, gauss)
    }

    fn relative(p: &BiPoly, a: f64, b: f64) -> f64 {
        let s = p.abs_eval_f64(a, b);
        if s == 0.0 {
            return 0.0;
        }
        q_to_f64(&p.eval(&q_from_f64(a), &q_from_f64(b))).abs() / s
    }

    /// Relative size of `g` and its gradient, evaluated exactly.
    fn residual(&self, a: f64, b: f64) -> (f64, f64) {
        (
            Self::relative(&self.g, a, b),
            Self::relative(&self.exact[0], a, b).max(Self::relative(&self.exact[1], a, b)),
        )
    }
}

/// Real singular points of `g` in `[a0, a1] x [b0, b1]`, found by Newton iteration from a grid
/// of seeds in coordinates centered on the box, then polished with exact evaluation.
pub fn singular_points_in_box(g: &BiPoly, bbox: [f64; 4]) -> Vec<(f64, f64)> {
    let [a0, a1, b0, b1] = bbox;
    if !(a1 >= a0 && b1 >= b0) || g.total_degree() < 2 {
        return Vec::new();
    }
    let den = BigInt::from(1u64 << 40);
    let ca = rational_approx(&q_from_f64((a0 + a1) / 2.0), &den);
    let cb = rational_approx(&q_from_f64((b0 + b1) / 2.0), &den);
    let half = ((a1 - a0).max(b1 - b0) / 2.0).max(1e-12);
    let h = Q::new(BigInt::one(), BigInt::one()) * Q::from_float(2f64.powi(half.log2().ceil() as i32)).unwrap();
    let gmax = g.terms().iter().fold(Q::zero(), |m, (_, _, c)| m.max(c.abs()));
    let rounded = BiPoly::from_terms(g.terms().into_iter().map(|(i, j, c)| (i, j, round_to_bits(&(c / &gmax), 512))));
    let local = rounded.shift_scale(&ca, &h, &cb, &h);
    let big = local.terms().iter().fold(Q::zero(), |m, (_, _, c)| m.max(c.abs()));
    if big.is_zero() {
        return Vec::new();
    }
    let local = BiPoly::from_terms(
        local.scale(&big.recip()).terms().into_iter().map(|(i, j, c)| (i, j, round_to_bits(&c, 256))),
    );
    let dv = Derivs::new(&local);
    let inside = |a: f64, b: f64, f: f64| a.abs() <= f && b.abs() <= f;
    const GRID: usize = 16;
    let seeds: Vec<(f64, f64)> = (0..GRID * GRID)
        .map(|i| {
            let (u, v) = ((i / GRID) as f64 + 0.5, (i % GRID) as f64 + 0.5);
            (-1.05 + 2.1 * u / GRID as f64, -1.05 + 2.1 * v / GRID as f64)
        })
        .collect();
    let found: Vec<(f64, f64)> = seeds
        .par_iter()
        .filter_map(|&(mut a, mut b)| {
            for _ in 0..80 {
                let v = dv.values(a, b, false);
                let (newton, gauss) = Derivs::steps(&v);
                let (da, db) = newton.or(gauss)?;
                a -= da;
                b -= db;
                if !a.is_finite() || !b.is_finite() || !inside(a, b, 1.5) {
                    return None;
                }
                if da.abs().max(db.abs()) <= 1e-15 {
                    break;
                }
            }
            inside(a, b, 1.1).then_some((a, b))
        })
        .collect();
    let gf = Fast::new(&local);
    let near_curve = |a: f64, b: f64| {
        let s: f64 = gf.terms.iter().map(|&(i, j, c)| (c * a.powi(i) * b.powi(j)).abs()).sum();
        gf.eval(a, b).abs() <= 1e-6 * s
    };
    let mut clusters: Vec<(f64, f64)> = Vec::new();
    for (a, b) in found.into_iter().filter(|&(a, b)| near_curve(a, b)) {
        if !clusters.iter().any(|&(x, y)| (x - a).abs().max((y - b).abs()) <= 1e-6) {
            clusters.push((a, b));
        }
    }
    let polished: Vec<(f64, f64)> = clusters
        .par_iter()
        .filter_map(|&(mut a, mut b)| {
            let score = |a: f64, b: f64| {
                let (rg, rd) = dv.residual(a, b);
                rg.max(rd * rd)
            };
            let mut best = score(a, b);
            for _ in 0..8 {
                let v = dv.values(a, b, true);
                let (newton, gauss) = Derivs::steps(&v);
                let mut moved = false;
                for (da, db) in [newton, gauss].into_iter().flatten() {
                    let (na, nb) = (a - da, b - db);
                    if na.is_finite() && nb.is_finite() {
                        let s = score(na, nb);
                        if s < best {
                            best = s;
                            (a, b) = (na, nb);
                            moved = true;
                        }
                    }
                }
                if !moved {
                    break;
                }
            }
            let (rg, rd) = dv.residual(a, b);
            (inside(a, b, 1.0) && rg <= 1e-12 && rd <= 1e-6).then_some((a, b))
        })
        .collect();
    let (caf, cbf, hf) = (q_to_f64(&ca), q_to_f64(&cb), q_to_f64(&h));
    let mut out: Vec<(f64, f64)> = Vec::new();
    for (u, v) in polished {
        if !out.iter().any(|&(x, y)| (x - u).abs().max((y - v).abs()) <= 1e-6) {
            out.push((u, v));
        }
    }
    let mut out: Vec<(f64, f64)> = out.into_iter().map(|(u, v)| (caf + hf * u, cbf + hf * v)).collect();
    out.sort_by(|x, y| x.partial_cmp(y).unwrap_or(std::cmp::Ordering::Equal));
    out
}
