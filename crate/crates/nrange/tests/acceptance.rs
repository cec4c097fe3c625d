//! Acceptance suite: one pass/fail line per criterion.

mod common;

use std::collections::VecDeque;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use nrange::boundary_dual::boundary_poly;
use nrange::gallery;
use nrange::kippenhahn::{apply_affine, kippenhahn_poly, multiplicity_at, vanishing_order, AffineMap};
use nrange::linalg_pencil::{lambda_k_theta, ComplexMatrix};
use nrange::membership::{membership_test, membership_test_exact};
use nrange::poly_core::rational::{q, q_from_f64, q_to_f64, qi, Q};
use nrange::poly_core::{BiPoly, HomPoly3};
use nrange::range_solver::{
    bounded_component_reps, compute_range, compute_range_high_k, halfplane_polygon, RangeResult, RangeSolver,
    SolverConfig,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn cfg() -> SolverConfig {
    SolverConfig::default()
}

fn kippenhahn_goldens() -> Outcome {
    let t = HomPoly3::var(0);
    let x = HomPoly3::var(1);
    let y = HomPoly3::var(2);
    let c = |v: i64| HomPoly3::constant(qi(v));
    let sq = |p: &HomPoly3| p * p;
    // t^4 - 30 t^2 (x^2 + y^2) + 25 (x^4 + y^4) + 434 x^2 y^2
    let r2 = &sq(&x) + &sq(&y);
    let quartic1 = &(&(&sq(&sq(&t)) - &(&c(30) * &(&sq(&t) * &r2))) + &(&c(25) * &(&sq(&sq(&x)) + &sq(&sq(&y)))))
        + &(&c(434) * &(&sq(&x) * &sq(&y)));
    let pringle = &(&(&sq(&sq(&t)) - &(&c(5) * &(&sq(&t) * &sq(&x)))) + &(&c(4) * &sq(&sq(&x)))) - &(&sq(&t) * &sq(&y));
    let circle = &(&(&c(16) * &sq(&t)) - &sq(&x)) - &sq(&y);
    let cl = (&(&t + &x) * &circle).scale(&q(1, 16));
    for (name, a, want) in [
        ("quartic1", gallery::quartic1(), quartic1),
        ("pringle", gallery::pringle(), pringle),
        ("circleandline", gallery::circle_and_line(), cl),
    ] {
        let f = kippenhahn_poly(&a).f;
        ensure(f.normalized() == want.normalized(), format!("{}: f_A = {}", name, f))?;
    }
    Ok("quartic1, pringle, circleandline match".into())
}

fn boundary_goldens() -> Outcome {
    let quartic1 = BiPoly::from_i64_terms(&[
        (12, 0, 15625), (10, 2, 273750), (8, 4, 90375), (6, 6, 549236), (4, 8, 90375),
        (2, 10, 273750), (0, 12, 15625), (10, 0, -1368750), (8, 2, -17139750), (6, 4, 44934900),
        (4, 6, 44934900), (2, 8, -17139750), (0, 10, -1368750), (8, 0, 47610625), (6, 2, 429249700),
        (4, 4, -1058169786), (2, 6, 429249700), (0, 8, 47610625), (6, 0, -838188000),
        (4, 2, -5975989920), (2, 4, -5975989920), (0, 6, -838188000), (4, 0, 7621461600),
        (2, 2, 39076977600), (0, 4, 7621461600), (2, 0, -30526848000), (0, 2, -30526848000),
        (0, 0, 21083040000),
    ]);
    let weird = BiPoly::from_i64_terms(&[
        (6, 0, 49), (5, 1, -644), (5, 0, 196), (4, 2, 3824), (4, 1, -2212), (4, 0, 98),
        (3, 3, -12172), (3, 2, 8942), (3, 1, 56), (3, 0, -294), (2, 4, 21248), (2, 3, -16084),
        (2, 2, -3420), (2, 1, 2324), (2, 0, -147), (1, 5, -18836), (1, 4, 11860), (1, 3, 9244),
        (1, 2, -4754), (1, 1, 56), (1, 0, 98), (0, 6, 7260), (0, 5, -5132), (0, 4, -1739),
        (0, 3, -1600), (0, 2, 2402), (0, 1, -672), (0, 0, 49),
    ]);
    let disk = BiPoly::from_i64_terms(&[(0, 0, 1), (2, 0, -16), (0, 2, -16)]);
    let cone = BiPoly::from_i64_terms(&[(0, 0, 1), (1, 0, -2), (2, 0, 1), (0, 2, -15)]);
    let cl = &disk * &cone;
    let bq = boundary_poly(&kippenhahn_poly(&gallery::quartic1())).map_err(err)?;
    ensure(bq.dual == quartic1.normalized(), "quartic1: dual part differs from the printed degree-12 polynomial")?;
    ensure(bq.dual.total_degree() == 12, "quartic1: degree")?;
    let bc = boundary_poly(&kippenhahn_poly(&gallery::circle_and_line())).map_err(err)?;
    ensure(bc.g == cl.normalized(), format!("circleandline: g_A = {}", bc.g))?;
    let bw = boundary_poly(&kippenhahn_poly(&gallery::weird_tritangent())).map_err(err)?;
    ensure(bw.dual == weird.normalized(), "weirdTritangent: dual part differs from the printed sextic")?;
    Ok(format!(
        "quartic1 dual ({} terms), circleandline g, weirdTritangent dual ({} terms) match",
        bq.dual.terms().len(),
        bw.dual.terms().len()
    ))
}

fn membership_goldens() -> Outcome {
    let tol = cfg().tol;
    let mut margins = Vec::new();
    let mut case = |name: &str, a: &nrange::linalg_pencil::ComplexMatrix, pa: Q, inside: bool, exact: bool| {
        let kd = kippenhahn_poly(a);
        let v = if exact {
            membership_test_exact(&kd, 2, &pa, &qi(0), tol)
        } else {
            membership_test(&kd, 2, q_to_f64(&pa), 0.0, tol)
        }
        .map_err(err)?;
        ensure(v.member == inside, format!("{}: member = {}", name, v.member))?;
        ensure(v.margin.abs() > 1e-6, format!("{}: margin {:.3e}", name, v.margin))?;
        margins.push(format!("{} {:+.3e}", name, v.margin));
        Ok::<(), String>(())
    };
    case("circleandline (1,0)", &gallery::circle_and_line(), qi(1), false, true)?;
    case("pringle (0,0)", &gallery::pringle(), qi(0), true, true)?;
    case("quarticPtangent (1/3,0)", &gallery::quartic_ptangent(), q(1, 3), true, true)?;
    let left = (4.0 - 41f64.sqrt()) / 25.0 - 1e-3;
    case("quarticPtangent left-1e-3", &gallery::quartic_ptangent(), q_from_f64(left), false, false)?;
    Ok(margins.join(", "))
}

fn point_is(r: &RangeResult, a: f64, b: f64) -> bool {
    r.point.as_ref().is_some_and(|w| {
        let (x, y) = w.to_f64();
        (x - a).abs() <= 1e-8 && (y - b).abs() <= 1e-8
    })
}

fn dimension_goldens() -> Outcome {
    let c = cfg();
    let r = compute_range(&gallery::pringle(), 2, &c).map_err(err)?;
    ensure(r.dim == 0 && point_is(&r, 0.0, 0.0), format!("pringle k=2: dim {}", r.dim))?;
    let r = compute_range(&gallery::quartic_ptangent(), 2, &c).map_err(err)?;
    ensure(r.dim == 1, format!("quarticPtangent k=2: dim {}", r.dim))?;
    let [lo, hi] = r.endpoints.clone().ok_or("quarticPtangent: no endpoints")?;
    let ((a0, b0), (a1, b1)) = (lo.to_f64(), hi.to_f64());
    ensure(
        (a0 - (4.0 - 41f64.sqrt()) / 25.0).abs() <= 1e-8 && (a1 - 1.0 / 3.0).abs() <= 1e-8 && b0.abs() <= 1e-8 && b1.abs() <= 1e-8,
        format!("quarticPtangent endpoints ({}, {}) ({}, {})", a0, b0, a1, b1),
    )?;
    let s = RangeSolver::new(&gallery::quartic1(), c.clone());
    for k in [1, 2] {
        let r = s.compute(k).map_err(err)?;
        ensure(r.dim == 2, format!("quartic1 k={}: dim {}", k, r.dim))?;
    }
    let r = compute_range_high_k(&gallery::ok_plane(), 2, &c).map_err(err)?;
    ensure(r.dim == 0 && point_is(&r, 0.0, 0.0), format!("OkPlane k=2: dim {}", r.dim))?;
    let r = compute_range_high_k(&ComplexMatrix::diag_int(&[(0, 0), (1, 0), (0, 1)]), 2, &c).map_err(err)?;
    ensure(r.dim == -1, format!("diag(0,1,i) k=2: dim {}", r.dim))?;
    let r = compute_range(&gallery::smooth_sextic(), 3, &c).map_err(err)?;
    ensure(r.dim == -1, format!("SmoothSextic k=3: dim {}", r.dim))?;
    Ok("pringle 0, quarticPtangent 1, quartic1 2/2, OkPlane 0, diag(0,1,i) -1, SmoothSextic -1".into())
}

fn tritangent_family() -> Outcome {
    let c = cfg();
    let r = compute_range(&gallery::tritangent_family((-1, 1)), 3, &c).map_err(err)?;
    ensure(r.dim == 2, format!("u=-1: dim {}", r.dim))?;
    let r = compute_range(&gallery::tritangent_family((-9, 4)), 3, &c).map_err(err)?;
    ensure(r.dim == -1, format!("u=-9/4: dim {}", r.dim))?;
    let u = gallery::tritangent_u_hat();
    let s = RangeSolver::new(&gallery::tritangent_family_f64(u), c);
    let d = halfplane_polygon(&s.data().pair, 3, 2880).map_err(err)?.diameter();
    ensure(d <= 1e-3, format!("u-hat polygon diameter {:.3e}", d))?;
    let r = s.compute(3).map_err(err)?;
    ensure(r.dim == 0, format!("u-hat: dim {} ({:?})", r.dim, r.diagnostics))?;
    let (a, b) = r.point.as_ref().map(|w| w.to_f64()).unwrap_or((f64::NAN, f64::NAN));
    Ok(format!("u=-1 dim 2, u=-9/4 dim -1, u-hat={:.12} diameter {:.2e} dim 0 at ({:.6}, {:.6})", u, d, a, b))
}

struct CorpusCase {
    name: String,
    a: ComplexMatrix,
    solver: RangeSolver,
    results: Vec<RangeResult>,
}

fn build_corpus() -> Result<Vec<CorpusCase>, String> {
    common::corpus()
        .into_par_iter()
        .map(|(name, a)| {
            let solver = RangeSolver::new(&a, cfg());
            let results = (1..=a.n())
                .map(|k| solver.compute(k).map_err(|e| format!("{} k={}: {}", name, k, e)))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(CorpusCase { name, a, solver, results })
        })
        .collect()
}

fn oracle_equivalence(corpus: &[CorpusCase]) -> Outcome {
    let mut disagreements = Vec::new();
    let mut flagged_matrices = 0;
    let mut cases = 0;
    for c in corpus {
        let eps = c.solver.epsilon();
        let mut flagged = false;
        for r in &c.results {
            cases += 1;
            let oracle = halfplane_polygon(&c.solver.data().pair, r.k, 1440).map_err(err)?.classify(eps);
            if r.ambiguous {
                flagged = true;
            } else if oracle != r.dim {
                disagreements.push(format!("{} k={}: solver {} oracle {}", c.name, r.k, r.dim, oracle));
            }
        }
        flagged_matrices += flagged as usize;
    }
    ensure(corpus.len() >= 50, "corpus too small")?;
    ensure(disagreements.is_empty(), disagreements.join("; "))?;
    let frac = flagged_matrices as f64 / corpus.len() as f64;
    ensure(frac < 0.05, format!("{} of {} matrices flagged", flagged_matrices, corpus.len()))?;
    Ok(format!("{} matrices, {} (matrix, k) cases, 0 disagreements, {} flagged", corpus.len(), cases, flagged_matrices))
}

/// The polygon oracle on block diagonal matrices, reported but not gated: kinks of
/// `lambda_k` leave the polygon about `pi / m` times the support length wide, which can
/// exceed epsilon for ranges of dimension 0 or 1.
fn block_oracle_info() -> String {
    let mut cases = 0;
    let mut differ = Vec::new();
    for (name, a) in common::block_corpus() {
        let solver = RangeSolver::new(&a, cfg());
        let eps = solver.epsilon();
        for k in 1..=a.n() {
            let Ok(r) = solver.compute(k) else {
                differ.push(format!("{} k={}: error", name, k));
                continue;
            };
            cases += 1;
            match halfplane_polygon(&solver.data().pair, k, 1440).map(|p| p.classify(eps)) {
                Ok(o) if o == r.dim || r.ambiguous => {}
                Ok(o) => differ.push(format!("{} k={}: solver {} polygon {}", name, k, r.dim, o)),
                Err(e) => differ.push(format!("{} k={}: {}", name, k, e)),
            }
        }
    }
    format!("{} block diagonal (matrix, k) cases, {} differ from the polygon: {}", cases, differ.len(), differ.join("; "))
}

fn eigenvalue_inequality(corpus: &[CorpusCase]) -> Outcome {
    let mut worst = f64::INFINITY;
    for c in corpus {
        let n = c.a.n();
        let pair = &c.solver.data().pair;
        for k in 1..=n {
            for j in 0..720 {
                let th = std::f64::consts::TAU * j as f64 / 720.0;
                let s = lambda_k_theta(pair, k, th).map_err(err)? + lambda_k_theta(pair, k, th + std::f64::consts::PI).map_err(err)?;
                if 2 * k <= n + 1 {
                    ensure(s >= -1e-9, format!("{} k={} theta={}: sum {:.3e}", c.name, k, th, s))?;
                    worst = worst.min(s);
                }
                if 2 * k >= n + 1 {
                    ensure(s <= 1e-9, format!("{} k={} theta={}: sum {:.3e}", c.name, k, th, s))?;
                    worst = worst.min(-s);
                }
            }
        }
    }
    Ok(format!("all corpus matrices at 720 angles, smallest slack {:.2e}", worst))
}

fn multiplicity_corank(corpus: &[CorpusCase]) -> Outcome {
    let mut rng = StdRng::seed_from_u64(8);
    let mut points = 0;
    let mut extra: Vec<(String, ComplexMatrix)> = ["pringle", "quartic_ptangent", "weird_tritangent", "circle_and_line", "ok_plane"]
        .iter()
        .map(|n| (n.to_string(), gallery::by_name(n).unwrap()))
        .collect();
    extra.push(("diag(0,1,i,1+i)".into(), ComplexMatrix::diag_int(&[(0, 0), (1, 0), (0, 1), (1, 1)])));
    extra.extend(corpus.iter().map(|c| (c.name.clone(), c.a.clone())));
    extra.extend(common::block_corpus());
    let mut mults = std::collections::BTreeMap::new();
    for (name, a) in &extra {
        let kd = kippenhahn_poly(a);
        let sing = nrange::kippenhahn::real_singular_points(&kd).map_err(|e| format!("{}: {}", name, e))?;
        for p in sing {
            if p.coords[1].is_zero() && p.coords[2].is_zero() {
                continue;
            }
            let m = multiplicity_at(&kd, &p).map_err(err)?;
            let mut lines = 0;
            while lines < 5 {
                let dir: [Q; 3] = std::array::from_fn(|_| q(rng.random_range(-50..=50), rng.random_range(1..=20)));
                if kd.f.restrict(&p.coords, &dir).is_zero() {
                    // the line is a component of the curve
                    continue;
                }
                lines += 1;
                let rel = if p.exact { 0.0 } else { 1e-10 };
                let ord = vanishing_order(&kd.f, &p.coords, &dir, rel);
                ensure(ord == m, format!("{} at {:?}: corank {} but order {}", name, p.to_f64(), m, ord))?;
            }
            *mults.entry(m).or_insert(0) += 1;
            points += 1;
        }
    }
    ensure(points > 0, "no real singular points found")?;
    Ok(format!("{} singular points x 5 lines, multiplicities {:?}", points, mults))
}

/// The eigenvalue of `c H + s K` near `approx`, polished by Newton steps on
/// `f(lambda, -c, -s)` in fixed point with 200 binary places.
fn support_value(f: &HomPoly3, c: &Q, s: &Q, approx: f64) -> Q {
    const BITS: usize = 200;
    let p = f.restrict(&[Q::zero(), -c, -s], &[Q::one(), Q::zero(), Q::zero()]);
    let den = p.coeffs().iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let coeffs: Vec<BigInt> = p.coeffs().iter().map(|x| (x * Q::from_integer(den.clone())).to_integer()).collect();
    let n = coeffs.len() - 1;
    let mut l = (q_from_f64(approx) * Q::from_integer(BigInt::one() << BITS)).round().to_integer();
    for _ in 0..4 {
        // value scaled by 2^(BITS n), derivative by 2^(BITS (n - 1))
        let (mut v, mut d) = (BigInt::zero(), BigInt::zero());
        for (i, x) in coeffs.iter().enumerate().rev() {
            d = d * &l + &v;
            v = v * &l + (x << (BITS * (n - i)));
        }
        if d.is_zero() {
            break;
        }
        let step = Q::new(v, d).round().to_integer();
        if step.is_zero() {
            break;
        }
        l -= step;
    }
    Q::new(l, BigInt::one() << BITS)
}

/// `g` with integer coefficients, evaluated at points rounded to `bits` binary places.
struct IntegerEval {
    coeffs: Vec<(usize, usize, BigInt)>,
    scale: BigInt,
    degree: usize,
    bits: u32,
}

impl IntegerEval {
    fn new(g: &BiPoly, bits: u32) -> Self {
        let terms = g.terms();
        let den = terms.iter().fold(BigInt::one(), |l, (_, _, c)| l.lcm(c.denom()));
        let coeffs: Vec<(usize, usize, BigInt)> =
            terms.iter().map(|(i, j, c)| (*i, *j, (c * Q::from_integer(den.clone())).to_integer())).collect();
        let scale = coeffs.iter().map(|(_, _, c)| c.abs()).max().unwrap_or_else(BigInt::one);
        let degree = coeffs.iter().map(|(i, j, _)| i + j).max().unwrap_or(0);
        IntegerEval { coeffs, scale, degree, bits }
    }

    /// `|g(a, b)| / max |coeff|`.
    fn normalized(&self, a: &Q, b: &Q) -> f64 {
        let unit = BigInt::one() << self.bits;
        let fixed = |x: &Q| (x * Q::from_integer(unit.clone())).round().to_integer();
        let powers = |x: &BigInt| {
            let mut v = vec![BigInt::one()];
            for e in 0..self.degree {
                let nx = &v[e] * x;
                v.push(nx);
            }
            v
        };
        let (pa, pb) = (powers(&fixed(a)), powers(&fixed(b)));
        let d = self.degree;
        let shift = |e: usize| e * self.bits as usize;
        let sum: BigInt = self.coeffs.iter().map(|(i, j, c)| (c * &pa[*i] * &pb[*j]) << shift(d - i - j)).sum();
        q_to_f64(&Q::new(sum, &self.scale << shift(d))).abs()
    }
}

fn boundary_vanishing(corpus: &[CorpusCase]) -> Outcome {
    let mut checked = 0;
    let mut worst = 0.0f64;
    for c in corpus {
        for r in c.results.iter().filter(|r| r.dim == 2) {
            let g = &c.solver.boundary().map_err(err)?.g;
            let pair = &c.solver.data().pair;
            let f = &c.solver.data().f;
            let ge = IntegerEval::new(g, 128);
            let delta = 1e-12;
            for i in 0..100 {
                let t0 = std::f64::consts::TAU * (i as f64 + 0.5) / 100.0;
                let t1 = t0 + delta;
                let (c0, s0) = (q_from_f64(t0.cos()), q_from_f64(t0.sin()));
                let (c1, s1) = (q_from_f64(t1.cos()), q_from_f64(t1.sin()));
                let h0 = support_value(f, &c0, &s0, lambda_k_theta(pair, r.k, t0).map_err(err)?);
                let h1 = support_value(f, &c1, &s1, lambda_k_theta(pair, r.k, t1).map_err(err)?);
                let det = &c0 * &s1 - &c1 * &s0;
                let a = (&h0 * &s1 - &h1 * &s0) / &det;
                let b = (&c0 * &h1 - &c1 * &h0) / &det;
                let v = ge.normalized(&a, &b);
                let (a, b) = (q_to_f64(&a), q_to_f64(&b));
                worst = worst.max(v);
                ensure(v <= 1e-6, format!("{} k={} theta={:.4}: |g| = {:.3e} at ({}, {})", c.name, r.k, t0, v, a, b))?;
            }
            checked += 1;
        }
    }
    ensure(checked > 0, "no two-dimensional cases")?;
    Ok(format!("{} two-dimensional (matrix, k) cases x 100 points, max normalized |g| {:.2e}", checked, worst))
}

fn witnesses_f64(r: &RangeResult) -> Vec<(f64, f64)> {
    match (&r.point, &r.endpoints) {
        (Some(p), _) => vec![p.to_f64()],
        (None, Some([p, q])) => vec![p.to_f64(), q.to_f64()],
        _ => Vec::new(),
    }
}

fn random_map(rng: &mut StdRng) -> AffineMap {
    loop {
        let mut r = || q(rng.random_range(-6..=6), rng.random_range(1..=4));
        if let Ok(l) = AffineMap::new(r(), r(), r(), r(), r(), r()) {
            return l;
        }
    }
}

fn equivariance(corpus: &[CorpusCase]) -> Outcome {
    let mut rng = StdRng::seed_from_u64(10);
    let mut subjects: Vec<(String, ComplexMatrix)> = ["pringle", "quartic_ptangent", "ok_plane", "circle_and_line"]
        .iter()
        .map(|n| (n.to_string(), gallery::by_name(n).unwrap()))
        .collect();
    let picks: Vec<usize> = (0..6).map(|_| rng.random_range(0..corpus.len())).collect();
    subjects.extend(picks.iter().map(|&i| (corpus[i].name.clone(), corpus[i].a.clone())));
    let maps: Vec<AffineMap> = (0..10).map(|_| random_map(&mut rng)).collect();
    let checks: Vec<Result<usize, String>> = subjects
        .par_iter()
        .zip(maps.par_iter())
        .map(|((name, a), l)| {
            let la = apply_affine(a, l);
            let (s, sl) = (RangeSolver::new(a, cfg()), RangeSolver::new(&la, cfg()));
            let mut compared = 0;
            for k in 1..=a.n() {
                let (r, rl) = (s.compute(k).map_err(err)?, sl.compute(k).map_err(err)?);
                ensure(r.dim == rl.dim, format!("{} k={}: dim {} vs {} after map", name, k, r.dim, rl.dim))?;
                let mut want: Vec<(f64, f64)> = witnesses_f64(&r).into_iter().map(|(x, y)| l.apply_f64(x, y)).collect();
                let mut got = witnesses_f64(&rl);
                let key = |p: &(f64, f64)| (p.0 * 1e6).round() as i64 * 1_000_000_000 + (p.1 * 1e6).round() as i64;
                want.sort_by_key(key);
                got.sort_by_key(key);
                ensure(want.len() == got.len(), format!("{} k={}: witness count", name, k))?;
                for (p, q) in want.iter().zip(&got) {
                    let d = (p.0 - q.0).abs().max((p.1 - q.1).abs());
                    ensure(d <= 1e-8 * (1.0 + p.0.abs().max(p.1.abs())), format!("{} k={}: witness {:?} vs {:?}", name, k, p, q))?;
                    compared += 1;
                }
                if r.dim == 2 {
                    for w in &r.representatives {
                        let (x, y) = l.apply(&w.a, &w.b);
                        let v = membership_test_exact(sl.data(), k, &x, &y, cfg().tol).map_err(err)?;
                        ensure(v.margin >= -cfg().tol, format!("{} k={}: mapped representative outside", name, k))?;
                    }
                }
            }
            Ok(compared)
        })
        .collect();
    let mut total = 0;
    for c in checks {
        total += c?;
    }
    Ok(format!("10 maps on {} matrices, dims equal, {} point witnesses within 1e-8", subjects.len(), total))
}

fn circle(ca: i64, cb: i64, r2: i64, den: i64) -> BiPoly {
    // (den a - ca)^2 + (den b - cb)^2 - r2
    BiPoly::from_i64_terms(&[
        (2, 0, den * den),
        (1, 0, -2 * den * ca),
        (0, 2, den * den),
        (0, 1, -2 * den * cb),
        (0, 0, ca * ca + cb * cb - r2),
    ])
}

fn line(p: i64, qa: i64, qb: i64) -> BiPoly {
    BiPoly::from_i64_terms(&[(0, 0, p), (1, 0, qa), (0, 1, qb)])
}

fn product(ps: &[BiPoly]) -> BiPoly {
    ps.iter().skip(1).fold(ps[0].clone(), |acc, p| &acc * p)
}

fn flood_components(g: &BiPoly, lo: f64, hi: f64, res: usize) -> (Vec<i32>, Vec<Option<usize>>) {
    let h = (hi - lo) / res as f64;
    let center = |i: usize| lo + (i as f64 + 0.5) * h;
    let sign: Vec<i32> = (0..res * res)
        .into_par_iter()
        .map(|idx| {
            let v = g.eval_f64(center(idx / res), center(idx % res));
            if v > 0.0 { 1 } else if v < 0.0 { -1 } else { 0 }
        })
        .collect();
    let mut label: Vec<Option<usize>> = vec![None; res * res];
    let mut next = 0;
    for start in 0..res * res {
        if label[start].is_some() || sign[start] == 0 {
            continue;
        }
        let mut queue = VecDeque::from([start]);
        label[start] = Some(next);
        while let Some(c) = queue.pop_front() {
            let (i, j) = (c / res, c % res);
            let mut nb = Vec::with_capacity(4);
            if i > 0 { nb.push(c - res) }
            if i + 1 < res { nb.push(c + res) }
            if j > 0 { nb.push(c - 1) }
            if j + 1 < res { nb.push(c + 1) }
            for d in nb {
                if label[d].is_none() && sign[d] == sign[c] {
                    label[d] = Some(next);
                    queue.push_back(d);
                }
            }
        }
        next += 1;
    }
    (sign, label)
}

fn component_reps() -> Outcome {
    let cases: Vec<(&str, BiPoly)> = vec![
        ("unit circle", circle(0, 0, 1, 1)),
        ("two disjoint circles", product(&[circle(-2, 0, 1, 1), circle(2, 1, 1, 1)])),
        ("overlapping circles", product(&[circle(-1, 0, 4, 2), circle(1, 0, 4, 2)])),
        ("nested circles", product(&[circle(0, 0, 1, 1), circle(0, 0, 4, 1)])),
        ("circle and secant", product(&[circle(0, 0, 4, 1), line(-1, 1, 1)])),
        ("triangle", product(&[line(0, 0, 1), line(0, 1, -1), line(-2, 1, 1)])),
        ("two by two lines", product(&[line(-1, 1, 0), line(1, 1, 0), line(-1, 0, 1), line(1, 0, 1)])),
        ("circle and cross", product(&[circle(0, 0, 4, 1), line(0, 1, 2), line(0, 2, -1)])),
        ("three circles", product(&[circle(0, 0, 9, 2), circle(2, 0, 9, 2), circle(1, 2, 9, 2)])),
        ("circle and tangent", product(&[circle(0, 0, 1, 1), line(-1, 0, 1), line(-3, 1, 0)])),
    ];
    let (lo, hi, res) = (-4.0, 4.0, 400usize);
    let h = (hi - lo) / res as f64;
    let mut summary = Vec::new();
    for (name, g) in &cases {
        let reps = bounded_component_reps(g).map_err(|e| format!("{}: {}", name, e))?;
        for (a, b) in &reps {
            ensure(!g.eval(a, b).is_zero(), format!("{}: representative on g = 0", name))?;
        }
        let (sign, label) = flood_components(g, lo, hi, res);
        let ncomp = label.iter().flatten().max().map_or(0, |m| m + 1);
        let mut touches = vec![false; ncomp];
        for idx in 0..res * res {
            if let Some(l) = label[idx] {
                let (i, j) = (idx / res, idx % res);
                if i == 0 || j == 0 || i + 1 == res || j + 1 == res {
                    touches[l] = true;
                }
            }
        }
        let mut covered = vec![false; ncomp];
        for (a, b) in &reps {
            let (fa, fb) = (q_to_f64(a), q_to_f64(b));
            let s = g.eval(a, b).signum();
            let s = if s.is_positive() { 1 } else { -1 };
            let (ci, cj) = (((fa - lo) / h).floor() as i64, ((fb - lo) / h).floor() as i64);
            for di in -1..=1 {
                for dj in -1..=1 {
                    let (i, j) = (ci + di, cj + dj);
                    if i < 0 || j < 0 || i >= res as i64 || j >= res as i64 {
                        continue;
                    }
                    let idx = i as usize * res + j as usize;
                    if let Some(l) = label[idx] {
                        if sign[idx] == s {
                            covered[l] = true;
                        }
                    }
                }
            }
        }
        let bounded: Vec<usize> = (0..ncomp).filter(|&l| !touches[l]).collect();
        let missed: Vec<usize> = bounded.iter().copied().filter(|&l| !covered[l]).collect();
        ensure(missed.is_empty(), format!("{}: {} of {} bounded components have no representative", name, missed.len(), bounded.len()))?;
        summary.push(format!("{} {}", bounded.len(), reps.len()));
    }
    Ok(format!("10 polynomials, (bounded components, representatives): {}", summary.join(", ")))
}

fn main() {
    let start = Instant::now();
    let mut failed = 0;
    let mut report = |id: usize, name: &str, t: Instant, o: Outcome| {
        let secs = t.elapsed().as_secs_f64();
        match o {
            Ok(m) => println!("criterion {:>2} PASS  {} ({:.1}s): {}", id, name, secs, m),
            Err(m) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {} ({:.1}s): {}", id, name, secs, m)
            }
        }
    };
    let t = Instant::now();
    report(1, "Kippenhahn polynomial goldens", t, kippenhahn_goldens());
    let t = Instant::now();
    report(2, "boundary polynomial goldens", t, boundary_goldens());
    let t = Instant::now();
    report(3, "membership goldens", t, membership_goldens());
    let t = Instant::now();
    report(4, "dimension goldens", t, dimension_goldens());
    let t = Instant::now();
    report(5, "tritangent family", t, tritangent_family());
    let t = Instant::now();
    let corpus = build_corpus();
    let corpus_secs = t.elapsed().as_secs_f64();
    match corpus {
        Ok(corpus) => {
            println!("corpus: {} matrices solved for every k in {:.1}s", corpus.len(), corpus_secs);
            let t = Instant::now();
            report(6, "oracle equivalence", t, oracle_equivalence(&corpus));
            let t = Instant::now();
            report(7, "eigenvalue inequality", t, eigenvalue_inequality(&corpus));
            let t = Instant::now();
            report(8, "multiplicity equals corank", t, multiplicity_corank(&corpus));
            let t = Instant::now();
            report(9, "boundary vanishing", t, boundary_vanishing(&corpus));
            let t = Instant::now();
            report(10, "affine equivariance", t, equivariance(&corpus));
            println!("info: {}", block_oracle_info());
        }
        Err(e) => {
            for (id, name) in [(6, "oracle equivalence"), (7, "eigenvalue inequality"), (8, "multiplicity equals corank"), (9, "boundary vanishing"), (10, "affine equivariance")] {
                report(id, name, Instant::now(), Err(format!("corpus failed: {}", e)));
            }
        }
    }
    let t = Instant::now();
    report(11, "bounded component representatives", t, component_reps());
    println!("acceptance: {} of 11 criteria passed in {:.1}s", 11 - failed, start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
