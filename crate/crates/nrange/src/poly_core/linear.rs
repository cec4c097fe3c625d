//! Real linear factors of ternary forms.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::hompoly3::HomPoly3;
use super::rational::{pow10_inv, q, q_to_f64, rational_approx, Q};
use super::roots::real_roots;

/// `form[0]*t + form[1]*x + form[2]*y` dividing a ternary form.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearFactor {
    /// Normalized as `(1, a, b)`, `(0, 1, c)` or `(0, 0, 1)`.
    pub form: [Q; 3],
    /// `false` when the coefficients are high-precision approximations of irrationals.
    pub exact: bool,
    pub multiplicity: usize,
}

impl LinearFactor {
    /// The complex number `a + ib` for a form `t + a x + b y`.
    pub fn point(&self) -> Option<(Q, Q)> {
        if self.form[0].is_zero() {
            None
        } else {
            Some((self.form[1].clone(), self.form[2].clone()))
        }
    }

    pub fn point_f64(&self) -> Option<(f64, f64)> {
        self.point().map(|(a, b)| (q_to_f64(&a), q_to_f64(&b)))
    }

    pub fn form_f64(&self) -> [f64; 3] {
        std::array::from_fn(|i| q_to_f64(&self.form[i]))
    }
}

pub fn cross(u: &[Q; 3], v: &[Q; 3]) -> [Q; 3] {
    [
        &u[1] * &v[2] - &u[2] * &v[1],
        &u[2] * &v[0] - &u[0] * &v[2],
        &u[0] * &v[1] - &u[1] * &v[0],
    ]
}

pub fn normalize_form(l: &[Q; 3]) -> Option<[Q; 3]> {
    let i = (0..3).find(|&i| !l[i].is_zero())?;
    let c = l[i].clone();
    Some(std::array::from_fn(|j| if j < i { Q::zero() } else { &l[j] / &c }))
}

/// `f(t - a x - b y, x, y)`: the polynomial in coordinates where `t + a x + b y` becomes `t`.
pub fn shift_to_line(f: &HomPoly3, a: &Q, b: &Q) -> HomPoly3 {
    let z = Q::zero;
    f.substitute_linear(&[
        [Q::one(), -a, -b],
        [z(), Q::one(), z()],
        [z(), z(), Q::one()],
    ])
}

/// Largest `d` with `(t + a x + b y)^d` dividing `f`, and the cofactor.
///
/// With `divtol = None` divisibility is exact. Otherwise a power divides when the
/// discarded remainder has coefficients at most `divtol` times the largest coefficient.
pub fn divide_out_linear(f: &HomPoly3, a: &Q, b: &Q, divtol: Option<f64>) -> (usize, HomPoly3) {
    let (d, g) = divide_out_shifted(&shift_to_line(f, a, b), divtol);
    let z = Q::zero;
    let back = g.substitute_linear(&[
        [Q::one(), a.clone(), b.clone()],
        [z(), Q::one(), z()],
        [z(), z(), Q::one()],
    ]);
    (d, back)
}

/// Divides a shifted polynomial by the largest admissible power of `t`.
pub fn divide_out_shifted(fs: &HomPoly3, divtol: Option<f64>) -> (usize, HomPoly3) {
    let deg_t = fs.deg_in(0).max(0) as u32;
    let d = match divtol {
        None => fs.min_deg_in(0),
        Some(tol) => {
            let scale = q_to_f64(&fs.max_abs_coeff());
            let mut d = 0;
            while d < deg_t {
                let part = fs
                    .terms()
                    .filter(|(e, _)| e[0] == d)
                    .fold(0.0f64, |m, (_, c)| m.max(q_to_f64(c).abs()));
                if part > tol * scale {
                    break;
                }
                d += 1;
            }
            d
        }
    };
    let g = HomPoly3::from_terms(fs.terms().filter(|(e, _)| e[0] >= d).map(|(e, c)| ([e[0] - d, e[1], e[2]], c.clone())));
    (d as usize, g)
}

/// `y -> f(-a - b y, 1, y)`.
pub fn restrict_to_membership_line(f: &HomPoly3, a: &Q, b: &Q) -> super::univariate::UniPoly {
    f.restrict(&[-a, Q::one(), Q::zero()], &[-b, Q::zero(), Q::one()])
}

fn test_lines(k: i64) -> [([Q; 3], [Q; 3]); 2] {
    let m = k + 1;
    [
        ([q(1, 1), q(3 * m, 7), q(-2, 5 * m)], [q(2, 11), q(1, 1), q(5 + k, 13)]),
        ([q(1, 1), q(-4, 9 + k), q(m, 3)], [q(-3 * m, 17), q(2, 7), q(1, 1)]),
    ]
}

fn point_on(p: &[Q; 3], d: &[Q; 3], s: &Q) -> [Q; 3] {
    std::array::from_fn(|i| &p[i] + s * &d[i])
}

fn max_abs(v: &[Q; 3]) -> Q {
    v.iter().map(|x| x.abs()).max().unwrap()
}

/// Distinct real lines contained in `f = 0`, with their multiplicity in `f`.
pub fn linear_factors(f: &HomPoly3) -> Vec<LinearFactor> {
    let fs = f.squarefree();
    let d = fs.degree();
    if d <= 0 {
        return vec![];
    }
    let prec = pow10_inv(40);
    let lines = (0..40)
        .map(test_lines)
        .find(|[(p1, d1), (p2, d2)]| {
            let x = cross(&cross(p1, d1), &cross(p2, d2));
            let r1 = fs.restrict(p1, d1);
            let r2 = fs.restrict(p2, d2);
            r1.deg() == d
                && r2.deg() == d
                && !fs.eval(&x).is_zero()
                && r1.squarefree_part().deg() == d
                && r2.squarefree_part().deg() == d
        })
        .expect("generic test lines exist");
    let [(p1, d1), (p2, d2)] = lines;
    let r1 = fs.restrict(&p1, &d1);
    let r2 = fs.restrict(&p2, &d2);
    let full1 = f.restrict(&p1, &d1);
    let roots = |r: &super::univariate::UniPoly| -> Vec<(Q, bool)> {
        let iso = real_roots(r, &prec).expect("nonzero restriction");
        iso.intervals
            .iter()
            .map(|iv| {
                let m = iv.mid();
                let c = rational_approx(&m, &BigInt::from(1_000_000));
                if iv.is_exact() {
                    (m, true)
                } else if r.eval(&c).is_zero() {
                    (c, true)
                } else {
                    (m, false)
                }
            })
            .collect()
    };
    let s1 = roots(&r1);
    let s2 = roots(&r2);
    let full_iso = real_roots(&full1, &prec).expect("nonzero restriction");
    let mut out: Vec<LinearFactor> = Vec::new();
    for (a, ea) in &s1 {
        let x1 = point_on(&p1, &d1, a);
        for (b, eb) in &s2 {
            let x2 = point_on(&p2, &d2, b);
            let l = cross(&x1, &x2);
            let Some(form) = normalize_form(&l) else { continue };
            let exact = *ea && *eb;
            let ok = if exact {
                fs.exact_div(&HomPoly3::linear(&form)).is_some()
            } else {
                vanishes_on_line(&fs, &x1, &x2)
            };
            if !ok {
                continue;
            }
            let multiplicity = if exact {
                let lf = HomPoly3::linear(&form);
                let mut g = f.clone();
                let mut m = 0;
                while let Some(h) = g.exact_div(&lf) {
                    g = h;
                    m += 1;
                }
                m
            } else {
                full_iso
                    .intervals
                    .iter()
                    .min_by_key(|iv| (&iv.mid() - a).abs())
                    .map(|iv| iv.multiplicity)
                    .unwrap_or(1)
            };
            out.push(LinearFactor { form, exact, multiplicity });
            break;
        }
    }
    out
}

/// High-precision check that `f` vanishes on the line through `x1`, `x2`.
fn vanishes_on_line(f: &HomPoly3, x1: &[Q; 3], x2: &[Q; 3]) -> bool {
    let scale = max_abs(x1).max(max_abs(x2));
    let tol = pow10_inv(25);
    [q(1, 3), q(-2, 1), q(7, 5)].iter().all(|u| {
        let p: [Q; 3] = std::array::from_fn(|i| (&x1[i] + u * &x2[i]) / &scale);
        let fpf: [f64; 3] = std::array::from_fn(|i| q_to_f64(&p[i]));
        if f.eval_f64(fpf).abs() > 1e-6 * (1.0 + f.abs_eval_f64(fpf)) {
            return false;
        }
        let v = f.eval(&p).abs();
        let size = Q::from_float(f.abs_eval_f64(fpf)).unwrap_or_else(Q::zero) + Q::from_integer(1.into());
        v <= &tol * size
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly_core::rational::qi;

    fn conic() -> HomPoly3 {
        HomPoly3::from_i64_terms(&[([2, 0, 0], 1), ([0, 2, 0], -1), ([0, 0, 2], -4)])
    }

    #[test]
    fn finds_rational_factor_with_multiplicity() {
        let l = HomPoly3::linear(&[qi(2), qi(1), qi(-3)]);
        let f = &conic() * &l.pow(2);
        let fs = linear_factors(&f);
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0].form, [qi(1), q(1, 2), q(-3, 2)]);
        assert!(fs[0].exact);
        assert_eq!(fs[0].multiplicity, 2);
        assert_eq!(fs[0].point(), Some((q(1, 2), q(-3, 2))));
    }

    #[test]
    fn finds_irrational_pair() {
        // t^2 - 2x^2 = (t - sqrt2 x)(t + sqrt2 x), times y
        let f = &HomPoly3::from_i64_terms(&[([2, 0, 0], 1), ([0, 2, 0], -2)]) * &HomPoly3::var(2);
        let mut fs = linear_factors(&f);
        fs.sort_by(|a, b| a.form.partial_cmp(&b.form).unwrap());
        assert_eq!(fs.len(), 3);
        assert!(fs[0].exact && fs[0].form == [qi(0), qi(0), qi(1)]);
        let a: Vec<f64> = fs[1..].iter().map(|l| l.form_f64()[1]).collect();
        assert!((a[0] + 2f64.sqrt()).abs() < 1e-12 && (a[1] - 2f64.sqrt()).abs() < 1e-12);
        assert!(!fs[1].exact && fs[1].multiplicity == 1);
    }

    #[test]
    fn divide_out_circle_and_line() {
        let circle = HomPoly3::from_i64_terms(&[([2, 0, 0], 16), ([0, 2, 0], -1), ([0, 0, 2], -1)]).scale(&q(1, 16));
        let f = &HomPoly3::linear(&[qi(1), qi(1), qi(0)]) * &circle;
        let (d, g) = divide_out_linear(&f, &qi(1), &qi(0), None);
        assert_eq!((d, &g), (1, &circle));
        assert_eq!(restrict_to_membership_line(&g, &qi(1), &qi(0)), crate::poly_core::UniPoly::from_i64(&[15, 0, -1]).scale(&q(1, 16)));
        let (d, g) = divide_out_linear(&f, &(qi(1) + q(1, 1_000_000_000_000)), &qi(0), Some(1e-8));
        assert_eq!(d, 1);
        assert!(g.degree() == 2);
        let sq = HomPoly3::from_i64_terms(&[([2, 0, 0], 1), ([0, 2, 0], -1)]);
        assert_eq!(divide_out_linear(&sq, &qi(2), &qi(0), None), (0, sq.clone()));
        let cube = HomPoly3::linear(&[qi(1), qi(1), qi(0)]).pow(3);
        assert_eq!(divide_out_linear(&cube, &qi(1), &qi(0), None), (3, HomPoly3::one()));
    }

    #[test]
    fn membership_line_examples() {
        assert!(restrict_to_membership_line(&HomPoly3::var(0), &qi(0), &qi(0)).is_zero());
        let cone = HomPoly3::from_i64_terms(&[([2, 0, 0], 1), ([0, 2, 0], -1), ([0, 0, 2], -1)]);
        assert_eq!(restrict_to_membership_line(&cone, &qi(0), &qi(1)), crate::poly_core::UniPoly::from_i64(&[-1]));
    }

    #[test]
    fn irreducible_conic_has_none() {
        assert!(linear_factors(&conic()).is_empty());
    }
}
