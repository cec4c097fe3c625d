//! Named example matrices with known rank-k numerical ranges.

use crate::linalg_pencil::{ComplexMatrix, GaussQ, Mode};
use crate::poly_core::rational::{q, qi, q_from_f64};

fn g(re: (i64, i64), im: (i64, i64)) -> GaussQ {
    GaussQ::new(q(re.0, re.1), q(im.0, im.1))
}

/// Weighted cyclic shift with weights 2, 4, 6, 8; a quartic with four singular points.
pub fn quartic1() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[&[0, 2, 0, 0], &[0, 0, 4, 0], &[0, 0, 0, 6], &[8, 0, 0, 0]]).unwrap()
}

/// Nilpotent 3x3 with a single nonzero entry; `f = t (t^2 - x^2 - y^2)`.
pub fn ok_plane() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[&[0, 0, 0], &[0, 0, 2], &[0, 0, 0]]).unwrap()
}

/// Symmetric 4x4 whose rank-two range is the origin.
pub fn pringle() -> ComplexMatrix {
    ComplexMatrix::from_int_rows(&[
        &[(0, 0), (2, 0), (0, 0), (0, 0)],
        &[(2, 0), (0, 0), (0, 1), (0, 0)],
        &[(0, 0), (0, 1), (0, 0), (1, 0)],
        &[(0, 0), (0, 0), (1, 0), (0, 0)],
    ])
    .unwrap()
}

/// `f = (t + x)(16 t^2 - x^2 - y^2) / 16`.
pub fn circle_and_line() -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(3);
    m.set(0, 0, GaussQ::one());
    m.set(1, 2, GaussQ::real(q(1, 2)));
    m
}

/// Quartic with a singular point whose rank-two range is a segment on `b = 0`.
pub fn quartic_ptangent() -> ComplexMatrix {
    let z = (0, 1);
    ComplexMatrix::from_rows(vec![
        vec![g((9, 50), z), g(z, (1, 2)), g((-6, 25), z), g((4, 15), z)],
        vec![g(z, (1, 2)), g((-1, 2), z), g(z, z), g(z, z)],
        vec![g((-6, 25), z), g(z, z), g((8, 25), z), g((1, 5), z)],
        vec![g((4, 15), z), g(z, z), g((1, 5), z), g(z, z)],
    ])
    .unwrap()
}

/// Quartic with three tangent lines through a singular point; the rank-two range is a point.
pub fn weird_tritangent() -> ComplexMatrix {
    ComplexMatrix::from_int_rows(&[
        &[(1, 1), (1, 0), (1, 0), (0, 0)],
        &[(1, 0), (-1, 0), (-1, 0), (0, 0)],
        &[(1, 0), (-1, 0), (-1, 0), (-1, 0)],
        &[(0, 0), (0, 0), (-1, 0), (0, 0)],
    ])
    .unwrap()
}

/// `blockdiag([[u(1+i), 3], [0, u(1+i)]], quartic1)`, exact for rational `u`.
pub fn tritangent_family(u: (i64, i64)) -> ComplexMatrix {
    let c = g(u, u);
    let mut b = ComplexMatrix::zeros(2);
    b.set(0, 0, c.clone());
    b.set(1, 1, c);
    b.set(0, 1, GaussQ::real(qi(3)));
    ComplexMatrix::block_diag(&[&b, &quartic1()])
}

/// The parameter of the tritangent family at which the rank-three range is a single point.
pub fn tritangent_u_hat() -> f64 {
    let s3 = 3f64.sqrt();
    (-4.0 * (540.0 + 330.0 * s3).sqrt() - 3.0 * (1374.0 + 792.0 * s3).sqrt()) / (72.0 + 44.0 * s3)
}

/// The tritangent family at an irrational parameter, stored in float mode.
pub fn tritangent_family_f64(u: f64) -> ComplexMatrix {
    let mut m = tritangent_family((0, 1));
    let c = GaussQ::new(q_from_f64(u), q_from_f64(u));
    m.set(0, 0, c.clone());
    m.set(1, 1, c);
    m.with_mode(Mode::Float)
}

/// Normal part `diag(1, 1, -1+i, -1+i, -1-i, -1-i)` plus a small generic perturbation.
pub fn smooth_sextic() -> ComplexMatrix {
    let d = [(1, 0), (1, 0), (-1, 1), (-1, 1), (-1, -1), (-1, -1)];
    let bm: [[i64; 6]; 6] = [
        [0, 1, 1, -1, 0, 1],
        [1, 0, 0, 0, 1, 0],
        [-1, 1, 1, -1, 1, 1],
        [1, 1, 1, 0, 1, 0],
        [0, -1, 1, 1, 1, -1],
        [-1, 0, 1, 0, 1, -1],
    ];
    let rows = (0..6)
        .map(|i| {
            (0..6)
                .map(|j| {
                    let (re, im) = if i == j { d[i] } else { (0, 0) };
                    GaussQ::new(qi(re) + q(bm[i][j], 5), qi(im))
                })
                .collect()
        })
        .collect();
    ComplexMatrix::from_rows(rows).unwrap()
}

/// All named matrices with exact entries.
pub fn all() -> Vec<(&'static str, ComplexMatrix)> {
    vec![
        ("quartic1", quartic1()),
        ("ok_plane", ok_plane()),
        ("pringle", pringle()),
        ("circle_and_line", circle_and_line()),
        ("quartic_ptangent", quartic_ptangent()),
        ("weird_tritangent", weird_tritangent()),
        ("tritangent_u_minus_1", tritangent_family((-1, 1))),
        ("tritangent_u_minus_9_4", tritangent_family((-9, 4))),
        ("smooth_sextic", smooth_sextic()),
    ]
}

pub fn by_name(name: &str) -> Option<ComplexMatrix> {
    if name == "tritangent_u_hat" {
        return Some(tritangent_family_f64(tritangent_u_hat()));
    }
    all().into_iter().find(|(n, _)| *n == name).map(|(_, m)| m)
}
