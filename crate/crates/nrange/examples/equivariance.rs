//! Ranges move with the matrix under a + ib -> L(a, b): both the dimension and the
//! witnesses follow the affine map.
//!
//! cargo run --example equivariance

use nrange::gallery;
use nrange::kippenhahn::{apply_affine, kippenhahn_poly, AffineMap};
use nrange::membership::membership_test;
use nrange::poly_core::rational::q;
use nrange::range_solver::{compute_range, SolverConfig};

fn main() -> nrange::Result<()> {
    let l = AffineMap::new(q(1, 2), q(-1, 3), q(2, 1), q(1, 1), q(1, 4), q(3, 2))?;
    let c = SolverConfig::default();
    for name in ["pringle", "quartic_ptangent", "ok_plane"] {
        let a = gallery::by_name(name).unwrap();
        let la = apply_affine(&a, &l);
        for k in 1..=a.n() {
            let (r, lr) = (compute_range(&a, k, &c)?, compute_range(&la, k, &c)?);
            let first = r.point.iter().chain(r.endpoints.iter().flatten()).chain(r.representatives.iter()).next();
            let moved = first.map(|w| {
                let (x, y) = l.apply_f64(w.to_f64().0, w.to_f64().1);
                let v = membership_test(&kippenhahn_poly(&la), k, x, y, 1e-9).unwrap();
                ((x, y), v.member)
            });
            println!("{} k={}: dim {} -> {}, L(witness) and membership in L(A): {:?}", name, k, r.dim, lr.dim, moved);
        }
    }
    Ok(())
}
