//! The rank-3 range along the tritangent family: a disk-like set that shrinks to a point
//! at u-hat and is empty beyond.
//!
//! cargo run --release --example tritangent_family

use nrange::gallery;
use nrange::range_solver::{compute_range, halfplane_polygon, RangeSolver, SolverConfig};

fn main() -> nrange::Result<()> {
    let c = SolverConfig::default();
    for u in [(-1, 1), (-3, 2), (-9, 4)] {
        let r = compute_range(&gallery::tritangent_family(u), 3, &c)?;
        println!("u = {}/{}: dim {} via {:?}", u.0, u.1, r.dim, r.branch);
    }
    let u = gallery::tritangent_u_hat();
    let s = RangeSolver::new(&gallery::tritangent_family_f64(u), c);
    let d = halfplane_polygon(&s.data().pair, 3, 2880)?.diameter();
    let r = s.compute(3)?;
    println!("u-hat = {:.12}: polygon diameter {:.2e}, dim {}, point {:?}", u, d, r.dim, r.point.map(|w| w.to_f64()));
    Ok(())
}
