//! Dimension and witnesses of every rank-k range of a gallery matrix.
//!
//! cargo run --example rank_k_ranges -- quartic_ptangent

use nrange::gallery;
use nrange::range_solver::{RangeSolver, SolverConfig};

fn main() -> nrange::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "pringle".into());
    let a = gallery::by_name(&name).ok_or_else(|| nrange::Error::Parameter(format!("unknown matrix {}", name)))?;
    let solver = RangeSolver::new(&a, SolverConfig::default());
    for k in 1..=a.n() {
        let r = solver.compute(k)?;
        print!("k={} dim={:>2} {:?}", k, r.dim, r.branch);
        if let Some(p) = &r.point {
            print!(" point {:?}", p.to_f64());
        }
        if let Some([p, q]) = &r.endpoints {
            print!(" endpoints {:?} {:?}", p.to_f64(), q.to_f64());
        }
        if let Some(w) = r.representatives.first() {
            print!(" interior point {:?}", w.to_f64());
        }
        println!();
    }
    Ok(())
}
