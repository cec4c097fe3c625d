//! Outer polygons from sampled supporting halfplanes, and how their size settles as the
//! number of angles grows.
//!
//! cargo run --example support_polygon

use nrange::gallery;
use nrange::linalg_pencil::hermitian_parts;
use nrange::range_solver::halfplane_polygon;

fn main() -> nrange::Result<()> {
    let pair = hermitian_parts(&gallery::quartic1());
    for k in 1..=2 {
        for m in [90, 360, 1440] {
            let p = halfplane_polygon(&pair, k, m)?;
            println!("k={} m={:>4}: {} vertices, area {:.6}, diameter {:.6}", k, m, p.vertices.len(), p.area(), p.diameter());
        }
    }
    let p = halfplane_polygon(&hermitian_parts(&gallery::ok_plane()), 2, 720)?;
    println!("ok_plane k=2: diameter {:.2e}, centroid {:?}", p.diameter(), p.centroid());
    Ok(())
}
