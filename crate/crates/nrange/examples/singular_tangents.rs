//! Tangent lines through each real singular point, the antipodal singular points for a
//! rank, and the tritangent candidates inside a box.
//!
//! cargo run --example singular_tangents -- quartic_ptangent 2

use nrange::boundary_dual::{antipodal_span, singularity_tangents, tritangent_candidates};
use nrange::gallery;
use nrange::kippenhahn::{kippenhahn_poly, real_singular_points};

fn main() -> nrange::Result<()> {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "quartic_ptangent".into());
    let k: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(2);
    let a = gallery::by_name(&name).ok_or_else(|| nrange::Error::Parameter(format!("unknown matrix {}", name)))?;
    let kd = kippenhahn_poly(&a);
    let sing = real_singular_points(&kd)?;
    for p in &sing {
        let ts = singularity_tangents(&kd, p)?;
        println!("{:?} multiplicity {}:", p.to_f64(), ts.multiplicity);
        for t in &ts.points {
            println!("  tangent point ({}, {}) {:?}", t.a, t.b, t.source);
        }
    }
    let span = antipodal_span(&kd, k, &sing);
    println!("k={}: {} antipodal points spanning dimension {}, line {:?}", k, span.points.len(), span.dim, span.vperp);
    for c in tritangent_candidates(&kd, None, [-2.0, 2.0, -2.0, 2.0]) {
        println!("candidate ({:.9}, {:.9}) {:?}", c.a, c.b, c.source);
    }
    Ok(())
}
