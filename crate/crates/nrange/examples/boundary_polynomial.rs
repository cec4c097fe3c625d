//! The boundary polynomial g_A split into its dual-curve part and its singular lines.
//!
//! cargo run --example boundary_polynomial -- circle_and_line

use nrange::boundary_dual::boundary_poly;
use nrange::gallery;
use nrange::kippenhahn::kippenhahn_poly;

fn main() -> nrange::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "circle_and_line".into());
    let a = gallery::by_name(&name).ok_or_else(|| nrange::Error::Parameter(format!("unknown matrix {}", name)))?;
    let bp = boundary_poly(&kippenhahn_poly(&a))?;
    println!("deg g = {}", bp.g.total_degree());
    println!("g     = {}", bp.g);
    for (kind, p) in bp.components() {
        println!("{:?}: {}", kind, p);
    }
    Ok(())
}
