//! The Kippenhahn polynomial of a gallery matrix, its squarefree part and its real
//! singular points with their multiplicities.
//!
//! cargo run --example kippenhahn_curve -- pringle

use nrange::gallery;
use nrange::kippenhahn::{kippenhahn_poly, multiplicity_at, real_singular_points};

fn main() -> nrange::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "pringle".into());
    let a = gallery::by_name(&name).ok_or_else(|| nrange::Error::Parameter(format!("unknown matrix {}", name)))?;
    let kd = kippenhahn_poly(&a);
    println!("f_A  = {}", kd.f);
    println!("fred = {}", kd.fred);
    for p in real_singular_points(&kd)? {
        let [t, x, y] = p.to_f64();
        println!("singular point [{:.6} : {:.6} : {:.6}]  multiplicity {}  exact {}", t, x, y, multiplicity_at(&kd, &p)?, p.exact);
    }
    Ok(())
}
