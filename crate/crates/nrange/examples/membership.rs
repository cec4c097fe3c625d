//! Membership of a few points in the rank-k ranges, with the signed margin.
//!
//! cargo run --example membership

use nrange::gallery;
use nrange::kippenhahn::kippenhahn_poly;
use nrange::membership::{membership_test, membership_test_exact};
use nrange::poly_core::rational::q;

fn main() -> nrange::Result<()> {
    let kd = kippenhahn_poly(&gallery::quartic_ptangent());
    let left = (4.0 - 41f64.sqrt()) / 25.0;
    for (x, y) in [(left, 0.0), (left - 1e-3, 0.0), (0.2, 0.0), (0.2, 0.1)] {
        let v = membership_test(&kd, 2, x, y, 1e-9)?;
        println!("k=2 ({:+.6}, {:+.6}): member {} margin {:+.3e}", x, y, v.member, v.margin);
    }
    let v = membership_test_exact(&kd, 2, &q(1, 3), &q(0, 1), 1e-9)?;
    println!("k=2 (1/3, 0): member {} margin {:+.3e} certified {}", v.member, v.margin, v.certified);
    Ok(())
}
