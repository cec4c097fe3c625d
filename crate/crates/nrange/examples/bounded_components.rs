//! Points in every bounded component of the complement of g = 0, with the sign of g.
//!
//! cargo run --example bounded_components

use nrange::poly_core::rational::sign;
use nrange::poly_core::BiPoly;
use nrange::range_solver::bounded_component_reps;
use num_traits::ToPrimitive;

fn main() -> nrange::Result<()> {
    // two overlapping unit circles and the line b = a
    let c1 = BiPoly::from_i64_terms(&[(2, 0, 1), (0, 2, 1), (0, 0, -1)]);
    let c2 = BiPoly::from_i64_terms(&[(2, 0, 1), (1, 0, -2), (0, 2, 1)]);
    let line = BiPoly::from_i64_terms(&[(0, 1, 1), (1, 0, -1)]);
    let g = &(&c1 * &c2) * &line;
    for (a, b) in bounded_component_reps(&g)? {
        println!("({:+.6}, {:+.6})  sign g = {:+}", a.to_f64().unwrap(), b.to_f64().unwrap(), sign(&g.eval(&a, &b)));
    }
    Ok(())
}
