use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poly_core::rational::{pow10_inv, Q};
use crate::poly_core::resultant::resultant_bi;
use crate::poly_core::roots::{real_roots, separating_points};
use crate::poly_core::BiPoly;

/// Midpoints between consecutive real roots of `a -> g(a, b)`.
fn line_midpoints(g: &BiPoly, b: &Q) -> Result<Vec<Q>> {
    let p = g.eval_other(b);
    if p.deg() < 2 {
        return Ok(Vec::new());
    }
    let iso = real_roots(&p, &pow10_inv(12))?;
    if iso.len() < 2 {
        return Ok(Vec::new());
    }
    Ok(separating_points(&iso, false))
}

/// Critical values in `b`: real roots of the content and of `Disc_a` of the primitive part.
fn critical_polynomial(g: &BiPoly) -> crate::poly_core::UniPoly {
    let content = g.content_main();
    let pp = g.primitive_part_main();
    if pp.deg_main() >= 1 {
        &content * &resultant_bi(&pp, &pp.partial_main())
    } else {
        content
    }
}

/// At least one point in every bounded connected component of the complement of `g = 0`.
pub fn bounded_component_reps(g: &BiPoly) -> Result<Vec<(Q, Q)>> {
    if g.is_constant() {
        return Err(Error::Domain("bounded components need a nonconstant polynomial".into()));
    }
    if g.deg_main() < 1 {
        // shear so that a appears: g'(a, b) = g(a, a + b)
        let z = Q::zero();
        let sheared = g.affine_substitute([&z, &Q::one(), &z], [&z, &Q::one(), &Q::one()]);
        return Ok(bounded_component_reps(&sheared)?.into_iter().map(|(a, b)| (a.clone(), &a + &b)).collect());
    }
    let h = critical_polynomial(g);
    if h.deg() < 2 {
        return Ok(Vec::new());
    }
    let iso = real_roots(&h, &pow10_inv(12))?;
    if iso.len() < 2 {
        return Ok(Vec::new());
    }
    let bs = separating_points(&iso, false);
    sweep(g, &bs)
}

/// Midpoints of `g(., b) = 0` on each horizontal line `b` in `bs`.
pub fn sweep(g: &BiPoly, bs: &[Q]) -> Result<Vec<(Q, Q)>> {
    let per_line: Vec<Vec<(Q, Q)>> = bs
        .par_iter()
        .map(|b| Ok(line_midpoints(g, b)?.into_iter().map(|a| (a, b.clone())).collect()))
        .collect::<Result<_>>()?;
    Ok(per_line.into_iter().flatten().collect())
}
