//! Exact polynomial interpolation.

use num_traits::Zero;

use super::rational::Q;
use super::univariate::UniPoly;

/// Newton interpolation through `(xs[i], ys[i])`; nodes must be distinct.
pub fn interpolate(xs: &[Q], ys: &[Q]) -> UniPoly {
    let n = xs.len();
    assert_eq!(n, ys.len());
    let mut dd: Vec<Q> = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut acc = UniPoly::zero();
    for i in (0..n).rev() {
        acc = &(&acc * &UniPoly::linear_root(&xs[i])) + &UniPoly::constant(dd[i].clone());
    }
    acc
}

/// Integer nodes 0, 1, -1, 2, -2, ...
pub fn symmetric_nodes(count: usize) -> Vec<Q> {
    (0..count)
        .map(|i| {
            let k = i.div_ceil(2) as i64;
            let v = if i % 2 == 1 { k } else { -k };
            Q::from_integer(v.into())
        })
        .collect()
}

pub fn all_zero(v: &[Q]) -> bool {
    v.iter().all(|x| x.is_zero())
}
