#![allow(dead_code)]

use nrange::linalg_pencil::{ComplexMatrix, GaussQ};
use nrange::poly_core::rational::q;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub const CORPUS_SEED: u64 = 0x5eed_2024;

fn entry(rng: &mut StdRng) -> GaussQ {
    let d = [1, 1, 2, 3][rng.random_range(0..4)];
    GaussQ::new(q(rng.random_range(-3..=3), d), q(rng.random_range(-3..=3), d))
}

pub fn random_matrix(rng: &mut StdRng, n: usize) -> ComplexMatrix {
    ComplexMatrix::from_rows((0..n).map(|_| (0..n).map(|_| entry(rng)).collect()).collect()).unwrap()
}

/// Block diagonal matrix with blocks of size one to three.
pub fn random_blocks(rng: &mut StdRng, n: usize) -> ComplexMatrix {
    let mut blocks = Vec::new();
    let mut left = n;
    while left > 0 {
        let s = rng.random_range(1..=left.min(3));
        blocks.push(random_matrix(rng, s));
        left -= s;
    }
    let refs: Vec<&ComplexMatrix> = blocks.iter().collect();
    ComplexMatrix::block_diag(&refs)
}

/// Nine dense matrices for each n in 2..=7.
pub fn corpus() -> Vec<(String, ComplexMatrix)> {
    let mut rng = StdRng::seed_from_u64(CORPUS_SEED);
    let mut out = Vec::new();
    for n in 2..=7 {
        for i in 0..9 {
            out.push((format!("dense{}_{}", n, i), random_matrix(&mut rng, n)));
        }
    }
    out
}

/// Three block diagonal matrices for each n in 3..=6.
pub fn block_corpus() -> Vec<(String, ComplexMatrix)> {
    let mut rng = StdRng::seed_from_u64(CORPUS_SEED ^ 0xb10c);
    let mut out = Vec::new();
    for n in 3..=6 {
        for i in 0..3 {
            out.push((format!("blocks{}_{}", n, i), random_blocks(&mut rng, n)));
        }
    }
    out
}
