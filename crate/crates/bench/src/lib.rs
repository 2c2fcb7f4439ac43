//! Seeded inputs shared by the benchmarks.

use dynlin_core::{Field, Matrix, Polynomial};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_invertible<R: Rng>(f: &Field, n: usize, r: &mut R) -> Matrix {
    loop {
        let g = Matrix::random(f, n, n, r, 2);
        if g.is_invertible() {
            return g;
        }
    }
}

/// A conjugate of `C(x - 1)^⊕2 ⊕ C((x^2 + 1)^2) ⊕ ...`, repeated until the
/// size reaches `n`: several primaries with nontrivial multiplicities.
pub fn layered(f: &Field, n: usize, seed: u64) -> Matrix {
    let mut r = rng(seed);
    let x1 = Polynomial::from_i64(f, &[-1, 1]);
    let quad = Polynomial::from_i64(f, &[1, 0, 1]);
    let pieces = [x1.clone(), x1.clone(), quad.pow(2), x1.pow(3), quad];
    let mut blocks = Vec::new();
    let mut size = 0;
    for p in pieces.iter().cycle() {
        let d = p.degree().unwrap_or(0);
        if size + d > n {
            break;
        }
        blocks.push(Matrix::companion(p));
        size += d;
    }
    while size < n {
        blocks.push(Matrix::companion(&Polynomial::from_i64(f, &[-2, 1])));
        size += 1;
    }
    let b = Matrix::block_diag(f, &blocks);
    let g = random_invertible(f, n, &mut r);
    g.mul(&b).mul(&g.inverse().expect("invertible"))
}
