#![allow(dead_code)]

use dynlin_core::{Elem, Field, FpPoly, Matrix, Polynomial};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q() -> Field {
    Field::rationals()
}

pub fn fp(p: u64) -> Field {
    Field::prime(p).unwrap()
}

/// `F_4 = F_2[a]/(a^2 + a + 1)`.
pub fn f4() -> Field {
    Field::extension(2, FpPoly::from_coeffs(vec![1, 1, 1])).unwrap()
}

pub fn f2t() -> Field {
    Field::rational_functions(2).unwrap()
}

pub fn random_invertible<R: Rng>(f: &Field, n: usize, rng: &mut R) -> Matrix {
    loop {
        let g = Matrix::random(f, n, n, rng, 2);
        if g.is_invertible() {
            return g;
        }
    }
}

/// A random monic polynomial of degree `d` with small coefficients.
pub fn random_monic<R: Rng>(f: &Field, d: usize, rng: &mut R) -> Polynomial {
    let mut c: Vec<Elem> = (0..d).map(|_| f.random(rng, 1)).collect();
    c.push(f.one());
    Polynomial::new(f, c)
}

/// A random conjugate of a block sum of companions of prime powers, so that
/// repeated primes and nontrivial nilpotent parts are common.
pub fn structured<R: Rng>(f: &Field, n: usize, rng: &mut R) -> Matrix {
    let mut blocks = Vec::new();
    let mut left = n;
    let mut pool: Vec<Polynomial> = Vec::new();
    while left > 0 {
        let p = if !pool.is_empty() && rng.random_bool(0.5) {
            pool[rng.random_range(0..pool.len())].clone()
        } else {
            let d = if left >= 2 && rng.random_bool(0.3) { 2 } else { 1 };
            let p = random_monic(f, d, rng);
            pool.push(p.clone());
            p
        };
        let d = p.degree().unwrap();
        if d > left {
            continue;
        }
        let k = rng.random_range(1..=left / d);
        blocks.push(Matrix::companion(&p.pow(k)));
        left -= d * k;
    }
    let b = Matrix::block_diag(f, &blocks);
    let g = random_invertible(f, n, rng);
    g.mul(&b).mul(&g.inverse().unwrap())
}

/// Half structured, half uniformly random matrices of size `1..=max_n`.
pub fn sample<R: Rng>(f: &Field, max_n: usize, rng: &mut R) -> Matrix {
    let n = rng.random_range(1..=max_n);
    if rng.random_bool(0.5) {
        structured(f, n, rng)
    } else {
        Matrix::random(f, n, n, rng, 2)
    }
}
