//! Bounded search for roots of `p(y) = y² + t` modulo `p^e` in
//! `F_2(t)[x]/(p^e)`, with `p` read as a polynomial in `x`.
//!
//! Elements of `F_2[t]` are bitmasks (bit `i` is the coefficient of `t^i`).
//! A candidate `f = Σ (n_k / d_k) x^k` is cleared of denominators: with
//! `D = lcm d_k` and `g = D f`, `p(f) ≡ 0` iff `g² + t D² ≡ 0 (mod p^e)`,
//! which holds over `F_2[t][x]` because `p^e` is monic in `x`.

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Outcome of [`lift_search`]. Rational functions are `(numerator, denominator)`
/// bitmask pairs.
#[derive(Clone, Debug)]
pub struct LiftSearch {
    pub exponent: usize,
    pub terms: usize,
    pub max_degree: u32,
    /// Distinct reduced coefficient values tried.
    pub coefficient_values: usize,
    pub candidates: u64,
    pub solutions: Vec<Vec<(u64, u64)>>,
}

fn clmul(mut a: u64, mut b: u64) -> u64 {
    let mut r = 0;
    while b != 0 {
        if b & 1 == 1 {
            r ^= a;
        }
        a <<= 1;
        b >>= 1;
    }
    r
}

fn deg(a: u64) -> i32 {
    63 - a.leading_zeros() as i32
}

fn divrem(mut a: u64, b: u64) -> (u64, u64) {
    let db = deg(b);
    let mut q = 0;
    while a != 0 && deg(a) >= db {
        let s = deg(a) - db;
        q ^= 1 << s;
        a ^= b << s;
    }
    (q, a)
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = divrem(a, b).1;
        a = b;
        b = r;
    }
    a
}

fn lcm(a: u64, b: u64) -> u64 {
    divrem(clmul(a, b), gcd(a, b)).0
}

fn poly_mul(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] ^= clmul(x, y);
        }
    }
    out
}

/// Remainder modulo a polynomial monic in `x`.
fn poly_rem(mut a: Vec<u64>, m: &[u64]) -> Vec<u64> {
    let dm = m.len() - 1;
    while a.len() > dm {
        let c = a.pop().expect("nonempty");
        let shift = a.len() - dm;
        for (k, &mk) in m[..dm].iter().enumerate() {
            a[shift + k] ^= clmul(c, mk);
        }
    }
    a
}

/// Every `n/d` with `deg n, deg d ≤ max_degree`, reduced, zero included once.
fn coefficient_values(max_degree: u32) -> Vec<(u64, u64)> {
    let top = 1u64 << (max_degree + 1);
    let mut out = vec![(0, 1)];
    for d in 1..top {
        for n in 1..top {
            if gcd(n, d) == 1 {
                out.push((n, d));
            }
        }
    }
    out
}

/// Exhaustive search over `f = Σ_{k < terms} c_k x^k` for
/// `f² + t ≡ 0 (mod (x² + t)^exponent)`.
pub fn lift_search(exponent: usize, terms: usize, max_degree: u32) -> Result<LiftSearch> {
    if !(1..=2).contains(&exponent) || !(1..=4).contains(&terms) || max_degree > 3 {
        return Err(Error::TooLarge("search bounds outside exponent 1..=2, terms 1..=4, degree 0..=3".into()));
    }
    let values = coefficient_values(max_degree);
    let candidates = (values.len() as u64).pow(terms as u32);
    if candidates > 1 << 28 {
        return Err(Error::TooLarge(format!("{candidates} candidates")));
    }
    let p = [0b10u64, 0, 1];
    let modulus = (1..exponent).fold(p.to_vec(), |acc, _| poly_mul(&acc, &p));

    let solutions: Vec<Vec<(u64, u64)>> = (0..candidates)
        .into_par_iter()
        .filter_map(|mut idx| {
            let coeffs: Vec<(u64, u64)> = (0..terms)
                .map(|_| {
                    let c = values[(idx % values.len() as u64) as usize];
                    idx /= values.len() as u64;
                    c
                })
                .collect();
            let d = coeffs.iter().fold(1, |acc, &(_, dk)| lcm(acc, dk));
            let g: Vec<u64> = coeffs.iter().map(|&(nk, dk)| clmul(nk, divrem(d, dk).0)).collect();
            // D² p(g / D) = g² + t D²
            let mut value = poly_mul(&g, &g);
            value[0] ^= clmul(0b10, clmul(d, d));
            poly_rem(value, &modulus).iter().all(|&c| c == 0).then_some(coeffs)
        })
        .collect();
    Ok(LiftSearch { exponent, terms, max_degree, coefficient_values: values.len(), candidates, solutions })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bitmask_arithmetic() {
        // (t + 1)^2 = t^2 + 1
        assert_eq!(clmul(0b11, 0b11), 0b101);
        assert_eq!(divrem(0b101, 0b11), (0b11, 0));
        assert_eq!(gcd(0b110, 0b101), 0b11);
    }

    #[test]
    fn exponent_one_has_roots() {
        let r = lift_search(1, 2, 1).unwrap();
        // y = x is the only root of y^2 + t in the field F_2(t)[x]/(x^2 + t)
        assert_eq!(r.solutions, vec![vec![(0, 1), (1, 1)]]);
    }

    #[test]
    fn guards() {
        assert!(lift_search(3, 2, 1).is_err());
        assert!(lift_search(2, 5, 1).is_err());
    }
}
