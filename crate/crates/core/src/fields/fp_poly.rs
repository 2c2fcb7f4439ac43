//! Dense polynomials over a prime field `F_p`, used as the value type of
//! extension-field elements and of rational functions in `F_p(t)`.
//!
//! The modulus is passed explicitly to every operation; `p` is always a
//! prime below `2^32`, so products of two residues fit in a `u64`.

use std::cmp::Ordering;

/// Coefficients in ascending degree, no trailing zeros. The zero polynomial
/// is the empty vector.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FpPoly(pub Vec<u64>);

impl PartialOrd for FpPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FpPoly {
    /// Degree first, then coefficients from the leading term down.
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

pub(crate) fn mod_inv(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    mod_pow(a % p, p - 2, p)
}

pub(crate) fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

impl FpPoly {
    pub fn zero() -> Self {
        FpPoly(Vec::new())
    }

    pub fn one() -> Self {
        FpPoly(vec![1])
    }

    pub fn constant(c: u64, p: u64) -> Self {
        Self::from_coeffs(vec![c % p])
    }

    /// The monomial `t`.
    pub fn var() -> Self {
        FpPoly(vec![0, 1])
    }

    pub fn from_coeffs(mut c: Vec<u64>) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        FpPoly(c)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0 == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> u64 {
        self.0.last().copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Self, p: u64) -> Self {
        let n = self.0.len().max(other.0.len());
        let c = (0..n)
            .map(|i| (self.0.get(i).unwrap_or(&0) + other.0.get(i).unwrap_or(&0)) % p)
            .collect();
        Self::from_coeffs(c)
    }

    pub fn neg(&self, p: u64) -> Self {
        FpPoly(self.0.iter().map(|&a| (p - a) % p).collect())
    }

    pub fn sub(&self, other: &Self, p: u64) -> Self {
        self.add(&other.neg(p), p)
    }

    pub fn scale(&self, c: u64, p: u64) -> Self {
        Self::from_coeffs(self.0.iter().map(|&a| a * (c % p) % p).collect())
    }

    pub fn mul(&self, other: &Self, p: u64) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut c = vec![0u64; self.0.len() + other.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.0.iter().enumerate() {
                c[i + j] = (c[i + j] + a * b) % p;
            }
        }
        Self::from_coeffs(c)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, divisor: &Self, p: u64) -> (Self, Self) {
        assert!(!divisor.is_zero(), "FpPoly division by zero");
        let dd = divisor.0.len() - 1;
        if self.0.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let inv_lead = mod_inv(divisor.lead(), p);
        let mut rem = self.0.clone();
        let mut quot = vec![0u64; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd] * inv_lead % p;
            quot[k] = c;
            if c == 0 {
                continue;
            }
            for (j, &b) in divisor.0.iter().enumerate() {
                rem[k + j] = (rem[k + j] + p - c * b % p) % p;
            }
        }
        rem.truncate(dd);
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    pub fn rem(&self, divisor: &Self, p: u64) -> Self {
        self.divrem(divisor, p).1
    }

    /// Returns `(lead, self / lead)`; the zero polynomial maps to `(0, 0)`.
    pub fn monic(&self, p: u64) -> (u64, Self) {
        if self.is_zero() {
            return (0, Self::zero());
        }
        let l = self.lead();
        (l, self.scale(mod_inv(l, p), p))
    }

    pub fn gcd(&self, other: &Self, p: u64) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b, p);
            a = b;
            b = r;
        }
        a.monic(p).1
    }

    /// `(g, s, t)` with `s*self + t*other = g`, `g` monic (or zero).
    pub fn xgcd(&self, other: &Self, p: u64) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1, p);
            let s2 = s0.sub(&q.mul(&s1, p), p);
            let t2 = t0.sub(&q.mul(&t1, p), p);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = mod_inv(r0.lead(), p);
        (r0.scale(inv, p), s0.scale(inv, p), t0.scale(inv, p))
    }

    pub fn mul_mod(&self, other: &Self, modulus: &Self, p: u64) -> Self {
        self.mul(other, p).rem(modulus, p)
    }

    pub fn pow_mod(&self, mut exp: u128, modulus: &Self, p: u64) -> Self {
        let mut acc = Self::one().rem(modulus, p);
        let mut base = self.rem(modulus, p);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_mod(&base, modulus, p);
            }
            base = base.mul_mod(&base, modulus, p);
            exp >>= 1;
        }
        acc
    }

    /// Inverse modulo `modulus`, if it exists.
    pub fn inv_mod(&self, modulus: &Self, p: u64) -> Option<Self> {
        let (g, s, _) = self.rem(modulus, p).xgcd(modulus, p);
        g.is_one().then(|| s.rem(modulus, p))
    }

    pub fn derivative(&self, p: u64) -> Self {
        Self::from_coeffs(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &a)| (k as u64 % p) * a % p)
                .collect(),
        )
    }

    pub fn eval(&self, x: u64, p: u64) -> u64 {
        self.0.iter().rev().fold(0, |acc, &a| (acc * x + a) % p)
    }

    /// Rabin's irreducibility test for a polynomial of positive degree.
    pub fn is_irreducible(&self, p: u64) -> bool {
        let k = match self.degree() {
            None | Some(0) => return false,
            Some(k) => k,
        };
        if k == 1 {
            return true;
        }
        let f = self.monic(p).1;
        let x = Self::var();
        // x^(p^j) mod f for successive j
        let frob = |j: usize| -> Self {
            let mut h = x.clone();
            for _ in 0..j {
                h = h.pow_mod(p as u128, &f, p);
            }
            h
        };
        if frob(k) != x.rem(&f, p) {
            return false;
        }
        prime_divisors(k).into_iter().all(|r| {
            let h = frob(k / r).sub(&x, p);
            f.gcd(&h, p).is_one()
        })
    }

    /// All polynomials of degree `< bound` in increasing [`Ord`] order.
    pub fn enumerate_below(bound: usize, p: u64) -> Vec<Self> {
        let total = (p as usize).pow(bound as u32);
        let mut out: Vec<Self> = (0..total)
            .map(|mut idx| {
                let mut c = Vec::with_capacity(bound);
                for _ in 0..bound {
                    c.push((idx % p as usize) as u64);
                    idx /= p as usize;
                }
                Self::from_coeffs(c)
            })
            .collect();
        out.sort();
        out
    }
}

pub(crate) fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
