//! Tiny dense matrices over `F_p` with their own arithmetic, kept apart
//! from the main linear algebra so brute-force checks stay independent.

use crate::error::{Error, Result};
use crate::fields::{Elem, Field, FieldSpec};
use crate::linalg::Matrix;

pub const MAX_N: usize = 4;
/// Largest enumeration attempted.
pub const LIMIT: u64 = 1 << 20;

pub type Entries = [u32; MAX_N * MAX_N];
pub type Vec4 = [u32; MAX_N];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Small(pub Entries);

/// Matrices are numbered by base-`p` counting over row-major entries,
/// entry `(0, 0)` least significant.
#[derive(Clone, Copy, Debug)]
pub struct Ctx {
    pub p: u32,
    pub n: usize,
}

impl Ctx {
    pub fn new(p: u64, n: usize) -> Result<Self> {
        if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if n == 0 || n > MAX_N {
            return Err(Error::TooLarge(format!("dimension {n} outside 1..={MAX_N}")));
        }
        let ctx = Ctx { p: p as u32, n };
        ctx.guard(n * n)?;
        Ok(ctx)
    }

    /// Fails unless `p^digits ≤ 2^20`.
    pub fn guard(&self, digits: usize) -> Result<u64> {
        let mut total: u64 = 1;
        for _ in 0..digits {
            total = total.saturating_mul(self.p as u64);
            if total > LIMIT {
                return Err(Error::TooLarge(format!("{}^{digits} exceeds 2^20", self.p)));
            }
        }
        Ok(total)
    }

    pub fn count(&self) -> u32 {
        (self.p as u64).pow((self.n * self.n) as u32) as u32
    }

    pub fn vector_count(&self) -> u32 {
        (self.p as u64).pow(self.n as u32) as u32
    }

    pub fn decode(&self, mut code: u32) -> Small {
        let mut e = [0; MAX_N * MAX_N];
        for i in 0..self.n {
            for j in 0..self.n {
                e[i * MAX_N + j] = code % self.p;
                code /= self.p;
            }
        }
        Small(e)
    }

    pub fn encode(&self, m: &Small) -> u32 {
        let mut code = 0;
        for i in (0..self.n).rev() {
            for j in (0..self.n).rev() {
                code = code * self.p + m.0[i * MAX_N + j];
            }
        }
        code
    }

    pub fn decode_vec(&self, mut code: u32) -> Vec4 {
        let mut v = [0; MAX_N];
        for x in v.iter_mut().take(self.n) {
            *x = code % self.p;
            code /= self.p;
        }
        v
    }

    pub fn encode_vec(&self, v: &Vec4) -> u32 {
        v[..self.n].iter().rev().fold(0, |acc, &x| acc * self.p + x)
    }

    pub fn get(&self, m: &Small, i: usize, j: usize) -> u32 {
        m.0[i * MAX_N + j]
    }

    pub fn identity(&self) -> Small {
        self.scalar(1)
    }

    pub fn scalar(&self, c: u32) -> Small {
        let mut e = [0; MAX_N * MAX_N];
        for i in 0..self.n {
            e[i * MAX_N + i] = c % self.p;
        }
        Small(e)
    }

    pub fn add(&self, a: &Small, b: &Small) -> Small {
        let mut e = [0; MAX_N * MAX_N];
        for (k, x) in e.iter_mut().enumerate() {
            *x = (a.0[k] + b.0[k]) % self.p;
        }
        Small(e)
    }

    pub fn sub(&self, a: &Small, b: &Small) -> Small {
        let mut e = [0; MAX_N * MAX_N];
        for (k, x) in e.iter_mut().enumerate() {
            *x = (a.0[k] + self.p - b.0[k]) % self.p;
        }
        Small(e)
    }

    pub fn mul(&self, a: &Small, b: &Small) -> Small {
        let n = self.n;
        let p = self.p as u64;
        let mut e = [0; MAX_N * MAX_N];
        for i in 0..n {
            for j in 0..n {
                let s: u64 = (0..n).map(|k| a.0[i * MAX_N + k] as u64 * b.0[k * MAX_N + j] as u64).sum();
                e[i * MAX_N + j] = (s % p) as u32;
            }
        }
        Small(e)
    }

    pub fn apply(&self, a: &Small, v: &Vec4) -> Vec4 {
        let p = self.p as u64;
        let mut out = [0; MAX_N];
        for (i, o) in out.iter_mut().enumerate().take(self.n) {
            let s: u64 = (0..self.n).map(|k| a.0[i * MAX_N + k] as u64 * v[k] as u64).sum();
            *o = (s % p) as u32;
        }
        out
    }

    pub fn vec_add(&self, a: &Vec4, b: &Vec4) -> Vec4 {
        let mut out = [0; MAX_N];
        for k in 0..self.n {
            out[k] = (a[k] + b[k]) % self.p;
        }
        out
    }

    pub fn vec_neg(&self, a: &Vec4) -> Vec4 {
        let mut out = [0; MAX_N];
        for k in 0..self.n {
            out[k] = (self.p - a[k]) % self.p;
        }
        out
    }

    fn inv_scalar(&self, a: u32) -> u32 {
        // Fermat
        let (mut base, mut exp, mut acc) = (a as u64, self.p as u64 - 2, 1u64);
        let p = self.p as u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        acc as u32
    }

    /// Gauss-Jordan inverse, `None` when singular.
    pub fn inverse(&self, a: &Small) -> Option<Small> {
        let n = self.n;
        let p = self.p as u64;
        let mut m = a.0;
        let mut inv = self.identity().0;
        for col in 0..n {
            let piv = (col..n).find(|&r| m[r * MAX_N + col] != 0)?;
            for j in 0..n {
                m.swap(col * MAX_N + j, piv * MAX_N + j);
                inv.swap(col * MAX_N + j, piv * MAX_N + j);
            }
            let s = self.inv_scalar(m[col * MAX_N + col]) as u64;
            for j in 0..n {
                m[col * MAX_N + j] = (m[col * MAX_N + j] as u64 * s % p) as u32;
                inv[col * MAX_N + j] = (inv[col * MAX_N + j] as u64 * s % p) as u32;
            }
            for r in 0..n {
                let f = m[r * MAX_N + col] as u64;
                if r == col || f == 0 {
                    continue;
                }
                for j in 0..n {
                    m[r * MAX_N + j] = ((m[r * MAX_N + j] as u64 + (p - f) * m[col * MAX_N + j] as u64) % p) as u32;
                    inv[r * MAX_N + j] =
                        ((inv[r * MAX_N + j] as u64 + (p - f) * inv[col * MAX_N + j] as u64) % p) as u32;
                }
            }
        }
        Some(Small(inv))
    }

    /// Every invertible matrix with its inverse, in code order.
    pub fn general_linear(&self) -> Vec<(Small, Small)> {
        (0..self.count())
            .filter_map(|c| {
                let g = self.decode(c);
                self.inverse(&g).map(|gi| (g, gi))
            })
            .collect()
    }

    pub fn to_matrix(self, m: &Small) -> Matrix {
        let f = Field::prime(self.p as u64).expect("checked prime");
        let rows = (0..self.n)
            .map(|i| (0..self.n).map(|j| Elem::Residue(self.get(m, i, j) as u64)).collect())
            .collect();
        Matrix::from_rows(&f, rows).expect("square")
    }

    pub fn to_vector(self, v: &Vec4) -> Vec<Elem> {
        v[..self.n].iter().map(|&x| Elem::Residue(x as u64)).collect()
    }

    pub fn from_matrix(m: &Matrix) -> Result<(Self, Small)> {
        let FieldSpec::Prime { p } = m.field().spec() else {
            return Err(Error::InvalidField("brute force needs a prime field".into()));
        };
        if !m.is_square() {
            return Err(Error::DimensionMismatch("operator must be square".into()));
        }
        let ctx = Ctx::new(*p, m.rows())?;
        let mut e = [0; MAX_N * MAX_N];
        for i in 0..ctx.n {
            for j in 0..ctx.n {
                let Elem::Residue(x) = m.get(i, j) else { unreachable!("prime field entry") };
                e[i * MAX_N + j] = *x as u32;
            }
        }
        Ok((ctx, Small(e)))
    }

    /// Dimension of the `F_p`-span of the given matrices.
    pub fn span_rank(&self, ms: &[Small]) -> usize {
        let rows = ms
            .iter()
            .map(|m| (0..self.n * self.n).map(|k| m.0[(k / self.n) * MAX_N + k % self.n] as u64).collect())
            .collect();
        self.rank_rows(rows)
    }

    pub fn rank(&self, a: &Small) -> usize {
        let rows = (0..self.n).map(|i| (0..self.n).map(|j| self.get(a, i, j) as u64).collect()).collect();
        self.rank_rows(rows)
    }

    fn rank_rows(&self, mut rows: Vec<Vec<u64>>) -> usize {
        let p = self.p as u64;
        let width = rows.first().map_or(0, Vec::len);
        let mut rank = 0;
        for col in 0..width {
            let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else { continue };
            rows.swap(rank, piv);
            let s = self.inv_scalar(rows[rank][col] as u32) as u64;
            for x in rows[rank].iter_mut() {
                *x = *x * s % p;
            }
            let pivot_row = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row[col] != 0 {
                    let f = row[col];
                    for (x, y) in row.iter_mut().zip(&pivot_row) {
                        *x = (*x + (p - f) * y) % p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}
