//! Exact dense linear algebra over a [`Field`].
//!
//! Row reduction over the rationals runs fraction-free (Bareiss) on a
//! denominator-cleared copy; every other field uses plain Gauss–Jordan.

mod minpoly;
mod smith;
mod subspace;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::fields::{Elem, Field, FieldSpec};
use crate::poly::Polynomial;

pub use minpoly::{
    apply_polynomial, characteristic_polynomial, minimal_polynomial, minimal_polynomial_krylov,
    minimal_polynomial_smith,
    vector_annihilator,
};
pub use smith::{smith_diagonal, smith_normal_form, PolyMatrix, SmithForm};
pub use subspace::Subspace;

pub type Vector = Vec<Elem>;

/// Row-major matrix over a field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        Matrix { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn scalar(field: &Field, n: usize, c: &Elem) -> Self {
        Self::identity(field, n).scale(c)
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<Elem>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        if rows.iter().flatten().any(|e| !field.contains(e)) {
            return Err(Error::FieldMismatch);
        }
        Ok(Matrix { field: field.clone(), rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(field: &Field, rows: &[&[i64]]) -> Self {
        let v = rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect();
        Self::from_rows(field, v).expect("rectangular")
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: &Field, n: usize, cols: &[Vector]) -> Self {
        let mut m = Self::zeros(field, n, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn random<R: Rng + ?Sized>(field: &Field, rows: usize, cols: usize, rng: &mut R, height: u32) -> Self {
        let mut m = Self::zeros(field, rows, cols);
        for x in m.data.iter_mut() {
            *x = field.random(rng, height);
        }
        m
    }

    /// Companion matrix of a monic `p`: ones on the subdiagonal, last
    /// column `-c_0, ..., -c_{m-1}`.
    pub fn companion(p: &Polynomial) -> Self {
        let field = p.field();
        let p = p.make_monic();
        let m = p.degree().unwrap_or(0);
        let mut c = Self::zeros(field, m, m);
        for i in 0..m {
            if i + 1 < m {
                c.set(i + 1, i, field.one());
            }
            c.set(i, m - 1, field.neg(&p.coeff(i)));
        }
        c
    }

    /// Jordan block `λI + J_s` with ones on the superdiagonal.
    pub fn jordan(field: &Field, lambda: &Elem, s: usize) -> Self {
        let mut m = Self::scalar(field, s, lambda);
        for i in 0..s.saturating_sub(1) {
            m.set(i, i + 1, field.one());
        }
        m
    }

    pub fn block_diag(field: &Field, blocks: &[Matrix]) -> Self {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(field, r, c);
        let (mut i0, mut j0) = (0, 0);
        for b in blocks {
            m.set_block(i0, j0, b);
            i0 += b.rows;
            j0 += b.cols;
        }
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vector {
        self.row(i).to_vec()
    }

    pub fn col(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row_vec(i)).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn entries(&self) -> &[Elem] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<Elem>> {
        self.row_vectors()
    }

    pub fn set_block(&mut self, i0: usize, j0: usize, b: &Matrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(i0 + i, j0 + j, b.get(i, j).clone());
            }
        }
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        let mut m = Self::zeros(&self.field, rows.len(), cols.len());
        for (a, i) in rows.clone().enumerate() {
            for (b, j) in cols.clone().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    fn same_shape(&self, other: &Self) {
        assert_eq!(self.field, other.field, "matrices over different fields");
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_shape(other);
        let data = self.data.iter().zip(&other.data).map(|(a, b)| self.field.add(a, b)).collect();
        Matrix { data, ..self.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.same_shape(other);
        let data = self.data.iter().zip(&other.data).map(|(a, b)| self.field.sub(a, b)).collect();
        Matrix { data, ..self.clone() }
    }

    pub fn neg(&self) -> Self {
        let data = self.data.iter().map(|a| self.field.neg(a)).collect();
        Matrix { data, ..self.clone() }
    }

    pub fn scale(&self, c: &Elem) -> Self {
        let data = self.data.iter().map(|a| self.field.mul(a, c)).collect();
        Matrix { data, ..self.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.field, other.field, "matrices over different fields");
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let f = &self.field;
        let mut m = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if f.is_zero(b) {
                        continue;
                    }
                    let idx = i * m.cols + j;
                    m.data[idx] = f.add(&m.data[idx], &f.mul(a, b));
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[Elem]) -> Vector {
        assert_eq!(self.cols, v.len(), "shape mismatch");
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).fold(f.zero(), |acc, (a, b)| {
                    if f.is_zero(a) || f.is_zero(b) {
                        acc
                    } else {
                        f.add(&acc, &f.mul(a, b))
                    }
                })
            })
            .collect()
    }

    pub fn pow(&self, mut exp: usize) -> Self {
        let mut acc = Self::identity(&self.field, self.rows);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| self.field.is_zero(a))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(&self.field, self.rows)
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        self.mul(other) == other.mul(self)
    }

    pub fn trace(&self) -> Elem {
        (0..self.rows.min(self.cols)).fold(self.field.zero(), |acc, i| self.field.add(&acc, self.get(i, i)))
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        match self.field.spec() {
            FieldSpec::Rationals => self.rref_bareiss(),
            _ => self.rref_gauss(),
        }
    }

    fn rref_gauss(&self) -> (Matrix, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = f.inv(m.get(r, c)).expect("nonzero pivot");
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), &inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || f.is_zero(m.get(i, c)) {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// Fraction-free forward elimination on an integer copy, then exact
    /// back substitution to reach reduced form.
    fn rref_bareiss(&self) -> (Matrix, Vec<usize>) {
        let mut a: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                let row: Vec<&BigRational> = self.row(i).iter().map(as_rational).collect();
                let den = row.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
                row.iter().map(|q| (*q * &den).to_integer()).collect()
            })
            .collect();
        let mut pivots = Vec::new();
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, pr);
            for i in r + 1..self.rows {
                for j in c + 1..self.cols {
                    let v = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]) / &prev;
                    a[i][j] = v;
                }
                a[i][c] = BigInt::zero();
            }
            prev = a[r][c].clone();
            pivots.push(c);
            r += 1;
        }
        // back substitution in exact rationals on the echelon form
        let mut rows: Vec<Vec<BigRational>> = a[..r]
            .iter()
            .map(|row| row.iter().map(|x| BigRational::from_integer(x.clone())).collect())
            .collect();
        for (k, &c) in pivots.iter().enumerate().rev() {
            let inv = rows[k][c].recip();
            for x in rows[k].iter_mut() {
                *x *= &inv;
            }
            for i in 0..k {
                if rows[i][c].is_zero() {
                    continue;
                }
                let factor = rows[i][c].clone();
                for j in c..self.cols {
                    let v = &rows[k][j] * &factor;
                    rows[i][j] -= v;
                }
            }
        }
        let mut m = Matrix::zeros(&self.field, self.rows, self.cols);
        for (i, row) in rows.into_iter().enumerate() {
            for (j, x) in row.into_iter().enumerate() {
                m.set(i, j, Elem::Rational(x));
            }
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// `{x : self x = 0}`.
    pub fn kernel(&self) -> Subspace {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let vectors = free
            .iter()
            .map(|&fc| {
                let mut v = vec![f.zero(); self.cols];
                v[fc] = f.one();
                for (k, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(r.get(k, fc));
                }
                v
            })
            .collect::<Vec<_>>();
        Subspace::span(f, self.cols, &vectors)
    }

    /// Column space.
    pub fn image(&self) -> Subspace {
        Subspace::span(&self.field, self.rows, &self.columns())
    }

    /// One solution of `self x = b`.
    pub fn solve(&self, b: &[Elem]) -> Result<Vector> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!("rhs has length {}, expected {}", b.len(), self.rows)));
        }
        let f = &self.field;
        let mut aug = Matrix::zeros(f, self.rows, self.cols + 1);
        aug.set_block(0, 0, self);
        for (i, x) in b.iter().enumerate() {
            aug.set(i, self.cols, x.clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Err(Error::NoSolution);
        }
        let mut x = vec![f.zero(); self.cols];
        for (k, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(k, self.cols).clone();
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let f = &self.field;
        let mut aug = Matrix::zeros(f, n, 2 * n);
        aug.set_block(0, 0, self);
        aug.set_block(0, n, &Matrix::identity(f, n));
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::SingularMatrix);
        }
        Ok(r.submatrix(0..n, n..2 * n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn determinant(&self) -> Elem {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let f = &self.field;
        let mut m = self.clone();
        let mut det = f.one();
        for c in 0..m.cols {
            let Some(pr) = (c..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                return f.zero();
            };
            if pr != c {
                m.swap_rows(pr, c);
                det = f.neg(&det);
            }
            let piv = m.get(c, c).clone();
            det = f.mul(&det, &piv);
            let inv = f.inv(&piv).expect("nonzero pivot");
            for i in c + 1..m.rows {
                if f.is_zero(m.get(i, c)) {
                    continue;
                }
                let factor = f.mul(m.get(i, c), &inv);
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    /// The entries row by row, as a vector of length
    /// `rows * cols`.
    pub fn vectorize(&self) -> Vector {
        self.data.clone()
    }

    pub fn from_vector(field: &Field, rows: usize, cols: usize, v: Vector) -> Self {
        assert_eq!(v.len(), rows * cols);
        Matrix { field: field.clone(), rows, cols, data: v }
    }

    /// Render as rows of element strings.
    pub fn format_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|e| self.field.format(e)).collect())
            .collect()
    }
}

fn as_rational(e: &Elem) -> &BigRational {
    match e {
        Elem::Rational(q) => q,
        _ => unreachable!("rational matrix"),
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.format_rows() {
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn kernel_of_nilpotent_block() {
        let q = Field::rationals();
        let k = Matrix::from_i64(&q, &[&[0, 1], &[0, 0]]).kernel();
        assert_eq!(k, Subspace::span(&q, 2, &[vec![q.one(), q.zero()]]));
    }

    #[test]
    fn identity_rank() {
        for n in 0..5 {
            assert_eq!(Matrix::identity(&Field::prime(3).unwrap(), n).rank(), n);
        }
    }

    #[test]
    fn solve_over_f3() {
        let f3 = Field::prime(3).unwrap();
        let a = Matrix::from_i64(&f3, &[&[1, 1], &[0, 1]]);
        let x = a.solve(&[f3.from_i64(2), f3.from_i64(1)]).unwrap();
        assert_eq!(x, vec![f3.one(), f3.one()]);
        let z = Matrix::zeros(&f3, 2, 2);
        assert_eq!(z.solve(&[f3.one(), f3.zero()]), Err(Error::NoSolution));
        assert_eq!(z.inverse(), Err(Error::SingularMatrix));
    }

    #[test]
    fn bareiss_matches_gauss() {
        let q = Field::rationals();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let m = Matrix::random(&q, 4, 5, &mut rng, 3);
            let m = m.mul(&Matrix::random(&q, 5, 5, &mut rng, 2));
            assert_eq!(m.rref(), m.rref_gauss());
        }
    }

    fn fields() -> Vec<Field> {
        vec![
            Field::rationals(),
            Field::prime(2).unwrap(),
            Field::prime(3).unwrap(),
            Field::rational_functions(2).unwrap(),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn rank_plus_nullity(seed in any::<u64>(), r in 1usize..6, c in 1usize..6) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for f in fields() {
                // low-rank products exercise degenerate cases
                let k = rand::Rng::random_range(&mut rng, 0..=r.min(c));
                let m = Matrix::random(&f, r, k, &mut rng, 2).mul(&Matrix::random(&f, k, c, &mut rng, 2));
                let ker = m.kernel();
                prop_assert_eq!(m.rank() + ker.dim(), c);
                for v in ker.basis() {
                    prop_assert!(m.mul_vec(&v).iter().all(|x| f.is_zero(x)));
                }
            }
        }

        #[test]
        fn inverse_roundtrip(seed in any::<u64>(), n in 1usize..5) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for f in fields() {
                let m = Matrix::random(&f, n, n, &mut rng, 2);
                match m.inverse() {
                    Ok(inv) => prop_assert!(m.mul(&inv).is_identity()),
                    Err(_) => prop_assert!(f.is_zero(&m.determinant())),
                }
            }
        }
    }
}
