use super::{Matrix, Vector};
use crate::error::{Error, Result};
use crate::fields::{Elem, Field};

/// A subspace of `F^n`, stored as the nonzero rows of its reduced row
/// echelon basis. The representation is canonical, so equality of
/// subspaces is structural equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: &Field, n: usize) -> Self {
        Subspace { ambient: n, basis: Matrix::zeros(field, 0, n), pivots: Vec::new() }
    }

    pub fn full(field: &Field, n: usize) -> Self {
        Subspace { ambient: n, basis: Matrix::identity(field, n), pivots: (0..n).collect() }
    }

    pub fn span(field: &Field, n: usize, vectors: &[Vector]) -> Self {
        if vectors.is_empty() {
            return Self::zero(field, n);
        }
        let m = Matrix::from_rows(field, vectors.to_vec()).expect("vectors of equal length");
        assert_eq!(m.cols(), n, "vector length differs from ambient dimension");
        Self::row_space(&m)
    }

    pub fn row_space(m: &Matrix) -> Self {
        let (r, pivots) = m.rref();
        Subspace { ambient: m.cols(), basis: r.submatrix(0..pivots.len(), 0..m.cols()), pivots }
    }

    pub fn field(&self) -> &Field {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    /// The canonical basis, one vector per echelon row.
    pub fn basis(&self) -> Vec<Vector> {
        self.basis.row_vectors()
    }

    /// Echelon basis as the rows of a `dim x n` matrix.
    pub fn basis_matrix(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Elem]) -> Option<Vector> {
        let f = self.field();
        let coords: Vector = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rebuilt = vec![f.zero(); self.ambient];
        for (k, c) in coords.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            for (j, x) in self.basis.row(k).iter().enumerate() {
                rebuilt[j] = f.add(&rebuilt[j], &f.mul(c, x));
            }
        }
        (rebuilt == v).then_some(coords)
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        self.coordinates(v).is_some()
    }

    /// `v` reduced against the echelon basis: zero exactly when `v` lies in
    /// the subspace, and a canonical coset representative otherwise.
    pub fn reduce(&self, v: &[Elem]) -> Vector {
        let f = self.field();
        let mut out = v.to_vec();
        for (k, &p) in self.pivots.iter().enumerate() {
            let c = out[p].clone();
            if f.is_zero(&c) {
                continue;
            }
            for (j, x) in self.basis.row(k).iter().enumerate() {
                out[j] = f.sub(&out[j], &f.mul(&c, x));
            }
        }
        out
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis().iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Self {
        let mut vs = self.basis();
        vs.extend(other.basis());
        Self::span(self.field(), self.ambient, &vs)
    }

    pub fn add_vectors(&self, vectors: &[Vector]) -> Self {
        let mut vs = self.basis();
        vs.extend(vectors.iter().cloned());
        Self::span(self.field(), self.ambient, &vs)
    }

    /// `{x : <x, u> = 0 for all u}` under the standard pairing.
    pub fn annihilator(&self) -> Self {
        if self.is_zero() {
            return Self::full(self.field(), self.ambient);
        }
        self.basis.kernel()
    }

    pub fn intersect(&self, other: &Subspace) -> Self {
        self.annihilator().sum(&other.annihilator()).annihilator()
    }

    /// `A(self)` for a matrix acting on column vectors.
    pub fn image_under(&self, a: &Matrix) -> Self {
        let images: Vec<Vector> = self.basis().iter().map(|v| a.mul_vec(v)).collect();
        Self::span(self.field(), a.rows(), &images)
    }

    pub fn is_invariant_under(&self, a: &Matrix) -> bool {
        self.basis().iter().all(|v| self.contains(&a.mul_vec(v)))
    }

    /// Vectors of `self` completing a basis of `sub` to one of `self`,
    /// chosen greedily from the echelon basis of `self`.
    pub fn quotient_basis(&self, sub: &Subspace) -> Result<Vec<Vector>> {
        if !self.contains_subspace(sub) {
            return Err(Error::DimensionMismatch("quotient by a non-subspace".into()));
        }
        let mut acc = sub.clone();
        let mut out = Vec::new();
        for v in self.basis() {
            if !acc.contains(&v) {
                acc = acc.add_vectors(std::slice::from_ref(&v));
                out.push(v);
            }
        }
        Ok(out)
    }
}
