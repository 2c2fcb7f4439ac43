//! Affine maps `x ↦ Ax + v` and their classification under conjugation by
//! the affine group.
//!
//! The translation part only matters modulo `im(A - I)`, and on that
//! quotient only through the unipotent primary `V_1 = ker (A - I)^r`.

use crate::canonical::{canonical_form, conjugacy_test, orbit_invariant, Conjugacy};
use crate::error::{Error, Result};
use crate::fields::{Elem, Field};
use crate::linalg::{minimal_polynomial, Matrix, Subspace, Vector};
use crate::operator::centralizer_basis;
use crate::poly::{FactorOptions, Polynomial};
use crate::zclass::{zclass_invariant, ZClassInvariant};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineMap {
    pub linear: Matrix,
    pub translation: Vector,
}

impl AffineMap {
    pub fn new(linear: Matrix, translation: Vector) -> Result<Self> {
        if !linear.is_square() || linear.rows() != translation.len() {
            return Err(Error::DimensionMismatch(format!(
                "linear part {}x{} with translation of length {}",
                linear.rows(),
                linear.cols(),
                translation.len()
            )));
        }
        Ok(AffineMap { linear, translation })
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        AffineMap { linear: Matrix::identity(field, n), translation: vec![field.zero(); n] }
    }

    pub fn linear_map(a: Matrix) -> Self {
        let n = a.rows();
        let zero = a.field().zero();
        AffineMap { linear: a, translation: vec![zero; n] }
    }

    pub fn translation_by(field: &Field, a: Vector) -> Self {
        AffineMap { linear: Matrix::identity(field, a.len()), translation: a }
    }

    pub fn field(&self) -> &Field {
        self.linear.field()
    }

    pub fn dim(&self) -> usize {
        self.translation.len()
    }

    pub fn apply(&self, x: &[Elem]) -> Vector {
        let f = self.field();
        self.linear.mul_vec(x).iter().zip(&self.translation).map(|(a, b)| f.add(a, b)).collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        AffineMap { linear: self.linear.mul(&other.linear), translation: self.apply(&other.translation) }
    }

    pub fn inverse(&self) -> Result<Self> {
        let inv = self.linear.inverse().map_err(|_| Error::NotInvertible)?;
        let f = self.field();
        let t = inv.mul_vec(&self.translation).iter().map(|x| f.neg(x)).collect();
        Ok(AffineMap { linear: inv, translation: t })
    }

    /// `self ∘ t ∘ self^{-1}`.
    pub fn conjugate(&self, t: &AffineMap) -> Result<Self> {
        Ok(self.compose(t).compose(&self.inverse()?))
    }

    /// The same map written with the origin moved to `a`:
    /// `(A, (A - I)a + v)`.
    pub fn rebase(&self, a: &[Elem]) -> Self {
        let f = self.field();
        let shift = a_minus_i(&self.linear).mul_vec(a);
        AffineMap {
            linear: self.linear.clone(),
            translation: shift.iter().zip(&self.translation).map(|(x, y)| f.add(x, y)).collect(),
        }
    }
}

fn a_minus_i(a: &Matrix) -> Matrix {
    a.sub(&Matrix::identity(a.field(), a.rows()))
}

fn add(f: &Field, a: &[Elem], b: &[Elem]) -> Vector {
    a.iter().zip(b).map(|(x, y)| f.add(x, y)).collect()
}

fn sub(f: &Field, a: &[Elem], b: &[Elem]) -> Vector {
    a.iter().zip(b).map(|(x, y)| f.sub(x, y)).collect()
}

/// A point `x` with `Ax + v = x`.
pub fn fixed_point(t: &AffineMap) -> Option<Vector> {
    let f = t.field();
    let rhs: Vector = t.translation.iter().map(|x| f.neg(x)).collect();
    a_minus_i(&t.linear).solve(&rhs).ok()
}

/// `m_A = (x - 1)^r g` with `g(1) ≠ 0`, found by repeated division.
#[derive(Clone, Debug)]
pub struct UnipotentSplit {
    pub r: usize,
    pub cofactor: Polynomial,
    /// `ker (A - I)^r`.
    pub unipotent: Subspace,
    /// `ker g(A)`.
    pub complement: Subspace,
}

pub fn unipotent_split(a: &Matrix) -> Result<UnipotentSplit> {
    let f = a.field();
    let n = a.rows();
    let mut g = minimal_polynomial(a)?;
    let x_minus_1 = Polynomial::linear(f, &f.one());
    let mut r = 0;
    while let Some(q) = g.div_exact(&x_minus_1) {
        g = q;
        r += 1;
    }
    let unipotent = a_minus_i(a).pow(r).kernel();
    let complement = crate::linalg::apply_polynomial(&g, a).kernel();
    if unipotent.dim() + complement.dim() != n || unipotent.sum(&complement).dim() != n {
        return Err(Error::InternalInconsistency("unipotent split is not a direct sum".into()));
    }
    Ok(UnipotentSplit { r, cofactor: g, unipotent, complement })
}

/// `t` with the non-unipotent part of its translation conjugated away.
#[derive(Clone, Debug)]
pub struct Normalized {
    pub split: UnipotentSplit,
    /// The translation `τ_c` used: `τ_c t τ_c^{-1}` is `normalized`.
    pub shift: Vector,
    pub normalized: AffineMap,
}

pub fn normalize(t: &AffineMap) -> Result<Normalized> {
    let f = t.field();
    let n = t.dim();
    let split = unipotent_split(&t.linear)?;
    let mut cols = split.unipotent.basis();
    let k1 = cols.len();
    cols.extend(split.complement.basis());
    let coords = Matrix::from_columns(f, n, &cols).solve(&t.translation)?;
    let v2 = (k1..n).fold(vec![f.zero(); n], |acc, i| {
        add(f, &acc, &cols[i].iter().map(|x| f.mul(x, &coords[i])).collect::<Vec<_>>())
    });
    // (A - I) is invertible on ker g(A); τ_c (A, v) τ_c^{-1} = (A, v - (A - I)c)
    let shift = if v2.iter().all(|x| f.is_zero(x)) {
        vec![f.zero(); n]
    } else {
        a_minus_i(&t.linear).solve(&v2)?
    };
    let normalized = AffineMap { linear: t.linear.clone(), translation: sub(f, &t.translation, &v2) };
    debug_assert_eq!(AffineMap::translation_by(f, shift.clone()).conjugate(t).ok().as_ref(), Some(&normalized));
    Ok(Normalized { split, shift, normalized })
}

/// Least `s` with `(A - I)^s v_1 = 0`, where `v_1` is the unipotent part of
/// the translation.
pub fn translation_index(t: &AffineMap) -> Result<usize> {
    let nz = normalize(t)?;
    let f = t.field();
    let n_mat = a_minus_i(&t.linear);
    let mut w = nz.normalized.translation;
    let mut s = 0;
    while !w.iter().all(|x| f.is_zero(x)) {
        w = n_mat.mul_vec(&w);
        s += 1;
    }
    Ok(s)
}

/// Least `s` with `v ∈ im(A - I) + ker (A - I)^s`. This is the conjugacy
/// invariant: it vanishes exactly when `t` has a fixed point and otherwise
/// equals the largest Jordan block for eigenvalue one met by `v` modulo
/// `im(A - I)`.
pub fn reduced_translation_index(t: &AffineMap) -> Result<usize> {
    let n_mat = a_minus_i(&t.linear);
    let image = n_mat.image();
    let r = unipotent_split(&t.linear)?.r;
    let mut power = Matrix::identity(t.field(), t.dim());
    for s in 0..=r {
        if image.sum(&power.kernel()).contains(&t.translation) {
            return Ok(s);
        }
        power = power.mul(&n_mat);
    }
    Err(Error::InternalInconsistency("translation escapes the unipotent primary".into()))
}

#[derive(Clone, Debug)]
pub struct AffineInvariant {
    pub linear: crate::canonical::OrbitInvariant,
    pub r: usize,
    pub s: usize,
}

pub fn affine_invariant(t: &AffineMap, opts: &FactorOptions) -> Result<AffineInvariant> {
    Ok(AffineInvariant {
        linear: orbit_invariant(&t.linear, opts)?,
        r: unipotent_split(&t.linear)?.r,
        s: reduced_translation_index(t)?,
    })
}

#[derive(Clone, Debug)]
pub enum AffineConjugacy {
    /// `α t_1 α^{-1} = t_2`.
    Conjugate(AffineMap),
    Distinct(String),
}

pub fn affine_conjugacy_test(t1: &AffineMap, t2: &AffineMap, opts: &FactorOptions) -> Result<AffineConjugacy> {
    if t1.dim() != t2.dim() {
        return Err(Error::DimensionMismatch("affine maps of different dimension".into()));
    }
    let f = t1.field();
    let n = t1.dim();
    let g = match conjugacy_test(&t1.linear, &t2.linear, opts)? {
        Conjugacy::Distinct(why) => return Ok(AffineConjugacy::Distinct(format!("linear parts: {why}"))),
        Conjugacy::Conjugate(g) => g,
    };
    let (s1, s2) = (reduced_translation_index(t1)?, reduced_translation_index(t2)?);
    if s1 != s2 {
        return Ok(AffineConjugacy::Distinct(format!("translation indices differ: {s1} vs {s2}")));
    }
    // move both to the canonical coordinates of the common linear part
    let a = &t2.linear;
    let cf = canonical_form(a, opts)?;
    let h = AffineMap::linear_map(cf.g.clone());
    let to_c = h.compose(&AffineMap::linear_map(g));
    let w1 = to_c.conjugate(t1)?.translation;
    let w2 = h.conjugate(t2)?.translation;
    let blocks = unipotent_blocks(&cf.c, &orbit_invariant(a, opts)?);
    let b1 = cokernel_mover(&cf.c, &blocks, &w1)?;
    let b2 = cokernel_mover(&cf.c, &blocks, &w2)?;
    let beta = b2.mul(&b1.inverse()?);
    // (β, c) (C, w1) (β, c)^{-1} = (C, β w1 - (C - I) c)
    let diff = sub(f, &beta.mul_vec(&w1), &w2);
    let c = a_minus_i(&cf.c).solve(&diff)?;
    let inner = AffineMap { linear: beta, translation: c };
    let alpha = h.inverse()?.compose(&inner).compose(&to_c);
    if alpha.conjugate(t1)? != *t2 {
        return Err(Error::InternalInconsistency("assembled affine conjugator fails".into()));
    }
    debug_assert_eq!(alpha.dim(), n);
    Ok(AffineConjugacy::Conjugate(alpha))
}

/// `(offset, size)` of the Jordan blocks for eigenvalue one in a canonical
/// matrix.
fn unipotent_blocks(c: &Matrix, inv: &crate::canonical::OrbitInvariant) -> Vec<(usize, usize)> {
    let f = c.field();
    let x_minus_1 = Polynomial::linear(f, &f.one());
    let mut out = Vec::new();
    let mut offset = 0;
    for (ext, part) in &inv.components {
        for &(s, sigma) in part.iter().rev() {
            for _ in 0..sigma {
                if ext.modulus == x_minus_1 {
                    out.push((offset, s));
                }
                offset += ext.degree * s;
            }
        }
    }
    out
}

/// An invertible `β` commuting with `c` such that `β` maps the top of the
/// first largest block met by `w` to `w` modulo `im(c - I)`.
fn cokernel_mover(c: &Matrix, blocks: &[(usize, usize)], w: &[Elem]) -> Result<Matrix> {
    let f = c.field();
    let n = c.rows();
    let top = |&(o, s): &(usize, usize)| o + s - 1;
    let Some(smax) = blocks.iter().filter(|b| !f.is_zero(&w[top(b)])).map(|b| b.1).max() else {
        return Ok(Matrix::identity(f, n));
    };
    let b0 = *blocks.iter().find(|b| b.1 == smax).unwrap();
    let mut perm = Matrix::identity(f, n);
    if f.is_zero(&w[top(&b0)]) {
        // swap two equal blocks so that b0 is met
        let other = *blocks.iter().find(|b| b.1 == smax && !f.is_zero(&w[top(b)])).unwrap();
        for k in 0..smax {
            let (i, j) = (b0.0 + k, other.0 + k);
            perm.set(i, i, f.zero());
            perm.set(j, j, f.zero());
            perm.set(i, j, f.one());
            perm.set(j, i, f.one());
        }
    }
    let w = perm.mul_vec(w);
    let nil = a_minus_i(c);
    let mut y = vec![f.zero(); n];
    for b in blocks {
        y[top(b)] = w[top(b)].clone();
    }
    let mut beta = Matrix::identity(f, n);
    let mut col = y;
    for u in (0..smax).rev() {
        for (i, x) in col.iter().enumerate() {
            beta.set(i, b0.0 + u, x.clone());
        }
        col = nil.mul_vec(&col);
    }
    let beta = perm.mul(&beta);
    if !beta.commutes_with(c) || !beta.is_invertible() {
        return Err(Error::InternalInconsistency("cokernel mover is not a centralizer unit".into()));
    }
    Ok(beta)
}

/// Commuting affine maps `(B, w)`: the set `offset + span(basis)`.
#[derive(Clone, Debug)]
pub struct AffineCentralizer {
    /// `τ_shift t τ_shift^{-1}` is the normalized map described.
    pub shift: Vector,
    pub normalized: AffineMap,
    pub has_fixed_point: bool,
    pub offset: AffineMap,
    /// Solutions of `X ∈ Z(A)`, `X v = (A - I) w`.
    pub basis: Vec<(Matrix, Vector)>,
    /// Eigenvalue one has at least this multiplicity in every invertible
    /// element.
    pub eigenvalue_one_bound: usize,
}

impl AffineCentralizer {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn element(&self, coeffs: &[Elem]) -> AffineMap {
        let f = self.offset.field();
        let mut m = self.offset.clone();
        for (c, (x, w)) in coeffs.iter().zip(&self.basis) {
            m.linear = m.linear.add(&x.scale(c));
            m.translation = add(f, &m.translation, &w.iter().map(|e| f.mul(c, e)).collect::<Vec<_>>());
        }
        m
    }
}

pub fn affine_centralizer(t: &AffineMap) -> Result<AffineCentralizer> {
    let f = t.field();
    let n = t.dim();
    let (shift, normalized) = match fixed_point(t) {
        Some(x0) => {
            let c: Vector = x0.iter().map(|x| f.neg(x)).collect();
            let m = AffineMap::translation_by(f, c.clone()).conjugate(t)?;
            (c, m)
        }
        None => {
            let nz = normalize(t)?;
            (nz.shift, nz.normalized)
        }
    };
    let a = &normalized.linear;
    let v = &normalized.translation;
    let z = centralizer_basis(a);
    let k = z.len();
    // unknowns: coefficients of X in the basis of Z(A), then w
    let nil = a_minus_i(a);
    let mut sys = Matrix::zeros(f, n, k + n);
    for (j, x) in z.iter().enumerate() {
        for (i, e) in x.mul_vec(v).into_iter().enumerate() {
            sys.set(i, j, e);
        }
    }
    for i in 0..n {
        for j in 0..n {
            sys.set(i, k + j, f.neg(nil.get(i, j)));
        }
    }
    let basis = sys
        .kernel()
        .basis()
        .into_iter()
        .map(|sol| {
            let x = z.iter().zip(&sol[..k]).fold(Matrix::zeros(f, n, n), |acc, (b, c)| acc.add(&b.scale(c)));
            (x, sol[k..].to_vec())
        })
        .collect();
    Ok(AffineCentralizer {
        has_fixed_point: fixed_point(t).is_some(),
        offset: AffineMap::identity(f, n),
        eigenvalue_one_bound: translation_index(&normalized)?,
        shift,
        normalized,
        basis,
    })
}

/// Multiplicity of one as a root of the characteristic polynomial.
pub fn eigenvalue_one_multiplicity(b: &Matrix) -> usize {
    let f = b.field();
    let mut chi = crate::linalg::characteristic_polynomial(b);
    let x_minus_1 = Polynomial::linear(f, &f.one());
    let mut k = 0;
    while let Some(q) = chi.div_exact(&x_minus_1) {
        chi = q;
        k += 1;
    }
    k
}

/// z-class data of an affine map: the linear z-invariant, the secondary
/// partition of the eigenvalue-one primary, and the translation index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineZInvariant {
    pub linear: ZClassInvariant,
    pub unipotent: Vec<(usize, usize)>,
    pub s: usize,
}

pub fn affine_zclass_invariant(t: &AffineMap, opts: &FactorOptions) -> Result<AffineZInvariant> {
    let f = t.field();
    let inv = orbit_invariant(&t.linear, opts)?;
    let x_minus_1 = Polynomial::linear(f, &f.one());
    let unipotent = inv
        .components
        .iter()
        .find(|(e, _)| e.modulus == x_minus_1)
        .map(|(_, p)| p.clone())
        .unwrap_or_default();
    Ok(AffineZInvariant {
        linear: zclass_invariant(&t.linear, opts)?,
        unipotent,
        s: reduced_translation_index(t)?,
    })
}
