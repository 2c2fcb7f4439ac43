//! Structural analysis of a single operator `T`: primary decomposition,
//! elementary divisors, the refined centralizer-invariant flag of each
//! primary component, orbit cells, and the centralizer algebra.
//!
//! Every subspace lives in ambient coordinates. On the component for the
//! prime `p`, `N = p(T)` is nilpotent and `ker N^k` (computed in the whole
//! space) is automatically contained in that component.

mod centralizer;
mod flag;

use crate::error::{Error, Result};
use crate::fields::Field;
use crate::linalg::{apply_polynomial, minimal_polynomial, Matrix, Subspace, Vector};
use crate::poly::{factor, FactorOptions, Factorization, Polynomial};

pub use centralizer::{
    centralizer_basis, centralizer_structure, in_polynomial_algebra, CentralizerStructure,
};
pub use flag::{orbit_cell, refined_flag, Cell, CellLabel, Complement, RefinedFlag};

/// One summand `V_i = ker p_i(T)^{d_i}` of the primary decomposition.
#[derive(Clone, Debug)]
pub struct PrimaryComponent {
    pub prime: Polynomial,
    pub exponent: usize,
    pub subspace: Subspace,
    /// `T` restricted to the component, in its echelon basis.
    pub restricted: Matrix,
    /// `p(T)` on the whole space.
    pub n_matrix: Matrix,
    /// `ker p(T)^k` for `k = 0..=d`.
    pub kernels: Vec<Subspace>,
    /// Projection onto this component along the others.
    pub projector: Matrix,
}

impl PrimaryComponent {
    /// `n_i = dim V_i`.
    pub fn dim(&self) -> usize {
        self.subspace.dim()
    }

    /// `m_i = deg p_i`.
    pub fn degree(&self) -> usize {
        self.prime.degree().unwrap_or(0)
    }

    /// `l_i = n_i / m_i`, the dimension over `E_i = F[x]/(p_i)`.
    pub fn length(&self) -> usize {
        self.dim() / self.degree()
    }

    /// Kernel profile `δ_k = dim ker N^k / m`, `k = 0..=d`.
    pub fn delta(&self) -> Vec<usize> {
        self.kernels.iter().map(|k| k.dim() / self.degree()).collect()
    }
}

/// Everything derived from the minimal polynomial and its factorization.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub t: Matrix,
    pub minimal_polynomial: Polynomial,
    pub factorization: Factorization,
    pub components: Vec<PrimaryComponent>,
}

impl Analysis {
    pub fn new(t: &Matrix, opts: &FactorOptions) -> Result<Self> {
        if !t.is_square() {
            return Err(Error::DimensionMismatch("operator must be square".into()));
        }
        let minimal_polynomial = minimal_polynomial(t)?;
        let factorization = factor(&minimal_polynomial, opts)?;
        let components = primary_components(t, &factorization)?;
        Ok(Analysis { t: t.clone(), minimal_polynomial, factorization, components })
    }

    pub fn field(&self) -> &Field {
        self.t.field()
    }

    pub fn dim(&self) -> usize {
        self.t.rows()
    }

    /// `(s_j, σ_j)` for every component, in component order.
    pub fn elementary_divisors(&self) -> Vec<Vec<(usize, usize)>> {
        self.components.iter().map(elementary_divisors).collect()
    }

    pub fn flags(&self) -> Result<Vec<RefinedFlag>> {
        self.components.iter().map(|c| refined_flag(&self.t, c)).collect()
    }
}

/// Primary decomposition of `T`, ordered by degree and then coefficients of
/// the primes.
pub fn primary_decomposition(t: &Matrix, opts: &FactorOptions) -> Result<Vec<PrimaryComponent>> {
    Ok(Analysis::new(t, opts)?.components)
}

fn primary_components(t: &Matrix, fac: &Factorization) -> Result<Vec<PrimaryComponent>> {
    let f = t.field();
    let n = t.rows();
    let mut parts = Vec::new();
    for (p, d) in &fac.factors {
        let nm = apply_polynomial(p, t);
        let mut kernels = vec![Subspace::zero(f, n)];
        let mut power = Matrix::identity(f, n);
        for _ in 0..*d {
            power = power.mul(&nm);
            kernels.push(power.kernel());
        }
        let subspace = kernels.last().unwrap().clone();
        if subspace.dim() % p.degree().unwrap_or(1) != 0 {
            return Err(Error::InternalInconsistency(format!(
                "component of {p} has dimension {} not divisible by its degree",
                subspace.dim()
            )));
        }
        parts.push((p.clone(), *d, subspace, nm, kernels));
    }

    // projectors from the adapted basis
    let basis: Vec<Vector> = parts.iter().flat_map(|(_, _, s, _, _)| s.basis()).collect();
    if basis.len() != n {
        return Err(Error::InternalInconsistency(format!(
            "primary components have total dimension {} in a space of dimension {n}",
            basis.len()
        )));
    }
    let b = Matrix::from_columns(f, n, &basis);
    let b_inv = b.inverse().map_err(|_| {
        Error::InternalInconsistency("primary components are not independent".into())
    })?;

    let mut out = Vec::new();
    let mut offset = 0;
    for (prime, exponent, subspace, n_matrix, kernels) in parts {
        let k = subspace.dim();
        let mut select = Matrix::zeros(f, n, n);
        for i in offset..offset + k {
            select.set(i, i, f.one());
        }
        let projector = b.mul(&select).mul(&b_inv);
        let images: Vec<Vector> = subspace.basis().iter().map(|v| t.mul_vec(v)).collect();
        let coords = images
            .iter()
            .map(|w| subspace.coordinates(w))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InternalInconsistency("component is not T-invariant".into()))?;
        let restricted = Matrix::from_columns(f, k, &coords);
        out.push(PrimaryComponent {
            prime,
            exponent,
            subspace,
            restricted,
            n_matrix,
            kernels,
            projector,
        });
        offset += k;
    }
    Ok(out)
}

/// `(s, σ_s)` with `σ_s > 0`, increasing in `s`, read off the kernel
/// profile: blocks of size `>= k` number `δ_k - δ_{k-1}`.
pub fn elementary_divisors(c: &PrimaryComponent) -> Vec<(usize, usize)> {
    let delta = c.delta();
    let d = c.exponent;
    let at_least = |k: usize| -> usize {
        if k == 0 || k > d {
            0
        } else {
            delta[k] - delta[k - 1]
        }
    };
    (1..=d)
        .map(|s| (s, at_least(s) - at_least(s + 1)))
        .filter(|&(_, sigma)| sigma > 0)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rationals()
    }

    #[test]
    fn diag_0_1_splits() {
        let t = Matrix::from_i64(&q(), &[&[0, 0], &[0, 1]]);
        let comps = primary_decomposition(&t, &FactorOptions::default()).unwrap();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].prime, Polynomial::from_i64(&q(), &[-1, 1]));
        assert_eq!(comps[1].prime, Polynomial::from_i64(&q(), &[0, 1]));
        assert!(comps.iter().all(|c| c.dim() == 1));
    }

    #[test]
    fn nilpotent_three() {
        let t = Matrix::from_i64(&q(), &[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]);
        let comps = primary_decomposition(&t, &FactorOptions::default()).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].exponent, 2);
        assert_eq!(elementary_divisors(&comps[0]), vec![(1, 1), (2, 1)]);
        assert_eq!(comps[0].delta(), vec![0, 2, 3]);
    }

    #[test]
    fn f2_mixed_components() {
        let f2 = Field::prime(2).unwrap();
        let p = Polynomial::from_i64(&f2, &[1, 1, 1]);
        let t = Matrix::block_diag(&f2, &[Matrix::companion(&p), Matrix::identity(&f2, 2)]);
        let comps = primary_decomposition(&t, &FactorOptions::default()).unwrap();
        let summary: Vec<_> = comps.iter().map(|c| (c.prime.clone(), c.exponent, c.dim())).collect();
        assert_eq!(summary, vec![(Polynomial::from_i64(&f2, &[1, 1]), 1, 2), (p, 1, 2)]);
    }

    #[test]
    fn elementary_divisor_examples() {
        let j3 = Matrix::jordan(&q(), &q().zero(), 3);
        let a = Analysis::new(&j3, &FactorOptions::default()).unwrap();
        assert_eq!(a.elementary_divisors(), vec![vec![(3, 1)]]);
        let p = Polynomial::from_i64(&q(), &[1, 0, 1]);
        let a = Analysis::new(&Matrix::companion(&p.pow(2)), &FactorOptions::default()).unwrap();
        assert_eq!(a.elementary_divisors(), vec![vec![(2, 1)]]);
        assert_eq!(a.components[0].delta(), vec![0, 1, 2]);
    }
}
