use super::{Analysis, RefinedFlag};
use crate::error::{Error, Result};
use crate::fields::{ExtensionDescriptor, Field};
use crate::linalg::{Matrix, Subspace};
use crate::poly::Polynomial;

/// The centralizer `Z(T)` of an operator and its Wedderburn data.
#[derive(Clone, Debug)]
pub struct CentralizerStructure {
    pub basis: Vec<Matrix>,
    pub dim_total: usize,
    pub nilradical_basis: Vec<Matrix>,
    pub nilradical_dim: usize,
    /// `(σ, E)` standing for a summand `M_σ(E)` of `Z(T)/nil Z(T)`.
    pub semisimple_summands: Vec<(usize, ExtensionDescriptor)>,
    /// Dimension of the center `F[T]`, i.e. `deg m_T`.
    pub center_dim: usize,
}

impl CentralizerStructure {
    /// `Σ m σ^2` over the semisimple summands.
    pub fn semisimple_dim(&self) -> usize {
        self.semisimple_summands.iter().map(|(s, e)| e.degree * s * s).sum()
    }

    /// `dim Z = dim nil Z + Σ m σ^2`.
    pub fn dimension_formula_holds(&self) -> bool {
        self.dim_total == self.nilradical_dim + self.semisimple_dim()
    }
}

/// Basis of `{X : TX = XT}` from the `n^2 x n^2` linear system.
pub fn centralizer_basis(t: &Matrix) -> Vec<Matrix> {
    let f = t.field();
    let n = t.rows();
    let mut sys = Matrix::zeros(f, n * n, n * n);
    // (TX - XT)_{ij} = Σ_k T_ik X_kj - X_ik T_kj
    for i in 0..n {
        for j in 0..n {
            let row = i * n + j;
            for k in 0..n {
                let a = f.add(sys.get(row, k * n + j), t.get(i, k));
                sys.set(row, k * n + j, a);
                let b = f.sub(sys.get(row, i * n + k), t.get(k, j));
                sys.set(row, i * n + k, b);
            }
        }
    }
    sys.kernel()
        .basis()
        .into_iter()
        .map(|v| Matrix::from_vector(f, n, n, v))
        .collect()
}

/// Elements of `span(basis)` mapping every chain member into its
/// predecessor, for every flag.
fn flag_lowering(field: &Field, basis: &[Matrix], flags: &[RefinedFlag]) -> Vec<Matrix> {
    let mut constraints: Vec<Vec<crate::fields::Elem>> = Vec::new();
    for flag in flags {
        for w in flag.chain.windows(2) {
            let ann = w[0].annihilator().basis();
            for c in w[1].basis() {
                let images: Vec<_> = basis.iter().map(|x| x.mul_vec(&c)).collect();
                for h in &ann {
                    constraints.push(
                        images
                            .iter()
                            .map(|img| {
                                h.iter().zip(img).fold(field.zero(), |acc, (a, b)| field.add(&acc, &field.mul(a, b)))
                            })
                            .collect(),
                    );
                }
            }
        }
    }
    let k = basis.len();
    let solutions = if constraints.is_empty() {
        Subspace::full(field, k)
    } else {
        Matrix::from_rows(field, constraints).expect("rectangular").kernel()
    };
    solutions
        .basis()
        .iter()
        .map(|coef| {
            coef.iter().zip(basis).fold(
                Matrix::zeros(field, basis[0].rows(), basis[0].cols()),
                |acc, (c, b)| acc.add(&b.scale(c)),
            )
        })
        .collect()
}

pub fn centralizer_structure(a: &Analysis) -> Result<CentralizerStructure> {
    let f = a.field();
    let basis = centralizer_basis(&a.t);
    let flags = a.flags()?;
    for flag in &flags {
        for member in &flag.chain {
            if !basis.iter().all(|x| member.is_invariant_under(x)) {
                return Err(Error::InternalInconsistency(
                    "a flag member is not invariant under the centralizer".into(),
                ));
            }
        }
    }
    let nil = if basis.is_empty() { Vec::new() } else { flag_lowering(f, &basis, &flags) };
    let mut summands = Vec::new();
    for flag in &flags {
        for &sigma in &flag.multiplicities {
            summands.push((sigma, ExtensionDescriptor::new(flag.prime.clone())));
        }
    }
    Ok(CentralizerStructure {
        dim_total: basis.len(),
        nilradical_dim: nil.len(),
        nilradical_basis: nil,
        semisimple_summands: summands,
        center_dim: a.minimal_polynomial.degree().unwrap_or(0),
        basis,
    })
}

/// `f` with `S = f(T)` and `deg f < deg m_T`, if one exists.
pub fn in_polynomial_algebra(s: &Matrix, t: &Matrix, minimal_polynomial: &Polynomial) -> Option<Polynomial> {
    let f = t.field();
    let k = minimal_polynomial.degree().unwrap_or(0);
    let mut powers = Vec::with_capacity(k);
    let mut p = Matrix::identity(f, t.rows());
    for _ in 0..k {
        powers.push(p.vectorize());
        p = p.mul(t);
    }
    let sys = Matrix::from_columns(f, t.rows() * t.cols(), &powers);
    let c = sys.solve(&s.vectorize()).ok()?;
    Some(Polynomial::new(f, c))
}
