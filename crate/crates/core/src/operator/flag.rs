//! The refined flag of a primary component.
//!
//! With `V_i = ker N^i`, the members strictly between `V_i` and `V_{i+1}`
//! are `V_i + N^{s-i-1}(V_s)` for `s` running down from `d` to `i + 1`. The
//! flag is built twice: once from that formula and once from explicit
//! complements `W_s` with generators `e_{s,k}`, and both must agree.

use super::PrimaryComponent;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace, Vector};
use crate::poly::Polynomial;

/// A complement `W_s` of `V_{s-1} + Σ_{t>s} N^{t-s}(W_t)` in `V_s`, spanned
/// by the `T`-orbits `T^j e` (`j < m`) of its generators.
#[derive(Clone, Debug)]
pub struct Complement {
    pub exponent: usize,
    pub generators: Vec<Vector>,
    pub space: Subspace,
}

/// Position of a chain member: between `V_layer` and `V_{layer+1}`, the
/// member contributed by blocks of size `exponent`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellLabel {
    pub layer: usize,
    pub exponent: usize,
}

#[derive(Clone, Debug)]
pub struct RefinedFlag {
    pub prime: Polynomial,
    pub n_matrix: Matrix,
    pub exponents: Vec<usize>,
    pub multiplicities: Vec<usize>,
    /// Strictly increasing, from `0` to the whole component.
    pub chain: Vec<Subspace>,
    /// `labels[k]` describes `chain[k + 1]`.
    pub labels: Vec<CellLabel>,
    pub complements: Vec<Complement>,
}

impl RefinedFlag {
    pub fn degree(&self) -> usize {
        self.prime.degree().unwrap_or(0)
    }

    /// `τ_i = σ_i + ... + σ_r`.
    pub fn tau(&self, i: usize) -> usize {
        self.multiplicities[i..].iter().sum()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.chain.iter().map(Subspace::dim).collect()
    }

    pub fn multiplicity_of(&self, s: usize) -> usize {
        self.exponents
            .iter()
            .position(|&e| e == s)
            .map_or(0, |k| self.multiplicities[k])
    }
}

pub fn refined_flag(t: &Matrix, c: &PrimaryComponent) -> Result<RefinedFlag> {
    let f = t.field();
    let n = t.rows();
    let nm = &c.n_matrix;
    let m = c.degree();
    let d = c.exponent;
    let v = &c.kernels;
    let eds = super::elementary_divisors(c);
    let exponents: Vec<usize> = eds.iter().map(|e| e.0).collect();
    let multiplicities: Vec<usize> = eds.iter().map(|e| e.1).collect();
    let image_power = |s: &Subspace, k: usize| -> Subspace {
        (0..k).fold(s.clone(), |acc, _| acc.image_under(nm))
    };

    // complements W_s, from the top down
    let mut complements: Vec<Complement> = Vec::new();
    for s in (1..=d).rev() {
        let mut x = v[s - 1].clone();
        for w in &complements {
            x = x.sum(&image_power(&w.space, w.exponent - s));
        }
        let mut acc = x.clone();
        let mut generators = Vec::new();
        let mut span = Subspace::zero(f, n);
        for cand in v[s].basis() {
            let e = x.reduce(&cand);
            if acc.contains(&e) {
                continue;
            }
            let mut orbit = vec![e.clone()];
            for _ in 1..m {
                orbit.push(t.mul_vec(orbit.last().unwrap()));
            }
            acc = acc.add_vectors(&orbit);
            span = span.add_vectors(&orbit);
            generators.push(e);
        }
        if acc != v[s] {
            return Err(Error::InternalInconsistency(format!("W_{s} does not complete V_{s}")));
        }
        let sigma = exponents.iter().position(|&e| e == s).map_or(0, |k| multiplicities[k]);
        if generators.len() != sigma || span.dim() != m * sigma {
            return Err(Error::InternalInconsistency(format!(
                "W_{s} has {} generators, expected {sigma}",
                generators.len()
            )));
        }
        if sigma > 0 {
            complements.push(Complement { exponent: s, generators, space: span });
        }
    }

    // the chain from the formula, and again from the complements
    let mut chain = vec![v[0].clone()];
    let mut labels = Vec::new();
    for i in 0..d {
        for s in (i + 1..=d).rev() {
            let formula = v[i].sum(&image_power(&v[s], s - i - 1));
            let built = complements
                .iter()
                .filter(|w| w.exponent >= s)
                .fold(v[i].clone(), |acc, w| acc.sum(&image_power(&w.space, w.exponent - i - 1)));
            if formula != built {
                return Err(Error::InternalInconsistency(format!(
                    "flag member ({i}, {s}) differs between constructions"
                )));
            }
            if formula.dim() > chain.last().unwrap().dim() {
                let sigma = exponents.iter().position(|&e| e == s).map_or(0, |k| multiplicities[k]);
                if formula.dim() - chain.last().unwrap().dim() != m * sigma {
                    return Err(Error::InternalInconsistency(format!(
                        "flag step ({i}, {s}) has the wrong dimension"
                    )));
                }
                chain.push(formula);
                labels.push(CellLabel { layer: i, exponent: s });
            }
        }
        if chain.last() != Some(&v[i + 1]) {
            return Err(Error::InternalInconsistency(format!("flag misses V_{}", i + 1)));
        }
    }

    // every sub-quotient is an E-space: T-invariant and killed by N
    for w in chain.windows(2) {
        if !w[1].is_invariant_under(t) || !w[0].contains_subspace(&w[1].image_under(nm)) {
            return Err(Error::InternalInconsistency(
                "a flag sub-quotient does not have minimal polynomial p".into(),
            ));
        }
    }

    let flag = RefinedFlag {
        prime: c.prime.clone(),
        n_matrix: nm.clone(),
        exponents,
        multiplicities,
        chain,
        labels,
        complements,
    };
    let l: usize = flag.exponents.iter().zip(&flag.multiplicities).map(|(s, k)| s * k).sum();
    if m * l != c.dim() || v[1].dim() != m * flag.tau(0) {
        return Err(Error::InternalInconsistency("flag dimension counts fail".into()));
    }
    Ok(flag)
}

/// Cell of one primary projection: `Zero`, or the index `k >= 1` of the
/// least chain member containing it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cell {
    Zero,
    Member(usize),
}

/// The cell tuple of `v`, one entry per primary component.
pub fn orbit_cell(components: &[PrimaryComponent], flags: &[RefinedFlag], v: &[crate::fields::Elem]) -> Vec<Cell> {
    components
        .iter()
        .zip(flags)
        .map(|(c, flag)| {
            let vk = c.projector.mul_vec(v);
            match flag.chain.iter().position(|s| s.contains(&vk)) {
                Some(0) => Cell::Zero,
                Some(k) => Cell::Member(k),
                None => unreachable!("the chain ends at the whole component"),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::Field;
    use crate::operator::Analysis;
    use crate::poly::FactorOptions;

    fn flags_of(t: &Matrix) -> (Analysis, Vec<RefinedFlag>) {
        let a = Analysis::new(t, &FactorOptions::default()).unwrap();
        let fl = a.flags().unwrap();
        (a, fl)
    }

    #[test]
    fn j2_plus_j1() {
        let q = Field::rationals();
        let t = Matrix::from_i64(&q, &[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]);
        let (a, fl) = flags_of(&t);
        assert_eq!(fl[0].dims(), vec![0, 1, 2, 3]);
        let e1 = vec![q.one(), q.zero(), q.zero()];
        assert_eq!(orbit_cell(&a.components, &fl, &e1), vec![Cell::Member(1)]);
        assert_eq!(orbit_cell(&a.components, &fl, &[q.zero(), q.zero(), q.zero()]), vec![Cell::Zero]);
    }

    #[test]
    fn single_block_and_scalar() {
        let q = Field::rationals();
        let (_, fl) = flags_of(&Matrix::jordan(&q, &q.zero(), 3));
        assert_eq!(fl[0].dims(), vec![0, 1, 2, 3]);
        let (_, fl) = flags_of(&Matrix::scalar(&q, 2, &q.from_i64(7)));
        assert_eq!(fl[0].dims(), vec![0, 2]);
    }

    #[test]
    fn irreducible_minimal_polynomial_has_one_cell() {
        let f2 = Field::prime(2).unwrap();
        let t = Matrix::companion(&Polynomial::from_i64(&f2, &[1, 1, 1]));
        let (a, fl) = flags_of(&t);
        for v in [[1, 0], [0, 1], [1, 1]] {
            let v: Vec<_> = v.iter().map(|&x| f2.from_i64(x)).collect();
            assert_eq!(orbit_cell(&a.components, &fl, &v), vec![Cell::Member(1)]);
        }
    }
}
