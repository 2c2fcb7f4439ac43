//! Conjugacy invariants, canonical matrices with explicit conjugators, and
//! synthesis of operators from invariants.
//!
//! Each primary block is built from the flag generators `e` of the
//! complements `W_s`, largest `s` first. A generator of exponent `s`
//! contributes the basis `f_{u,j}` (`u < s`, `j < m`, `u = 0` deepest):
//!
//! * with an E-structure `S` (`d = 1` or `p' ≠ 0`): `f_{u,j} = N'^{s-1-u} S^j e`
//!   where `N' = T - S`, giving companion blocks glued by identities;
//! * otherwise: `f_{u,j} = p(T)^{s-1-u} T^j e`, giving companion blocks glued
//!   by a single one in the corner.

use std::fmt;

use crate::error::{Error, Result};
use crate::fields::{ExtensionDescriptor, Field};
use crate::linalg::{apply_polynomial, Matrix, Vector};
use crate::operator::Analysis;
use crate::poly::{FactorOptions, Polynomial};
use crate::sn::newton_lift;

/// Conjugacy data: for each prime, its extension and secondary partition.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitInvariant {
    pub total_dim: usize,
    /// Sorted by prime; each partition lists `(s, σ)` with `s` increasing.
    pub components: Vec<(ExtensionDescriptor, Vec<(usize, usize)>)>,
}

impl OrbitInvariant {
    /// `Σ m Σ sσ`.
    pub fn implied_dim(&self) -> usize {
        self.components
            .iter()
            .map(|(e, part)| e.degree * part.iter().map(|(s, k)| s * k).sum::<usize>())
            .sum()
    }
}

impl fmt::Display for OrbitInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|(e, part)| {
                let p: Vec<String> = part.iter().map(|(s, k)| format!("({s},{k})")).collect();
                format!("({}, [{}])", e.modulus, p.join(","))
            })
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

pub fn orbit_invariant(t: &Matrix, opts: &FactorOptions) -> Result<OrbitInvariant> {
    Ok(invariant_of(&Analysis::new(t, opts)?))
}

pub fn invariant_of(a: &Analysis) -> OrbitInvariant {
    OrbitInvariant {
        total_dim: a.dim(),
        components: a
            .components
            .iter()
            .zip(a.elementary_divisors())
            .map(|(c, ed)| (ExtensionDescriptor::new(c.prime.clone()), ed))
            .collect(),
    }
}

/// Whether the primary for `p` with exponent `d` gets identity glue.
pub fn admits_wedderburn(p: &Polynomial, d: usize) -> bool {
    d == 1 || !p.derivative().is_zero()
}

#[derive(Clone, Debug)]
pub struct CanonicalForm {
    pub c: Matrix,
    /// `g T g^{-1} = C`.
    pub g: Matrix,
    /// Per component, whether identity glue was used.
    pub wedderburn: Vec<bool>,
}

pub fn canonical_form(t: &Matrix, opts: &FactorOptions) -> Result<CanonicalForm> {
    canonical_from_analysis(&Analysis::new(t, opts)?)
}

pub fn canonical_from_analysis(a: &Analysis) -> Result<CanonicalForm> {
    let f = a.field();
    let t = &a.t;
    let n = a.dim();
    let flags = a.flags()?;
    let mut basis: Vec<Vector> = Vec::with_capacity(n);
    let mut wedderburn = Vec::new();
    for (comp, flag) in a.components.iter().zip(&flags) {
        let p = &comp.prime;
        let m = comp.degree();
        let w = admits_wedderburn(p, comp.exponent);
        let (step, lower) = if w {
            let s = apply_polynomial(&newton_lift(p, comp.exponent)?, t);
            let lower = t.sub(&s);
            (s, lower)
        } else {
            (t.clone(), comp.n_matrix.clone())
        };
        wedderburn.push(w);
        for complement in flag.complements.iter() {
            let s = complement.exponent;
            for e in &complement.generators {
                let mut top = Vec::with_capacity(m);
                top.push(e.clone());
                for _ in 1..m {
                    top.push(step.mul_vec(top.last().unwrap()));
                }
                // layers[k] = lower^k applied to the top layer
                let mut layers = vec![top];
                for _ in 1..s {
                    let next = layers.last().unwrap().iter().map(|v| lower.mul_vec(v)).collect();
                    layers.push(next);
                }
                for layer in layers.into_iter().rev() {
                    basis.extend(layer);
                }
            }
        }
    }
    if basis.len() != n {
        return Err(Error::InternalInconsistency("adapted basis has the wrong size".into()));
    }
    let b = Matrix::from_columns(f, n, &basis);
    let g = b
        .inverse()
        .map_err(|_| Error::InternalInconsistency("adapted basis is not a basis".into()))?;
    let c = g.mul(t).mul(&b);
    let expected = model_matrix(f, &invariant_of(a))?;
    if c != expected {
        return Err(Error::InternalInconsistency("adapted basis does not produce the model form".into()));
    }
    Ok(CanonicalForm { c, g, wedderburn })
}

/// The canonical matrix determined by an invariant, assembled directly.
fn model_matrix(f: &Field, inv: &OrbitInvariant) -> Result<Matrix> {
    let mut blocks = Vec::new();
    for (ext, part) in &inv.components {
        let p = &ext.modulus;
        let m = ext.degree;
        let d = part.iter().map(|e| e.0).max().unwrap_or(0);
        let w = admits_wedderburn(p, d);
        let comp = Matrix::companion(p);
        for &(s, sigma) in part.iter().rev() {
            for _ in 0..sigma {
                let mut block = Matrix::zeros(f, m * s, m * s);
                for u in 0..s {
                    block.set_block(u * m, u * m, &comp);
                    if u + 1 < s {
                        if w {
                            block.set_block(u * m, (u + 1) * m, &Matrix::identity(f, m));
                        } else {
                            block.set(u * m, (u + 1) * m + m - 1, f.one());
                        }
                    }
                }
                blocks.push(block);
            }
        }
    }
    Ok(Matrix::block_diag(f, &blocks))
}

/// Result of a conjugacy test.
#[derive(Clone, Debug)]
pub enum Conjugacy {
    /// `g A g^{-1} = B`.
    Conjugate(Matrix),
    /// The first differing invariant datum.
    Distinct(String),
}

pub fn conjugacy_test(a: &Matrix, b: &Matrix, opts: &FactorOptions) -> Result<Conjugacy> {
    if a.rows() != b.rows() || !a.is_square() || !b.is_square() {
        return Err(Error::DimensionMismatch("conjugacy of matrices of different sizes".into()));
    }
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    let aa = Analysis::new(a, opts)?;
    let ab = Analysis::new(b, opts)?;
    let (ia, ib) = (invariant_of(&aa), invariant_of(&ab));
    if ia != ib {
        return Ok(Conjugacy::Distinct(first_difference(&ia, &ib)));
    }
    let ca = canonical_from_analysis(&aa)?;
    let cb = canonical_from_analysis(&ab)?;
    let g = cb.g.inverse()?.mul(&ca.g);
    if g.mul(a) != b.mul(&g) {
        return Err(Error::InternalInconsistency("composed conjugator fails".into()));
    }
    Ok(Conjugacy::Conjugate(g))
}

fn first_difference(a: &OrbitInvariant, b: &OrbitInvariant) -> String {
    let primes = |i: &OrbitInvariant| -> Vec<String> { i.components.iter().map(|c| c.0.modulus.to_string()).collect() };
    if primes(a) != primes(b) {
        return format!("primes differ: [{}] vs [{}]", primes(a).join(", "), primes(b).join(", "));
    }
    for ((e, pa), (_, pb)) in a.components.iter().zip(&b.components) {
        if pa != pb {
            let show = |p: &[(usize, usize)]| -> String {
                let mut parts = Vec::new();
                for &(s, k) in p.iter().rev() {
                    parts.extend(std::iter::repeat_n(s.to_string(), k));
                }
                format!("({})", parts.join(","))
            };
            return format!("secondary partitions for {} differ: {} vs {}", e.modulus, show(pa), show(pb));
        }
    }
    "invariants differ".into()
}

/// The canonical operator with the given invariant.
pub fn synthesize_operator(inv: &OrbitInvariant, field: &Field) -> Result<Matrix> {
    if inv.implied_dim() != inv.total_dim {
        return Err(Error::InconsistentInvariant(format!(
            "components account for dimension {} of {}",
            inv.implied_dim(),
            inv.total_dim
        )));
    }
    let mut seen = Vec::new();
    for (ext, part) in &inv.components {
        let p = &ext.modulus;
        if p.field() != field {
            return Err(Error::FieldMismatch);
        }
        if !p.is_monic() || p.degree() != Some(ext.degree) || ext.degree == 0 {
            return Err(Error::InconsistentInvariant(format!("bad modulus {p}")));
        }
        let hints = FactorOptions { hints: vec![(p.clone(), 1)], ..Default::default() };
        if !p.is_irreducible(&hints)? {
            return Err(Error::InconsistentInvariant(format!("{p} is reducible")));
        }
        if part.is_empty() || part.iter().any(|&(s, k)| s == 0 || k == 0) {
            return Err(Error::InconsistentInvariant(format!("empty secondary partition for {p}")));
        }
        if part.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::InconsistentInvariant("secondary exponents must increase".into()));
        }
        if seen.contains(p) {
            return Err(Error::InconsistentInvariant(format!("{p} repeated")));
        }
        seen.push(p.clone());
    }
    if inv.components.windows(2).any(|w| w[0].0.modulus >= w[1].0.modulus) {
        return Err(Error::InconsistentInvariant("components are not sorted".into()));
    }
    model_matrix(field, inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> FactorOptions {
        FactorOptions::default()
    }

    #[test]
    fn invariants() {
        let q = Field::rationals();
        let t = Matrix::from_i64(&q, &[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]);
        let inv = orbit_invariant(&t, &opts()).unwrap();
        assert_eq!(inv.components.len(), 1);
        assert_eq!(inv.components[0].1, vec![(1, 1), (2, 1)]);
        let f2 = Field::prime(2).unwrap();
        let inv = orbit_invariant(&Matrix::from_i64(&f2, &[&[0, 0], &[0, 1]]), &opts()).unwrap();
        assert_eq!(inv.to_string(), "{(x, [(1,1)]), (x + 1, [(1,1)])}");
    }

    #[test]
    fn jordan_block_is_already_canonical() {
        let q = Field::rationals();
        let j = Matrix::jordan(&q, &q.zero(), 2);
        let cf = canonical_form(&j, &opts()).unwrap();
        assert_eq!(cf.c, j);
    }

    #[test]
    fn wedderburn_form_of_repeated_irreducible() {
        let q = Field::rationals();
        let p = Polynomial::from_i64(&q, &[1, 0, 1]);
        let t = Matrix::companion(&p.pow(2));
        let cf = canonical_form(&t, &opts()).unwrap();
        let comp = Matrix::companion(&p);
        let mut expect = Matrix::zeros(&q, 4, 4);
        expect.set_block(0, 0, &comp);
        expect.set_block(2, 2, &comp);
        expect.set_block(0, 2, &Matrix::identity(&q, 2));
        assert_eq!(cf.c, expect);
        assert_eq!(cf.g.mul(&t), cf.c.mul(&cf.g));
        assert!(cf.wedderburn[0]);
    }

    #[test]
    fn conjugacy_examples() {
        let q = Field::rationals();
        let j = Matrix::jordan(&q, &q.zero(), 2);
        match conjugacy_test(&j, &j.transpose(), &opts()).unwrap() {
            Conjugacy::Conjugate(g) => assert_eq!(g.mul(&j), j.transpose().mul(&g)),
            Conjugacy::Distinct(d) => panic!("{d}"),
        }
        match conjugacy_test(&j, &Matrix::zeros(&q, 2, 2), &opts()).unwrap() {
            Conjugacy::Distinct(d) => assert!(d.contains("(2) vs (1,1)"), "{d}"),
            _ => panic!(),
        }
        let f2 = Field::prime(2).unwrap();
        let c = Matrix::companion(&Polynomial::from_i64(&f2, &[1, 1, 1]));
        match conjugacy_test(&c, &Matrix::identity(&f2, 2), &opts()).unwrap() {
            Conjugacy::Distinct(d) => assert!(d.starts_with("primes differ")),
            _ => panic!(),
        }
    }

    #[test]
    fn synthesis_round_trips() {
        let q = Field::rationals();
        let x = Polynomial::x(&q);
        let inv = OrbitInvariant {
            total_dim: 3,
            components: vec![(ExtensionDescriptor::new(x), vec![(1, 1), (2, 1)])],
        };
        let t = synthesize_operator(&inv, &q).unwrap();
        assert_eq!(orbit_invariant(&t, &opts()).unwrap(), inv);

        let inv = OrbitInvariant {
            total_dim: 3,
            components: vec![(ExtensionDescriptor::new(Polynomial::from_i64(&q, &[-1, 1])), vec![(1, 3)])],
        };
        assert_eq!(synthesize_operator(&inv, &q).unwrap(), Matrix::identity(&q, 3));

        let f2 = Field::prime(2).unwrap();
        let p = Polynomial::from_i64(&f2, &[1, 1, 1]);
        let inv = OrbitInvariant { total_dim: 2, components: vec![(ExtensionDescriptor::new(p.clone()), vec![(1, 1)])] };
        assert_eq!(synthesize_operator(&inv, &f2).unwrap(), Matrix::companion(&p));

        let bad = OrbitInvariant { total_dim: 4, ..inv };
        assert!(matches!(synthesize_operator(&bad, &f2), Err(Error::InconsistentInvariant(_))));
    }

    #[test]
    fn non_perfect_glue() {
        use crate::fields::FpPoly;
        let k = Field::rational_functions(2).unwrap();
        let tt = k.frac(FpPoly::var(), FpPoly::one()).unwrap();
        let p = Polynomial::new(&k, vec![tt, k.zero(), k.one()]);
        let t = Matrix::companion(&p.pow(2));
        let o = FactorOptions { hints: vec![(p.clone(), 2)], ..Default::default() };
        let cf = canonical_form(&t, &o).unwrap();
        assert!(!cf.wedderburn[0]);
        assert_eq!(cf.c.get(0, 3), &k.one());
        assert!(k.is_zero(cf.c.get(0, 2)) && k.is_zero(cf.c.get(1, 2)));
        assert_eq!(cf.g.mul(&t), cf.c.mul(&cf.g));
    }
}
