mod common;

use common::*;
use dynlin_core::affine::{
    affine_conjugacy_test, fixed_point, reduced_translation_index, translation_index, AffineConjugacy, AffineMap,
};
use dynlin_core::canonical::{canonical_form, conjugacy_test, orbit_invariant, synthesize_operator, Conjugacy};
use dynlin_core::linalg::{apply_polynomial, characteristic_polynomial, minimal_polynomial};
use dynlin_core::operator::{centralizer_basis, in_polynomial_algebra, orbit_cell, Analysis};
use dynlin_core::poly::FactorOptions;
use dynlin_core::sn::{sn_decompose, sn_invariants_hold};
use dynlin_core::zclass::zclass_equal;
use dynlin_core::{Field, Matrix, Ternary};
use proptest::prelude::*;
use rand::Rng;

fn opts() -> FactorOptions {
    FactorOptions::default()
}

fn field(k: usize) -> Field {
    [q(), fp(2), fp(3), f4(), fp(5)][k % 5].clone()
}

fn config() -> ProptestConfig {
    ProptestConfig { cases: 48, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn canonical_form_is_idempotent(k in 0..5usize, seed: u64) {
        let f = field(k);
        let t = sample(&f, 5, &mut rng(seed));
        let cf = canonical_form(&t, &opts()).unwrap();
        prop_assert_eq!(cf.g.mul(&t).mul(&cf.g.inverse().unwrap()), cf.c.clone());
        prop_assert_eq!(canonical_form(&cf.c, &opts()).unwrap().c, cf.c);
    }

    #[test]
    fn random_conjugates_are_recognized(k in 0..5usize, seed: u64) {
        let f = field(k);
        let mut r = rng(seed);
        let t = sample(&f, 5, &mut r);
        let h = random_invertible(&f, t.rows(), &mut r);
        let b = h.mul(&t).mul(&h.inverse().unwrap());
        match conjugacy_test(&t, &b, &opts()).unwrap() {
            Conjugacy::Conjugate(g) => prop_assert_eq!(g.mul(&t), b.mul(&g)),
            Conjugacy::Distinct(why) => prop_assert!(false, "missed conjugate: {}", why),
        }
        prop_assert_eq!(zclass_equal(&t, &b, &opts()).unwrap(), Ternary::Yes);
    }

    #[test]
    fn synthesis_round_trips(k in 0..5usize, seed: u64) {
        let f = field(k);
        let t = sample(&f, 5, &mut rng(seed));
        let inv = orbit_invariant(&t, &opts()).unwrap();
        let s = synthesize_operator(&inv, &f).unwrap();
        prop_assert_eq!(orbit_invariant(&s, &opts()).unwrap(), inv);
    }

    /// `dim Z(T) = Σ_p deg p Σ_{i,j} min(s_i, s_j)` over the Jordan-type
    /// block sizes of each primary.
    #[test]
    fn centralizer_dimension_from_block_sizes(k in 0..5usize, seed: u64) {
        let f = field(k);
        let t = sample(&f, 5, &mut rng(seed));
        let inv = orbit_invariant(&t, &opts()).unwrap();
        let expected: usize = inv
            .components
            .iter()
            .map(|(e, parts)| {
                let sizes: Vec<usize> = parts.iter().flat_map(|&(s, sigma)| std::iter::repeat_n(s, sigma)).collect();
                e.degree * sizes.iter().flat_map(|a| sizes.iter().map(move |b| a.min(b))).sum::<usize>()
            })
            .sum();
        prop_assert_eq!(centralizer_basis(&t).len(), expected);
    }

    #[test]
    fn minimal_polynomial_annihilates_and_divides(k in 0..5usize, seed: u64) {
        let f = field(k);
        let t = sample(&f, 6, &mut rng(seed));
        let m = minimal_polynomial(&t).unwrap();
        prop_assert!(apply_polynomial(&m, &t).is_zero());
        prop_assert!(m.divides(&characteristic_polynomial(&t)));
    }

    #[test]
    fn sn_splitting_over_perfect_fields(k in 0..5usize, seed: u64) {
        let f = field(k);
        let t = sample(&f, 5, &mut rng(seed));
        let r = sn_decompose(&t, &opts()).unwrap();
        prop_assert!(r.exists);
        let (s, n) = (r.s.unwrap(), r.n.unwrap());
        prop_assert!(sn_invariants_hold(&t, &s, &n).unwrap());
        let m = minimal_polynomial(&t).unwrap();
        prop_assert!(in_polynomial_algebra(&s, &t, &m).is_some());
    }

    /// Commuting units permute the vectors of each flag cell among themselves.
    #[test]
    fn centralizer_units_preserve_cells(k in 0..5usize, seed: u64) {
        let f = field(k);
        let mut r = rng(seed);
        let t = sample(&f, 4, &mut r);
        let a = Analysis::new(&t, &opts()).unwrap();
        let flags = a.flags().unwrap();
        let basis = centralizer_basis(&t);
        let n = t.rows();
        let x = loop {
            let mut x = Matrix::zeros(&f, n, n);
            for b in &basis {
                x = x.add(&b.scale(&f.random(&mut r, 2)));
            }
            if x.is_invertible() {
                break x;
            }
        };
        for _ in 0..8 {
            let v: Vec<_> = (0..n).map(|_| f.random(&mut r, 2)).collect();
            prop_assert_eq!(
                orbit_cell(&a.components, &flags, &v),
                orbit_cell(&a.components, &flags, &x.mul_vec(&v))
            );
        }
    }

    #[test]
    fn affine_rebasing_is_conjugation(k in 0..5usize, seed: u64) {
        let f = field(k);
        let mut r = rng(seed);
        let n = r.random_range(1..=4);
        let a = if r.random_bool(0.5) { structured(&f, n, &mut r) } else { unipotentish(&f, n, &mut r) };
        let v: Vec<_> = (0..n).map(|_| f.random(&mut r, 2)).collect();
        let t = AffineMap::new(a, v).unwrap();
        let base: Vec<_> = (0..n).map(|_| f.random(&mut r, 2)).collect();
        let moved = t.rebase(&base);
        match affine_conjugacy_test(&t, &moved, &opts()).unwrap() {
            AffineConjugacy::Conjugate(alpha) => prop_assert_eq!(alpha.conjugate(&t).unwrap(), moved),
            AffineConjugacy::Distinct(why) => prop_assert!(false, "{}", why),
        }
        let s = reduced_translation_index(&t).unwrap();
        prop_assert!(s <= translation_index(&t).unwrap());
        prop_assert_eq!(s == 0, fixed_point(&t).is_some());
    }
}

/// Random conjugate of `I + N` for a random strictly upper triangular `N`,
/// so that eigenvalue one appears with nontrivial blocks.
fn unipotentish<R: Rng>(f: &Field, n: usize, r: &mut R) -> Matrix {
    let mut u = Matrix::identity(f, n);
    for i in 0..n {
        for j in i + 1..n {
            if r.random_bool(0.5) {
                u.set(i, j, f.random(r, 1));
            }
        }
    }
    let g = random_invertible(f, n, r);
    g.mul(&u).mul(&g.inverse().unwrap())
}
