mod common;

use std::collections::{BTreeSet, HashSet};

use common::*;
use dynlin_core::affine::{affine_conjugacy_test, affine_zclass_invariant, AffineConjugacy, AffineMap};
use dynlin_core::canonical::{conjugacy_test, orbit_invariant, Conjugacy};
use dynlin_core::operator::{orbit_cell, Analysis};
use dynlin_core::oracle::{
    bruteforce_affine, bruteforce_affine_zclass, bruteforce_conjugacy, bruteforce_orbit_cells, bruteforce_zclass,
    is_conjugation_closed, matrix_from_code, partition_mismatch, run_check, CheckKind,
};
use dynlin_core::poly::FactorOptions;
use dynlin_core::zclass::zclass_equal;
use dynlin_core::{Matrix, Ternary};

fn opts() -> FactorOptions {
    FactorOptions::default()
}

const SIZES: [(u64, usize); 3] = [(2, 2), (3, 2), (2, 3)];

#[test]
fn library_checks_pass_at_desk_scale() {
    for (p, n) in SIZES {
        for kind in [CheckKind::Conjugacy, CheckKind::Zclass, CheckKind::Orbits, CheckKind::Units, CheckKind::Commuting] {
            let r = run_check(kind, p, n).unwrap();
            assert!(r.passed, "{r}");
        }
    }
}

#[test]
fn brute_force_classes_are_closed() {
    for (p, n) in SIZES {
        assert!(is_conjugation_closed(&bruteforce_conjugacy(p, n).unwrap()).unwrap());
    }
}

#[test]
fn class_representatives_are_least_codes() {
    let r = bruteforce_conjugacy(3, 2).unwrap();
    for (id, m) in r.classes.iter().enumerate() {
        let code = dynlin_core::oracle::code_of_matrix(m).unwrap() as usize;
        assert_eq!(r.partition[code], id);
        assert!(r.partition[..code].iter().all(|&c| c != id));
    }
}

/// conjugacy_test against the orbit partition: every pair for 2x2, every
/// matrix against every class representative for 3x3.
#[test]
fn conjugacy_test_matches_orbits() {
    for (p, n) in SIZES {
        let brute = bruteforce_conjugacy(p, n).unwrap();
        let all: Vec<Matrix> = (0..brute.partition.len() as u32).map(|c| matrix_from_code(p, n, c).unwrap()).collect();
        let pairs: Vec<(usize, usize)> = if n == 2 {
            (0..all.len()).flat_map(|i| (i..all.len()).map(move |j| (i, j))).collect()
        } else {
            let reps: Vec<usize> =
                brute.classes.iter().map(|m| dynlin_core::oracle::code_of_matrix(m).unwrap() as usize).collect();
            (0..all.len()).flat_map(|i| reps.iter().map(move |&r| (r, i))).collect()
        };
        for (i, j) in pairs {
            let same = brute.partition[i] == brute.partition[j];
            match conjugacy_test(&all[i], &all[j], &opts()).unwrap() {
                Conjugacy::Conjugate(g) => {
                    assert!(same, "{i} ~ {j} claimed");
                    assert_eq!(g.mul(&all[i]).mul(&g.inverse().unwrap()), all[j]);
                }
                Conjugacy::Distinct(_) => assert!(!same, "{i} ~ {j} missed"),
            }
        }
    }
}

#[test]
fn zclass_equal_matches_centralizer_conjugacy() {
    for n in 1..=3 {
        let brute = bruteforce_zclass(2, n).unwrap();
        let conj = bruteforce_conjugacy(2, n).unwrap();
        // z-equivalence is a union of conjugacy classes, so representatives suffice
        for (i, a) in conj.classes.iter().enumerate() {
            for b in &conj.classes[i..] {
                let same = brute.partition[dynlin_core::oracle::code_of_matrix(a).unwrap() as usize]
                    == brute.partition[dynlin_core::oracle::code_of_matrix(b).unwrap() as usize];
                let got = zclass_equal(a, b, &opts()).unwrap();
                assert_eq!(got, if same { Ternary::Yes } else { Ternary::No }, "{:?} vs {:?}", a.format_rows(), b.format_rows());
            }
        }
    }
}

#[test]
fn zclasses_coarsen_conjugacy() {
    let z = bruteforce_zclass(2, 2).unwrap();
    let c = bruteforce_conjugacy(2, 2).unwrap();
    assert_eq!(z.class_count, 4);
    assert_eq!(z.partition[0], z.partition[9]); // 0 and I
    for i in 0..16 {
        for j in 0..16 {
            if c.partition[i] == c.partition[j] {
                assert_eq!(z.partition[i], z.partition[j]);
            }
        }
    }
}

#[test]
fn orbit_examples() {
    let f2 = fp(2);
    let t = Matrix::from_i64(&f2, &[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]);
    let r = bruteforce_orbit_cells(&t).unwrap();
    assert_eq!(r.class_count, 4);
    let companion = Matrix::from_i64(&f2, &[&[0, 1], &[1, 1]]);
    assert_eq!(bruteforce_orbit_cells(&companion).unwrap().class_count, 2);
    assert_eq!(bruteforce_orbit_cells(&Matrix::identity(&f2, 2)).unwrap().class_count, 2);
}

/// In dimension four the flag cells can be coarser than the orbits:
/// `J_3(0) + J_1(0)` over `F_2` has six orbits on vectors but five cells.
#[test]
fn flag_cells_coarser_than_orbits_in_dimension_four() {
    let f2 = fp(2);
    let mut t = Matrix::zeros(&f2, 4, 4);
    t.set(0, 1, f2.one());
    t.set(1, 2, f2.one());
    let brute = bruteforce_orbit_cells(&t).unwrap();
    let a = Analysis::new(&t, &opts()).unwrap();
    let flags = a.flags().unwrap();
    let cells: Vec<_> = (0..16u32)
        .map(|c| {
            let v: Vec<_> = (0..4).map(|k| dynlin_core::Elem::Residue(((c >> k) & 1) as u64)).collect();
            orbit_cell(&a.components, &flags, &v)
        })
        .collect();
    let distinct: HashSet<_> = cells.iter().collect();
    assert_eq!(brute.class_count, 6);
    assert_eq!(distinct.len(), 5);
    // cells never split an orbit
    for i in 0..16 {
        for j in 0..16 {
            if brute.partition[i] == brute.partition[j] {
                assert_eq!(cells[i], cells[j]);
            }
        }
    }
}

fn unipotent_block_sizes(m: &Matrix) -> BTreeSet<usize> {
    let inv = orbit_invariant(m, &opts()).unwrap();
    let f = m.field();
    let x1 = dynlin_core::Polynomial::linear(f, &f.one());
    inv.components.iter().filter(|(e, _)| e.modulus == x1).flat_map(|(_, p)| p.iter().map(|(s, _)| *s)).collect()
}

/// The number of affine classes over a linear class is one more than the
/// number of distinct Jordan block sizes for eigenvalue one.
#[test]
fn affine_fibers_count_distinct_unipotent_block_sizes() {
    for (p, n) in SIZES {
        let r = bruteforce_affine(p, n).unwrap();
        for fb in &r.fibers {
            assert_eq!(fb.size, 1 + unipotent_block_sizes(&fb.linear).len(), "{:?}", fb.linear.format_rows());
            assert!(fb.size <= fb.r + 1);
        }
    }
}

#[test]
fn affine_fiber_examples() {
    let r = bruteforce_affine(2, 2).unwrap();
    let fiber = |rows: &[&[i64]]| {
        let m = Matrix::from_i64(&fp(2), rows);
        let c = bruteforce_conjugacy(2, 2).unwrap();
        let id = c.partition[dynlin_core::oracle::code_of_matrix(&m).unwrap() as usize];
        r.fibers[id].clone()
    };
    let id = fiber(&[&[1, 0], &[0, 1]]);
    assert_eq!((id.r, id.size), (1, 2));
    let j = fiber(&[&[1, 1], &[0, 1]]);
    assert_eq!((j.r, j.size), (2, 2));
    let c = fiber(&[&[0, 1], &[1, 1]]);
    assert_eq!((c.r, c.size), (0, 1));
}

#[test]
fn affine_conjugacy_matches_orbits_over_f3() {
    let brute = bruteforce_affine(3, 2).unwrap();
    let total = brute.classes.partition.len() as u32;
    let maps: Vec<AffineMap> = (0..total).map(|c| brute.map(c)).collect();
    for i in 0..maps.len() {
        for &r in &brute.classes.representatives {
            let same = brute.classes.partition[i] == brute.classes.partition[r as usize];
            let got = affine_conjugacy_test(&maps[r as usize], &maps[i], &opts()).unwrap();
            match got {
                AffineConjugacy::Conjugate(alpha) => {
                    assert!(same);
                    assert_eq!(alpha.conjugate(&maps[r as usize]).unwrap(), maps[i]);
                }
                AffineConjugacy::Distinct(_) => assert!(!same),
            }
        }
    }
}

#[test]
fn affine_zclasses_match_invariants_over_f3() {
    let brute = bruteforce_affine_zclass(3, 2).unwrap();
    let report = bruteforce_affine(3, 2).unwrap();
    let inv: Vec<_> = (0..report.classes.partition.len() as u32)
        .map(|c| affine_zclass_invariant(&report.map(c), &opts()).unwrap())
        .collect();
    assert_eq!(brute.class_count, 10);
    assert_eq!(partition_mismatch(&brute.partition, &inv), None);
}

/// Over `F_2` the units of a diagonal centralizer are trivial, so a map with
/// a fixed point and one without can share their centralizer.
#[test]
fn affine_zclasses_merge_over_f2() {
    let brute = bruteforce_affine_zclass(2, 2).unwrap();
    let report = bruteforce_affine(2, 2).unwrap();
    let f2 = fp(2);
    let a = Matrix::from_i64(&f2, &[&[1, 0], &[0, 0]]);
    let with_fixed_point = AffineMap::new(a.clone(), vec![f2.zero(), f2.zero()]).unwrap();
    let without = AffineMap::new(a, vec![f2.one(), f2.zero()]).unwrap();
    let code = |t: &AffineMap| {
        let lin = dynlin_core::oracle::code_of_matrix(&t.linear).unwrap() as usize;
        let v: usize = t.translation.iter().enumerate().map(|(k, x)| usize::from(*x == f2.one()) << k).sum();
        lin + 16 * v
    };
    assert_eq!(brute.partition[code(&with_fixed_point)], brute.partition[code(&without)]);
    let (i1, i2) =
        (affine_zclass_invariant(&with_fixed_point, &opts()).unwrap(), affine_zclass_invariant(&without, &opts()).unwrap());
    assert_eq!((i1.s, i2.s), (0, 1));
    assert_eq!(brute.class_count, 8);
    assert_eq!(report.classes.class_count, 9);
}

#[test]
fn affine_check_reports_fiber_mismatch() {
    let r = run_check(CheckKind::Affine, 2, 2).unwrap();
    assert!(!r.passed);
    assert!(r.failures.iter().any(|f| f.contains("r + 1 = 3")));
}
