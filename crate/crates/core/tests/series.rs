use dynlin_core::oracle::bruteforce_zclass;
use dynlin_core::zclass::{
    enumerate_zclasses, generating_series, irreducible_count, partition_numbers, partitions, FieldClass,
};
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// `Π_k (1 - x^k)^{-b(k)}`: multisets drawn from `b(k)` kinds of weight `k`.
fn multiset_product(b: &[BigUint], n: usize) -> Vec<BigUint> {
    let mut out = vec![BigUint::zero(); n + 1];
    out[0] = BigUint::one();
    for k in 1..=n {
        for _ in 0..b[k].to_usize().unwrap() {
            for i in k..=n {
                let add = out[i - k].clone();
                out[i] += add;
            }
        }
    }
    out
}

fn counts(class: FieldClass, n: usize) -> Vec<usize> {
    (0..=n).map(|k| enumerate_zclasses(class, k).len()).collect()
}

fn as_usize(v: &[BigUint]) -> Vec<usize> {
    v.iter().map(|x| x.to_usize().unwrap()).collect()
}

#[test]
fn product_and_sum_agree_to_thirty() {
    for class in [
        FieldClass::AlgebraicallyClosed,
        FieldClass::Real,
        FieldClass::FiniteField { q: None },
        FieldClass::FiniteField { q: Some(3) },
        FieldClass::SemisimpleOrCyclic,
    ] {
        assert_eq!(generating_series(class, 30).unwrap().coefficients.len(), 31);
    }
}

#[test]
fn semisimple_enumeration_is_partition_numbers() {
    assert_eq!(counts(FieldClass::SemisimpleOrCyclic, 10), as_usize(&partition_numbers(10)));
}

/// Over a closed field a z-class is a multiset of secondary partitions, so
/// the enumeration follows `Π (1 - x^k)^{-p(k)}`. The product
/// `Π 1/(1 - p(k) x^k)` weights each multiset by ordered choices and first
/// exceeds it at `n = 4` (15 against 14): two blocks of size two can carry
/// the partitions (2) and (1,1) in either order.
#[test]
fn closed_field_enumeration_counts_multisets() {
    let p = partition_numbers(10);
    let enumerated = counts(FieldClass::AlgebraicallyClosed, 10);
    assert_eq!(enumerated, as_usize(&multiset_product(&p, 10)));
    assert_eq!(&enumerated[..5], &[1, 1, 3, 6, 14]);
    let series = as_usize(&generating_series(FieldClass::AlgebraicallyClosed, 10).unwrap().coefficients);
    assert_eq!(&series[..4], &enumerated[..4]);
    assert!((4..=10).all(|n| series[n] > enumerated[n]));
}

#[test]
fn real_enumeration_counts_multisets() {
    let p = partition_numbers(10);
    let per = multiset_product(&p, 10);
    // one family of degree one and one of degree two
    let expected: Vec<usize> = (0..=10)
        .map(|n| (0..=n / 2).map(|j| per[n - 2 * j].to_usize().unwrap() * per[j].to_usize().unwrap()).sum())
        .collect();
    assert_eq!(counts(FieldClass::Real, 10), expected);
}

/// With `q` given, the capped series counts exactly what is enumerated, and
/// for `q = 2` it matches brute force on `M_n(F_2)`.
#[test]
fn finite_field_counts() {
    for q in [2, 3] {
        let enumerated = counts(FieldClass::FiniteField { q: Some(q) }, 8);
        let series = as_usize(&generating_series(FieldClass::FiniteField { q: Some(q) }, 8).unwrap().coefficients);
        assert_eq!(enumerated, series, "q = {q}");
    }
    let capped = as_usize(&generating_series(FieldClass::FiniteField { q: Some(2) }, 3).unwrap().coefficients);
    for n in 1..=3 {
        assert_eq!(bruteforce_zclass(2, n).unwrap().class_count, capped[n]);
    }
    // the uncapped product has one extension per degree and no ceiling
    let open = as_usize(&generating_series(FieldClass::FiniteField { q: None }, 3).unwrap().coefficients);
    assert_eq!(&open[..4], &[1, 1, 4, 8]);
    assert_eq!(capped[3], 7);
}

#[test]
fn closed_small_values() {
    let z = generating_series(FieldClass::AlgebraicallyClosed, 4).unwrap();
    assert_eq!(as_usize(&z.coefficients), vec![1, 1, 3, 6, 15]);
    let ff = generating_series(FieldClass::FiniteField { q: None }, 2).unwrap();
    assert_eq!(ff.coefficients[2], BigUint::from(4u32));
}

#[test]
fn irreducible_counts() {
    // 2, 1, 2, 3, 6 irreducibles of degrees 1..=5 over F_2
    let got: Vec<usize> = (1..=5).map(|m| irreducible_count(2, m, 100)).collect();
    assert_eq!(got, vec![2, 1, 2, 3, 6]);
    assert_eq!(irreducible_count(3, 2, 100), 3);
    assert_eq!(irreducible_count(2, 5, 4), 4);
}

#[test]
fn partitions_in_decreasing_lexicographic_order() {
    let p = partitions(5);
    assert_eq!(p.len(), 7);
    assert_eq!(p.first().unwrap(), &vec![5]);
    assert_eq!(p.last().unwrap(), &vec![1, 1, 1, 1, 1]);
    assert!(p.windows(2).all(|w| w[0] > w[1]));
}
