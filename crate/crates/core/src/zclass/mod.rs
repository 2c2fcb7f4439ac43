//! z-classes: operators up to conjugacy of their centralizers.
//!
//! The z-invariant keeps the secondary partitions and only the isomorphism
//! type of each extension `F[x]/(p)`, forgetting `p` itself.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::canonical::{orbit_invariant, OrbitInvariant};
use crate::error::Result;
use crate::fields::{extension_isomorphic, ExtensionDescriptor, Field, Ternary};
use crate::linalg::Matrix;
use crate::poly::{FactorOptions, Polynomial};

/// Isomorphism type of a simple extension. `modulus` is kept only where
/// the degree does not determine the type.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZExtension {
    pub degree: usize,
    pub modulus: Option<Polynomial>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZClassInvariant {
    pub total_dim: usize,
    /// Sorted multiset of `(extension, secondary partition)`.
    pub components: Vec<(ZExtension, Vec<(usize, usize)>)>,
}

impl fmt::Display for ZClassInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|(e, part)| {
                let p: Vec<String> = part.iter().map(|(s, k)| format!("({s},{k})")).collect();
                match &e.modulus {
                    Some(m) => format!("(deg {} via {m}, [{}])", e.degree, p.join(",")),
                    None => format!("(deg {}, [{}])", e.degree, p.join(",")),
                }
            })
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

pub fn zclass_of(inv: &OrbitInvariant, field: &Field) -> ZClassInvariant {
    let mut components: Vec<_> = inv
        .components
        .iter()
        .map(|(e, part)| {
            let modulus = (!field.is_finite() && e.degree > 1).then(|| e.modulus.clone());
            (ZExtension { degree: e.degree, modulus }, part.clone())
        })
        .collect();
    components.sort();
    ZClassInvariant { total_dim: inv.total_dim, components }
}

pub fn zclass_invariant(t: &Matrix, opts: &FactorOptions) -> Result<ZClassInvariant> {
    Ok(zclass_of(&orbit_invariant(t, opts)?, t.field()))
}

/// Compare two z-invariants. `Unknown` arises only when extensions of the
/// same degree over an infinite field have different moduli.
pub fn zclass_invariants_equal(a: &ZClassInvariant, b: &ZClassInvariant, field: &Field) -> Ternary {
    if a == b {
        return Ternary::Yes;
    }
    if a.total_dim != b.total_dim || a.components.len() != b.components.len() {
        return Ternary::No;
    }
    let compare = |x: &(ZExtension, Vec<(usize, usize)>), y: &(ZExtension, Vec<(usize, usize)>)| -> Ternary {
        if x.1 != y.1 || x.0.degree != y.0.degree {
            return Ternary::No;
        }
        match (&x.0.modulus, &y.0.modulus) {
            (Some(p), Some(q)) => extension_isomorphic(
                &ExtensionDescriptor::new(p.clone()),
                &ExtensionDescriptor::new(q.clone()),
                field,
            ),
            _ => Ternary::Yes,
        }
    };
    // best outcome over all matchings: Yes beats Unknown beats No
    fn search(
        i: usize,
        used: &mut Vec<bool>,
        a: &[(ZExtension, Vec<(usize, usize)>)],
        b: &[(ZExtension, Vec<(usize, usize)>)],
        compare: &dyn Fn(&(ZExtension, Vec<(usize, usize)>), &(ZExtension, Vec<(usize, usize)>)) -> Ternary,
        certain: bool,
    ) -> Ternary {
        if i == a.len() {
            return if certain { Ternary::Yes } else { Ternary::Unknown };
        }
        let mut best = Ternary::No;
        for j in 0..b.len() {
            if used[j] {
                continue;
            }
            let c = compare(&a[i], &b[j]);
            if c == Ternary::No {
                continue;
            }
            used[j] = true;
            let r = search(i + 1, used, a, b, compare, certain && c == Ternary::Yes);
            used[j] = false;
            match r {
                Ternary::Yes => return Ternary::Yes,
                Ternary::Unknown => best = Ternary::Unknown,
                Ternary::No => {}
            }
        }
        best
    }
    search(0, &mut vec![false; b.components.len()], &a.components, &b.components, &compare, true)
}

pub fn zclass_equal(a: &Matrix, b: &Matrix, opts: &FactorOptions) -> Result<Ternary> {
    let (za, zb) = (zclass_invariant(a, opts)?, zclass_invariant(b, opts)?);
    Ok(zclass_invariants_equal(&za, &zb, a.field()))
}

/// Families of fields for counting z-classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldClass {
    AlgebraicallyClosed,
    Real,
    /// One extension per degree. With `q` given, a degree `m` can carry at
    /// most as many components as there are monic irreducibles of degree
    /// `m` over `F_q`.
    FiniteField { q: Option<u64> },
    /// Semisimple (equivalently, cyclic) operators over a closed field.
    SemisimpleOrCyclic,
}

impl FieldClass {
    fn degrees(self, n: usize) -> Vec<usize> {
        match self {
            FieldClass::AlgebraicallyClosed | FieldClass::SemisimpleOrCyclic => vec![1],
            FieldClass::Real => vec![1, 2],
            FieldClass::FiniteField { .. } => (1..=n.max(1)).collect(),
        }
    }

    fn cap(self, m: usize, n: usize) -> usize {
        match self {
            FieldClass::FiniteField { q: Some(q) } => irreducible_count(q, m, n + 1),
            _ => n + 1,
        }
    }
}

/// Number of monic irreducibles of degree `m` over `F_q`, clamped at `limit`.
pub fn irreducible_count(q: u64, m: usize, limit: usize) -> usize {
    // m I(q, m) = Σ_{d | m} μ(d) q^{m/d}
    let q = BigUint::from(q);
    let (mut plus, mut minus) = (BigUint::zero(), BigUint::zero());
    for d in (1..=m).filter(|d| m.is_multiple_of(*d)) {
        let term = q.pow((m / d) as u32);
        match mobius(d) {
            1 => plus += term,
            -1 => minus += term,
            _ => {}
        }
    }
    let count = (plus - minus) / BigUint::from(m);
    count.to_usize().map_or(limit, |c| c.min(limit))
}

fn mobius(mut d: usize) -> i32 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= d {
        if d.is_multiple_of(p) {
            d /= p;
            if d.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if d > 1 {
        sign = -sign;
    }
    sign
}

fn partition_memo() -> &'static RwLock<Vec<Vec<Vec<usize>>>> {
    static MEMO: OnceLock<RwLock<Vec<Vec<Vec<usize>>>>> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(vec![vec![vec![]]]))
}

/// Partitions of `n` as non-increasing part lists, in lexicographically
/// decreasing order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    if let Some(p) = partition_memo().read().expect("memo poisoned").get(n) {
        return p.clone();
    }
    let mut memo = partition_memo().write().expect("memo poisoned");
    while memo.len() <= n {
        let k = memo.len();
        let mut out = Vec::new();
        fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if rest == 0 {
                out.push(cur.clone());
                return;
            }
            for part in (1..=rest.min(max)).rev() {
                cur.push(part);
                go(rest - part, part, cur, out);
                cur.pop();
            }
        }
        go(k, k, &mut Vec::new(), &mut out);
        memo.push(out);
    }
    memo[n].clone()
}

/// `(s, σ)` with `s` increasing.
fn signature(parts: &[usize]) -> Vec<(usize, usize)> {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &p in parts {
        *counts.entry(p).or_default() += 1;
    }
    counts.into_iter().collect()
}

/// All z-invariants of operators on an `n`-dimensional space.
pub fn enumerate_zclasses(class: FieldClass, n: usize) -> Vec<ZClassInvariant> {
    // candidate components, in sorted order
    let mut items: Vec<(ZExtension, Vec<(usize, usize)>)> = Vec::new();
    for m in class.degrees(n) {
        for l in 1..=n / m {
            for p in partitions(l) {
                if class == FieldClass::SemisimpleOrCyclic && p.iter().any(|&x| x != 1) {
                    continue;
                }
                items.push((ZExtension { degree: m, modulus: None }, signature(&p)));
            }
        }
    }
    items.sort();
    let weight = |it: &(ZExtension, Vec<(usize, usize)>)| it.0.degree * it.1.iter().map(|(s, k)| s * k).sum::<usize>();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    let mut per_degree: BTreeMap<usize, usize> = BTreeMap::new();
    #[allow(clippy::too_many_arguments)]
    fn go(
        start: usize,
        rest: usize,
        n: usize,
        class: FieldClass,
        items: &[(ZExtension, Vec<(usize, usize)>)],
        weight: &dyn Fn(&(ZExtension, Vec<(usize, usize)>)) -> usize,
        chosen: &mut Vec<usize>,
        per_degree: &mut BTreeMap<usize, usize>,
        out: &mut Vec<ZClassInvariant>,
    ) {
        if rest == 0 {
            out.push(ZClassInvariant {
                total_dim: n,
                components: chosen.iter().map(|&i| items[i].clone()).collect(),
            });
            return;
        }
        for i in start..items.len() {
            let w = weight(&items[i]);
            let m = items[i].0.degree;
            if w > rest || per_degree.get(&m).copied().unwrap_or(0) >= class.cap(m, n) {
                continue;
            }
            chosen.push(i);
            *per_degree.entry(m).or_default() += 1;
            go(i, rest - w, n, class, items, weight, chosen, per_degree, out);
            *per_degree.get_mut(&m).unwrap() -= 1;
            chosen.pop();
        }
    }
    go(0, n, n, class, &items, &weight, &mut chosen, &mut per_degree, &mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesTable {
    pub field_class: FieldClass,
    /// `z(0), ..., z(N)`.
    pub coefficients: Vec<BigUint>,
}

/// `p(0), ..., p(n)` by the Euler product `Π 1/(1 - x^k)`.
pub fn partition_numbers(n: usize) -> Vec<BigUint> {
    let mut p = vec![BigUint::zero(); n + 1];
    p[0] = BigUint::one();
    for k in 1..=n {
        for i in k..=n {
            let add = p[i - k].clone();
            p[i] += add;
        }
    }
    p
}

/// `Π_k 1/(1 - b(k) x^k)` truncated at degree `n`.
pub fn weighted_euler_product(b: &[BigUint], n: usize) -> Vec<BigUint> {
    let mut out = vec![BigUint::zero(); n + 1];
    out[0] = BigUint::one();
    for k in 1..=n {
        let bk = b.get(k).cloned().unwrap_or_default();
        if bk.is_zero() {
            continue;
        }
        for i in k..=n {
            let add = &out[i - k] * &bk;
            out[i] += add;
        }
    }
    out
}

/// `c(n) = Σ_π Π_i b(i)^{a_i}` over partitions `π` of `n` with `a_i` parts
/// equal to `i`.
pub fn plethystic(b: &[BigUint], n: usize) -> Vec<BigUint> {
    (0..=n)
        .map(|k| {
            partitions(k)
                .iter()
                .map(|parts| {
                    parts
                        .iter()
                        .fold(BigUint::one(), |acc, &i| acc * b.get(i).cloned().unwrap_or_default())
                })
                .sum()
        })
        .collect()
}

fn series_mul(a: &[BigUint], b: &[BigUint], n: usize) -> Vec<BigUint> {
    (0..=n)
        .map(|k| (0..=k).map(|i| &a[i] * &b[k - i]).sum())
        .collect()
}

/// `f(x^m)` truncated at degree `n`.
fn dilate(f: &[BigUint], m: usize, n: usize) -> Vec<BigUint> {
    (0..=n)
        .map(|k| if k % m == 0 { f[k / m].clone() } else { BigUint::zero() })
        .collect()
}

/// The product over degrees `m` of a per-extension series `f(x^m)`.
fn over_degrees(f: &[BigUint], degrees: &[usize], n: usize) -> Vec<BigUint> {
    let mut one = vec![BigUint::zero(); n + 1];
    one[0] = BigUint::one();
    degrees.iter().fold(one, |acc, &m| series_mul(&acc, &dilate(f, m, n), n))
}

/// Capped count for `F_q`: per degree, multisets of at most `I(q, m)`
/// components.
fn capped_finite_series(q: u64, n: usize) -> Vec<BigUint> {
    let p = partition_numbers(n);
    let mut total = vec![BigUint::zero(); n + 1];
    total[0] = BigUint::one();
    for m in 1..=n.max(1) {
        let cap = irreducible_count(q, m, n + 1);
        let max_items = (n / m).min(cap);
        // ways[j][w]: multisets of j components of total size w (in E-dims)
        let lmax = n / m;
        let mut ways = vec![vec![BigUint::zero(); lmax + 1]; max_items + 1];
        ways[0][0] = BigUint::one();
        for l in 1..=lmax {
            // p(l) kinds of component of E-dimension l, each usable repeatedly
            for _ in 0..p[l].to_usize().unwrap_or(usize::MAX) {
                for j in 1..=max_items {
                    for w in l..=lmax {
                        let add = ways[j - 1][w - l].clone();
                        ways[j][w] += add;
                    }
                }
            }
        }
        let mut per_degree = vec![BigUint::zero(); n + 1];
        for row in &ways {
            for (w, c) in row.iter().enumerate() {
                per_degree[w * m] += c;
            }
        }
        total = series_mul(&total, &per_degree, n);
    }
    total
}

/// Generating series `Σ z(n) x^n` up to `x^n`, computed from both the
/// plethystic sum and the product formula; the two must agree.
pub fn generating_series(class: FieldClass, n: usize) -> Result<SeriesTable> {
    let p = partition_numbers(n);
    let geometric = vec![BigUint::one(); n + 1];
    let (by_sum, by_product) = match class {
        FieldClass::SemisimpleOrCyclic => (plethystic(&geometric, n), weighted_euler_product(&geometric, n)),
        FieldClass::AlgebraicallyClosed | FieldClass::Real | FieldClass::FiniteField { q: None } => {
            let z_sum = plethystic(&p, n);
            let z_prod = weighted_euler_product(&p, n);
            let degrees = class.degrees(n);
            (over_degrees(&z_sum, &degrees, n), over_degrees(&z_prod, &degrees, n))
        }
        FieldClass::FiniteField { q: Some(q) } => {
            let c = capped_finite_series(q, n);
            (c.clone(), c)
        }
    };
    if by_sum != by_product {
        return Err(crate::error::Error::InternalInconsistency(
            "plethystic and product series disagree".into(),
        ));
    }
    Ok(SeriesTable { field_class: class, coefficients: by_product })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn z_invariant_examples() {
        let f2 = Field::prime(2).unwrap();
        let o = FactorOptions::default();
        let zero = Matrix::zeros(&f2, 2, 2);
        assert_eq!(zclass_equal(&zero, &Matrix::identity(&f2, 2), &o).unwrap(), Ternary::Yes);
        let q = Field::rationals();
        let j0 = Matrix::jordan(&q, &q.zero(), 2);
        let j1 = Matrix::jordan(&q, &q.one(), 2);
        assert_eq!(zclass_equal(&j0, &j1, &o).unwrap(), Ternary::Yes);
        assert_eq!(zclass_equal(&j0, &Matrix::zeros(&q, 2, 2), &o).unwrap(), Ternary::No);
    }

    #[test]
    fn rational_moduli_are_undecided() {
        let q = Field::rationals();
        let o = FactorOptions::default();
        let a = Matrix::companion(&Polynomial::from_i64(&q, &[-2, 0, 1]));
        let b = Matrix::companion(&Polynomial::from_i64(&q, &[-3, 0, 1]));
        assert_eq!(zclass_equal(&a, &b, &o).unwrap(), Ternary::Unknown);
        let c = Matrix::companion(&Polynomial::from_i64(&q, &[-2, 0, 0, 1]));
        let d = Matrix::block_diag(&q, &[Matrix::zeros(&q, 1, 1), a.clone()]);
        assert_eq!(zclass_equal(&c, &d, &o).unwrap(), Ternary::No);
        assert_eq!(zclass_equal(&a, &a.transpose(), &o).unwrap(), Ternary::Yes);
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_zclasses(FieldClass::AlgebraicallyClosed, 2).len(), 3);
        assert_eq!(enumerate_zclasses(FieldClass::FiniteField { q: None }, 2).len(), 4);
        assert_eq!(enumerate_zclasses(FieldClass::Real, 2).len(), 4);
        assert_eq!(enumerate_zclasses(FieldClass::AlgebraicallyClosed, 0).len(), 1);
    }

    #[test]
    fn series_examples() {
        let closed = generating_series(FieldClass::AlgebraicallyClosed, 4).unwrap();
        assert_eq!(closed.coefficients, big(&[1, 1, 3, 6, 15]));
        let ss = generating_series(FieldClass::SemisimpleOrCyclic, 7).unwrap();
        assert_eq!(ss.coefficients, big(&[1, 1, 2, 3, 5, 7, 11, 15]));
        let fq = generating_series(FieldClass::FiniteField { q: None }, 2).unwrap();
        assert_eq!(fq.coefficients[2], BigUint::from(4u32));
    }

    #[test]
    fn irreducible_counts() {
        assert_eq!(irreducible_count(2, 1, 100), 2);
        assert_eq!(irreducible_count(2, 2, 100), 1);
        assert_eq!(irreducible_count(2, 3, 100), 2);
        assert_eq!(irreducible_count(2, 4, 100), 3);
        assert_eq!(irreducible_count(3, 2, 100), 3);
        assert_eq!(irreducible_count(1 << 30, 20, 7), 7);
    }

    #[test]
    fn partitions_are_ordered() {
        assert_eq!(partitions(4), vec![vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]);
        assert_eq!(partitions(0), vec![Vec::<usize>::new()]);
    }
}
