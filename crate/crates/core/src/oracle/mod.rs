//! Exhaustive ground truth over tiny prime fields.
//!
//! Everything here enumerates: matrices, group elements, vectors and
//! subspaces are listed outright and orbits are expanded directly. The
//! arithmetic lives in [`small`] and shares nothing with the main linear
//! algebra, so agreement between the two is evidence rather than tautology.
//! Enumerations are capped at `2^20` objects and fail with
//! [`Error::TooLarge`] beyond that.

mod nonperfect;
mod small;

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use rayon::prelude::*;

use crate::affine::{affine_conjugacy_test, affine_zclass_invariant, AffineConjugacy, AffineMap};
use crate::canonical::orbit_invariant;
use crate::error::{Error, Result};
use crate::linalg::{minimal_polynomial, Matrix};
use crate::operator::{in_polynomial_algebra, orbit_cell, Analysis};
use crate::poly::FactorOptions;
use crate::zclass::zclass_invariant;

pub use nonperfect::{lift_search, LiftSearch};
use small::{Ctx, Small, Vec4};

/// Orbits of `GL(n, p)` acting by conjugation on `M_n(F_p)`.
#[derive(Clone, Debug)]
pub struct BruteForceReport {
    pub p: u64,
    pub n: usize,
    pub class_count: usize,
    /// Least matrix of each class; class ids follow this order.
    pub classes: Vec<Matrix>,
    /// Class id of every matrix, indexed by its code.
    pub partition: Vec<usize>,
}

/// The matrix numbered `code`: base-`p` digits over row-major entries,
/// entry `(0, 0)` least significant.
pub fn matrix_from_code(p: u64, n: usize, code: u32) -> Result<Matrix> {
    let ctx = Ctx::new(p, n)?;
    if code >= ctx.count() {
        return Err(Error::DimensionMismatch(format!("code {code} out of range")));
    }
    Ok(ctx.to_matrix(&ctx.decode(code)))
}

pub fn code_of_matrix(m: &Matrix) -> Result<u32> {
    let (ctx, s) = Ctx::from_matrix(m)?;
    Ok(ctx.encode(&s))
}

/// Labels `0..total` by orbit, scanning codes upward so each class is
/// named by its least member.
fn orbit_labels(total: u32, orbit: impl Fn(u32) -> Vec<u32>) -> (Vec<usize>, Vec<u32>) {
    let mut label = vec![usize::MAX; total as usize];
    let mut reps = Vec::new();
    for code in 0..total {
        if label[code as usize] != usize::MAX {
            continue;
        }
        for c in orbit(code) {
            label[c as usize] = reps.len();
        }
        reps.push(code);
    }
    (label, reps)
}

fn conjugacy_labels(ctx: &Ctx, gl: &[(Small, Small)]) -> (Vec<usize>, Vec<u32>) {
    orbit_labels(ctx.count(), |code| {
        let a = ctx.decode(code);
        gl.par_iter().map(|(g, gi)| ctx.encode(&ctx.mul(&ctx.mul(g, &a), gi))).collect()
    })
}

pub fn bruteforce_conjugacy(p: u64, n: usize) -> Result<BruteForceReport> {
    let ctx = Ctx::new(p, n)?;
    let gl = ctx.general_linear();
    let (partition, reps) = conjugacy_labels(&ctx, &gl);
    Ok(BruteForceReport {
        p,
        n,
        class_count: reps.len(),
        classes: reps.iter().map(|&c| ctx.to_matrix(&ctx.decode(c))).collect(),
        partition,
    })
}

/// Whether every class of `report` is closed under conjugation by every
/// invertible matrix.
pub fn is_conjugation_closed(report: &BruteForceReport) -> Result<bool> {
    let ctx = Ctx::new(report.p, report.n)?;
    let gl = ctx.general_linear();
    Ok((0..ctx.count()).into_par_iter().all(|code| {
        let a = ctx.decode(code);
        gl.iter()
            .all(|(g, gi)| report.partition[ctx.encode(&ctx.mul(&ctx.mul(g, &a), gi)) as usize] == report.partition[code as usize])
    }))
}

/// A partition of a finite set together with the least element of each block.
#[derive(Clone, Debug)]
pub struct Partition {
    pub class_count: usize,
    pub representatives: Vec<u32>,
    pub partition: Vec<usize>,
}

/// Canonical name of a subgroup up to conjugation: the least sorted list of
/// codes among all its conjugates.
fn subgroup_key<G: Sync>(elements: &[G], group: &[(G, G)], conj: impl Fn(&G, &G, &G) -> u32 + Sync) -> Vec<u32> {
    group
        .par_iter()
        .map(|(g, gi)| {
            let mut codes: Vec<u32> = elements.iter().map(|z| conj(g, z, gi)).collect();
            codes.sort_unstable();
            codes
        })
        .min()
        .unwrap_or_default()
}

/// Relabels `base` classes so that classes with equal keys merge.
fn merge_by_key<K: Eq + Hash>(base: &[usize], base_reps: &[u32], keys: Vec<K>) -> Partition {
    let mut ids: HashMap<K, usize> = HashMap::new();
    let mut representatives = Vec::new();
    let relabel: Vec<usize> = keys
        .into_iter()
        .zip(base_reps)
        .map(|(k, &rep)| {
            *ids.entry(k).or_insert_with(|| {
                representatives.push(rep);
                representatives.len() - 1
            })
        })
        .collect();
    Partition {
        class_count: representatives.len(),
        representatives,
        partition: base.iter().map(|&c| relabel[c]).collect(),
    }
}

/// z-classes of `M_n(F_p)`: matrices whose centralizers in `GL(n, p)` are
/// conjugate subgroups.
pub fn bruteforce_zclass(p: u64, n: usize) -> Result<Partition> {
    let ctx = Ctx::new(p, n)?;
    let gl = ctx.general_linear();
    let (conj, reps) = conjugacy_labels(&ctx, &gl);
    let keys: Vec<Vec<u32>> = reps
        .iter()
        .map(|&r| {
            let a = ctx.decode(r);
            let z: Vec<Small> = gl.iter().map(|(g, _)| *g).filter(|g| ctx.mul(g, &a) == ctx.mul(&a, g)).collect();
            subgroup_key(&z, &gl, |g, x, gi| ctx.encode(&ctx.mul(&ctx.mul(g, x), gi)))
        })
        .collect();
    Ok(merge_by_key(&conj, &reps, keys))
}

/// Orbits of the invertible matrices commuting with `t` on `F_p^n`,
/// indexed by vector code.
pub fn bruteforce_orbit_cells(t: &Matrix) -> Result<Partition> {
    let (ctx, t) = Ctx::from_matrix(t)?;
    let units: Vec<Small> =
        ctx.general_linear().into_iter().map(|(g, _)| g).filter(|g| ctx.mul(g, &t) == ctx.mul(&t, g)).collect();
    let (partition, representatives) = orbit_labels(ctx.vector_count(), |code| {
        let v = ctx.decode_vec(code);
        units.iter().map(|g| ctx.encode_vec(&ctx.apply(g, &v))).collect()
    });
    Ok(Partition { class_count: representatives.len(), representatives, partition })
}

/// An affine class of `Aff(F_p^n)` and where its linear part sits.
#[derive(Clone, Debug)]
pub struct Fiber {
    /// Least matrix of the linear conjugacy class.
    pub linear: Matrix,
    /// Exponent of `x - 1` in the minimal polynomial of `linear`.
    pub r: usize,
    /// Number of affine classes over this linear class.
    pub size: usize,
}

#[derive(Clone, Debug)]
pub struct AffineReport {
    pub p: u64,
    pub n: usize,
    /// Affine maps `(A, v)` are coded `code(A) + p^(n²) code(v)`.
    pub classes: Partition,
    pub fibers: Vec<Fiber>,
}

impl AffineReport {
    pub fn map(&self, code: u32) -> AffineMap {
        let ctx = Ctx::new(self.p, self.n).expect("report from a valid context");
        let (a, v) = split_affine(&ctx, code);
        AffineMap::new(ctx.to_matrix(&a), ctx.to_vector(&v)).expect("square")
    }
}

fn split_affine(ctx: &Ctx, code: u32) -> (Small, Vec4) {
    (ctx.decode(code % ctx.count()), ctx.decode_vec(code / ctx.count()))
}

fn join_affine(ctx: &Ctx, a: &Small, v: &Vec4) -> u32 {
    ctx.encode(a) + ctx.count() * ctx.encode_vec(v)
}

/// `τ t τ⁻¹` for `τ(x) = αx + a`, with `α⁻¹` supplied.
fn conjugate_affine(ctx: &Ctx, alpha: &Small, alpha_inv: &Small, a: &Vec4, lin: &Small, v: &Vec4) -> (Small, Vec4) {
    let b = ctx.mul(&ctx.mul(alpha, lin), alpha_inv);
    let w = ctx.vec_add(&ctx.vec_add(&ctx.vec_neg(&ctx.apply(&b, a)), &ctx.apply(alpha, v)), a);
    (b, w)
}

/// Exponent of `x - 1` in the minimal polynomial: where the ranks of the
/// powers of `A - I` stop falling.
fn unipotent_exponent(ctx: &Ctx, a: &Small) -> usize {
    let d = ctx.sub(a, &ctx.identity());
    let mut power = ctx.identity();
    let mut rank = ctx.n;
    for r in 0.. {
        power = ctx.mul(&power, &d);
        let next = ctx.rank(&power);
        if next == rank {
            return r;
        }
        rank = next;
    }
    unreachable!()
}

/// Orbits of the affine group on all affine maps, with fiber sizes over
/// each linear conjugacy class.
pub fn bruteforce_affine(p: u64, n: usize) -> Result<AffineReport> {
    let ctx = Ctx::new(p, n)?;
    let total = ctx.guard(n * n + n)? as u32;
    let gl = ctx.general_linear();
    let shifts: Vec<Vec4> = (0..ctx.vector_count()).map(|c| ctx.decode_vec(c)).collect();
    let (partition, representatives) = orbit_labels(total, |code| {
        let (lin, v) = split_affine(&ctx, code);
        gl.par_iter()
            .flat_map_iter(|(g, gi)| {
                shifts.iter().map(move |a| {
                    let (b, w) = conjugate_affine(&ctx, g, gi, a, &lin, &v);
                    join_affine(&ctx, &b, &w)
                })
            })
            .collect()
    });
    let (linear_labels, linear_reps) = conjugacy_labels(&ctx, &gl);
    let mut sizes = vec![0; linear_reps.len()];
    for &rep in &representatives {
        sizes[linear_labels[(rep % ctx.count()) as usize]] += 1;
    }
    let fibers = linear_reps
        .iter()
        .zip(sizes)
        .map(|(&code, size)| {
            let a = ctx.decode(code);
            Fiber { linear: ctx.to_matrix(&a), r: unipotent_exponent(&ctx, &a), size }
        })
        .collect();
    Ok(AffineReport {
        p,
        n,
        classes: Partition { class_count: representatives.len(), representatives, partition },
        fibers,
    })
}

/// Affine z-classes: affine maps whose centralizers in the affine group
/// are conjugate subgroups.
pub fn bruteforce_affine_zclass(p: u64, n: usize) -> Result<Partition> {
    let report = bruteforce_affine(p, n)?;
    let ctx = Ctx::new(p, n)?;
    let gl = ctx.general_linear();
    let shifts: Vec<Vec4> = (0..ctx.vector_count()).map(|c| ctx.decode_vec(c)).collect();
    // group elements as (α, α⁻¹, a)
    let group: Vec<(Small, Small, Vec4)> =
        gl.iter().flat_map(|&(g, gi)| shifts.iter().map(move |&a| (g, gi, a))).collect();
    let pairs: Vec<((Small, Small, Vec4), (Small, Small, Vec4))> = group
        .iter()
        .map(|&(g, gi, a)| {
            let inv = (gi, g, ctx.vec_neg(&ctx.apply(&gi, &a)));
            ((g, gi, a), inv)
        })
        .collect();
    let compose = |x: &(Small, Small, Vec4), y: &(Small, Small, Vec4)| {
        (ctx.mul(&x.0, &y.0), ctx.mul(&y.1, &x.1), ctx.vec_add(&ctx.apply(&x.0, &y.2), &x.2))
    };
    let keys: Vec<Vec<u32>> = report
        .classes
        .representatives
        .iter()
        .map(|&code| {
            let (lin, v) = split_affine(&ctx, code);
            let z: Vec<(Small, Small, Vec4)> = group
                .iter()
                .copied()
                .filter(|(g, gi, a)| conjugate_affine(&ctx, g, gi, a, &lin, &v) == (lin, v))
                .collect();
            subgroup_key(&z, &pairs, |g, x, gi| {
                let c = compose(&compose(g, x), gi);
                join_affine(&ctx, &c.0, &c.2)
            })
        })
        .collect();
    Ok(merge_by_key(&report.classes.partition, &report.classes.representatives, keys))
}

/// Facts about the units of the centralizer algebra `Z(T)` over a prime field.
#[derive(Clone, Debug)]
pub struct UnitSpanReport {
    pub p: u64,
    pub centralizer_size: usize,
    pub unit_count: usize,
    pub idempotent_count: usize,
    /// `T` is cyclic with `m_T = x^k (x - 1)^l`, `k, l ≥ 1`, over `F_2`. Then
    /// `Z(T) = F_2[T]` and every unit `f(T)` has `f(0) = f(1) = 1`, so sums of
    /// units see `0` and `1` with equal parity and miss `T`.
    pub parity_obstruction: bool,
    /// Over `F_2`: whether `T` is a sum of units.
    pub t_is_unit_sum: Option<bool>,
    /// Over `F_p`, `p > 2`: whether every element is a sum of at most two units.
    pub two_unit_sums: Option<bool>,
    /// Whether the units and idempotents together span `Z(T)`.
    pub span_with_idempotents: bool,
}

impl UnitSpanReport {
    pub fn passed(&self) -> bool {
        let sums = match (self.t_is_unit_sum, self.two_unit_sums) {
            (Some(reachable), _) => !(self.parity_obstruction && reachable),
            (None, Some(all)) => all,
            (None, None) => false,
        };
        sums && self.span_with_idempotents
    }
}

pub fn unit_span_check(t: &Matrix) -> Result<UnitSpanReport> {
    let (ctx, t) = Ctx::from_matrix(t)?;
    let z: Vec<Small> = (0..ctx.count())
        .into_par_iter()
        .map(|c| ctx.decode(c))
        .filter(|x| ctx.mul(x, &t) == ctx.mul(&t, x))
        .collect();
    let units: Vec<Small> = z.iter().copied().filter(|x| ctx.inverse(x).is_some()).collect();
    let idempotents: Vec<Small> = z.iter().copied().filter(|x| ctx.mul(x, x) == *x).collect();
    let dim_z = ctx.span_rank(&z);
    let span_with_idempotents = ctx.span_rank(&[units.clone(), idempotents.clone()].concat()) == dim_z;

    let (mut t_is_unit_sum, mut two_unit_sums, mut parity_obstruction) = (None, None, false);
    if ctx.p == 2 {
        // over F_2 the sums of units are exactly their span
        t_is_unit_sum = Some(ctx.span_rank(&units) == ctx.span_rank(&[units.clone(), vec![t]].concat()));
        let m = minimal_polynomial(&ctx.to_matrix(&t))?;
        let x = crate::poly::Polynomial::x(m.field());
        let x1 = crate::poly::Polynomial::linear(m.field(), &m.field().one());
        let strip = |mut f: crate::poly::Polynomial, d: &crate::poly::Polynomial| {
            let mut k = 0;
            while let Some(q) = f.div_exact(d) {
                f = q;
                k += 1;
            }
            (f, k)
        };
        let cyclic = m.degree() == Some(ctx.n);
        let (rest, k) = strip(m, &x);
        let (rest, l) = strip(rest, &x1);
        parity_obstruction = cyclic && rest.is_one() && k >= 1 && l >= 1;
    } else {
        let mut reached = std::collections::HashSet::new();
        reached.insert(ctx.encode(&ctx.scalar(0)));
        for u in &units {
            reached.insert(ctx.encode(u));
            for w in &units {
                reached.insert(ctx.encode(&ctx.add(u, w)));
            }
        }
        two_unit_sums = Some(z.iter().all(|x| reached.contains(&ctx.encode(x))));
    }
    Ok(UnitSpanReport {
        p: ctx.p as u64,
        centralizer_size: z.len(),
        unit_count: units.len(),
        idempotent_count: idempotents.len(),
        parity_obstruction,
        t_is_unit_sum,
        two_unit_sums,
        span_with_idempotents,
    })
}

/// Every subspace of `F_p^n`, as sorted member codes.
fn all_subspaces(ctx: &Ctx) -> Vec<Vec<u32>> {
    let vectors: Vec<Vec4> = (0..ctx.vector_count()).map(|c| ctx.decode_vec(c)).collect();
    let mut seen = std::collections::BTreeSet::new();
    // spans of the rows of every matrix
    for code in 0..ctx.count() {
        let m = ctx.decode(code);
        let rows: Vec<Vec4> = (0..ctx.n)
            .map(|i| {
                let mut v = [0; small::MAX_N];
                for (j, x) in v.iter_mut().enumerate().take(ctx.n) {
                    *x = ctx.get(&m, i, j);
                }
                v
            })
            .collect();
        let mut members: Vec<u32> = vectors
            .iter()
            .map(|coeffs| {
                let mut acc = [0; small::MAX_N];
                for (row, &c) in rows.iter().zip(coeffs.iter()) {
                    for k in 0..ctx.n {
                        acc[k] = (acc[k] + c * row[k]) % ctx.p;
                    }
                }
                ctx.encode_vec(&acc)
            })
            .collect();
        members.sort_unstable();
        members.dedup();
        seen.insert(members);
    }
    seen.into_iter().collect()
}

fn preserves(ctx: &Ctx, s: &Small, w: &[u32]) -> bool {
    w.iter().all(|&c| w.binary_search(&ctx.encode_vec(&ctx.apply(s, &ctx.decode_vec(c)))).is_ok())
}

#[derive(Clone, Debug)]
pub struct StrongCommutingReport {
    pub p: u64,
    pub n: usize,
    pub subspaces: usize,
    /// Commuting pairs `(S, T)` examined.
    pub pairs: usize,
    /// Pairs where `S` preserves every `T`-invariant subspace.
    pub preserving: usize,
    /// Pairs where `S` preserves the `T`-invariant subspaces but is not a
    /// polynomial in `T`, or the reverse, as `(S, T)` codes.
    pub mismatches: Vec<(u32, u32)>,
}

/// For every commuting pair: `S` preserves all `T`-invariant subspaces iff
/// `S` is a polynomial in `T`.
pub fn strong_commuting_check(p: u64, n: usize) -> Result<StrongCommutingReport> {
    let ctx = Ctx::new(p, n)?;
    let subspaces = all_subspaces(&ctx);
    let rows: Vec<(usize, usize, Vec<(u32, u32)>)> = (0..ctx.count())
        .into_par_iter()
        .map(|tc| {
            let t = ctx.decode(tc);
            let invariant: Vec<&Vec<u32>> = subspaces.iter().filter(|w| preserves(&ctx, &t, w)).collect();
            let tm = ctx.to_matrix(&t);
            let m = minimal_polynomial(&tm).expect("prime field");
            let (mut pairs, mut preserving, mut bad) = (0, 0, Vec::new());
            for sc in 0..ctx.count() {
                let s = ctx.decode(sc);
                if ctx.mul(&s, &t) != ctx.mul(&t, &s) {
                    continue;
                }
                pairs += 1;
                let keeps = invariant.iter().all(|w| preserves(&ctx, &s, w));
                let poly = in_polynomial_algebra(&ctx.to_matrix(&s), &tm, &m).is_some();
                preserving += keeps as usize;
                if keeps != poly {
                    bad.push((sc, tc));
                }
            }
            (pairs, preserving, bad)
        })
        .collect();
    Ok(StrongCommutingReport {
        p,
        n,
        subspaces: subspaces.len(),
        pairs: rows.iter().map(|r| r.0).sum(),
        preserving: rows.iter().map(|r| r.1).sum(),
        mismatches: rows.into_iter().flat_map(|r| r.2).collect(),
    })
}

/// First pair `(i, j)` that one labelling puts together and the other
/// separates.
pub fn partition_mismatch<A: Eq + Hash, B: Eq + Hash>(a: &[A], b: &[B]) -> Option<(usize, usize)> {
    let mut first_a: HashMap<&A, usize> = HashMap::new();
    let mut first_b: HashMap<&B, usize> = HashMap::new();
    for i in 0..a.len() {
        let ia = *first_a.entry(&a[i]).or_insert(i);
        let ib = *first_b.entry(&b[i]).or_insert(i);
        if b[ia] != b[i] {
            return Some((ia, i));
        }
        if a[ib] != a[i] {
            return Some((ib, i));
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckKind {
    Conjugacy,
    Zclass,
    Orbits,
    Affine,
    Units,
    Commuting,
}

impl CheckKind {
    pub const ALL: [CheckKind; 6] = [
        CheckKind::Conjugacy,
        CheckKind::Zclass,
        CheckKind::Orbits,
        CheckKind::Affine,
        CheckKind::Units,
        CheckKind::Commuting,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Conjugacy => "conjugacy",
            CheckKind::Zclass => "zclass",
            CheckKind::Orbits => "orbits",
            CheckKind::Affine => "affine",
            CheckKind::Units => "units",
            CheckKind::Commuting => "commuting",
        }
    }
}

impl std::str::FromStr for CheckKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidField(format!("unknown check {s}")))
    }
}

/// Outcome of comparing the library against brute force.
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub check: CheckKind,
    pub p: u64,
    pub n: usize,
    pub passed: bool,
    /// Counts gathered along the way, as `(name, value)`.
    pub stats: Vec<(String, String)>,
    pub failures: Vec<String>,
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "ok" } else { "MISMATCH" };
        write!(f, "{} over F_{} n={}: {verdict}", self.check.name(), self.p, self.n)?;
        for (k, v) in &self.stats {
            write!(f, " {k}={v}")?;
        }
        for fail in &self.failures {
            write!(f, "\n  {fail}")?;
        }
        Ok(())
    }
}

fn mat_str(m: &Matrix) -> String {
    let rows: Vec<String> = m.format_rows().iter().map(|r| format!("[{}]", r.join(" "))).collect();
    format!("[{}]", rows.join(" "))
}

fn affine_str(t: &AffineMap) -> String {
    let f = t.field();
    let v: Vec<String> = t.translation.iter().map(|x| f.format(x)).collect();
    format!("({}, [{}])", mat_str(&t.linear), v.join(" "))
}

/// Runs one library-versus-brute-force comparison.
pub fn run_check(kind: CheckKind, p: u64, n: usize) -> Result<CheckReport> {
    let opts = FactorOptions::default();
    let ctx = Ctx::new(p, n)?;
    let all: Vec<Matrix> = (0..ctx.count()).map(|c| ctx.to_matrix(&ctx.decode(c))).collect();
    let mut stats = Vec::new();
    let mut failures = Vec::new();
    match kind {
        CheckKind::Conjugacy => {
            let brute = bruteforce_conjugacy(p, n)?;
            let inv = all.par_iter().map(|m| orbit_invariant(m, &opts)).collect::<Result<Vec<_>>>()?;
            let distinct: std::collections::HashSet<_> = inv.iter().collect();
            stats.push(("classes".into(), brute.class_count.to_string()));
            stats.push(("invariants".into(), distinct.len().to_string()));
            if let Some((i, j)) = partition_mismatch(&brute.partition, &inv) {
                failures.push(format!("{} vs {}: invariants {} / {}", mat_str(&all[i]), mat_str(&all[j]), inv[i], inv[j]));
            }
        }
        CheckKind::Zclass => {
            let brute = bruteforce_zclass(p, n)?;
            let inv = all.par_iter().map(|m| zclass_invariant(m, &opts)).collect::<Result<Vec<_>>>()?;
            let distinct: std::collections::HashSet<_> = inv.iter().collect();
            stats.push(("zclasses".into(), brute.class_count.to_string()));
            stats.push(("invariants".into(), distinct.len().to_string()));
            if let Some((i, j)) = partition_mismatch(&brute.partition, &inv) {
                failures.push(format!("{} vs {}: invariants {} / {}", mat_str(&all[i]), mat_str(&all[j]), inv[i], inv[j]));
            }
        }
        CheckKind::Orbits => {
            let results = all
                .par_iter()
                .map(|t| {
                    let brute = bruteforce_orbit_cells(t)?;
                    let a = Analysis::new(t, &opts)?;
                    let flags = a.flags()?;
                    let cells: Vec<_> = (0..ctx.vector_count())
                        .map(|c| orbit_cell(&a.components, &flags, &ctx.to_vector(&ctx.decode_vec(c))))
                        .collect();
                    let bad = partition_mismatch(&brute.partition, &cells).map(|(i, j)| {
                        let show = |c: u32| format!("{:?}", &ctx.decode_vec(c)[..n]);
                        format!(
                            "T = {}: {} and {} ({} orbits, cells {:?} / {:?})",
                            mat_str(t),
                            show(i as u32),
                            show(j as u32),
                            brute.class_count,
                            cells[i],
                            cells[j]
                        )
                    });
                    Ok(bad)
                })
                .collect::<Result<Vec<_>>>()?;
            stats.push(("operators".into(), all.len().to_string()));
            failures.extend(results.into_iter().flatten());
        }
        CheckKind::Affine => {
            let brute = bruteforce_affine(p, n)?;
            stats.push(("classes".into(), brute.classes.class_count.to_string()));
            for fb in &brute.fibers {
                if fb.size != fb.r + 1 {
                    failures.push(format!("fiber over {}: {} classes, r + 1 = {}", mat_str(&fb.linear), fb.size, fb.r + 1));
                }
            }
            let total = brute.classes.partition.len() as u32;
            let maps: Vec<AffineMap> = (0..total).map(|c| brute.map(c)).collect();
            // full pairwise comparison when small, otherwise each map against every representative
            let pairs: Vec<(u32, u32)> = if total <= 256 {
                (0..total).flat_map(|i| (i..total).map(move |j| (i, j))).collect()
            } else {
                (0..total).flat_map(|i| brute.classes.representatives.iter().map(move |&r| (r, i))).collect()
            };
            stats.push(("pairs".into(), pairs.len().to_string()));
            let verdicts = pairs
                .par_iter()
                .map(|&(i, j)| {
                    let same = brute.classes.partition[i as usize] == brute.classes.partition[j as usize];
                    let got = matches!(affine_conjugacy_test(&maps[i as usize], &maps[j as usize], &opts)?, AffineConjugacy::Conjugate(_));
                    Ok((same != got).then(|| {
                        format!("{} vs {}: brute {same}, test {got}", affine_str(&maps[i as usize]), affine_str(&maps[j as usize]))
                    }))
                })
                .collect::<Result<Vec<_>>>()?;
            failures.extend(verdicts.into_iter().flatten().take(20));
            let zbrute = bruteforce_affine_zclass(p, n)?;
            let zinv = maps.par_iter().map(|t| affine_zclass_invariant(t, &opts)).collect::<Result<Vec<_>>>()?;
            stats.push(("zclasses".into(), zbrute.class_count.to_string()));
            if let Some((i, j)) = partition_mismatch(&zbrute.partition, &zinv) {
                failures.push(format!(
                    "affine z-classes: {} vs {}: invariants {:?} / {:?}",
                    affine_str(&maps[i]),
                    affine_str(&maps[j]),
                    zinv[i],
                    zinv[j]
                ));
            }
        }
        CheckKind::Units => {
            let reports = all.par_iter().map(unit_span_check).collect::<Result<Vec<_>>>()?;
            stats.push(("operators".into(), all.len().to_string()));
            stats.push(("obstructed".into(), reports.iter().filter(|r| r.parity_obstruction).count().to_string()));
            for (t, r) in all.iter().zip(&reports) {
                if !r.passed() {
                    failures.push(format!("T = {}: {r:?}", mat_str(t)));
                }
            }
        }
        CheckKind::Commuting => {
            let r = strong_commuting_check(p, n)?;
            stats.push(("pairs".into(), r.pairs.to_string()));
            stats.push(("preserving".into(), r.preserving.to_string()));
            for &(s, t) in r.mismatches.iter().take(20) {
                failures.push(format!("S = {}, T = {}", mat_str(&all[s as usize]), mat_str(&all[t as usize])));
            }
        }
    }
    Ok(CheckReport { check: kind, p, n, passed: failures.is_empty(), stats, failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::Field;

    #[test]
    fn conjugacy_class_counts() {
        assert_eq!(bruteforce_conjugacy(2, 1).unwrap().class_count, 2);
        let r = bruteforce_conjugacy(2, 2).unwrap();
        assert_eq!(r.class_count, 6);
        assert_eq!(r.partition.len(), 16);
        assert!(is_conjugation_closed(&r).unwrap());
        assert!(matches!(bruteforce_conjugacy(2, 5), Err(Error::TooLarge(_))));
    }

    #[test]
    fn zclasses_of_2x2_over_f2() {
        let z = bruteforce_zclass(2, 2).unwrap();
        assert_eq!(z.class_count, 4);
        // 0 and I
        assert_eq!(z.partition[0], z.partition[code_of_matrix(&Matrix::identity(&Field::prime(2).unwrap(), 2)).unwrap() as usize]);
        let c = bruteforce_conjugacy(2, 2).unwrap();
        assert!(partition_mismatch(&c.partition, &c.partition).is_none());
        for i in 0..16 {
            for j in 0..16 {
                if c.partition[i] == c.partition[j] {
                    assert_eq!(z.partition[i], z.partition[j]);
                }
            }
        }
    }

    #[test]
    fn orbit_cells_small() {
        let f2 = Field::prime(2).unwrap();
        let t = Matrix::from_i64(&f2, &[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]);
        assert_eq!(bruteforce_orbit_cells(&t).unwrap().class_count, 4);
        let c = Matrix::from_i64(&f2, &[&[0, 1], &[1, 1]]);
        assert_eq!(bruteforce_orbit_cells(&c).unwrap().class_count, 2);
        assert_eq!(bruteforce_orbit_cells(&Matrix::identity(&f2, 2)).unwrap().class_count, 2);
    }

    #[test]
    fn partition_comparison() {
        assert!(partition_mismatch(&[0, 0, 1], &["a", "a", "b"]).is_none());
        assert_eq!(partition_mismatch(&[0, 0, 1], &["a", "b", "b"]), Some((0, 1)));
        assert_eq!(partition_mismatch(&[0, 1, 1], &["a", "a", "b"]), Some((0, 1)));
    }

    #[test]
    fn diag_0_1() {
        let f2 = Field::prime(2).unwrap();
        let r = unit_span_check(&Matrix::from_i64(&f2, &[&[0, 0], &[0, 1]])).unwrap();
        assert!(r.parity_obstruction && r.t_is_unit_sum == Some(false) && r.span_with_idempotents);
        assert!(r.passed());
        let f3 = Field::prime(3).unwrap();
        let r = unit_span_check(&Matrix::from_i64(&f3, &[&[0, 0], &[0, 1]])).unwrap();
        assert_eq!(r.two_unit_sums, Some(true));
        assert!(r.passed());
    }
}
