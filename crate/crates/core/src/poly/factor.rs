//! Irreducible factorization.
//!
//! * finite fields: squarefree decomposition, distinct-degree splitting and
//!   Cantor–Zassenhaus equal-degree splitting with a fixed seed;
//! * rationals: squarefree decomposition followed by Zassenhaus (see
//!   [`super::zassenhaus`]);
//! * `F_p(t)`: caller hints are verified by division and multiply-back;
//!   otherwise linear factors are found by a complete rational-root search
//!   and what remains must be certifiably irreducible.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{zassenhaus, Polynomial};
use crate::error::{Error, Result};
use crate::fields::{Elem, Field, FieldSpec, FpPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    /// Every factor was certified irreducible by the library.
    Computed,
    /// At least one factor's irreducibility rests on a caller hint.
    Asserted,
}

/// `unit * Π factor^mult`, factors monic, irreducible, pairwise distinct,
/// sorted by degree and then coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Elem,
    pub factors: Vec<(Polynomial, usize)>,
    pub provenance: Provenance,
}

impl Factorization {
    pub fn expand(&self, field: &Field) -> Polynomial {
        self.factors
            .iter()
            .fold(Polynomial::constant(field, self.unit.clone()), |acc, (f, m)| acc.mul(&f.pow(*m)))
    }
}

#[derive(Clone, Debug)]
pub struct FactorOptions {
    /// Largest squarefree degree attempted over the rationals.
    pub q_degree_cap: usize,
    /// Monic irreducibles (with the multiplicities the caller expects) to
    /// use over fields where factorization is not generally available.
    pub hints: Vec<(Polynomial, usize)>,
}

impl Default for FactorOptions {
    fn default() -> Self {
        FactorOptions { q_degree_cap: 16, hints: Vec::new() }
    }
}

pub fn factor(f: &Polynomial, opts: &FactorOptions) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let field = f.field().clone();
    let (unit, monic) = f.monic();
    if monic.is_one() {
        return Ok(Factorization { unit, factors: Vec::new(), provenance: Provenance::Computed });
    }
    let (factors, provenance) = match field.spec() {
        FieldSpec::RationalFunctions { .. } => factor_function_field(&monic, &opts.hints)?,
        FieldSpec::Rationals => {
            let mut out = Vec::new();
            for (part, mult) in squarefree_decomposition(&monic)? {
                let deg = part.degree().unwrap_or(0);
                if deg > opts.q_degree_cap {
                    return Err(Error::FactorizationUnavailable(format!(
                        "squarefree part of degree {deg} exceeds the cap {}",
                        opts.q_degree_cap
                    )));
                }
                out.extend(zassenhaus::factor_squarefree(&part).into_iter().map(|g| (g, mult)));
            }
            (out, Provenance::Computed)
        }
        _ => {
            let mut out = Vec::new();
            for (part, mult) in squarefree_decomposition(&monic)? {
                for (g, d) in distinct_degree(&part) {
                    out.extend(equal_degree(&g, d).into_iter().map(|h| (h, mult)));
                }
            }
            (out, Provenance::Computed)
        }
    };
    Ok(Factorization { unit, factors: normalize(factors), provenance })
}

/// Merge repeated factors and sort.
fn normalize(factors: Vec<(Polynomial, usize)>) -> Vec<(Polynomial, usize)> {
    let mut merged: BTreeMap<Polynomial, usize> = BTreeMap::new();
    for (g, m) in factors {
        *merged.entry(g.make_monic()).or_default() += m;
    }
    merged.into_iter().collect()
}

/// Monic squarefree parts with multiplicities, `f = lead * Π part^mult`.
///
/// In positive characteristic the `f' = 0` part is handled by extracting
/// p-th roots of coefficients, which fails over `F_p(t)` when the
/// coefficients are not p-th powers.
pub fn squarefree_decomposition(f: &Polynomial) -> Result<Vec<(Polynomial, usize)>> {
    let f = f.make_monic();
    let mut out = Vec::new();
    if f.is_constant() {
        return Ok(out);
    }
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_exact(&c).expect("gcd divides");
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = w.div_exact(&y).expect("gcd divides");
        if !z.is_one() {
            out.push((z, i));
        }
        i += 1;
        c = c.div_exact(&y).expect("gcd divides");
        w = y;
    }
    if !c.is_one() {
        let p = f.field().characteristic() as usize;
        let root = c.pth_root().ok_or_else(|| {
            Error::FactorizationUnavailable(format!(
                "{c} has vanishing derivative but is not a p-th power"
            ))
        })?;
        for (g, m) in squarefree_decomposition(&root)? {
            out.push((g, m * p));
        }
    }
    Ok(out)
}

fn field_order(field: &Field) -> BigUint {
    field.order().expect("finite field")
}

/// Splits a monic squarefree `f` into `(g, d)` with `g` the product of all
/// irreducible factors of degree `d`.
fn distinct_degree(f: &Polynomial) -> Vec<(Polynomial, usize)> {
    let field = f.field();
    let q = field_order(field);
    let x = Polynomial::x(field);
    let mut rest = f.clone();
    let mut h = x.rem(&rest).expect("nonzero");
    let mut out = Vec::new();
    let mut d = 0;
    while rest.degree().unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = h.pow_mod(&q, &rest);
        let g = rest.gcd(&h.sub(&x));
        if !g.is_one() {
            rest = rest.div_exact(&g).expect("gcd divides");
            h = h.rem(&rest).expect("nonzero");
            out.push((g, d));
        }
    }
    if let Some(deg) = rest.degree().filter(|&k| k > 0) {
        out.push((rest, deg));
    }
    out
}

/// Cantor–Zassenhaus splitting of a product of distinct degree-`d`
/// irreducibles. The seed is fixed so results are reproducible.
fn equal_degree(f: &Polynomial, d: usize) -> Vec<Polynomial> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 ^ d as u64);
    let mut out = Vec::new();
    split(f, d, &mut rng, &mut out);
    out
}

fn split(f: &Polynomial, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Polynomial>) {
    let n = f.degree().unwrap_or(0);
    if n == d {
        out.push(f.clone());
        return;
    }
    let field = f.field();
    let q = field_order(field);
    let p = field.characteristic();
    loop {
        let a = Polynomial::new(field, (0..n).map(|_| field.random(rng, 1)).collect());
        if a.is_constant() {
            continue;
        }
        let b = if p == 2 {
            // trace of a from F_{q^d} down to F_2
            let k = field.degree_over_prime_field().expect("finite") * d;
            let mut acc = a.clone();
            let mut term = a.clone();
            for _ in 1..k {
                term = term.mul_mod(&term, f);
                acc = acc.add(&term);
            }
            acc
        } else {
            let e = (q.pow(d as u32) - BigUint::one()) >> 1;
            a.pow_mod(&e, f).sub(&Polynomial::one(field))
        };
        let g = f.gcd(&b);
        let k = g.degree().unwrap_or(0);
        if k > 0 && k < n {
            let h = f.div_exact(&g).expect("gcd divides");
            split(&g, d, rng, out);
            split(&h, d, rng, out);
            return;
        }
    }
}

/// Irreducibility certificate over a finite field: monic `f` of degree `k`
/// is irreducible iff `gcd(x^{q^i} - x, f) = 1` for `0 < i < k` and
/// `f | x^{q^k} - x`.
#[cfg(test)]
pub(crate) fn certify_irreducible_finite(f: &Polynomial) -> bool {
    let Some(k) = f.degree().filter(|&k| k > 0) else {
        return false;
    };
    let field = f.field();
    let q = field_order(field);
    let x = Polynomial::x(field);
    let mut h = x.rem(f).expect("nonzero");
    for _ in 1..k {
        h = h.pow_mod(&q, f);
        if !f.gcd(&h.sub(&x)).is_one() {
            return false;
        }
    }
    h.pow_mod(&q, f) == x.rem(f).expect("nonzero")
}

// ---- F_p(t) ----------------------------------------------------------------

fn factor_function_field(
    f: &Polynomial,
    hints: &[(Polynomial, usize)],
) -> Result<(Vec<(Polynomial, usize)>, Provenance)> {
    if hints.is_empty() {
        return Ok((root_split(f)?, Provenance::Computed));
    }
    let mut rest = f.clone();
    let mut out = Vec::new();
    for (i, (h, _)) in hints.iter().enumerate() {
        if h.field() != f.field() || h.is_constant() || !h.is_monic() {
            return Err(Error::FactorizationUnavailable(format!(
                "hint {h} is not a monic non-constant polynomial over {}",
                f.field()
            )));
        }
        for (g, _) in &hints[..i] {
            if !g.gcd(h).is_one() {
                return Err(Error::FactorizationUnavailable(format!(
                    "hints {g} and {h} are not coprime"
                )));
            }
        }
        let mut mult = 0;
        while let Some(q) = rest.div_exact(h) {
            rest = q;
            mult += 1;
        }
        if mult > 0 {
            out.push((h.clone(), mult));
        }
    }
    if !rest.is_constant() {
        for (g, m) in root_split(&rest)? {
            if out.iter().any(|(h, _)| !h.gcd(&g).is_one()) {
                return Err(Error::FactorizationUnavailable(format!(
                    "hinted factors leave a cofactor sharing a factor with {g}"
                )));
            }
            out.push((g, m));
        }
    }
    Ok((out, Provenance::Asserted))
}

/// Limit on rational-root candidates tried over `F_p(t)`.
const ROOT_CANDIDATE_CAP: usize = 200_000;

/// Factor a monic `f` over `F_p(t)` when every factor is linear, or when the
/// part left after removing roots has degree at most 3 (then irreducible),
/// or is a p-th power / has a repeated factor that reduces to those cases.
fn root_split(f: &Polynomial) -> Result<Vec<(Polynomial, usize)>> {
    let field = f.field().clone();
    let mut rest = f.make_monic();
    let mut out = Vec::new();
    while let Some(r) = find_root(&rest)? {
        let lin = Polynomial::linear(&field, &r);
        let mut mult = 0;
        while let Some(q) = rest.div_exact(&lin) {
            rest = q;
            mult += 1;
        }
        out.push((lin, mult));
    }
    let deg = rest.degree().unwrap_or(0);
    if deg == 0 {
        return Ok(out);
    }
    if deg <= 3 {
        // no root, so no linear factor, so irreducible
        out.push((rest, 1));
        return Ok(out);
    }
    let p = field.characteristic() as usize;
    if rest.derivative().is_zero() {
        if let Some(root) = rest.pth_root() {
            out.extend(root_split(&root)?.into_iter().map(|(g, m)| (g, m * p)));
            return Ok(out);
        }
    } else {
        let g = rest.gcd(&rest.derivative());
        if !g.is_one() {
            let h = rest.div_exact(&g).expect("gcd divides");
            out.extend(root_split(&g)?);
            out.extend(root_split(&h)?);
            return Ok(normalize(out));
        }
    }
    Err(Error::FactorizationUnavailable(format!(
        "{rest} over {field} has no linear factor and degree {deg} > 3; supply factor hints"
    )))
}

/// Complete search for a root of `f` in `F_p(t)`: after clearing
/// denominators, a root `u/w` in lowest terms has `u | a_0`, `w | a_n`.
fn find_root(f: &Polynomial) -> Result<Option<Elem>> {
    let field = f.field();
    let p = field.characteristic();
    if f.degree().unwrap_or(0) == 0 {
        return Ok(None);
    }
    if field.is_zero(&f.coeff(0)) {
        return Ok(Some(field.zero()));
    }
    let denoms = f.coeffs().iter().map(|c| match c {
        Elem::Frac(_, d) => d.clone(),
        _ => unreachable!("F_p(t) element"),
    });
    let l = denoms.fold(FpPoly::one(), |acc, d| {
        let g = acc.gcd(&d, p);
        acc.mul(&d, p).divrem(&g, p).0
    });
    let cleared = |c: &Elem| -> FpPoly {
        let Elem::Frac(n, d) = c else { unreachable!() };
        n.mul(&l.divrem(d, p).0, p)
    };
    let a0 = cleared(&f.coeff(0));
    let an = cleared(&f.lead());
    let nums = monic_divisors(&a0, p);
    let dens = monic_divisors(&an, p);
    if (p as usize - 1).saturating_mul(nums.len()).saturating_mul(dens.len()) > ROOT_CANDIDATE_CAP {
        return Err(Error::FactorizationUnavailable(
            "too many rational-root candidates over F_p(t)".into(),
        ));
    }
    for w in &dens {
        for u in &nums {
            if !u.gcd(w, p).is_one() {
                continue;
            }
            for c in 1..p {
                let r = field.frac(u.scale(c, p), w.clone())?;
                if field.is_zero(&f.eval(&r)) {
                    return Ok(Some(r));
                }
            }
        }
    }
    Ok(None)
}

fn monic_divisors(a: &FpPoly, p: u64) -> Vec<FpPoly> {
    let fp = Field::prime(p).expect("prime");
    let fac = factor(&Polynomial::from_fp_poly(&fp, a), &FactorOptions::default())
        .expect("finite-field factorization");
    let mut divs = vec![FpPoly::one()];
    for (g, m) in &fac.factors {
        let g = g.to_fp_poly().expect("prime field");
        let mut next = Vec::new();
        for d in &divs {
            let mut cur = d.clone();
            next.push(cur.clone());
            for _ in 0..*m {
                cur = cur.mul(&g, p);
                next.push(cur.clone());
            }
        }
        divs = next;
    }
    divs
}
