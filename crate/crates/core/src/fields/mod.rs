//! Exact scalar arithmetic over the supported coefficient fields:
//! the rationals, prime fields `F_p`, extensions `F_p[a]/(f)` and the
//! rational function field `F_p(t)`.
//!
//! A [`Field`] is a cheap, shareable handle describing the field. Scalars are
//! plain [`Elem`] values that are always kept in canonical form, so equality
//! of elements is structural equality. All arithmetic goes through the field
//! handle; [`FieldElement`] bundles a value with its field for callers that
//! want mismatch checking.

pub mod fp_poly;

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
pub use fp_poly::FpPoly;

/// Which field a [`Field`] handle describes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    Prime { p: u64 },
    /// `F_p[a]/(modulus)` with a monic irreducible modulus of degree >= 2.
    Extension { p: u64, modulus: FpPoly },
    /// `F_p(t)`.
    RationalFunctions { p: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Field(Arc<FieldSpec>);

/// A scalar in canonical form. Which variant is valid is decided by the
/// owning [`Field`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    Rational(BigRational),
    Residue(u64),
    /// Residue class of a polynomial in the extension generator, reduced.
    Ext(FpPoly),
    /// Numerator and monic denominator in `t`, coprime.
    Frac(FpPoly, FpPoly),
}

/// Three-valued answer for questions the library cannot always decide.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ternary {
    Yes,
    No,
    Unknown,
}

impl Ternary {
    pub fn as_str(self) -> &'static str {
        match self {
            Ternary::Yes => "yes",
            Ternary::No => "no",
            Ternary::Unknown => "unknown",
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

const MAX_PRIME: u64 = 1 << 31;

fn check_prime(p: u64) -> Result<()> {
    if p >= MAX_PRIME {
        return Err(Error::InvalidField(format!("p = {p} exceeds 2^31")));
    }
    if !is_prime(p) {
        return Err(Error::InvalidField(format!("{p} is not prime")));
    }
    Ok(())
}

impl Field {
    pub fn rationals() -> Self {
        Field(Arc::new(FieldSpec::Rationals))
    }

    pub fn prime(p: u64) -> Result<Self> {
        check_prime(p)?;
        Ok(Field(Arc::new(FieldSpec::Prime { p })))
    }

    /// `F_p[a]/(modulus)`. The modulus is made monic and certified
    /// irreducible; a degree-1 modulus yields the prime field itself.
    pub fn extension(p: u64, modulus: FpPoly) -> Result<Self> {
        check_prime(p)?;
        let modulus = FpPoly::from_coeffs(modulus.0.iter().map(|c| c % p).collect());
        let (_, modulus) = modulus.monic(p);
        match modulus.degree() {
            None | Some(0) => Err(Error::InvalidField("constant extension modulus".into())),
            Some(1) => Self::prime(p),
            Some(_) if !modulus.is_irreducible(p) => Err(Error::InvalidField(
                "extension modulus is not irreducible".into(),
            )),
            Some(_) => Ok(Field(Arc::new(FieldSpec::Extension { p, modulus }))),
        }
    }

    pub fn rational_functions(p: u64) -> Result<Self> {
        check_prime(p)?;
        Ok(Field(Arc::new(FieldSpec::RationalFunctions { p })))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0
    }

    pub fn characteristic(&self) -> u64 {
        match *self.0 {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime { p }
            | FieldSpec::Extension { p, .. }
            | FieldSpec::RationalFunctions { p } => p,
        }
    }

    /// `[F : F_p]`, or `None` when infinite (also for the rationals).
    pub fn degree_over_prime_field(&self) -> Option<usize> {
        match &*self.0 {
            FieldSpec::Prime { .. } => Some(1),
            FieldSpec::Extension { modulus, .. } => modulus.degree(),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(*self.0, FieldSpec::Prime { .. } | FieldSpec::Extension { .. })
    }

    /// Number of elements of a finite field.
    pub fn order(&self) -> Option<BigUint> {
        let k = self.degree_over_prime_field()?;
        Some(BigUint::from(self.characteristic()).pow(k as u32))
    }

    /// A field is perfect when Frobenius is surjective: characteristic zero
    /// or finite. `F_p(t)` is not (`t` has no p-th root).
    pub fn is_perfect(&self) -> bool {
        !matches!(*self.0, FieldSpec::RationalFunctions { .. })
    }

    pub fn zero(&self) -> Elem {
        match *self.0 {
            FieldSpec::Rationals => Elem::Rational(BigRational::zero()),
            FieldSpec::Prime { .. } => Elem::Residue(0),
            FieldSpec::Extension { .. } => Elem::Ext(FpPoly::zero()),
            FieldSpec::RationalFunctions { .. } => Elem::Frac(FpPoly::zero(), FpPoly::one()),
        }
    }

    pub fn one(&self) -> Elem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Elem {
        match &*self.0 {
            FieldSpec::Rationals => Elem::Rational(BigRational::from_integer(n.into())),
            FieldSpec::Prime { p } => Elem::Residue(n.rem_euclid(*p as i64) as u64),
            FieldSpec::Extension { p, .. } => {
                Elem::Ext(FpPoly::constant(n.rem_euclid(*p as i64) as u64, *p))
            }
            FieldSpec::RationalFunctions { p } => Elem::Frac(
                FpPoly::constant(n.rem_euclid(*p as i64) as u64, *p),
                FpPoly::one(),
            ),
        }
    }

    pub fn from_rational(&self, q: &BigRational) -> Result<Elem> {
        match &*self.0 {
            FieldSpec::Rationals => Ok(Elem::Rational(q.clone())),
            _ => {
                let p = BigInt::from(self.characteristic());
                let reduce = |n: &BigInt| -> i64 {
                    let r = ((n % &p) + &p) % &p;
                    i64::try_from(r).expect("residue fits in i64")
                };
                let num = self.from_i64(reduce(q.numer()));
                let den = self.from_i64(reduce(q.denom()));
                self.div(&num, &den)
            }
        }
    }

    /// The generator `a` of an extension field or `t` of `F_p(t)`.
    pub fn generator(&self) -> Option<Elem> {
        match &*self.0 {
            FieldSpec::Extension { p, modulus } => Some(Elem::Ext(FpPoly::var().rem(modulus, *p))),
            FieldSpec::RationalFunctions { .. } => Some(Elem::Frac(FpPoly::var(), FpPoly::one())),
            _ => None,
        }
    }

    pub fn ext_from_poly(&self, poly: &FpPoly) -> Option<Elem> {
        match &*self.0 {
            FieldSpec::Extension { p, modulus } => Some(Elem::Ext(poly.rem(modulus, *p))),
            _ => None,
        }
    }

    /// Build `num/den` in `F_p(t)`.
    pub fn frac(&self, num: FpPoly, den: FpPoly) -> Result<Elem> {
        match &*self.0 {
            FieldSpec::RationalFunctions { p } => make_frac(num, den, *p),
            _ => Err(Error::FieldMismatch),
        }
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        match a {
            Elem::Rational(q) => q.is_zero(),
            Elem::Residue(r) => *r == 0,
            Elem::Ext(e) => e.is_zero(),
            Elem::Frac(n, _) => n.is_zero(),
        }
    }

    pub fn is_one(&self, a: &Elem) -> bool {
        *a == self.one()
    }

    pub fn contains(&self, a: &Elem) -> bool {
        match (&*self.0, a) {
            (FieldSpec::Rationals, Elem::Rational(_)) => true,
            (FieldSpec::Prime { p }, Elem::Residue(r)) => r < p,
            (FieldSpec::Extension { p, modulus }, Elem::Ext(e)) => {
                e.degree() < modulus.degree() && e.0.iter().all(|c| c < p)
            }
            (FieldSpec::RationalFunctions { p }, Elem::Frac(n, d)) => {
                !d.is_zero()
                    && d.lead() == 1
                    && n.0.iter().chain(d.0.iter()).all(|c| c < p)
                    && n.gcd(d, *p).is_one()
            }
            _ => false,
        }
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (&*self.0, a, b) {
            (FieldSpec::Rationals, Elem::Rational(x), Elem::Rational(y)) => Elem::Rational(x + y),
            (FieldSpec::Prime { p }, Elem::Residue(x), Elem::Residue(y)) => {
                Elem::Residue((x + y) % p)
            }
            (FieldSpec::Extension { p, .. }, Elem::Ext(x), Elem::Ext(y)) => Elem::Ext(x.add(y, *p)),
            (FieldSpec::RationalFunctions { p }, Elem::Frac(a1, b1), Elem::Frac(a2, b2)) => {
                if b1 == b2 {
                    make_frac(a1.add(a2, *p), b1.clone(), *p).expect("nonzero denominator")
                } else {
                    let num = a1.mul(b2, *p).add(&a2.mul(b1, *p), *p);
                    make_frac(num, b1.mul(b2, *p), *p).expect("nonzero denominator")
                }
            }
            _ => panic!("element does not belong to {self}"),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match (&*self.0, a) {
            (FieldSpec::Rationals, Elem::Rational(x)) => Elem::Rational(-x),
            (FieldSpec::Prime { p }, Elem::Residue(x)) => Elem::Residue((p - x) % p),
            (FieldSpec::Extension { p, .. }, Elem::Ext(x)) => Elem::Ext(x.neg(*p)),
            (FieldSpec::RationalFunctions { p }, Elem::Frac(n, d)) => {
                Elem::Frac(n.neg(*p), d.clone())
            }
            _ => panic!("element does not belong to {self}"),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (&*self.0, a, b) {
            (FieldSpec::Rationals, Elem::Rational(x), Elem::Rational(y)) => Elem::Rational(x * y),
            (FieldSpec::Prime { p }, Elem::Residue(x), Elem::Residue(y)) => {
                Elem::Residue(x * y % p)
            }
            (FieldSpec::Extension { p, modulus }, Elem::Ext(x), Elem::Ext(y)) => {
                Elem::Ext(x.mul_mod(y, modulus, *p))
            }
            (FieldSpec::RationalFunctions { p }, Elem::Frac(a1, b1), Elem::Frac(a2, b2)) => {
                if a1.is_zero() || a2.is_zero() {
                    return self.zero();
                }
                make_frac(a1.mul(a2, *p), b1.mul(b2, *p), *p).expect("nonzero denominator")
            }
            _ => panic!("element does not belong to {self}"),
        }
    }

    pub fn inv(&self, a: &Elem) -> Result<Elem> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(match (&*self.0, a) {
            (FieldSpec::Rationals, Elem::Rational(x)) => Elem::Rational(x.recip()),
            (FieldSpec::Prime { p }, Elem::Residue(x)) => Elem::Residue(fp_poly::mod_inv(*x, *p)),
            (FieldSpec::Extension { p, modulus }, Elem::Ext(x)) => Elem::Ext(
                x.inv_mod(modulus, *p)
                    .expect("nonzero residue modulo an irreducible is invertible"),
            ),
            (FieldSpec::RationalFunctions { p }, Elem::Frac(n, d)) => {
                make_frac(d.clone(), n.clone(), *p)?
            }
            _ => return Err(Error::FieldMismatch),
        })
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Elem, mut exp: u64) -> Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }

    pub fn pow_big(&self, a: &Elem, exp: &BigUint) -> Elem {
        let mut acc = self.one();
        for i in (0..exp.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if exp.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    /// The unique p-th root in a perfect field of positive characteristic.
    /// `None` when the field is not perfect, has characteristic zero, or
    /// (in `F_p(t)`) the element happens not to be a p-th power.
    pub fn pth_root(&self, a: &Elem) -> Option<Elem> {
        match &*self.0 {
            FieldSpec::Prime { .. } => Some(a.clone()),
            FieldSpec::Extension { p, modulus } => {
                // a^(q/p) with q = p^k
                let k = modulus.degree()? as u32;
                Some(self.pow_big(a, &BigUint::from(*p).pow(k - 1)))
            }
            FieldSpec::RationalFunctions { p } => {
                let Elem::Frac(n, d) = a else { return None };
                let root = |f: &FpPoly| -> Option<FpPoly> {
                    let mut c = Vec::new();
                    for (i, &v) in f.0.iter().enumerate() {
                        if (i as u64).is_multiple_of(*p) {
                            c.push(v);
                        } else if v != 0 {
                            return None;
                        }
                    }
                    Some(FpPoly::from_coeffs(c))
                };
                make_frac(root(n)?, root(d)?, *p).ok()
            }
            FieldSpec::Rationals => None,
        }
    }

    /// Uniform element of a finite field, or a small-height element of an
    /// infinite one.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R, height: u32) -> Elem {
        let h = height.max(1) as i64;
        match &*self.0 {
            FieldSpec::Rationals => {
                let n = rng.random_range(-h..=h);
                let d = rng.random_range(1..=h);
                Elem::Rational(BigRational::new(n.into(), d.into()))
            }
            FieldSpec::Prime { p } => Elem::Residue(rng.random_range(0..*p)),
            FieldSpec::Extension { p, modulus } => {
                let k = modulus.degree().unwrap_or(1);
                Elem::Ext(FpPoly::from_coeffs(
                    (0..k).map(|_| rng.random_range(0..*p)).collect(),
                ))
            }
            FieldSpec::RationalFunctions { p } => {
                let num_deg = rng.random_range(0..=height as usize);
                let num = FpPoly::from_coeffs((0..=num_deg).map(|_| rng.random_range(0..*p)).collect());
                let den_deg = rng.random_range(0..=(height as usize).min(2));
                let mut den: Vec<u64> = (0..den_deg).map(|_| rng.random_range(0..*p)).collect();
                den.push(1);
                make_frac(num, FpPoly::from_coeffs(den), *p).expect("monic denominator")
            }
        }
    }

    /// Every element of a finite field, in [`Ord`] order.
    pub fn elements(&self) -> Option<Vec<Elem>> {
        match &*self.0 {
            FieldSpec::Prime { p } => Some((0..*p).map(Elem::Residue).collect()),
            FieldSpec::Extension { p, modulus } => Some(
                FpPoly::enumerate_below(modulus.degree()?, *p)
                    .into_iter()
                    .map(Elem::Ext)
                    .collect(),
            ),
            _ => None,
        }
    }

    /// Elements `num/den` of `F_p(t)` with numerator and denominator degree
    /// at most `max_deg`, deduplicated and sorted.
    pub fn low_height_elements(&self, max_deg: usize) -> Option<Vec<Elem>> {
        let FieldSpec::RationalFunctions { p } = &*self.0 else {
            return None;
        };
        let polys = FpPoly::enumerate_below(max_deg + 1, *p);
        let dens: Vec<&FpPoly> = polys.iter().filter(|d| d.lead() == 1).collect();
        let mut out: Vec<Elem> = polys
            .iter()
            .flat_map(|n| dens.iter().map(move |d| (n, *d)))
            .filter_map(|(n, d)| make_frac(n.clone(), d.clone(), *p).ok())
            .collect();
        out.sort();
        out.dedup();
        Some(out)
    }

    /// Canonical textual form of an element, parseable by the CLI grammar.
    pub fn format(&self, a: &Elem) -> String {
        match a {
            Elem::Rational(q) => {
                if q.is_integer() {
                    q.numer().to_string()
                } else {
                    format!("{}/{}", q.numer(), q.denom())
                }
            }
            Elem::Residue(r) => r.to_string(),
            Elem::Ext(e) => format_fp_poly(e, "a"),
            Elem::Frac(n, d) => {
                if d.is_one() {
                    format_fp_poly(n, "t")
                } else {
                    format!("({})/({})", format_fp_poly(n, "t"), format_fp_poly(d, "t"))
                }
            }
        }
    }

    /// Whether `a` prints as a single token (no `+`/`-` at top level), so
    /// it can be used as a coefficient without parentheses.
    pub fn is_atomic(&self, a: &Elem) -> bool {
        match a {
            Elem::Rational(q) => !q.is_negative(),
            Elem::Residue(_) => true,
            Elem::Ext(e) => e.0.iter().filter(|&&c| c != 0).count() <= 1,
            Elem::Frac(n, d) => d.is_one() && n.0.iter().filter(|&&c| c != 0).count() <= 1,
        }
    }
}

/// Inverse of `a` modulo `m`, if it exists.
pub(crate) fn mod_inv_big(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    use num_integer::Integer;
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

fn make_frac(num: FpPoly, den: FpPoly, p: u64) -> Result<Elem> {
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if num.is_zero() {
        return Ok(Elem::Frac(FpPoly::zero(), FpPoly::one()));
    }
    let g = num.gcd(&den, p);
    let (num, den) = if g.is_one() {
        (num, den)
    } else {
        (num.divrem(&g, p).0, den.divrem(&g, p).0)
    };
    let (lead, den) = den.monic(p);
    let num = num.scale(fp_poly::mod_inv(lead, p), p);
    Ok(Elem::Frac(num, den))
}

pub(crate) fn format_fp_poly(f: &FpPoly, var: &str) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let mut terms = Vec::new();
    for (k, &c) in f.0.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        terms.push(match (c, k) {
            (_, 0) => c.to_string(),
            (1, _) => mono,
            _ => format!("{c}*{mono}"),
        });
    }
    terms.join(" + ")
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime { p } => write!(f, "F_{p}"),
            FieldSpec::Extension { p, modulus } => {
                write!(f, "F_{p}[a]/({})", format_fp_poly(modulus, "a"))
            }
            FieldSpec::RationalFunctions { p } => write!(f, "F_{p}(t)"),
        }
    }
}

/// A scalar paired with its field; arithmetic checks that both operands
/// come from the same field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    pub field: Field,
    pub value: Elem,
}

impl FieldElement {
    pub fn new(field: &Field, value: Elem) -> Result<Self> {
        if !field.contains(&value) {
            return Err(Error::FieldMismatch);
        }
        Ok(FieldElement { field: field.clone(), value })
    }

    fn same(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    fn wrap(&self, value: Elem) -> Self {
        FieldElement { field: self.field.clone(), value }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(self.wrap(self.field.add(&self.value, &other.value)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(self.wrap(self.field.sub(&self.value, &other.value)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(self.wrap(self.field.mul(&self.value, &other.value)))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(self.wrap(self.field.div(&self.value, &other.value)?))
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(self.wrap(self.field.inv(&self.value)?))
    }

    pub fn neg(&self) -> Self {
        self.wrap(self.field.neg(&self.value))
    }

    pub fn is_zero(&self) -> bool {
        self.field.is_zero(&self.value)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format(&self.value))
    }
}

/// A simple extension `E = F[x]/(p)` together with its primitive element
/// `[x]`, recorded through the defining monic irreducible `p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtensionDescriptor {
    pub degree: usize,
    pub modulus: Polynomial,
}

impl ExtensionDescriptor {
    pub fn new(modulus: Polynomial) -> Self {
        let degree = modulus.degree().unwrap_or(0);
        ExtensionDescriptor { degree, modulus }
    }
}

/// Decide whether two simple extensions of `base` are isomorphic as
/// `base`-algebras.
///
/// Over finite fields there is exactly one extension of each degree. Over
/// the rationals and `F_p(t)` only a proxy is available: identical moduli
/// (or two degree-one extensions) give `Yes`, different degrees give `No`,
/// and everything else is `Unknown`.
pub fn extension_isomorphic(
    e1: &ExtensionDescriptor,
    e2: &ExtensionDescriptor,
    base: &Field,
) -> Ternary {
    if e1.degree != e2.degree {
        return Ternary::No;
    }
    if base.is_finite() || e1.degree == 1 || e1.modulus == e2.modulus {
        return Ternary::Yes;
    }
    Ternary::Unknown
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64, d: i64) -> Elem {
        Elem::Rational(BigRational::new(n.into(), d.into()))
    }

    #[test]
    fn rational_sum() {
        let f = Field::rationals();
        assert_eq!(f.add(&q(1, 2), &q(1, 3)), q(5, 6));
    }

    #[test]
    fn characteristic_two() {
        let f = Field::prime(2).unwrap();
        assert_eq!(f.add(&f.one(), &f.one()), f.zero());
    }

    #[test]
    fn function_field_sum() {
        // 1/t + 1/(t+1) = (2t+1)/(t^2+t) = 1/(t^2+t) over F_2
        let f = Field::rational_functions(2).unwrap();
        let a = f.frac(FpPoly::one(), FpPoly::var()).unwrap();
        let b = f.frac(FpPoly::one(), FpPoly::from_coeffs(vec![1, 1])).unwrap();
        let expect = f.frac(FpPoly::one(), FpPoly::from_coeffs(vec![0, 1, 1])).unwrap();
        assert_eq!(f.add(&a, &b), expect);
    }

    #[test]
    fn frac_is_canonical() {
        let f = Field::rational_functions(3).unwrap();
        // (2t^2 + 2t)/(2t) = t + 1
        let a = f
            .frac(FpPoly::from_coeffs(vec![0, 2, 2]), FpPoly::from_coeffs(vec![0, 2]))
            .unwrap();
        assert_eq!(a, Elem::Frac(FpPoly::from_coeffs(vec![1, 1]), FpPoly::one()));
        assert!(f.contains(&a));
    }

    #[test]
    fn division_by_zero() {
        for f in [Field::rationals(), Field::prime(5).unwrap(), Field::rational_functions(2).unwrap()] {
            assert_eq!(f.inv(&f.zero()), Err(Error::DivisionByZero));
        }
    }

    #[test]
    fn invalid_fields_rejected() {
        assert!(Field::prime(4).is_err());
        assert!(Field::prime(1).is_err());
        assert!(Field::extension(2, FpPoly::from_coeffs(vec![1, 0, 1])).is_err());
        assert!(Field::extension(2, FpPoly::from_coeffs(vec![1, 1, 1])).is_ok());
    }

    #[test]
    fn field_element_mismatch() {
        let a = FieldElement::new(&Field::prime(2).unwrap(), Elem::Residue(1)).unwrap();
        let b = FieldElement::new(&Field::prime(3).unwrap(), Elem::Residue(1)).unwrap();
        assert_eq!(a.add(&b), Err(Error::FieldMismatch));
        assert!(FieldElement::new(&Field::prime(3).unwrap(), Elem::Residue(3)).is_err());
    }

    #[test]
    fn perfectness() {
        assert!(Field::rationals().is_perfect());
        assert!(Field::prime(2).unwrap().is_perfect());
        assert!(Field::extension(3, FpPoly::from_coeffs(vec![1, 0, 1])).unwrap().is_perfect());
        assert!(!Field::rational_functions(2).unwrap().is_perfect());
    }

    #[test]
    fn pth_roots_in_extension() {
        let f = Field::extension(2, FpPoly::from_coeffs(vec![1, 1, 0, 1])).unwrap();
        for a in f.elements().unwrap() {
            let r = f.pth_root(&a).unwrap();
            assert_eq!(f.pow(&r, 2), a);
        }
        let t = Field::rational_functions(2).unwrap();
        assert!(t.pth_root(&t.generator().unwrap()).is_none());
    }

    fn test_fields() -> Vec<Field> {
        vec![
            Field::rationals(),
            Field::prime(2).unwrap(),
            Field::prime(7).unwrap(),
            Field::extension(2, FpPoly::from_coeffs(vec![1, 1, 1])).unwrap(),
            Field::extension(3, FpPoly::from_coeffs(vec![1, 0, 1])).unwrap(),
            Field::rational_functions(2).unwrap(),
            Field::rational_functions(3).unwrap(),
        ]
    }

    proptest! {
        #[test]
        fn field_axioms(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for f in test_fields() {
                let a = f.random(&mut rng, 3);
                let b = f.random(&mut rng, 3);
                let c = f.random(&mut rng, 3);
                prop_assert!(f.contains(&a));
                prop_assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
                prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
                prop_assert_eq!(
                    f.mul(&a, &f.add(&b, &c)),
                    f.add(&f.mul(&a, &b), &f.mul(&a, &c))
                );
                prop_assert_eq!(f.add(&a, &f.neg(&a)), f.zero());
                if !f.is_zero(&a) {
                    prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
                }
                let sum = f.add(&a, &b);
                prop_assert!(f.contains(&sum));
            }
        }
    }

    #[test]
    fn extension_isomorphism_proxy() {
        use crate::poly::Polynomial;
        let f2 = Field::prime(2).unwrap();
        let e = ExtensionDescriptor::new(Polynomial::from_i64(&f2, &[1, 1, 1]));
        assert_eq!(extension_isomorphic(&e, &e, &f2), Ternary::Yes);
        let q = Field::rationals();
        let a = ExtensionDescriptor::new(Polynomial::from_i64(&q, &[-2, 0, 1]));
        let b = ExtensionDescriptor::new(Polynomial::from_i64(&q, &[-3, 0, 1]));
        assert_eq!(extension_isomorphic(&a, &b, &q), Ternary::Unknown);
        let c = ExtensionDescriptor::new(Polynomial::from_i64(&q, &[-2, 0, 0, 1]));
        assert_eq!(extension_isomorphic(&a, &c, &q), Ternary::No);
    }
}
