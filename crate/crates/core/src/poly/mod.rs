//! Dense univariate polynomials over any supported [`Field`], and their
//! factorization into monic irreducibles.

mod factor;
mod zassenhaus;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::fields::{Elem, Field, FieldSpec, FpPoly};

pub use factor::{factor, squarefree_decomposition, FactorOptions, Factorization, Provenance};

/// Coefficients in ascending degree with no trailing zeros; the zero
/// polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: Field,
    coeffs: Vec<Elem>,
}

impl Polynomial {
    pub fn new(field: &Field, mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Polynomial { field: field.clone(), coeffs }
    }

    pub fn from_i64(field: &Field, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: &Field) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn one(field: &Field) -> Self {
        Self::constant(field, field.one())
    }

    pub fn constant(field: &Field, c: Elem) -> Self {
        Self::new(field, vec![c])
    }

    /// The indeterminate `x`.
    pub fn x(field: &Field) -> Self {
        Self::monomial(field, field.one(), 1)
    }

    pub fn monomial(field: &Field, c: Elem, k: usize) -> Self {
        let mut coeffs = vec![field.zero(); k];
        coeffs.push(c);
        Self::new(field, coeffs)
    }

    /// `x - c`.
    pub fn linear(field: &Field, c: &Elem) -> Self {
        Self::new(field, vec![field.neg(c), field.one()])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Elem {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Elem {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.field.is_one(&self.coeffs[0])
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        !self.is_zero() && self.field.is_one(&self.lead())
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.field, other.field, "polynomials over different fields");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => f.add(a, b),
                (Some(a), None) | (None, Some(a)) => a.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::new(f, c)
    }

    pub fn neg(&self) -> Self {
        Self::new(&self.field, self.coeffs.iter().map(|c| self.field.neg(c)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Elem) -> Self {
        Self::new(&self.field, self.coeffs.iter().map(|a| self.field.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Self::zero(f);
        }
        let mut c = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] = f.add(&c[i + j], &f.mul(a, b));
            }
        }
        Self::new(f, c)
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![self.field.zero(); k];
        c.extend(self.coeffs.iter().cloned());
        Self::new(&self.field, c)
    }

    pub fn pow(&self, mut exp: usize) -> Self {
        let mut acc = Self::one(&self.field);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Euclidean division: `(q, r)` with `self = q*d + r`, `deg r < deg d`.
    pub fn divrem(&self, d: &Self) -> Result<(Self, Self)> {
        self.check(d);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = &self.field;
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((Self::zero(f), self.clone()));
        }
        let inv_lead = f.inv(&d.lead())?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![f.zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = f.mul(&rem[k + dd], &inv_lead);
            if f.is_zero(&c) {
                continue;
            }
            for (j, b) in d.coeffs.iter().enumerate() {
                rem[k + j] = f.sub(&rem[k + j], &f.mul(&c, b));
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(f, quot), Self::new(f, rem)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self> {
        Ok(self.divrem(d)?.1)
    }

    /// Exact quotient, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d).ok()?;
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        !self.is_zero() && other.rem(self).is_ok_and(|r| r.is_zero())
    }

    /// `(lead, self / lead)`; the zero polynomial is returned unchanged.
    pub fn monic(&self) -> (Elem, Self) {
        if self.is_zero() {
            return (self.field.zero(), self.clone());
        }
        let lead = self.lead();
        let inv = self.field.inv(&lead).expect("nonzero leading coefficient");
        (lead, self.scale(&inv))
    }

    pub fn make_monic(&self) -> Self {
        self.monic().1
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.make_monic()
    }

    /// `(d, a, b)` with `a*self + b*other = d` and `d` monic (or zero).
    pub fn xgcd(&self, other: &Self) -> (Self, Self, Self) {
        self.check(other);
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(f), Self::zero(f));
        let (mut t0, mut t1) = (Self::zero(f), Self::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).expect("nonzero divisor");
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = f.inv(&r0.lead()).expect("nonzero leading coefficient");
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn lcm(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        let g = self.gcd(other);
        self.mul(other).div_exact(&g).expect("gcd divides product").make_monic()
    }

    pub fn mul_mod(&self, other: &Self, modulus: &Self) -> Self {
        self.mul(other).rem(modulus).expect("nonzero modulus")
    }

    pub fn pow_mod(&self, exp: &BigUint, modulus: &Self) -> Self {
        let mut acc = Self::one(&self.field).rem(modulus).expect("nonzero modulus");
        let base = self.rem(modulus).expect("nonzero modulus");
        for i in (0..exp.bits()).rev() {
            acc = acc.mul_mod(&acc, modulus);
            if exp.bit(i) {
                acc = acc.mul_mod(&base, modulus);
            }
        }
        acc
    }

    /// Inverse modulo `modulus`, if `gcd(self, modulus) = 1`.
    pub fn inv_mod(&self, modulus: &Self) -> Option<Self> {
        let (d, a, _) = self.xgcd(modulus);
        d.is_one().then(|| a.rem(modulus).expect("nonzero modulus"))
    }

    /// Formal derivative; in characteristic `l` terms with `l | k` vanish.
    pub fn derivative(&self) -> Self {
        let f = &self.field;
        Self::new(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, a)| f.mul(&f.from_i64(k as i64), a))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Elem) -> Elem {
        let f = &self.field;
        self.coeffs.iter().rev().fold(f.zero(), |acc, a| f.add(&f.mul(&acc, x), a))
    }

    /// `self(g(x))`.
    pub fn compose(&self, g: &Self) -> Self {
        self.check(g);
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(&self.field), |acc, a| acc.mul(g).add(&Self::constant(&self.field, a.clone())))
    }

    /// `self(g(x)) mod modulus`, without forming the full composition.
    pub fn compose_mod(&self, g: &Self, modulus: &Self) -> Self {
        let g = g.rem(modulus).expect("nonzero modulus");
        self.coeffs.iter().rev().fold(Self::zero(&self.field), |acc, a| {
            acc.mul_mod(&g, modulus).add(&Self::constant(&self.field, a.clone()))
        })
    }

    /// For `self = g(x^p)` with every coefficient of `g` a p-th power,
    /// returns `g^{1/p}` so that `self = (g^{1/p})^p`.
    pub fn pth_root(&self) -> Option<Self> {
        let f = &self.field;
        let p = f.characteristic() as usize;
        if p == 0 {
            return None;
        }
        let mut c = Vec::new();
        for (k, a) in self.coeffs.iter().enumerate() {
            if k % p == 0 {
                c.push(f.pth_root(a)?);
            } else if !f.is_zero(a) {
                return None;
            }
        }
        Some(Self::new(f, c))
    }

    /// Whether `self` is irreducible, as certified by [`factor`].
    pub fn is_irreducible(&self, opts: &FactorOptions) -> Result<bool> {
        if self.is_constant() {
            return Ok(false);
        }
        let fac = factor(self, opts)?;
        Ok(fac.factors.len() == 1 && fac.factors[0].1 == 1)
    }

    /// View of a prime-field polynomial as an [`FpPoly`].
    pub fn to_fp_poly(&self) -> Option<FpPoly> {
        let c = self
            .coeffs
            .iter()
            .map(|a| match a {
                Elem::Residue(r) => Some(*r),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()?;
        Some(FpPoly::from_coeffs(c))
    }

    pub fn from_fp_poly(field: &Field, f: &FpPoly) -> Self {
        debug_assert!(matches!(field.spec(), FieldSpec::Prime { .. }));
        Self::new(field, f.0.iter().map(|&c| Elem::Residue(c)).collect())
    }
}

impl PartialOrd for Polynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Polynomial {
    /// Degree first, then coefficients from the leading term down.
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return out.write_str("0");
        }
        let f = &self.field;
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if f.is_zero(c) {
                continue;
            }
            let (negative, c) = match c {
                Elem::Rational(q) if q.is_negative() => (true, Elem::Rational(-q)),
                _ => (false, c.clone()),
            };
            match (first, negative) {
                (true, true) => out.write_str("-")?,
                (true, false) => {}
                (false, true) => out.write_str(" - ")?,
                (false, false) => out.write_str(" + ")?,
            }
            first = false;
            let mono = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            };
            let coeff = f.format(&c);
            let coeff = if f.is_atomic(&c) { coeff } else { format!("({coeff})") };
            if k == 0 {
                out.write_str(&coeff)?;
            } else if f.is_one(&c) {
                out.write_str(&mono)?;
            } else {
                write!(out, "{coeff}*{mono}")?;
            }
        }
        Ok(())
    }
}
