//! Splitting `T = S + N` with `S` dynamically semisimple, `N` nilpotent and
//! both polynomials in `T`.
//!
//! Per prime `p` with exponent `d`, a root `y` of `p` modulo `p^d` with
//! `y ≡ x (mod p)` is found by the fixed-slope iteration
//! `y ← y - b(y) p(y)`, where `b p' ≡ 1 (mod p)`. The roots are glued by the
//! Chinese remainder theorem into one `f` with `S = f(T)`.

use crate::error::{Error, Result};
use crate::linalg::{apply_polynomial, minimal_polynomial, Matrix};
use crate::operator::{Analysis, PrimaryComponent};
use crate::poly::{squarefree_decomposition, FactorOptions, Polynomial};

/// Why a prime does or does not admit an invariant E-structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeReason {
    pub prime: Polynomial,
    pub exponent: usize,
    pub derivative_vanishes: bool,
}

impl PrimeReason {
    pub fn admits(&self) -> bool {
        self.exponent == 1 || !self.derivative_vanishes
    }
}

#[derive(Clone, Debug)]
pub struct SnResult {
    pub exists: bool,
    pub reasons: Vec<PrimeReason>,
    pub s: Option<Matrix>,
    pub n: Option<Matrix>,
    /// `S = f(T)` with `deg f < deg m_T`.
    pub f: Option<Polynomial>,
}

pub fn prime_reasons(a: &Analysis) -> Vec<PrimeReason> {
    a.factorization
        .factors
        .iter()
        .map(|(p, d)| PrimeReason {
            prime: p.clone(),
            exponent: *d,
            derivative_vanishes: p.derivative().is_zero(),
        })
        .collect()
}

pub fn sn_exists(t: &Matrix, opts: &FactorOptions) -> Result<(bool, Vec<PrimeReason>)> {
    let reasons = prime_reasons(&Analysis::new(t, opts)?);
    Ok((reasons.iter().all(PrimeReason::admits), reasons))
}

/// `y` with `p(y) ≡ 0 (mod p^d)` and `y ≡ x (mod p)`, reduced mod `p^d`.
pub fn newton_lift(p: &Polynomial, d: usize) -> Result<Polynomial> {
    let f = p.field();
    let x = Polynomial::x(f);
    let modulus = p.pow(d);
    if d == 1 {
        return x.rem(&modulus);
    }
    let (g, _, b) = p.xgcd(&p.derivative());
    if !g.is_one() {
        return Err(Error::NoEStructure(format!("{p} has vanishing derivative and exponent {d}")));
    }
    let mut y = x.rem(&modulus)?;
    for _ in 0..d {
        let py = p.compose_mod(&y, &modulus);
        if py.is_zero() {
            return Ok(y);
        }
        y = y.sub(&b.compose_mod(&y, &modulus).mul_mod(&py, &modulus)).rem(&modulus)?;
    }
    if p.compose_mod(&y, &modulus).is_zero() {
        Ok(y)
    } else {
        Err(Error::IterationDiverged(format!("{p} to the power {d}")))
    }
}

/// `f ≡ r_i (mod m_i)` for pairwise coprime `m_i`, reduced mod `Π m_i`.
pub fn crt(residues: &[(Polynomial, Polynomial)]) -> Result<Polynomial> {
    let Some((r0, m0)) = residues.first() else {
        return Err(Error::DimensionMismatch("empty congruence system".into()));
    };
    let mut f = r0.rem(m0)?;
    let mut m = m0.clone();
    for (r, q) in &residues[1..] {
        let inv = m
            .inv_mod(q)
            .ok_or_else(|| Error::InternalInconsistency("CRT moduli are not coprime".into()))?;
        let k = r.sub(&f).mul_mod(&inv, q);
        f = f.add(&m.mul(&k));
        m = m.mul(q);
        f = f.rem(&m)?;
    }
    Ok(f)
}

pub fn sn_decompose(t: &Matrix, opts: &FactorOptions) -> Result<SnResult> {
    sn_from_analysis(&Analysis::new(t, opts)?)
}

pub fn sn_from_analysis(a: &Analysis) -> Result<SnResult> {
    let reasons = prime_reasons(a);
    if !reasons.iter().all(PrimeReason::admits) {
        return Ok(SnResult { exists: false, reasons, s: None, n: None, f: None });
    }
    let field = a.field();
    let t = &a.t;
    let residues = a
        .factorization
        .factors
        .iter()
        .map(|(p, d)| Ok((newton_lift(p, *d)?, p.pow(*d))))
        .collect::<Result<Vec<_>>>()?;
    let f = if residues.is_empty() { Polynomial::zero(field) } else { crt(&residues)? };
    let s = apply_polynomial(&f, t);
    let n = t.sub(&s);

    let radical = a.factorization.factors.iter().fold(Polynomial::one(field), |acc, (p, _)| acc.mul(p));
    if !s.commutes_with(&n) {
        return Err(Error::InternalInconsistency("S and N do not commute".into()));
    }
    if !n.pow(t.rows()).is_zero() {
        return Err(Error::InternalInconsistency("N is not nilpotent".into()));
    }
    if minimal_polynomial(&s)? != radical {
        return Err(Error::InternalInconsistency(
            "minimal polynomial of S is not the product of the primes".into(),
        ));
    }
    Ok(SnResult { exists: true, reasons, s: Some(s), n: Some(n), f: Some(f) })
}

/// Whether `(S, N)` is an S+N splitting of `T` (polynomial membership aside).
pub fn sn_invariants_hold(t: &Matrix, s: &Matrix, n: &Matrix) -> Result<bool> {
    if &s.add(n) != t || !s.commutes_with(n) || !n.pow(t.rows()).is_zero() {
        return Ok(false);
    }
    let m = minimal_polynomial(s)?;
    Ok(squarefree_decomposition(&m)?.iter().all(|(_, k)| *k == 1))
}

/// The canonical generator `S_c` of the E-structure on a primary component,
/// in the component's echelon basis.
pub fn canonical_e_structure(t: &Matrix, c: &PrimaryComponent) -> Result<Matrix> {
    let p = &c.prime;
    let d = c.exponent;
    if d > 1 && p.derivative().is_zero() {
        return Err(Error::NoEStructure(format!("{p} has vanishing derivative and exponent {d}")));
    }
    let y = newton_lift(p, d)?;
    let s = apply_polynomial(&y, t);
    // S and T agree on every V_i / V_{i-1}
    let diff = s.sub(t);
    for w in c.kernels.windows(2) {
        if !w[0].contains_subspace(&w[1].image_under(&diff)) {
            return Err(Error::InternalInconsistency("S is not canonical on the component".into()));
        }
    }
    let restricted = apply_polynomial(&y, &c.restricted);
    if !apply_polynomial(p, &restricted).is_zero() {
        return Err(Error::InternalInconsistency("p(S) does not vanish on the component".into()));
    }
    Ok(restricted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{Field, FpPoly};

    #[test]
    fn newton_on_x2_plus_1() {
        let q = Field::rationals();
        let p = Polynomial::from_i64(&q, &[1, 0, 1]);
        let y = newton_lift(&p, 2).unwrap();
        // (x^3 + 3x) / 2
        let half = q.from_rational(&num_rational::BigRational::new(1.into(), 2.into())).unwrap();
        assert_eq!(y, Polynomial::from_i64(&q, &[0, 3, 0, 1]).scale(&half));
    }

    #[test]
    fn crt_combines() {
        let q = Field::rationals();
        let m1 = Polynomial::from_i64(&q, &[0, 1]);
        let m2 = Polynomial::from_i64(&q, &[-1, 1]);
        let f = crt(&[(Polynomial::from_i64(&q, &[2]), m1.clone()), (Polynomial::from_i64(&q, &[5]), m2.clone())])
            .unwrap();
        assert_eq!(f.eval(&q.zero()), q.from_i64(2));
        assert_eq!(f.eval(&q.one()), q.from_i64(5));
    }

    #[test]
    fn shifted_jordan_block() {
        let q = Field::rationals();
        let t = Matrix::jordan(&q, &q.from_i64(5), 2);
        let r = sn_decompose(&t, &FactorOptions::default()).unwrap();
        assert_eq!(r.s.unwrap(), Matrix::scalar(&q, 2, &q.from_i64(5)));
        assert_eq!(r.n.unwrap(), Matrix::jordan(&q, &q.zero(), 2));
    }

    #[test]
    fn squarefree_minimal_polynomial_gives_s_equal_t() {
        let f3 = Field::prime(3).unwrap();
        let t = Matrix::from_i64(&f3, &[&[0, 1], &[1, 0]]);
        let r = sn_decompose(&t, &FactorOptions::default()).unwrap();
        assert_eq!(r.s.unwrap(), t);
        assert!(r.n.unwrap().is_zero());
    }

    #[test]
    fn inseparable_prime_with_exponent_one() {
        // multiplication by x on F_2(t)[x]/(x^2 + t)
        let k = Field::rational_functions(2).unwrap();
        let tt = k.frac(FpPoly::var(), FpPoly::one()).unwrap();
        let p = Polynomial::new(&k, vec![tt, k.zero(), k.one()]);
        let t = Matrix::companion(&p);
        let opts = FactorOptions { hints: vec![(p.clone(), 1)], ..Default::default() };
        let (ok, reasons) = sn_exists(&t, &opts).unwrap();
        assert!(ok && reasons[0].derivative_vanishes);
        let r = sn_decompose(&t, &opts).unwrap();
        assert_eq!(r.s.unwrap(), t);
    }

    #[test]
    fn inseparable_prime_squared_has_no_structure() {
        let k = Field::rational_functions(2).unwrap();
        let tt = k.frac(FpPoly::var(), FpPoly::one()).unwrap();
        let p = Polynomial::new(&k, vec![tt, k.zero(), k.one()]);
        let t = Matrix::companion(&p.pow(2));
        let opts = FactorOptions { hints: vec![(p.clone(), 2)], ..Default::default() };
        let (ok, reasons) = sn_exists(&t, &opts).unwrap();
        assert!(!ok);
        assert_eq!(reasons[0].exponent, 2);
        let a = Analysis::new(&t, &opts).unwrap();
        assert!(matches!(canonical_e_structure(&t, &a.components[0]), Err(Error::NoEStructure(_))));
    }
}
