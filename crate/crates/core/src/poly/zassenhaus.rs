//! Factorization of squarefree rational polynomials: reduction modulo a
//! good prime, multifactor quadratic Hensel lifting and subset
//! recombination with trial division.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{factor, FactorOptions, Polynomial};
use crate::fields::{mod_inv_big, Elem, Field, FpPoly};

/// Integer polynomial, ascending, no trailing zeros.
type ZPoly = Vec<BigInt>;

fn trim(mut a: ZPoly) -> ZPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn zadd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).collect())
}

fn zsub(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

fn zmul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    trim(c)
}

fn zscale(a: &ZPoly, c: &BigInt) -> ZPoly {
    trim(a.iter().map(|x| x * c).collect())
}

/// Coefficients reduced into `[0, m)`.
fn zmod(a: &ZPoly, m: &BigInt) -> ZPoly {
    trim(a.iter().map(|x| x.mod_floor(m)).collect())
}

/// Coefficients reduced into `(-m/2, m/2]`.
fn zsym(a: &ZPoly, m: &BigInt) -> ZPoly {
    let half = m >> 1;
    trim(
        a.iter()
            .map(|x| {
                let r = x.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

/// Division by a monic `b` with coefficients taken modulo `m`.
fn zdivrem_monic(a: &ZPoly, b: &ZPoly, m: &BigInt) -> (ZPoly, ZPoly) {
    let db = b.len() - 1;
    let mut r = zmod(a, m);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db].mod_floor(m);
        if c.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[k + j] = (&r[k + j] - &c * y).mod_floor(m);
        }
        q[k] = c;
    }
    r.truncate(db);
    (trim(q), zmod(&r, m))
}

/// Exact division over `Z`, `None` if `b` does not divide `a`.
fn zdiv_exact(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    let db = b.len() - 1;
    if a.len() < b.len() {
        return a.is_empty().then(Vec::new);
    }
    let lb = b.last().unwrap();
    let mut r = a.clone();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let (c, rem) = r[k + db].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        if c.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[k + j] -= &c * y;
        }
        q[k] = c;
    }
    r.iter().all(|c| c.is_zero()).then(|| trim(q))
}

fn content(a: &ZPoly) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Primitive part with positive leading coefficient.
fn primitive(a: &ZPoly) -> ZPoly {
    let mut c = content(a);
    if a.last().is_some_and(|l| l.is_negative()) {
        c = -c;
    }
    a.iter().map(|x| x / &c).collect()
}

fn to_fp(a: &ZPoly, p: u64) -> FpPoly {
    let pb = BigInt::from(p);
    FpPoly::from_coeffs(
        a.iter()
            .map(|x| u64::try_from(x.mod_floor(&pb)).expect("residue below p"))
            .collect(),
    )
}

fn from_fp(a: &FpPoly) -> ZPoly {
    a.0.iter().map(|&c| BigInt::from(c)).collect()
}

/// One quadratic Hensel step: from `f ≡ g h`, `s g + t h ≡ 1 (mod m)` with
/// `h` monic to the same relations modulo `m^2`.
fn hensel_step(
    f: &ZPoly,
    g: &ZPoly,
    h: &ZPoly,
    s: &ZPoly,
    t: &ZPoly,
    m: &BigInt,
) -> (ZPoly, ZPoly, ZPoly, ZPoly) {
    let m2 = m * m;
    let e = zmod(&zsub(f, &zmul(g, h)), &m2);
    let (q, r) = zdivrem_monic(&zmul(s, &e), h, &m2);
    let g1 = zmod(&zadd(&zadd(g, &zmul(t, &e)), &zmul(&q, g)), &m2);
    let h1 = zmod(&zadd(h, &r), &m2);
    let b = zmod(&zsub(&zadd(&zmul(s, &g1), &zmul(t, &h1)), &vec![BigInt::one()]), &m2);
    let (c, d) = zdivrem_monic(&zmul(s, &b), &h1, &m2);
    let s1 = zmod(&zsub(s, &d), &m2);
    let t1 = zmod(&zsub(&zsub(t, &zmul(t, &b)), &zmul(&c, &g1)), &m2);
    (g1, h1, s1, t1)
}

/// Lift `f ≡ lc(f) Π factors (mod p)` to monic factors modulo `pk = p^k`.
fn multifactor_lift(f: &ZPoly, factors: &[FpPoly], p: u64, pk: &BigInt) -> Vec<ZPoly> {
    let lc = f.last().unwrap();
    if factors.len() == 1 {
        let inv = mod_inv_big(lc, pk).expect("leading coefficient is a unit");
        return vec![zmod(&zscale(f, &inv), pk)];
    }
    let (left, right) = factors.split_at(factors.len() / 2);
    let lc_p = to_fp(&vec![lc.clone()], p);
    let g0 = left.iter().fold(lc_p, |acc, u| acc.mul(u, p));
    let h0 = right.iter().fold(FpPoly::one(), |acc, u| acc.mul(u, p));
    let (one, s0, t0) = g0.xgcd(&h0, p);
    debug_assert!(one.is_one());
    let (mut g, mut h, mut s, mut t) = (from_fp(&g0), from_fp(&h0), from_fp(&s0), from_fp(&t0));
    let mut m = BigInt::from(p);
    while &m < pk {
        (g, h, s, t) = hensel_step(f, &g, &h, &s, &t, &m);
        m = &m * &m;
    }
    let g = zmod(&g, pk);
    let h = zmod(&h, pk);
    let mut out = multifactor_lift(&g, left, p, pk);
    out.extend(multifactor_lift(&h, right, p, pk));
    out
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

/// Factor a squarefree primitive integer polynomial of degree >= 1.
fn factor_primitive(f: &ZPoly) -> Vec<ZPoly> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.clone()];
    }
    let lc = f.last().unwrap().clone();

    // try a few good primes, keep the one with fewest modular factors
    let mut best: Option<(u64, Vec<FpPoly>)> = None;
    let mut tried = 0;
    for p in small_primes() {
        if tried >= 5 {
            break;
        }
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = to_fp(f, p);
        if !fp.gcd(&fp.derivative(p), p).is_one() {
            continue;
        }
        tried += 1;
        let field = Field::prime(p).expect("prime");
        let fac = factor(&Polynomial::from_fp_poly(&field, &fp), &FactorOptions::default())
            .expect("finite-field factorization");
        let mods: Vec<FpPoly> = fac.factors.iter().map(|(g, _)| g.to_fp_poly().unwrap()).collect();
        if best.as_ref().is_none_or(|(_, b)| mods.len() < b.len()) {
            best = Some((p, mods));
        }
        if best.as_ref().unwrap().1.len() == 1 {
            break;
        }
    }
    let (p, mods) = best.expect("a good prime exists for a squarefree polynomial");
    if mods.len() == 1 {
        return vec![f.clone()];
    }

    // coefficients of lc * (any factor) are bounded by (n+1) 2^n |f|_inf |lc|
    let max_coeff = f.iter().map(|c| c.abs()).max().unwrap();
    let bound = BigInt::from(n + 1) * (BigInt::one() << n) * max_coeff * lc.abs();
    let mut pk = BigInt::from(p);
    while pk <= &bound * 2 {
        pk *= p;
    }

    let mut lifted: Vec<ZPoly> = multifactor_lift(f, &mods, p, &pk)
        .into_iter()
        .map(|u| zsym(&u, &pk))
        .collect();
    let mut rest = f.clone();
    let mut found = Vec::new();
    let mut k = 1;
    while 2 * k <= lifted.len() {
        let mut hit = None;
        for subset in combinations(lifted.len(), k) {
            let lc_rest = rest.last().unwrap().clone();
            let prod = subset
                .iter()
                .fold(vec![lc_rest], |acc, &i| zsym(&zmul(&acc, &lifted[i]), &pk));
            let g = primitive(&prod);
            if let Some(q) = zdiv_exact(&rest, &g) {
                hit = Some((subset, g, q));
                break;
            }
        }
        match hit {
            Some((subset, g, q)) => {
                found.push(g);
                rest = q;
                lifted = lifted
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, u)| u)
                    .collect();
            }
            None => k += 1,
        }
    }
    if rest.len() > 1 {
        found.push(primitive(&rest));
    }
    found
}

/// All `k`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Monic irreducible factors of a monic squarefree rational polynomial.
pub(super) fn factor_squarefree(f: &Polynomial) -> Vec<Polynomial> {
    let field = f.field();
    let rationals: Vec<&BigRational> = f
        .coeffs()
        .iter()
        .map(|c| match c {
            Elem::Rational(q) => q,
            _ => unreachable!("rational polynomial"),
        })
        .collect();
    let den = rationals.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
    let z: ZPoly = rationals.iter().map(|q| (*q * &den).to_integer()).collect();
    factor_primitive(&primitive(&z))
        .into_iter()
        .map(|g| {
            Polynomial::new(
                field,
                g.into_iter().map(|c| Elem::Rational(BigRational::from_integer(c))).collect(),
            )
            .make_monic()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(c: &[i64]) -> ZPoly {
        trim(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn swinnerton_dyer_like_recombination() {
        // x^4 - 10x^2 + 1 is irreducible over Q but splits modulo every prime
        let f = z(&[1, 0, -10, 0, 1]);
        assert_eq!(factor_primitive(&f), vec![f]);
    }

    #[test]
    fn nonmonic_product() {
        let a = z(&[1, 2, 3]);
        let b = z(&[-5, 0, 0, 7]);
        let c = z(&[2, 3]);
        let f = zmul(&zmul(&a, &b), &c);
        let mut got = factor_primitive(&f);
        got.sort();
        let mut want = vec![a, b, c];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn cyclotomic_split() {
        // x^12 - 1 = product of Φ_d for d | 12
        let mut f = vec![BigInt::zero(); 13];
        f[0] = BigInt::from(-1);
        f[12] = BigInt::one();
        assert_eq!(factor_primitive(&f).len(), 6);
    }

    #[test]
    fn subsets() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
    }
}
