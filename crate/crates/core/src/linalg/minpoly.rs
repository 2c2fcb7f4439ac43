use super::{smith_diagonal, Matrix, PolyMatrix};
use crate::error::{Error, Result};
use crate::fields::Elem;
use crate::poly::Polynomial;

/// `f(A)` by Horner's rule.
pub fn apply_polynomial(f: &Polynomial, a: &Matrix) -> Matrix {
    assert!(a.is_square(), "polynomial of a non-square matrix");
    assert_eq!(f.field(), a.field(), "polynomial and matrix over different fields");
    let field = a.field();
    let n = a.rows();
    f.coeffs().iter().rev().fold(Matrix::zeros(field, n, n), |acc, c| {
        acc.mul(a).add(&Matrix::scalar(field, n, c))
    })
}

/// `det(xI - A)` by Berkowitz's division-free recurrence.
pub fn characteristic_polynomial(a: &Matrix) -> Polynomial {
    assert!(a.is_square(), "characteristic polynomial of a non-square matrix");
    let f = a.field();
    let n = a.rows();
    if n == 0 {
        return Polynomial::one(f);
    }
    // coefficients from x^r down, for the leading r x r principal submatrix
    let mut vect = vec![f.one(), f.neg(a.get(0, 0))];
    for r in 1..n {
        let sub = a.submatrix(0..r, 0..r);
        let row = a.submatrix(r..r + 1, 0..r);
        let mut col = a.submatrix(0..r, r..r + 1);
        let mut t = vec![f.one(), f.neg(a.get(r, r))];
        for _ in 0..r {
            t.push(f.neg(row.mul(&col).get(0, 0)));
            col = sub.mul(&col);
        }
        let next = (0..r + 2)
            .map(|i| {
                (0..=i.min(r)).fold(f.zero(), |acc, j| f.add(&acc, &f.mul(&t[i - j], &vect[j])))
            })
            .collect();
        vect = next;
    }
    vect.reverse();
    Polynomial::new(f, vect)
}

/// Monic generator of `{g : g(A) v = 0}`.
pub fn vector_annihilator(a: &Matrix, v: &[Elem]) -> Polynomial {
    let f = a.field();
    let n = a.rows();
    if v.iter().all(|x| f.is_zero(x)) {
        return Polynomial::one(f);
    }
    let mut krylov = vec![v.to_vec()];
    loop {
        let next = a.mul_vec(krylov.last().unwrap());
        let basis = Matrix::from_columns(f, n, &krylov);
        if let Ok(c) = basis.solve(&next) {
            let mut coeffs: Vec<Elem> = c.iter().map(|x| f.neg(x)).collect();
            coeffs.push(f.one());
            return Polynomial::new(f, coeffs);
        }
        krylov.push(next);
    }
}

/// Minimal polynomial as the lcm of the annihilators of the standard basis.
pub fn minimal_polynomial_krylov(a: &Matrix) -> Polynomial {
    let f = a.field();
    let n = a.rows();
    (0..n).fold(Polynomial::one(f), |acc, i| {
        let mut e = vec![f.zero(); n];
        e[i] = f.one();
        acc.lcm(&vector_annihilator(a, &e))
    })
}

/// Minimal polynomial as the last invariant factor of `xI - A`.
pub fn minimal_polynomial_smith(a: &Matrix) -> Polynomial {
    smith_diagonal(&PolyMatrix::characteristic(a)).pop().unwrap_or_else(|| Polynomial::one(a.field()))
}

/// Minimal polynomial computed along both routes; disagreement means an
/// arithmetic bug and is reported rather than hidden.
pub fn minimal_polynomial(a: &Matrix) -> Result<Polynomial> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch("minimal polynomial of a non-square matrix".into()));
    }
    let k = minimal_polynomial_krylov(a);
    let s = minimal_polynomial_smith(a);
    if k != s {
        return Err(Error::InternalInconsistency(format!(
            "Krylov minimal polynomial {k} differs from Smith form result {s}"
        )));
    }
    Ok(k)
}
