use super::Matrix;
use crate::fields::Field;
use crate::poly::Polynomial;

/// Rectangular matrix of polynomials over a common field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        PolyMatrix { field: field.clone(), rows, cols, data: vec![Polynomial::zero(field); rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Polynomial::one(field));
        }
        m
    }

    /// The characteristic matrix `xI - A`.
    pub fn characteristic(a: &Matrix) -> Self {
        let f = a.field();
        let n = a.rows();
        let mut m = Self::zeros(f, n, n);
        for i in 0..n {
            for j in 0..n {
                let c = Polynomial::constant(f, f.neg(a.get(i, j)));
                m.set(i, j, if i == j { c.add(&Polynomial::x(f)) } else { c });
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        self.data[i * self.cols + j] = p;
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut m = Self::zeros(&self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Polynomial::zero(&self.field);
                for k in 0..self.cols {
                    acc = acc.add(&self.get(i, k).mul(other.get(k, j)));
                }
                m.set(i, j, acc);
            }
        }
        m
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] += c * row[src]`
    fn add_row(&mut self, dst: usize, src: usize, c: &Polynomial) {
        for j in 0..self.cols {
            let v = self.get(dst, j).add(&c.mul(self.get(src, j)));
            self.set(dst, j, v);
        }
    }

    /// `col[dst] += c * col[src]`
    fn add_col(&mut self, dst: usize, src: usize, c: &Polynomial) {
        for i in 0..self.rows {
            let v = self.get(i, dst).add(&self.get(i, src).mul(c));
            self.set(i, dst, v);
        }
    }

    fn scale_row(&mut self, r: usize, c: &Polynomial) {
        for j in 0..self.cols {
            let v = self.get(r, j).mul(c);
            self.set(r, j, v);
        }
    }
}

/// `u * m * v = diag(diagonal)` with `u`, `v` unimodular.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub diagonal: Vec<Polynomial>,
    pub u: PolyMatrix,
    pub v: PolyMatrix,
}

impl SmithForm {
    /// Nonconstant diagonal entries: the invariant factors when the input is
    /// a characteristic matrix.
    pub fn invariant_factors(&self) -> Vec<Polynomial> {
        self.diagonal.iter().filter(|p| !p.is_constant()).cloned().collect()
    }
}

/// Smith normal form over `F[x]` by elementary row and column operations.
/// Diagonal entries are monic (or zero) and each divides the next.
pub fn smith_normal_form(m: &PolyMatrix) -> SmithForm {
    let (diagonal, transforms) = reduce(m, true);
    let (u, v) = transforms.expect("tracked");
    SmithForm { diagonal, u, v }
}

/// The Smith diagonal alone, skipping the transforms.
pub fn smith_diagonal(m: &PolyMatrix) -> Vec<Polynomial> {
    reduce(m, false).0
}

fn reduce(m: &PolyMatrix, track: bool) -> (Vec<Polynomial>, Option<(PolyMatrix, PolyMatrix)>) {
    let f = m.field.clone();
    let mut a = m.clone();
    let mut t = track.then(|| (PolyMatrix::identity(&f, m.rows), PolyMatrix::identity(&f, m.cols)));
    let n = m.rows.min(m.cols);
    for k in 0..n {
        // bring a nonzero entry of least degree to (k, k)
        while let Some((pi, pj)) = (k..a.rows)
            .flat_map(|i| (k..a.cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !a.get(i, j).is_zero())
            .min_by_key(|&(i, j)| a.get(i, j).degree())
        {
            a.swap_rows(k, pi);
            a.swap_cols(k, pj);
            if let Some((u, v)) = &mut t {
                u.swap_rows(k, pi);
                v.swap_cols(k, pj);
            }

            let pivot = a.get(k, k).clone();
            let mut clean = true;
            for i in k + 1..a.rows {
                let (q, r) = a.get(i, k).divrem(&pivot).expect("nonzero pivot");
                if !q.is_zero() {
                    let nq = q.neg();
                    a.add_row(i, k, &nq);
                    if let Some((u, _)) = &mut t {
                        u.add_row(i, k, &nq);
                    }
                }
                clean &= r.is_zero();
            }
            for j in k + 1..a.cols {
                let (q, r) = a.get(k, j).divrem(&pivot).expect("nonzero pivot");
                if !q.is_zero() {
                    let nq = q.neg();
                    a.add_col(j, k, &nq);
                    if let Some((_, v)) = &mut t {
                        v.add_col(j, k, &nq);
                    }
                }
                clean &= r.is_zero();
            }
            if !clean {
                continue;
            }
            // divisibility of the remaining block by the pivot
            let bad = (k + 1..a.rows)
                .flat_map(|i| (k + 1..a.cols).map(move |j| (i, j)))
                .find(|&(i, j)| !pivot.divides(a.get(i, j)));
            match bad {
                Some((i, _)) => {
                    let one = Polynomial::one(&f);
                    a.add_row(k, i, &one);
                    if let Some((u, _)) = &mut t {
                        u.add_row(k, i, &one);
                    }
                }
                None => break,
            }
        }
        let d = a.get(k, k).clone();
        if !d.is_zero() && !d.is_monic() {
            let inv = Polynomial::constant(&f, f.inv(&d.lead()).expect("nonzero"));
            a.scale_row(k, &inv);
            if let Some((u, _)) = &mut t {
                u.scale_row(k, &inv);
            }
        }
    }
    ((0..n).map(|k| a.get(k, k).clone()).collect(), t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &Matrix) -> Vec<Polynomial> {
        let m = PolyMatrix::characteristic(a);
        let s = smith_normal_form(&m);
        let n = a.rows();
        let mut d = PolyMatrix::zeros(a.field(), n, n);
        for (k, p) in s.diagonal.iter().enumerate() {
            d.set(k, k, p.clone());
        }
        assert_eq!(s.u.mul(&m).mul(&s.v), d);
        for w in s.diagonal.windows(2) {
            assert!(w[0].divides(&w[1]));
        }
        s.diagonal
    }

    #[test]
    fn nilpotent_block() {
        let q = Field::rationals();
        let d = check(&Matrix::from_i64(&q, &[&[0, 1], &[0, 0]]));
        assert_eq!(d, vec![Polynomial::one(&q), Polynomial::from_i64(&q, &[0, 0, 1])]);
    }

    #[test]
    fn identity_repeats_factor() {
        let q = Field::rationals();
        let d = check(&Matrix::identity(&q, 2));
        let xm1 = Polynomial::from_i64(&q, &[-1, 1]);
        assert_eq!(d, vec![xm1.clone(), xm1]);
    }

    #[test]
    fn companion_single_factor() {
        let f2 = Field::prime(2).unwrap();
        let p = Polynomial::from_i64(&f2, &[1, 1, 1]);
        let d = check(&Matrix::companion(&p));
        assert_eq!(d, vec![Polynomial::one(&f2), p]);
    }

    #[test]
    fn unimodular_transforms_on_random_input() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for f in [Field::rationals(), Field::prime(3).unwrap()] {
            for _ in 0..20 {
                check(&Matrix::random(&f, 4, 4, &mut rng, 2));
            }
        }
    }
}
