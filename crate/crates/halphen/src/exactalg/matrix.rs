//! Dense exact matrices; elimination is fraction-free (Bareiss).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::poly::rational_content;
use super::scalar::{common_field, Rational, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| Scalar::from(v)).collect()).collect())
    }

    pub fn column(v: Vec<Scalar>) -> Self {
        let n = v.len();
        Matrix { rows: n, cols: 1, data: v }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn field(&self) -> i64 {
        common_field(&self.data).expect("matrix entries share one field")
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Matrix::identity(self.rows)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Entrywise conjugation followed by transposition.
    pub fn adjoint(&self) -> Self {
        let mut t = self.transpose();
        for v in t.data.iter_mut() {
            *v = v.conj();
        }
        t
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|v| v * s).collect() }
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        let mut m = Matrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, self.get(r0 + i, c0 + j).clone());
            }
        }
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j).clone());
            }
        }
    }

    pub fn hstack(blocks: &[Matrix]) -> Self {
        let rows = blocks.first().map_or(0, |b| b.rows);
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Matrix::zeros(rows, cols);
        let mut c = 0;
        for b in blocks {
            assert_eq!(b.rows, rows);
            m.set_block(0, c, b);
            c += b.cols;
        }
        m
    }

    pub fn vstack(blocks: &[Matrix]) -> Self {
        let cols = blocks.first().map_or(0, |b| b.cols);
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut m = Matrix::zeros(rows, cols);
        let mut r = 0;
        for b in blocks {
            assert_eq!(b.cols, cols);
            m.set_block(r, 0, b);
            r += b.rows;
        }
        m
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Matrix::identity(self.rows);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Bareiss forward elimination; returns the echelon form and pivot columns.
    fn echelon(&self) -> (Matrix, Vec<usize>, bool) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut prev = Scalar::one();
        let mut swaps = false;
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else { continue };
            if p != r {
                for j in 0..a.cols {
                    a.data.swap(p * a.cols + j, r * a.cols + j);
                }
                swaps = !swaps;
            }
            let piv = a.get(r, c).clone();
            for i in r + 1..a.rows {
                let f = a.get(i, c).clone();
                for j in c + 1..a.cols {
                    let v = &(&(&piv * a.get(i, j)) - &(&f * a.get(r, j))) / &prev;
                    a.set(i, j, v);
                }
                a.set(i, c, Scalar::zero());
            }
            prev = piv;
            pivots.push(c);
            r += 1;
        }
        (a, pivots, swaps)
    }

    pub fn rank(&self) -> usize {
        self.echelon().1.len()
    }

    pub fn det(&self) -> Scalar {
        assert!(self.is_square(), "determinant of a non-square matrix");
        if self.rows == 0 {
            return Scalar::one();
        }
        let (e, pivots, swaps) = self.echelon();
        if pivots.len() < self.rows {
            return Scalar::zero();
        }
        let d = e.get(self.rows - 1, self.cols - 1).clone();
        if swaps {
            -d
        } else {
            d
        }
    }

    /// Basis of the right kernel.  Rational inputs are scaled to integer rows first and
    /// the returned vectors are integer-primitive.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let a = self.integer_rows();
        let (e, pivots, _) = a.echelon();
        let free: Vec<usize> = (0..a.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::new();
        for &f in &free {
            let mut v = vec![Scalar::zero(); a.cols];
            v[f] = Scalar::one();
            for (k, &pc) in pivots.iter().enumerate().rev() {
                let mut s = Scalar::zero();
                for (j, vj) in v.iter().enumerate().skip(pc + 1) {
                    if !vj.is_zero() {
                        s += &(e.get(k, j) * vj);
                    }
                }
                v[pc] = -(s / e.get(k, pc));
            }
            basis.push(primitive_vector(v));
        }
        basis
    }

    /// Rows scaled by the lcm of their denominators (rational matrices only).
    fn integer_rows(&self) -> Matrix {
        if !self.data.iter().all(Scalar::is_rational) {
            return self.clone();
        }
        let mut m = self.clone();
        for i in 0..m.rows {
            let l = m.row(i).iter().fold(BigInt::one(), |acc, s| acc.lcm(s.re_part().denom()));
            let ls = Scalar::from(l);
            for j in 0..m.cols {
                let v = m.get(i, j) * &ls;
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        let mut a = Matrix::hstack(&[self.clone(), Matrix::identity(n)]);
        for c in 0..n {
            let p = (c..n).find(|&i| !a.get(i, c).is_zero())?;
            if p != c {
                for j in 0..2 * n {
                    a.data.swap(p * 2 * n + j, c * 2 * n + j);
                }
            }
            let inv = a.get(c, c).inv();
            for j in 0..2 * n {
                let v = a.get(c, j) * &inv;
                a.set(c, j, v);
            }
            for i in 0..n {
                if i == c || a.get(i, c).is_zero() {
                    continue;
                }
                let f = a.get(i, c).clone();
                for j in 0..2 * n {
                    let v = a.get(i, j) - &(&f * a.get(c, j));
                    a.set(i, j, v);
                }
            }
        }
        Some(a.submatrix(0, n, n, n))
    }

    /// Extends independent columns `w` to a basis of the ambient space by standard vectors.
    pub fn complete_basis(w: &Matrix) -> Matrix {
        let n = w.rows;
        let mut basis = w.clone();
        let mut rank = basis.rank();
        for i in 0..n {
            if rank == n {
                break;
            }
            let mut e = vec![Scalar::zero(); n];
            e[i] = Scalar::one();
            let cand = Matrix::hstack(&[basis.clone(), Matrix::column(e)]);
            let r = cand.rank();
            if r > rank {
                basis = cand;
                rank = r;
            }
        }
        basis
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }
}

/// Scales a nonzero rational vector to coprime integers (first nonzero entry positive);
/// non-rational vectors are scaled so the first nonzero entry is 1.
fn primitive_vector(v: Vec<Scalar>) -> Vec<Scalar> {
    let Some(first) = v.iter().find(|s| !s.is_zero()).cloned() else { return v };
    if v.iter().all(Scalar::is_rational) {
        let c = rational_content(v.iter().map(|s| s.re_part()));
        let c = if first.re_part() < &Rational::from_integer(0.into()) { -c } else { c };
        let ci = Scalar::from_rational(c).inv();
        return v.iter().map(|s| s * &ci).collect();
    }
    let fi = first.inv();
    v.iter().map(|s| s * &fi).collect()
}

impl<'a> Mul<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn mul(self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "matrix shape mismatch");
        let mut m = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let idx = i * o.cols + j;
                    m.data[idx] += &(a * o.get(k, j));
                }
            }
        }
        m
    }
}

impl<'a> Add<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn add(self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "matrix shape mismatch");
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect() }
    }
}

impl<'a> Sub<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn sub(self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "matrix shape mismatch");
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.scale(&Scalar::from(-1))
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| format!("[{}]", self.row(i).iter().map(|s| s.to_string()).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}
