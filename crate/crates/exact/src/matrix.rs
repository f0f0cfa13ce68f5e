//! Dense matrices over an exact [`Field`] with Gaussian elimination.

use crate::field::Field;
use std::fmt;

/// Row-major dense matrix over a field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<F: Field> {
    rows: usize,
    cols: usize,
    zero: F,
    data: Vec<F>,
}

/// Result of reducing a matrix to reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    /// The reduced row echelon form (same shape as the input).
    pub rref: Matrix<F>,
    /// Pivot column of each nonzero row, in order.
    pub pivots: Vec<usize>,
}

impl<F: Field> Matrix<F> {
    /// The zero matrix; `proto` is any element of the target field.
    pub fn zeros(rows: usize, cols: usize, proto: &F) -> Self {
        let zero = proto.zero_like();
        Matrix { rows, cols, data: vec![zero.clone(); rows * cols], zero }
    }

    pub fn identity(n: usize, proto: &F) -> Self {
        let mut m = Self::zeros(n, n, proto);
        for i in 0..n {
            m.set(i, i, proto.one_like());
        }
        m
    }

    /// Build from row vectors, all of length `cols`.
    pub fn from_rows(rows: Vec<Vec<F>>, cols: usize, proto: &F) -> Self {
        let mut m = Self::zeros(rows.len(), cols, proto);
        for (i, r) in rows.into_iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged row");
            for (j, x) in r.into_iter().enumerate() {
                m.data[i * cols + j] = x;
            }
        }
        m
    }

    /// Build from integer entries mapped into the field of `proto`.
    pub fn from_i64_rows(rows: &[Vec<i64>], cols: usize, proto: &F) -> Self {
        let conv: Vec<Vec<F>> =
            rows.iter().map(|r| r.iter().map(|&x| proto.from_i64(x)).collect()).collect();
        Self::from_rows(conv, cols, proto)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn proto(&self) -> &F {
        &self.zero
    }
    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }
    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }
    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows, &self.zero);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Matrix product `self · rhs`.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, rhs.cols, &self.zero);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j).add(&a.mul(b));
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    /// Apply to a column vector.
    pub fn apply(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = self.zero.clone();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc = acc.add(&a.mul(x));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Reduced row echelon form by Gaussian elimination with field inverses.
    pub fn echelon(&self) -> Echelon<F> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j).mul(&inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let sub = f.mul(m.get(r, j));
                    if sub.is_zero() {
                        continue;
                    }
                    let v = m.get(i, j).sub(&sub);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { rref: m, pivots }
    }

    /// Rank via forward elimination (no back substitution).
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for i in r + 1..m.rows {
                let f = m.get(i, c).mul(&inv);
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let sub = f.mul(m.get(r, j));
                    if sub.is_zero() {
                        continue;
                    }
                    let v = m.get(i, j).sub(&sub);
                    m.set(i, j, v);
                }
            }
            r += 1;
        }
        r
    }

    /// Basis of the right kernel {v : self · v = 0}, as column vectors.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let e = self.echelon();
        let pivot_set: std::collections::HashSet<usize> = e.pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivot_set.contains(c)) {
            let mut v = vec![self.zero.clone(); self.cols];
            v[free] = self.zero.one_like();
            for (r, &pc) in e.pivots.iter().enumerate() {
                v[pc] = e.rref.get(r, free).neg();
            }
            basis.push(v);
        }
        basis
    }

    /// Solve `self · x = b` for one particular solution, if any.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Self::zeros(self.rows, self.cols + 1, &self.zero);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let e = aug.echelon();
        if e.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![self.zero.clone(); self.cols];
        for (r, &pc) in e.pivots.iter().enumerate() {
            x[pc] = e.rref.get(r, self.cols).clone();
        }
        Some(x)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

/// Rank of a list of vectors of common length `len`.
pub fn rank_of_vectors<F: Field>(vectors: &[Vec<F>], len: usize, proto: &F) -> usize {
    Matrix::from_rows(vectors.to_vec(), len, proto).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, Fp, Rational};
    use num_traits::Zero;

    fn q() -> Rational {
        Rational::zero()
    }

    #[test]
    fn rank_and_kernel_over_q() {
        let m = Matrix::from_i64_rows(&[vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]], 3, &q());
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        let img = m.apply(&k[0]);
        assert!(img.iter().all(Field::is_zero));
    }

    #[test]
    fn rank_depends_on_characteristic() {
        let rows = vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]];
        assert_eq!(Matrix::from_i64_rows(&rows, 3, &q()).rank(), 3);
        let f2 = Fp::checked_modulus(2).unwrap();
        assert_eq!(Matrix::from_i64_rows(&rows, 3, &f2).rank(), 2);
    }

    #[test]
    fn solve_linear_system() {
        let m = Matrix::from_i64_rows(&[vec![2, 1], vec![1, 3]], 2, &q());
        let x = m.solve(&[rat(3, 1), rat(4, 1)]).unwrap();
        assert_eq!(x, vec![rat(1, 1), rat(1, 1)]);
        let s = Matrix::from_i64_rows(&[vec![1, 1], vec![1, 1]], 2, &q());
        assert!(s.solve(&[rat(1, 1), rat(2, 1)]).is_none());
    }
}
