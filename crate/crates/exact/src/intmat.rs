//! Integer matrices: Smith normal form with unimodular transforms, Hermite
//! normal form, saturated kernels and determinant divisors.
//!
//! The Smith form uses a minimal-absolute-value pivot with rounded
//! quotients, which keeps intermediate entries small on the sparse
//! boundary matrices produced by Fox calculus.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

/// Row-major dense integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_i64_rows(rows: &[Vec<i64>], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged row");
            for (j, &x) in r.iter().enumerate() {
                m.data[i * cols + j] = BigInt::from(x);
            }
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.into_iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged row");
            for (j, x) in r.into_iter().enumerate() {
                m.data[i * cols + j] = x;
            }
        }
        m
    }

    /// Matrix whose columns are the given vectors (all of length `len`).
    pub fn from_columns(cols: &[Vec<BigInt>], len: usize) -> Self {
        let mut m = Self::zeros(len, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), len);
            for (i, x) in c.iter().enumerate() {
                m.data[i * cols.len() + j] = x.clone();
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
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }
    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }
    pub fn add_to(&mut self, i: usize, j: usize, v: &BigInt) {
        self.data[i * self.cols + j] += v;
    }
    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }
    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }
    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_i64().expect("entry fits i64")).collect())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = BigInt::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Submatrix of the given rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }

    /// Vertical concatenation.
    pub fn stack(&self, below: &Self) -> Self {
        assert_eq!(self.cols, below.cols);
        let mut data = self.data.clone();
        data.extend(below.data.iter().cloned());
        IntMatrix { rows: self.rows + below.rows, cols: self.cols, data }
    }

    /// Apply a row/column permutation: result[i][j] = self[rp[i]][cp[j]].
    pub fn permuted(&self, rp: &[usize], cp: &[usize]) -> Self {
        self.select(rp, cp)
    }

    /// Rank over ℚ by fraction-free Bareiss elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let piv = m.get(r, c).clone();
            for i in r + 1..m.rows {
                let a = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = (m.get(i, j) * &piv - &a * m.get(r, j)) / &prev;
                    m.set(i, j, v);
                }
            }
            prev = piv;
            r += 1;
        }
        r
    }

    /// Smith normal form without transforms.
    pub fn smith(&self) -> Smith {
        SnfRun::new(self.clone(), false).run()
    }

    /// Smith normal form D = U·A·V with U, V unimodular and their inverses.
    pub fn smith_with_transforms(&self) -> Smith {
        SnfRun::new(self.clone(), true).run()
    }

    /// Invariant factors d₁ | d₂ | … of the nonzero part of the Smith form.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.smith().diagonal
    }

    /// A saturated basis (as columns) of the integer kernel {x ∈ ℤⁿ : A·x = 0}.
    pub fn kernel_basis(&self) -> IntMatrix {
        let s = self.smith_with_transforms();
        let v = s.v.expect("transforms requested");
        let cols: Vec<usize> = (s.rank..self.cols).collect();
        let rows: Vec<usize> = (0..self.cols).collect();
        v.select(&rows, &cols)
    }

    /// Saturation of the column lattice: (ℚ-span of columns) ∩ ℤⁿ, as columns.
    pub fn saturate_columns(&self) -> IntMatrix {
        if self.cols == 0 || self.is_zero() {
            return IntMatrix::zeros(self.rows, 0);
        }
        // L^⊥ = integer kernel of Aᵀ; saturation = integer kernel of (L^⊥)ᵀ.
        let perp = self.transpose().kernel_basis();
        if perp.cols() == 0 {
            return IntMatrix::identity(self.rows);
        }
        perp.transpose().kernel_basis()
    }

    /// Row-style Hermite normal form of the row lattice: nonzero rows only,
    /// pivots strictly increasing, pivots positive, entries above pivots reduced.
    pub fn hermite_rows(&self) -> IntMatrix {
        let mut m = self.clone();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            loop {
                // Find the smallest nonzero entry in column c at or below row r.
                let mut best: Option<usize> = None;
                for i in r..m.rows {
                    if !m.get(i, c).is_zero()
                        && best.is_none_or(|b| m.get(i, c).abs() < m.get(b, c).abs())
                    {
                        best = Some(i);
                    }
                }
                let Some(b) = best else { break };
                m.swap_rows(r, b);
                let mut clean = true;
                for i in r + 1..m.rows {
                    if m.get(i, c).is_zero() {
                        continue;
                    }
                    let q = m.get(i, c).div_floor(m.get(r, c));
                    m.row_axpy(i, r, &(-q));
                    if !m.get(i, c).is_zero() {
                        clean = false;
                    }
                }
                if clean {
                    break;
                }
            }
            if m.get(r, c).is_zero() {
                continue;
            }
            if m.get(r, c).is_negative() {
                m.row_neg(r);
            }
            for i in 0..r {
                let q = m.get(i, c).div_floor(m.get(r, c));
                if !q.is_zero() {
                    m.row_axpy(i, r, &(-q));
                }
            }
            r += 1;
        }
        let rows: Vec<usize> = (0..r).collect();
        let cols: Vec<usize> = (0..m.cols).collect();
        m.select(&rows, &cols)
    }

    /// gcd of all k×k minors for k = 1..=min(rows, cols) (determinant divisors).
    /// Brute force: intended only as an oracle for small matrices.
    pub fn determinant_divisors(&self) -> Vec<BigInt> {
        let kmax = self.rows.min(self.cols);
        let mut out = Vec::with_capacity(kmax);
        for k in 1..=kmax {
            let mut g = BigInt::zero();
            for rs in combinations(self.rows, k) {
                for cs in combinations(self.cols, k) {
                    let d = self.select(&rs, &cs).determinant();
                    g = g.gcd(&d);
                }
            }
            out.push(g);
        }
        out
    }

    /// Determinant of a square matrix by fraction-free Bareiss elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if m.get(k, k).is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m.get(i, k).is_zero()) else {
                    return BigInt::zero();
                };
                m.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &prev;
                    m.set(i, j, v);
                }
            }
            prev = m.get(k, k).clone();
        }
        sign * m.get(n - 1, n - 1)
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
    /// row_i += q · row_j
    fn row_axpy(&mut self, i: usize, j: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let x = &self.data[j * self.cols + c];
            if !x.is_zero() {
                let t = x * q;
                self.data[i * self.cols + c] += t;
            }
        }
    }
    /// col_i += q · col_j
    fn col_axpy(&mut self, i: usize, j: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let x = &self.data[r * self.cols + j];
            if !x.is_zero() {
                let t = x * q;
                self.data[r * self.cols + i] += t;
            }
        }
    }
    fn row_neg(&mut self, i: usize) {
        for c in 0..self.cols {
            let v = -&self.data[i * self.cols + c];
            self.data[i * self.cols + c] = v;
        }
    }
    fn col_neg(&mut self, j: usize) {
        for r in 0..self.rows {
            let v = -&self.data[r * self.cols + j];
            self.data[r * self.cols + j] = v;
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let r: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", r.join(", "))?;
        }
        Ok(())
    }
}

/// Output of a Smith normal form computation.
#[derive(Clone, Debug)]
pub struct Smith {
    /// Number of nonzero invariant factors.
    pub rank: usize,
    /// The nonzero invariant factors, positive and divisibility-ordered.
    pub diagonal: Vec<BigInt>,
    /// U with U·A·V = D (present when transforms were requested).
    pub u: Option<IntMatrix>,
    pub u_inv: Option<IntMatrix>,
    pub v: Option<IntMatrix>,
    pub v_inv: Option<IntMatrix>,
}

impl Smith {
    /// Invariant factors greater than one (the torsion of the cokernel).
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diagonal.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

struct SnfRun {
    a: IntMatrix,
    track: bool,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

fn rounded_quotient(a: &BigInt, b: &BigInt) -> BigInt {
    // Nearest-integer quotient so that |a - q·b| <= |b|/2.
    let (q, r) = a.div_mod_floor(b);
    let two_r: BigInt = &r * 2;
    // The floor remainder has the sign of b, so stepping q up moves toward zero.
    if two_r.abs() > b.abs() {
        q + 1
    } else {
        q
    }
}

impl SnfRun {
    fn new(a: IntMatrix, track: bool) -> Self {
        let (m, n) = (a.rows, a.cols);
        let (u, u_inv, v, v_inv) = if track {
            (IntMatrix::identity(m), IntMatrix::identity(m), IntMatrix::identity(n), IntMatrix::identity(n))
        } else {
            (IntMatrix::zeros(0, 0), IntMatrix::zeros(0, 0), IntMatrix::zeros(0, 0), IntMatrix::zeros(0, 0))
        };
        SnfRun { a, track, u, u_inv, v, v_inv }
    }

    fn row_add(&mut self, i: usize, j: usize, q: &BigInt) {
        self.a.row_axpy(i, j, q);
        if self.track {
            self.u.row_axpy(i, j, q);
            self.u_inv.col_axpy(j, i, &(-q));
        }
    }
    fn col_add(&mut self, i: usize, j: usize, q: &BigInt) {
        self.a.col_axpy(i, j, q);
        if self.track {
            self.v.col_axpy(i, j, q);
            self.v_inv.row_axpy(j, i, &(-q));
        }
    }
    fn row_swap(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if self.track {
            self.u.swap_rows(i, j);
            self.u_inv.swap_cols(i, j);
        }
    }
    fn col_swap(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if self.track {
            self.v.swap_cols(i, j);
            self.v_inv.swap_rows(i, j);
        }
    }
    fn row_negate(&mut self, i: usize) {
        self.a.row_neg(i);
        if self.track {
            self.u.row_neg(i);
            self.u_inv.col_neg(i);
        }
    }

    fn run(mut self) -> Smith {
        let (m, n) = (self.a.rows, self.a.cols);
        let mut t = 0;
        while t < m.min(n) {
            // Global minimal nonzero entry of the trailing block.
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let x = self.a.get(i, j);
                    if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < self.a.get(bi, bj).abs()) {
                        best = Some((i, j));
                        if x.abs().is_one() {
                            break;
                        }
                    }
                }
                if best.is_some_and(|(bi, bj)| self.a.get(bi, bj).abs().is_one()) {
                    break;
                }
            }
            let Some((bi, bj)) = best else { break };
            self.row_swap(t, bi);
            self.col_swap(t, bj);
            loop {
                let mut dirty = false;
                for i in t + 1..m {
                    if self.a.get(i, t).is_zero() {
                        continue;
                    }
                    let q = rounded_quotient(self.a.get(i, t), self.a.get(t, t));
                    self.row_add(i, t, &(-q));
                    if !self.a.get(i, t).is_zero() {
                        dirty = true;
                    }
                }
                for j in t + 1..n {
                    if self.a.get(t, j).is_zero() {
                        continue;
                    }
                    let q = rounded_quotient(self.a.get(t, j), self.a.get(t, t));
                    self.col_add(j, t, &(-q));
                    if !self.a.get(t, j).is_zero() {
                        dirty = true;
                    }
                }
                if dirty {
                    // Move the smallest entry of the pivot row/column into place.
                    let mut bi = t;
                    let mut bj = t;
                    for i in t + 1..m {
                        let x = self.a.get(i, t);
                        if !x.is_zero() && x.abs() < self.a.get(bi, bj).abs() {
                            bi = i;
                            bj = t;
                        }
                    }
                    for j in t + 1..n {
                        let x = self.a.get(t, j);
                        if !x.is_zero() && x.abs() < self.a.get(bi, bj).abs() {
                            bi = t;
                            bj = j;
                        }
                    }
                    self.row_swap(t, bi);
                    self.col_swap(t, bj);
                    continue;
                }
                // Row and column cleared; enforce divisibility of the trailing block.
                let p = self.a.get(t, t).clone();
                let mut bad = None;
                if !p.abs().is_one() {
                    'outer: for i in t + 1..m {
                        for j in t + 1..n {
                            if !self.a.get(i, j).is_multiple_of(&p) {
                                bad = Some(i);
                                break 'outer;
                            }
                        }
                    }
                }
                match bad {
                    Some(i) => self.row_add(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a.get(t, t).is_negative() {
                self.row_negate(t);
            }
            t += 1;
        }
        let diagonal: Vec<BigInt> = (0..t).map(|i| self.a.get(i, i).clone()).collect();
        let rank = diagonal.len();
        debug_assert!(diagonal.windows(2).all(|w| w[1].is_multiple_of(&w[0])));
        let (u, u_inv, v, v_inv) = if self.track {
            (Some(self.u), Some(self.u_inv), Some(self.v), Some(self.v_inv))
        } else {
            (None, None, None, None)
        };
        Smith { rank, diagonal, u, u_inv, v, v_inv }
    }
}

/// All k-subsets of 0..n in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Invariant factors derived from determinant divisors: s_k = d_k / d_{k-1}.
pub fn invariants_from_determinant_divisors(dd: &[BigInt]) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut prev = BigInt::one();
    for d in dd {
        if d.is_zero() {
            break;
        }
        out.push(d / &prev);
        prev = d.clone();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn smith_of_small_matrix() {
        let a = IntMatrix::from_i64_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]], 3);
        assert_eq!(a.invariant_factors(), big(&[2, 6, 12]));
    }

    #[test]
    fn transforms_reproduce_diagonal() {
        let a = IntMatrix::from_i64_rows(&[vec![3, 1, 4, 1], vec![5, 9, 2, 6], vec![5, 3, 5, 8]], 4);
        let s = a.smith_with_transforms();
        let d = s.u.as_ref().unwrap().mul(&a).mul(s.v.as_ref().unwrap());
        for i in 0..3 {
            for j in 0..4 {
                let expect = if i == j && i < s.rank { s.diagonal[i].clone() } else { BigInt::zero() };
                assert_eq!(d.get(i, j), &expect);
            }
        }
        assert_eq!(s.u.unwrap().mul(s.u_inv.as_ref().unwrap()), IntMatrix::identity(3));
        assert_eq!(s.v.unwrap().mul(s.v_inv.as_ref().unwrap()), IntMatrix::identity(4));
    }

    #[test]
    fn kernel_is_saturated() {
        let a = IntMatrix::from_i64_rows(&[vec![2, 4, 6]], 3);
        let k = a.kernel_basis();
        assert_eq!(k.cols(), 2);
        assert!(a.mul(&k).is_zero());
        // Saturated: the kernel lattice has trivial Smith invariants.
        assert!(k.invariant_factors().iter().all(|d| d.is_one()));
    }

    #[test]
    fn saturation_of_column_lattice() {
        let b = IntMatrix::from_i64_rows(&[vec![2], vec![4], vec![6]], 1);
        let s = b.saturate_columns();
        assert_eq!(s.cols(), 1);
        let col = s.column(0);
        let g = col.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        assert!(g.is_one());
    }

    #[test]
    fn hermite_rows_normalizes() {
        let a = IntMatrix::from_i64_rows(&[vec![2, 4], vec![3, 5], vec![1, 1]], 2);
        let h = a.hermite_rows();
        assert_eq!(h.to_i64_rows(), vec![vec![1, 1], vec![0, 2]]);
    }

    #[test]
    fn determinant_divisors_agree() {
        let a = IntMatrix::from_i64_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]], 3);
        let dd = a.determinant_divisors();
        assert_eq!(invariants_from_determinant_divisors(&dd), a.invariant_factors());
    }

    #[test]
    fn bareiss_rank_matches_smith_rank() {
        let a = IntMatrix::from_i64_rows(
            &[vec![0, 2, 4, 1], vec![0, 1, 2, 0], vec![0, 3, 6, 1], vec![0, 0, 0, 5]],
            4,
        );
        assert_eq!(a.rank(), a.smith().rank);
        assert_eq!(a.rank(), 2);
    }
}
