//! Second nilpotent quotients G/γ₃G and their Schur multipliers.
//!
//! G/γ₃G is the central extension of H = G_ab by C = gr₂(G), classified by
//! χ₂: Λ²H → C, the dual of the inclusion of I² (the degree-two part of the
//! Orlik–Solomon ideal) into Λ²H^∨.  H₂(G/γ₃G; ℤ) is read off the E³ page of
//! the Lyndon–Hochschild–Serre spectral sequence of that extension.
//!
//! Wedge bases are in colex order: e₁₂, e₁₃, e₂₃, e₁₄, e₂₄, e₃₄, …

use crate::arr::lattice::IntersectionLattice;
use crate::cover::{IntegralHomology, MonodromyAction};
use crate::error::{MilnorError, Result};
use exact::intmat::combinations;
use exact::IntMatrix;
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde_json::{json, Value};
use std::collections::HashMap;

/// Basis of Λᵏℤⁿ as increasing index tuples in colex order.
pub fn wedge_basis(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut b = combinations(n, k);
    b.sort_by(|x, y| x.iter().rev().cmp(y.iter().rev()));
    b
}

fn wedge_index(n: usize, k: usize) -> HashMap<Vec<usize>, usize> {
    wedge_basis(n, k).into_iter().enumerate().map(|(i, s)| (s, i)).collect()
}

/// Sort an index sequence, returning the sign of the permutation, or None on a repeat.
fn sorted_with_sign(mut s: Vec<usize>) -> Option<(i64, Vec<usize>)> {
    let mut sign = 1;
    for i in 0..s.len() {
        for j in 0..s.len() - 1 - i {
            if s[j] == s[j + 1] {
                return None;
            }
            if s[j] > s[j + 1] {
                s.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    Some((sign, s))
}

/// A cocycle χ₂: Λ²H → C with H = ℤⁿ and C = ℤᶜ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle2 {
    pub n: usize,
    pub c: usize,
    /// c rows; row r lists the r-th coordinate of χ₂(e_i ∧ e_j) over the colex wedge basis.
    /// Equivalently, the rows are a basis of the image lattice in Λ²H^∨.
    pub matrix: Vec<Vec<i64>>,
}

impl Cocycle2 {
    pub fn new(n: usize, matrix: Vec<Vec<i64>>) -> Result<Self> {
        let w = n * n.saturating_sub(1) / 2;
        if matrix.iter().any(|r| r.len() != w) {
            return Err(MilnorError::InvalidInput(format!("cocycle rows must have length C({n},2) = {w}")));
        }
        Ok(Cocycle2 { n, c: matrix.len(), matrix })
    }

    fn int_matrix(&self) -> IntMatrix {
        IntMatrix::from_i64_rows(&self.matrix, self.n * self.n.saturating_sub(1) / 2)
    }

    /// χ₂ is onto C.
    pub fn is_surjective(&self) -> bool {
        let s = self.int_matrix().smith();
        s.rank == self.c && s.diagonal.iter().all(|d| d.is_one())
    }

    /// The cocycle g_C ∘ χ₂ ∘ Λ²g_H for g_H ∈ GL_n(ℤ) acting on H and g_C ∈ GL_c(ℤ) acting on C.
    pub fn change_basis(&self, g_h: &[Vec<i64>], g_c: &[Vec<i64>]) -> Cocycle2 {
        let basis = wedge_basis(self.n, 2);
        let index = wedge_index(self.n, 2);
        // Column p of Λ²g_H is g e_i ∧ g e_j for basis pair p = (i, j).
        let mut lam = vec![vec![0i64; basis.len()]; basis.len()];
        for (p, pair) in basis.iter().enumerate() {
            let (i, j) = (pair[0], pair[1]);
            for a in 0..self.n {
                for b in 0..self.n {
                    let coef = g_h[a][i] * g_h[b][j];
                    if coef == 0 {
                        continue;
                    }
                    if let Some((s, key)) = sorted_with_sign(vec![a, b]) {
                        lam[index[&key]][p] += s * coef;
                    }
                }
            }
        }
        let mut out = vec![vec![0i64; basis.len()]; self.c];
        for r in 0..self.c {
            for (s, row) in self.matrix.iter().enumerate() {
                if g_c[r][s] == 0 {
                    continue;
                }
                for p in 0..basis.len() {
                    let v: i64 = (0..basis.len()).map(|q| row[q] * lam[q][p]).sum();
                    out[r][p] += g_c[r][s] * v;
                }
            }
        }
        Cocycle2 { n: self.n, c: self.c, matrix: out }
    }

    pub fn to_json(&self) -> Value {
        let labels: Vec<String> =
            wedge_basis(self.n, 2).iter().map(|p| format!("{}{}", p[0] + 1, p[1] + 1)).collect();
        json!({"H": self.n, "C": self.c, "basis": labels, "matrix": self.matrix})
    }
}

/// Basis of I² in the projective exterior algebra on a_i = e_i − e_drop (i ≠ drop),
/// as rows over the colex basis of Λ²ℤ^{n−1}.  One row per pair {h_i, h_j} of a
/// rank-2 flat X other than its base hyperplane h₀ (drop when X ∋ drop, else min X):
/// ∂e_{h₀h_ih_j} = a_{h₀}a_{h_i} − a_{h₀}a_{h_j} + a_{h_i}a_{h_j} with a_drop = 0.
fn projective_i2(l: &IntersectionLattice, drop: usize) -> Vec<Vec<i64>> {
    let n = l.n;
    let idx = |h: usize| if h < drop { h } else { h - 1 };
    let index = wedge_index(n - 1, 2);
    let mut rows = Vec::new();
    let flats2 = if l.rank >= 2 { l.rank_k(2) } else { &[] };
    for x in flats2 {
        if x.multiplicity() < 3 {
            continue;
        }
        let h0 = if x.contains(drop) { drop } else { x.hyperplanes[0] };
        let rest: Vec<usize> = x.hyperplanes.iter().copied().filter(|&h| h != h0).collect();
        for i in 0..rest.len() {
            for j in i + 1..rest.len() {
                let mut row = vec![0i64; index.len()];
                let mut put = |a: usize, b: usize, c: i64| {
                    if a == drop || b == drop {
                        return;
                    }
                    if let Some((s, key)) = sorted_with_sign(vec![idx(a), idx(b)]) {
                        row[index[&key]] += s * c;
                    }
                };
                put(h0, rest[i], 1);
                put(h0, rest[j], -1);
                put(rest[i], rest[j], 1);
                rows.push(row);
            }
        }
    }
    rows
}

fn check_drop(l: &IntersectionLattice, drop: usize) -> Result<()> {
    if l.n < 2 || drop >= l.n {
        return Err(MilnorError::InvalidInput(format!("deconing index {drop} out of range for {} hyperplanes", l.n)));
    }
    Ok(())
}

/// χ₂ for π₁(U), with H¹(U) spanned by e_i − e_drop.
pub fn chi2_arrangement(l: &IntersectionLattice, drop: usize) -> Result<Cocycle2> {
    check_drop(l, drop)?;
    Cocycle2::new(l.n - 1, projective_i2(l, drop))
}

/// Basis of H₁(F_m; ℤ) = ker(x ↦ Σ m_H x_H) ⊂ ℤⁿ as rows: x_k − x_{k+1} when all
/// m_H = 1, otherwise the Hermite basis of the kernel.
fn fiber_h1_basis(m: &[u64]) -> Vec<Vec<i64>> {
    let n = m.len();
    if m.iter().all(|&x| x == 1) {
        return (0..n - 1)
            .map(|k| {
                let mut v = vec![0i64; n];
                v[k] = 1;
                v[k + 1] = -1;
                v
            })
            .collect();
    }
    let row = IntMatrix::from_i64_rows(&[m.iter().map(|&x| x as i64).collect()], n);
    row.kernel_basis().transpose().hermite_rows().to_i64_rows()
}

/// The map σ*: H¹(U) → H¹(F_m) in degree one: row i is σ*(e_i − e_drop) over the basis dual to [`fiber_h1_basis`].
pub fn sigma_star(n: usize, m: &[u64], drop: usize) -> Vec<Vec<i64>> {
    let alphas = fiber_h1_basis(m);
    (0..n)
        .filter(|&h| h != drop)
        .map(|h| alphas.iter().map(|alpha| alpha[h] - alpha[drop]).collect())
        .collect()
}

/// χ₂ for π₁(F_m) under trivial integral monodromy: the rows are σ*(I²) in Λ²H¹(F).
pub fn chi2_milnor(
    l: &IntersectionLattice,
    m: &[u64],
    drop: usize,
    certificate: &MonodromyAction,
) -> Result<Cocycle2> {
    check_drop(l, drop)?;
    if m.len() != l.n || m.contains(&0) {
        return Err(MilnorError::InvalidInput("one positive multiplicity per hyperplane is required".into()));
    }
    let n1 = l.n - 1;
    if !certificate.is_identity() || certificate.homology != IntegralHomology::free(n1) {
        return Err(MilnorError::MissingCertificate(format!(
            "trivial integral monodromy on H1(F) = Z^{n1} is required; found {} with a nontrivial or unknown action",
            certificate.homology
        )));
    }
    let s = sigma_star(l.n, m, drop);
    let basis = wedge_basis(n1, 2);
    let index = wedge_index(n1, 2);
    let mut rows = Vec::new();
    for row in projective_i2(l, drop) {
        let mut out = vec![0i64; basis.len()];
        for (p, pair) in basis.iter().enumerate() {
            if row[p] == 0 {
                continue;
            }
            let (si, sj) = (&s[pair[0]], &s[pair[1]]);
            for a in 0..n1 {
                for b in 0..n1 {
                    let coef = row[p] * si[a] * sj[b];
                    if coef == 0 {
                        continue;
                    }
                    if let Some((sg, key)) = sorted_with_sign(vec![a, b]) {
                        out[index[&key]] += sg * coef;
                    }
                }
            }
        }
        rows.push(out);
    }
    let c = Cocycle2::new(n1, rows)?;
    if IntMatrix::from_i64_rows(&c.matrix, basis.len()).rank() != c.c {
        return Err(MilnorError::Inapplicable("the pullback of I2 to the Milnor fiber is not injective".into()));
    }
    Ok(c)
}

/// The E³ entries in total degree two and the assembled Schur multiplier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralOutcome {
    /// Rank of E³₂,₀ = ker(χ₂).
    pub e20: usize,
    /// E³₁,₁ = coker(d²₃,₀: Λ³H → H ⊗ C).
    pub e11: IntegralHomology,
    /// Whether E³₀,₂ = coker(d²₂,₁: Λ²H ⊗ C → Λ²C) vanishes.
    pub e02_zero: bool,
    /// H₂(G/γ₃G; ℤ) = E³₂,₀ ⊕ E³₁,₁, present only when E³₀,₂ = 0.
    pub h2: Option<IntegralHomology>,
}

impl SpectralOutcome {
    pub fn to_json(&self) -> Value {
        json!({
            "E3_20": self.e20,
            "E3_11": self.e11.to_json(),
            "E3_02_zero": self.e02_zero,
            "H2": self.h2.as_ref().map(IntegralHomology::to_json),
        })
    }
}

fn cokernel(m: &IntMatrix, target_dim: usize) -> IntegralHomology {
    let s = m.smith();
    let torsion = s.torsion().iter().map(|d| d.to_u64().expect("invariant factor fits in u64")).collect();
    IntegralHomology { rank: target_dim - s.rank, torsion }
}

/// The E³ page of the extension classified by χ₂.
///
/// d²₃,₀ is the dual of the product H¹ ⊗ J² → Λ³H¹ (J² the row lattice of χ₂),
/// and d²₂,₁ sends (x∧y) ⊗ c to χ₂(x∧y) ∧ c.
pub fn h2_second_nilpotent(chi: &Cocycle2) -> Result<SpectralOutcome> {
    if !chi.is_surjective() {
        return Err(MilnorError::InvalidInput("chi2 must be surjective onto C".into()));
    }
    let (n, c) = (chi.n, chi.c);
    let w2 = wedge_basis(n, 2);
    let w3 = wedge_index(n, 3);
    let e20 = w2.len() - c;

    // Columns indexed by H¹ ⊗ J² (k, r), rows by Λ³H¹; the cokernel of the transpose
    // has the same invariant factors and rank defect as computed below.
    let mut mu = IntMatrix::zeros(w3.len(), n * c);
    for k in 0..n {
        for (r, row) in chi.matrix.iter().enumerate() {
            for (p, pair) in w2.iter().enumerate() {
                if row[p] == 0 {
                    continue;
                }
                if let Some((s, key)) = sorted_with_sign(vec![k, pair[0], pair[1]]) {
                    mu.add_to(w3[&key], k * c + r, &BigInt::from(s * row[p]));
                }
            }
        }
    }
    let e11 = cokernel(&mu.transpose(), n * c);

    let wc = wedge_index(c, 2);
    let mut d21 = IntMatrix::zeros(wc.len(), w2.len() * c);
    for p in 0..w2.len() {
        for s in 0..c {
            for (r, row) in chi.matrix.iter().enumerate() {
                if row[p] == 0 {
                    continue;
                }
                if let Some((sg, key)) = sorted_with_sign(vec![r, s]) {
                    d21.add_to(wc[&key], p * c + s, &BigInt::from(sg * row[p]));
                }
            }
        }
    }
    let e02 = cokernel(&d21, wc.len());
    let e02_zero = e02.rank == 0 && e02.torsion.is_empty();
    let h2 = e02_zero.then(|| IntegralHomology { rank: e20 + e11.rank, torsion: e11.torsion.clone() });
    Ok(SpectralOutcome { e20, e11, e02_zero, h2 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn colex_order() {
        let b = wedge_basis(4, 2);
        assert_eq!(b[..4], [vec![0, 1], vec![0, 2], vec![1, 2], vec![0, 3]]);
        assert_eq!(sorted_with_sign(vec![2, 0, 1]), Some((1, vec![0, 1, 2])));
        assert_eq!(sorted_with_sign(vec![1, 0]), Some((-1, vec![0, 1])));
        assert_eq!(sorted_with_sign(vec![1, 1]), None);
    }

    #[test]
    fn free_and_abelian_extremes() {
        // C = 0: G/γ₃ = ℤⁿ and H₂ = Λ²ℤⁿ.
        let z = Cocycle2::new(3, vec![]).unwrap();
        let o = h2_second_nilpotent(&z).unwrap();
        assert_eq!(o.h2, Some(IntegralHomology::free(3)));
        // Heisenberg group: H₂ = ℤ².
        let h = Cocycle2::new(2, vec![vec![1]]).unwrap();
        let o = h2_second_nilpotent(&h).unwrap();
        assert_eq!(o.h2, Some(IntegralHomology::free(2)));
        assert!(h2_second_nilpotent(&Cocycle2::new(2, vec![vec![2]]).unwrap()).is_err());
    }

    #[test]
    fn sigma_star_for_ones() {
        // Hyperplanes 0..3 with the last deconed.
        let s = sigma_star(4, &[1, 1, 1, 1], 3);
        assert_eq!(s, vec![vec![1, 0, 1], vec![-1, 1, 1], vec![0, -1, 2]]);
    }
}
