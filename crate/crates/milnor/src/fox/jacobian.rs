//! Fox free differential calculus and abelianized Jacobians.

use super::{GroupPresentation, Word};
use crate::error::{MilnorError, Result};
use exact::{Cyclo, Field, Matrix};
use std::collections::BTreeMap;

/// Element of the integral group ring ℤ[F] of a free group.
pub type FreeGroupRing = BTreeMap<Word, i64>;

fn add_term(acc: &mut FreeGroupRing, w: Word, c: i64) {
    let e = acc.entry(w.clone()).or_insert(0);
    *e += c;
    if *e == 0 {
        acc.remove(&w);
    }
}

/// The Fox derivative ∂w/∂x_j in ℤ[F] (j 0-based).
///
/// For w = y₁⋯y_m, each y_i = x_j contributes y₁⋯y_{i−1}, each y_i = x_j⁻¹ contributes −y₁⋯y_i.
pub fn fox_derivative(w: &Word, j: usize) -> FreeGroupRing {
    let mut out = FreeGroupRing::new();
    let letters = w.letters();
    let target = j as i32 + 1;
    for (i, &l) in letters.iter().enumerate() {
        if l == target {
            add_term(&mut out, Word::new(&letters[..i]), 1);
        } else if l == -target {
            add_term(&mut out, Word::new(&letters[..=i]), -1);
        }
    }
    out
}

/// Product in ℤ[F].
pub fn ring_mul(a: &FreeGroupRing, b: &FreeGroupRing) -> FreeGroupRing {
    let mut out = FreeGroupRing::new();
    for (wa, ca) in a {
        for (wb, cb) in b {
            add_term(&mut out, wa.mul(wb), ca * cb);
        }
    }
    out
}

/// Check w − 1 = Σ_j (∂w/∂x_j)(x_j − 1) in ℤ[F].
pub fn fundamental_identity_holds(w: &Word, gens: usize) -> bool {
    let mut lhs = FreeGroupRing::new();
    add_term(&mut lhs, w.clone(), 1);
    add_term(&mut lhs, Word::identity(), -1);
    let mut rhs = FreeGroupRing::new();
    for j in 0..gens {
        let mut xm1 = FreeGroupRing::new();
        add_term(&mut xm1, Word::gen(j), 1);
        add_term(&mut xm1, Word::identity(), -1);
        for (t, c) in ring_mul(&fox_derivative(w, j), &xm1) {
            add_term(&mut rhs, t, c);
        }
    }
    lhs == rhs
}

/// Laurent polynomial in the abelianized generators: exponent vector ↦ coefficient.
pub type AbelianPoly = BTreeMap<Vec<i64>, i64>;

/// Jacobian of a presentation after abelianization: entry (r, j) = ab(∂r/∂x_j).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoxJacobian {
    pub gens: usize,
    pub entries: Vec<Vec<AbelianPoly>>,
}

impl FoxJacobian {
    pub fn new(p: &GroupPresentation) -> Self {
        let entries = p
            .relators
            .iter()
            .map(|r| {
                (0..p.gens)
                    .map(|j| {
                        let mut poly = AbelianPoly::new();
                        for (w, c) in fox_derivative(r, j) {
                            let e = poly.entry(w.abelianize(p.gens)).or_insert(0);
                            *e += c;
                        }
                        poly.retain(|_, c| *c != 0);
                        poly
                    })
                    .collect()
            })
            .collect();
        FoxJacobian { gens: p.gens, entries }
    }

    pub fn relators(&self) -> usize {
        self.entries.len()
    }

    /// Image in ℤ[ℤ_N] under x_j ↦ t^{χ_j}: entry (r, j) is a coefficient vector of length N.
    pub fn specialize_cyclic(&self, chi: &[i64], n: usize) -> Result<Vec<Vec<Vec<i64>>>> {
        self.check_chi(chi)?;
        if n == 0 {
            return Err(MilnorError::InvalidInput("cyclic order must be positive".into()));
        }
        Ok(self
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|poly| {
                        let mut v = vec![0i64; n];
                        for (e, c) in poly {
                            let s: i64 = e.iter().zip(chi).map(|(a, b)| a * b).sum();
                            v[s.rem_euclid(n as i64) as usize] += c;
                        }
                        v
                    })
                    .collect()
            })
            .collect())
    }

    /// Image over a field under x_j ↦ images[j] (all nonzero).
    pub fn specialize<F: Field>(&self, images: &[F]) -> Result<Matrix<F>> {
        if images.len() != self.gens {
            return Err(MilnorError::InvalidInput("one image per generator is required".into()));
        }
        let proto = images
            .first()
            .cloned()
            .ok_or_else(|| MilnorError::InvalidInput("presentation has no generators".into()))?;
        let inverses: Vec<F> = images
            .iter()
            .map(|x| x.inv().ok_or_else(|| MilnorError::InvalidInput("generator images must be units".into())))
            .collect::<Result<_>>()?;
        let monomial = |e: &[i64]| -> F {
            let mut acc = proto.one_like();
            for (j, &k) in e.iter().enumerate() {
                let b = if k >= 0 { &images[j] } else { &inverses[j] };
                for _ in 0..k.unsigned_abs() {
                    acc = acc.mul(b);
                }
            }
            acc
        };
        let rows: Vec<Vec<F>> = self
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|poly| {
                        poly.iter().fold(proto.zero_like(), |acc, (e, c)| acc.add(&monomial(e).mul(&proto.from_i64(*c))))
                    })
                    .collect()
            })
            .collect();
        Ok(Matrix::from_rows(rows, self.gens, &proto))
    }

    /// Image over ℚ(ζ_k) under x_j ↦ ζ_k^{χ_j}.
    pub fn specialize_cyclotomic(&self, chi: &[i64], k: u64) -> Result<Matrix<Cyclo>> {
        self.check_chi(chi)?;
        let f = Cyclo::field(k);
        let images: Vec<Cyclo> = chi.iter().map(|&c| f.zeta_pow(c)).collect();
        self.specialize(&images)
    }

    fn check_chi(&self, chi: &[i64]) -> Result<()> {
        if chi.len() != self.gens {
            return Err(MilnorError::InvalidInput(format!(
                "character has {} values for {} generators",
                chi.len(),
                self.gens
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivatives_of_basic_words() {
        let x = Word::gen(0);
        assert_eq!(fox_derivative(&x, 0), FreeGroupRing::from([(Word::identity(), 1)]));
        let xinv = x.inverse();
        assert_eq!(fox_derivative(&xinv, 0), FreeGroupRing::from([(xinv.clone(), -1)]));
        for w in [[1, 2, -1, -2].as_slice(), &[1, 1, 2, -1, 3, -2, -2], &[-3, 2, 1, 3, -1, -2]] {
            assert!(fundamental_identity_holds(&Word::new(w), 3));
        }
    }

    #[test]
    fn commutator_jacobian() {
        let p = GroupPresentation::new(2, vec![Word::new(&[1, 2, -1, -2])], true).unwrap();
        let j = FoxJacobian::new(&p);
        // ∂[x,y]/∂x = 1 − y after abelianization.
        assert_eq!(j.entries[0][0], AbelianPoly::from([(vec![0, 0], 1), (vec![0, 1], -1)]));
        let c = j.specialize_cyclic(&[1, 1], 3).unwrap();
        assert_eq!(c[0][0], vec![1, -1, 0]);
        let m = j.specialize_cyclotomic(&[1, 2], 3).unwrap();
        assert_eq!(m.rank(), 1);
        let m = j.specialize_cyclotomic(&[0, 0], 3).unwrap();
        assert_eq!(m.rank(), 0);
    }
}
