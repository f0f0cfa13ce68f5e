//! Mod-2 Betti numbers of double covers from the cohomology ring of the base.
//!
//! For a connected double cover Y → X classified by α ∈ H¹(X; 𝔽₂) with α² = 0,
//! b_q(Y; 𝔽₂) = b_q(X; 𝔽₂) + dim H^q(H*(X; 𝔽₂), δ_α) with δ_α(u) = α·u.
//! When H_*(X; ℤ) is torsion-free the same right-hand side bounds b_q(Y) over ℚ.

use crate::arr::Arrangement;
use crate::error::{MilnorError, Result};
use crate::os::{OsAlgebra, OsField};
use exact::{Field, Fp, Matrix};
use serde_json::{json, Value};

/// A graded-commutative 𝔽₂-algebra with an action of degree-one classes.
pub trait DegreeOneAction {
    /// Graded dimensions b_q(X; 𝔽₂).
    fn dims(&self) -> Vec<usize>;
    /// Number of coordinates of a degree-one class.
    fn class_len(&self) -> usize;
    /// Matrix of u ↦ α·u from degree q to q + 1.
    fn multiply(&self, q: usize, alpha: &[Fp]) -> Matrix<Fp>;
}

fn f2(x: i64) -> Fp {
    Fp::new(x, 2)
}

/// Cohomology of an r-torus (the exterior algebra on r generators); r = 1 is the circle.
#[derive(Clone, Debug)]
pub struct ExteriorModel {
    pub r: usize,
    basis: Vec<Vec<Vec<usize>>>,
}

impl ExteriorModel {
    pub fn new(r: usize) -> Self {
        let basis = (0..=r).map(|q| exact::intmat::combinations(r, q)).collect();
        ExteriorModel { r, basis }
    }

    pub fn circle() -> Self {
        Self::new(1)
    }
}

impl DegreeOneAction for ExteriorModel {
    fn dims(&self) -> Vec<usize> {
        self.basis.iter().map(Vec::len).collect()
    }

    fn class_len(&self) -> usize {
        self.r
    }

    fn multiply(&self, q: usize, alpha: &[Fp]) -> Matrix<Fp> {
        let zero = f2(0);
        let cols = self.basis[q].len();
        let rows = self.basis.get(q + 1).map_or(0, Vec::len);
        let mut m = Matrix::zeros(rows, cols, &zero);
        for (j, s) in self.basis[q].iter().enumerate() {
            for (h, a) in alpha.iter().enumerate() {
                if a.is_zero() || s.contains(&h) {
                    continue;
                }
                let mut t = s.clone();
                t.push(h);
                t.sort_unstable();
                let i = self.basis[q + 1].iter().position(|b| *b == t).expect("basis monomial");
                let cur = m.get(i, j).add(a);
                m.set(i, j, cur);
            }
        }
        m
    }
}

/// The Orlik–Solomon algebra over 𝔽₂, either of M or of its subalgebra ker ∂ modelling U.
#[derive(Clone, Debug)]
pub struct OsModel {
    alg: OsAlgebra,
    /// Restrict to A(U) = ker ∂; classes must then have even coordinate sum.
    pub projective: bool,
}

impl OsModel {
    pub fn new(a: &Arrangement, projective: bool) -> Result<Self> {
        Ok(OsModel { alg: OsAlgebra::build(a, OsField::Fp(2))?, projective })
    }
}

impl OsModel {
    fn betti_at(&self, alpha: &[Fp]) -> Result<Vec<usize>> {
        let zero = f2(0);
        if self.projective {
            self.alg.aomoto_betti_u(alpha, &zero)
        } else {
            self.alg.aomoto_betti(alpha, &zero)
        }
    }
}

impl DegreeOneAction for OsModel {
    fn dims(&self) -> Vec<usize> {
        if self.projective {
            self.alg.dims_u()
        } else {
            self.alg.dims()
        }
    }

    fn class_len(&self) -> usize {
        self.alg.n
    }

    fn multiply(&self, q: usize, alpha: &[Fp]) -> Matrix<Fp> {
        self.alg.delta(q, alpha, &f2(0))
    }
}

/// Betti numbers of the double cover and of the Aomoto complex at α.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleCoverBetti {
    pub base: Vec<usize>,
    pub aomoto: Vec<usize>,
    /// b_q(Y; 𝔽₂) = base + aomoto.
    pub cover_f2: Vec<usize>,
    /// Upper bound for b_q(Y; ℚ), valid when H_*(X; ℤ) is torsion-free.
    pub rational_upper_bound: Vec<usize>,
}

impl DoubleCoverBetti {
    pub fn to_json(&self) -> Value {
        json!({
            "base_f2": self.base,
            "aomoto_f2": self.aomoto,
            "cover_f2": self.cover_f2,
            "rational_upper_bound": self.rational_upper_bound,
        })
    }
}

fn betti_generic<R: DegreeOneAction>(ring: &R, alpha: &[Fp]) -> Vec<usize> {
    let dims = ring.dims();
    let ranks: Vec<usize> = (0..dims.len()).map(|q| ring.multiply(q, alpha).rank()).collect();
    (0..dims.len()).map(|q| dims[q] - ranks[q] - if q == 0 { 0 } else { ranks[q - 1] }).collect()
}

fn check_alpha<R: DegreeOneAction>(ring: &R, alpha: &[i64]) -> Result<Vec<Fp>> {
    if alpha.len() != ring.class_len() {
        return Err(MilnorError::InvalidInput(format!("class has {} entries, expected {}", alpha.len(), ring.class_len())));
    }
    let a: Vec<Fp> = alpha.iter().map(|&x| f2(x)).collect();
    if a.iter().all(Field::is_zero) {
        return Err(MilnorError::InvalidInput("the class must be nonzero mod 2".into()));
    }
    let dims = ring.dims();
    for q in 0..dims.len().saturating_sub(2) {
        if !ring.multiply(q + 1, &a).mul(&ring.multiply(q, &a)).is_zero() {
            return Err(MilnorError::Inapplicable(
                "α² ≠ 0: the double cover does not lift to a connected Z_4-cover".into(),
            ));
        }
    }
    Ok(a)
}

fn assemble(base: Vec<usize>, aomoto: Vec<usize>) -> DoubleCoverBetti {
    let cover_f2: Vec<usize> = base.iter().zip(&aomoto).map(|(a, b)| a + b).collect();
    DoubleCoverBetti { base, aomoto, rational_upper_bound: cover_f2.clone(), cover_f2 }
}

/// b_q(Y; 𝔽₂) for the double cover classified by α (given by integer lifts of its coordinates).
pub fn double_cover_f2_betti<R: DegreeOneAction>(ring: &R, alpha: &[i64]) -> Result<DoubleCoverBetti> {
    let a = check_alpha(ring, alpha)?;
    Ok(assemble(ring.dims(), betti_generic(ring, &a)))
}

/// Double-cover Betti numbers for an OS model; the projective model needs Σ α_H ≡ 0 (mod 2).
pub fn double_cover_os(model: &OsModel, alpha: &[i64]) -> Result<DoubleCoverBetti> {
    let a = check_alpha(model, alpha)?;
    let aomoto = model.betti_at(&a)?;
    let mut base = model.dims();
    base.resize(aomoto.len(), 0);
    Ok(assemble(base, aomoto))
}
