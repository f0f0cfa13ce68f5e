//! Homology of finite cyclic covers and of Milnor fibers.
//!
//! The N-fold cyclic cover of a presentation 2-complex has cellular chain
//! complex ℤ[ℤ_N]^r → ℤ[ℤ_N]^g → ℤ[ℤ_N], with boundaries given by the Fox
//! Jacobian and by x_j − 1, specialized along χ and expanded integrally by
//! the regular representation (N × N circulant blocks).

pub mod double;

use crate::arr::lattice::IntersectionLattice;
use crate::arr::Arrangement;
use crate::error::{MilnorError, Result};
use crate::fox::catalog::presentation_for_arrangement;
use crate::fox::jacobian::FoxJacobian;
use crate::fox::GroupPresentation;
use crate::torus::{assemble_cv1, character_depth, Character, CvOptions};
use exact::arith::{binomial_u64, divisors, gcd, totient};
use exact::{Cyclo, Field, IntMatrix, Matrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;
use std::fmt;

/// A finitely generated abelian group ℤ^rank ⊕ ⊕ ℤ/d_i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralHomology {
    pub rank: usize,
    /// Invariant factors ≥ 2, each dividing the next.
    pub torsion: Vec<u64>,
}

impl IntegralHomology {
    pub fn free(rank: usize) -> Self {
        IntegralHomology { rank, torsion: vec![] }
    }

    pub fn to_json(&self) -> Value {
        json!({"rank": self.rank, "torsion": self.torsion})
    }
}

impl fmt::Display for IntegralHomology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.rank > 0 || self.torsion.is_empty() {
            parts.push(format!("Z^{}", self.rank));
        }
        for d in &self.torsion {
            parts.push(format!("Z_{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

fn to_u64(x: &BigInt) -> u64 {
    x.to_u64().expect("invariant factor fits in u64")
}

/// Cellular chain complex of the cyclic cover defined by χ: generators → ℤ_N.
#[derive(Clone, Debug)]
pub struct CoverComplex {
    pub order: usize,
    pub gens: usize,
    pub relators: usize,
    /// ∂₁: C₁ = ℤ^{gN} → C₀ = ℤ^N.
    pub d1: IntMatrix,
    /// ∂₂: C₂ = ℤ^{rN} → C₁ = ℤ^{gN}.
    pub d2: IntMatrix,
}

fn check_surjective(chi: &[i64], n: usize) -> Result<()> {
    if n == 0 {
        return Err(MilnorError::InvalidInput("cover order must be positive".into()));
    }
    let g = chi.iter().fold(n as i64, |acc, &c| gcd(acc, c.rem_euclid(n as i64)));
    if g != 1 {
        return Err(MilnorError::InvalidInput(format!("character is not surjective onto Z_{n} (image has index {g})")));
    }
    Ok(())
}

/// Build the chain complex of the cover; cell (j, i) is the lift t^i·e_j.
pub fn cover_complex(p: &GroupPresentation, chi: &[i64], n: usize) -> Result<CoverComplex> {
    check_surjective(chi, n)?;
    let jac = FoxJacobian::new(p);
    let blocks = jac.specialize_cyclic(chi, n)?;
    let g = p.gens;
    let r = p.relators.len();
    let mut d1 = IntMatrix::zeros(n, g * n);
    for (j, &c) in chi.iter().enumerate() {
        let s = c.rem_euclid(n as i64) as usize;
        for i in 0..n {
            d1.add_to((i + s) % n, j * n + i, &BigInt::one());
            d1.add_to(i, j * n + i, &-BigInt::one());
        }
    }
    let mut d2 = IntMatrix::zeros(g * n, r * n);
    for (ri, row) in blocks.iter().enumerate() {
        for (j, poly) in row.iter().enumerate() {
            for (k, &a) in poly.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let a = BigInt::from(a);
                for i in 0..n {
                    d2.add_to(j * n + (i + k) % n, ri * n + i, &a);
                }
            }
        }
    }
    Ok(CoverComplex { order: n, gens: g, relators: r, d1, d2 })
}

impl CoverComplex {
    /// H₁ = ker ∂₁ / im ∂₂.  Since ker ∂₁ is a direct summand of C₁, the torsion
    /// of H₁ is the torsion of coker ∂₂.
    pub fn h1(&self) -> IntegralHomology {
        let r1 = self.d1.rank();
        let s2 = self.d2.smith();
        let rank = self.gens * self.order - r1 - s2.rank;
        IntegralHomology { rank, torsion: s2.torsion().iter().map(to_u64).collect() }
    }

    /// Deck transformation t on C₁: t^i·e_j ↦ t^{i+1}·e_j.
    fn shift(&self) -> IntMatrix {
        let n = self.order;
        let mut s = IntMatrix::zeros(self.gens * n, self.gens * n);
        for j in 0..self.gens {
            for i in 0..n {
                s.set(j * n + (i + 1) % n, j * n + i, BigInt::one());
            }
        }
        s
    }
}

/// H₁ of the N-fold cyclic cover of the presentation complex defined by χ.
pub fn h1_cyclic_cover(p: &GroupPresentation, chi: &[i64], n: usize) -> Result<IntegralHomology> {
    Ok(cover_complex(p, chi, n)?.h1())
}

/// The deck transformation acting on H₁ of a cyclic cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonodromyAction {
    pub homology: IntegralHomology,
    /// Induced map on H₁ / torsion in the Smith basis, when its entries fit in i64.
    pub free_matrix: Option<Vec<Vec<i64>>>,
    /// Induced map on the torsion subgroup ⊕ ℤ/d_i; row i is reduced mod d_i.
    pub torsion_matrix: Vec<Vec<i64>>,
    /// Multiplicative order of the action on the torsion subgroup.
    pub torsion_order: u64,
    /// Multiplicative order of the action on the free quotient.
    pub free_order: u64,
    /// Number of torsion elements fixed by the action (None when the subgroup is too large to enumerate).
    pub torsion_fixed: Option<u64>,
}

impl MonodromyAction {
    pub fn is_identity(&self) -> bool {
        self.free_order == 1 && self.torsion_order == 1
    }

    pub fn to_json(&self) -> Value {
        json!({
            "h1": self.homology.to_json(),
            "free_matrix": self.free_matrix,
            "free_order": self.free_order,
            "torsion_matrix": self.torsion_matrix,
            "torsion_order": self.torsion_order,
            "torsion_fixed": self.torsion_fixed,
            "identity": self.is_identity(),
        })
    }
}

fn apply_mod(m: &[Vec<i64>], x: &[i64], moduli: &[i64]) -> Vec<i64> {
    (0..m.len())
        .map(|i| {
            let s: i128 = m[i].iter().zip(x).map(|(&a, &b)| a as i128 * b as i128).sum();
            s.rem_euclid(moduli[i] as i128) as i64
        })
        .collect()
}

fn torsion_power_is_identity(m: &[Vec<i64>], moduli: &[i64], e: u64) -> bool {
    (0..m.len()).all(|j| {
        let mut x: Vec<i64> = (0..m.len()).map(|i| i64::from(i == j)).collect();
        let start = x.clone();
        for _ in 0..e {
            x = apply_mod(m, &x, moduli);
        }
        x == start
    })
}

fn int_power_is_identity(a: &IntMatrix, e: u64) -> bool {
    let mut p = IntMatrix::identity(a.rows());
    for _ in 0..e {
        p = p.mul(a);
    }
    p == IntMatrix::identity(a.rows())
}

/// The action of the deck generator on H₁ of the cover defined by χ.
pub fn monodromy_action_h1(p: &GroupPresentation, chi: &[i64], n: usize) -> Result<MonodromyAction> {
    let cx = cover_complex(p, chi, n)?;
    let gn = cx.gens * n;
    // Coordinates on ker ∂₁ from the Smith form of ∂₁: ker ∂₁ = V·(0 ⊕ ℤ^k).
    let s1 = cx.d1.smith_with_transforms();
    let r1 = s1.rank;
    let v = s1.v.expect("transforms requested");
    let v_inv = s1.v_inv.expect("transforms requested");
    let k = gn - r1;
    let all: Vec<usize> = (0..gn).collect();
    let ker_rows: Vec<usize> = (r1..gn).collect();
    let kernel = v.select(&all, &ker_rows);
    let rel = v_inv.mul(&cx.d2).select(&ker_rows, &(0..cx.d2.cols()).collect::<Vec<_>>());
    let t_k = v_inv.mul(&cx.shift()).mul(&kernel).select(&ker_rows, &(0..k).collect::<Vec<_>>());
    // H₁ = ℤ^k / col(R); with U·R·V = D the Smith coordinates are w = U·y.
    let s = rel.smith_with_transforms();
    let u = s.u.expect("transforms requested");
    let u_inv = s.u_inv.expect("transforms requested");
    let act = u.mul(&t_k).mul(&u_inv);
    let diag: Vec<i64> = s.diagonal.iter().map(|d| d.to_i64().expect("invariant factor fits")).collect();
    let tors: Vec<usize> = (0..s.rank).filter(|&i| diag[i] > 1).collect();
    let free: Vec<usize> = (s.rank..k).collect();
    let moduli: Vec<i64> = tors.iter().map(|&i| diag[i]).collect();
    let torsion_matrix: Vec<Vec<i64>> = tors
        .iter()
        .enumerate()
        .map(|(a, &i)| {
            let d = BigInt::from(moduli[a]);
            tors.iter().map(|&j| act.get(i, j).mod_floor(&d).to_i64().expect("reduced entry")).collect()
        })
        .collect();
    let free_block = act.select(&free, &free);
    let divs = divisors(n as u64);
    let torsion_order = divs
        .iter()
        .copied()
        .find(|&e| torsion_power_is_identity(&torsion_matrix, &moduli, e))
        .ok_or_else(|| MilnorError::InvalidInput("deck action does not have order dividing N".into()))?;
    let free_order = divs
        .iter()
        .copied()
        .find(|&e| int_power_is_identity(&free_block, e))
        .ok_or_else(|| MilnorError::InvalidInput("deck action does not have order dividing N".into()))?;
    let size: u128 = moduli.iter().map(|&d| d as u128).product();
    let torsion_fixed = if size <= 1 << 20 {
        let mut count = 0u64;
        let mut x = vec![0i64; moduli.len()];
        loop {
            if apply_mod(&torsion_matrix, &x, &moduli) == x {
                count += 1;
            }
            let mut i = 0;
            while i < x.len() {
                x[i] += 1;
                if x[i] < moduli[i] {
                    break;
                }
                x[i] = 0;
                i += 1;
            }
            if i == x.len() {
                break;
            }
        }
        Some(count)
    } else {
        None
    };
    let free_matrix: Option<Vec<Vec<i64>>> = (0..free.len())
        .map(|i| (0..free.len()).map(|j| free_block.get(i, j).to_i64()).collect())
        .collect();
    let homology = IntegralHomology { rank: free.len(), torsion: moduli.iter().map(|&d| d as u64).collect() };
    Ok(MonodromyAction { homology, free_matrix, torsion_matrix, torsion_order, free_order, torsion_fixed })
}

/// Exponents of ζ_k on the generators for a character given in hyperplane coordinates.
pub fn character_on_generators(p: &GroupPresentation, rho: &Character) -> Result<Vec<i64>> {
    let mer = p
        .meridians
        .as_ref()
        .ok_or_else(|| MilnorError::MissingCertificate("presentation has no meridian classes".into()))?;
    if mer.first().map_or(0, Vec::len) != rho.ambient() {
        return Err(MilnorError::InvalidInput("character and meridian classes have different lengths".into()));
    }
    Ok(mer.iter().map(|v| rho.pair(v)).collect())
}

/// depth₁(ρ) = dim H₁(U; ℂ_ρ) for the character x_j ↦ ζ_k^{values_j}, computed
/// exactly over ℚ(ζ_k) from the Fox-specialized boundary maps.
pub fn depth1_exact(p: &GroupPresentation, values: &[i64], k: u64) -> Result<usize> {
    if !p.models_u {
        return Err(MilnorError::Inapplicable("presentation is not marked as modelling U".into()));
    }
    if values.len() != p.gens {
        return Err(MilnorError::InvalidInput("one character value per generator is required".into()));
    }
    if k == 0 || values.iter().all(|&v| v.rem_euclid(k as i64) == 0) {
        return Err(MilnorError::InvalidInput("depth is defined for nontrivial characters; use b₁ for the trivial one".into()));
    }
    let f = Cyclo::field(k);
    let row: Vec<Cyclo> = values.iter().map(|&v| f.zeta_pow(v).sub(&f.one_like())).collect();
    let r1 = Matrix::from_rows(vec![row], p.gens, &f).rank();
    let r2 = if p.relators.is_empty() { 0 } else { FoxJacobian::new(p).specialize_cyclotomic(values, k)?.rank() };
    Ok(p.gens - r1 - r2)
}

/// Δ(t) = ∏_{k | N} Φ_k(t)^{e_k}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPolyFactorization {
    pub order: u64,
    pub exponents: BTreeMap<u64, usize>,
}

impl CharPolyFactorization {
    /// (t − 1)^a · (t^N − 1)^b.
    pub fn from_closed_form(order: u64, a: usize, b: usize) -> Self {
        let exponents = divisors(order).into_iter().map(|k| (k, if k == 1 { a + b } else { b })).collect();
        CharPolyFactorization { order, exponents }
    }

    pub fn exponent(&self, k: u64) -> usize {
        self.exponents.get(&k).copied().unwrap_or(0)
    }

    /// Degree of Δ, the Betti number of the fiber: Σ e_k φ(k).
    pub fn degree(&self) -> usize {
        self.exponents.iter().map(|(&k, &e)| e * totient(k) as usize).sum()
    }

    /// Nonzero exponents keyed by k (e₁ always included).
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (&k, &e) in &self.exponents {
            if k == 1 || e > 0 {
                m.insert(k.to_string(), json!(e));
            }
        }
        Value::Object(m)
    }
}

impl fmt::Display for CharPolyFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .exponents
            .iter()
            .filter(|(_, &e)| e > 0)
            .map(|(&k, &e)| {
                let base = if k == 1 { "(t-1)".to_string() } else { format!("Phi_{k}") };
                if e == 1 {
                    base
                } else {
                    format!("{base}^{e}")
                }
            })
            .collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// How the exponents e_k of Δ₁ are obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeltaMethod {
    /// From the characteristic-variety presentation.
    Depth,
    /// From the Fox Jacobian of a catalogued presentation of π₁(U).
    Fox,
    /// From the closed forms for boolean, generic and pencil arrangements.
    ClosedForm,
}

impl DeltaMethod {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "depth" => Ok(DeltaMethod::Depth),
            "fox" => Ok(DeltaMethod::Fox),
            "closed" | "closed_form" => Ok(DeltaMethod::ClosedForm),
            _ => Err(MilnorError::InvalidInput(format!("unknown method {s}"))),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            DeltaMethod::Depth => "depth",
            DeltaMethod::Fox => "fox",
            DeltaMethod::ClosedForm => "closed_form",
        }
    }
}

/// Δ₁ and b₁ of a Milnor fiber.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MilnorH1 {
    pub factorization: CharPolyFactorization,
    pub b1: usize,
    pub method: DeltaMethod,
    /// False when some exponent is only a lower bound.
    pub exact: bool,
}

impl MilnorH1 {
    pub fn to_json(&self) -> Value {
        json!({
            "delta1": self.factorization.to_json(),
            "b1": self.b1,
            "method": self.method.as_str(),
            "certainty": if self.exact { "exact" } else { "lower-bound" },
        })
    }
}

/// Arrangement families with closed-form monodromy polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosedFormKind {
    Boolean { n: usize },
    /// n hyperplanes in general position of rank d + 1 (n > d + 1); d = 1 is a pencil.
    Generic { n: usize, d: usize },
}

/// Recognize a boolean or generic arrangement from its matroid.
pub fn closed_form_kind(a: &Arrangement) -> Option<ClosedFormKind> {
    let (n, r) = (a.n(), a.rank());
    if n == r {
        return Some(ClosedFormKind::Boolean { n });
    }
    if r < 2 || binomial_u64(n as u64, r as u64) > 200_000 {
        return None;
    }
    let generic = exact::intmat::combinations(n, r).iter().all(|s| a.rank_of(s) == r);
    generic.then_some(ClosedFormKind::Generic { n, d: r - 1 })
}

/// Δ_q for the closed-form families with fiber of order N.
pub fn closed_form_delta(kind: ClosedFormKind, q: usize, order: u64) -> CharPolyFactorization {
    let bin = |a: usize, b: usize| binomial_u64(a as u64, b as u64) as usize;
    match kind {
        ClosedFormKind::Boolean { n } => CharPolyFactorization::from_closed_form(order, bin(n - 1, q), 0),
        ClosedFormKind::Generic { n, d } => {
            if q < d {
                CharPolyFactorization::from_closed_form(order, bin(n - 1, q), 0)
            } else if q == d {
                CharPolyFactorization::from_closed_form(order, bin(n - 2, d - 1), bin(n - 2, d))
            } else {
                CharPolyFactorization::from_closed_form(order, 0, 0)
            }
        }
    }
}

/// Δ₁(t) and b₁(F_m) for the Milnor fiber of (A, m).
///
/// e₁ = n − 1 and e_k = depth₁(ρ_m^{N/k}) for k | N, k > 1.
pub fn delta1_and_betti(catalog_name: Option<&str>, a: &Arrangement, m: &[u64], method: DeltaMethod) -> Result<MilnorH1> {
    let n = a.n();
    if m.len() != n {
        return Err(MilnorError::InvalidInput(format!("expected {n} multiplicities, got {}", m.len())));
    }
    let g = m.iter().fold(0i64, |acc, &x| gcd(acc, x as i64));
    if g != 1 {
        return Err(MilnorError::InvalidInput(format!("gcd of multiplicities is {g}; the fiber is disconnected")));
    }
    let order: u64 = m.iter().sum();
    let mvec: Vec<i64> = m.iter().map(|&x| x as i64).collect();
    let rho = Character::new(order, &mvec);
    let mut exponents = BTreeMap::new();
    let mut exact = true;
    exponents.insert(1, n - 1);
    match method {
        DeltaMethod::ClosedForm => {
            let kind = closed_form_kind(a)
                .ok_or_else(|| MilnorError::Inapplicable("closed forms cover boolean, generic and pencil arrangements".into()))?;
            let f = closed_form_delta(kind, 1, order);
            let b1 = f.degree();
            return Ok(MilnorH1 { factorization: f, b1, method, exact: true });
        }
        DeltaMethod::Depth => {
            let l = IntersectionLattice::full(a);
            let opts = match catalog_name {
                Some(name) => CvOptions::for_catalog(name)?,
                None => CvOptions::default(),
            };
            let cv = assemble_cv1(a, &l, &opts)?;
            for k in divisors(order).into_iter().filter(|&k| k > 1) {
                let d = character_depth(&cv.m, &rho.pow((order / k) as i64));
                exact &= d.exact;
                exponents.insert(k, d.value);
            }
        }
        DeltaMethod::Fox => {
            let name = catalog_name
                .ok_or_else(|| MilnorError::MissingCertificate("the Fox method needs a catalogued presentation".into()))?;
            let p = presentation_for_arrangement(name)?;
            for k in divisors(order).into_iter().filter(|&k| k > 1) {
                let values = character_on_generators(&p, &rho.pow((order / k) as i64))?;
                let values: Vec<i64> = values.iter().map(|v| v.rem_euclid(k as i64)).collect();
                exponents.insert(k, depth1_exact(&p, &values, k)?);
            }
        }
    }
    let factorization = CharPolyFactorization { order, exponents };
    let b1 = factorization.degree();
    Ok(MilnorH1 { factorization, b1, method, exact })
}

/// H₁(F_m; ℤ) with its monodromy action, from a catalogued presentation of π₁(U)
/// and the character χ_m on the meridians.
pub fn milnor_fiber_h1(catalog_name: &str, m: &[u64]) -> Result<MonodromyAction> {
    milnor_fiber_h1_from(&presentation_for_arrangement(catalog_name)?, m)
}

/// H₁(F_m; ℤ) with its monodromy action from any presentation of π₁(U) carrying meridian classes.
pub fn milnor_fiber_h1_from(p: &GroupPresentation, m: &[u64]) -> Result<MonodromyAction> {
    if m.contains(&0) {
        return Err(MilnorError::InvalidInput("multiplicities must be positive".into()));
    }
    let chi = p.chi_from_multiplicities(m)?;
    let order: u64 = m.iter().sum();
    monodromy_action_h1(p, &chi, order as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fox::catalog::presentation_catalog;

    #[test]
    fn chain_complex_squares_to_zero() {
        let p = presentation_catalog("braid_U").unwrap();
        let cx = cover_complex(&p, &[1, 1, 1, 1, 1], 6).unwrap();
        assert!(cx.d1.mul(&cx.d2).is_zero());
    }

    #[test]
    fn trivial_cover_is_the_base() {
        let p = presentation_catalog("braid_U").unwrap();
        assert_eq!(h1_cyclic_cover(&p, &[0, 0, 0, 0, 0], 1).unwrap(), IntegralHomology::free(5));
        assert!(h1_cyclic_cover(&p, &[2, 2, 2, 2, 2], 6).is_err());
    }

    #[test]
    fn pencil_cover_is_a_surface() {
        let p = presentation_catalog("pencil_U(3)").unwrap();
        assert_eq!(h1_cyclic_cover(&p, &[1, 1], 3).unwrap(), IntegralHomology::free(4));
    }

    #[test]
    fn closed_form_pencil() {
        let f = closed_form_delta(ClosedFormKind::Generic { n: 4, d: 1 }, 1, 4);
        assert_eq!(f.degree(), 9);
        assert_eq!(f.exponent(1), 3);
        assert_eq!(f.exponent(2), 2);
    }
}
