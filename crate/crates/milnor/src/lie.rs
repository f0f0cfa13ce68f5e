//! Lower central series and Chen ranks, holonomy Lie algebras through degree 3,
//! decomposability, and rank tables for complements and Milnor fibers.
//!
//! Lie elements are computed inside the free associative algebra on the
//! generators, where [a, b] = ab − ba; the free Lie algebra embeds there, so
//! dimensions of Lie subspaces are ranks of their tensor coordinates.

use crate::arr::catalog::catalog;
use crate::arr::lattice::IntersectionLattice;
use crate::arr::Arrangement;
use crate::cover::MonodromyAction;
use crate::error::{MilnorError, Result};
use crate::multinet::{TrivialityReport, Verdict};
use crate::os::resonance::resonance_components_deg1;
use exact::arith::{binomial_u64, divisors, mobius};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::fmt;

/// φ_k(F_n) = (1/k) Σ_{d|k} μ(d) n^{k/d}, the rank of gr_k of the free group.
pub fn witt_rank(n: u64, k: u64) -> BigInt {
    assert!(k >= 1, "degree must be positive");
    let mut s = BigInt::zero();
    for d in divisors(k) {
        let mu = mobius(d);
        if mu != 0 {
            s += BigInt::from(mu) * num_traits::pow(BigInt::from(n), (k / d) as usize);
        }
    }
    s / BigInt::from(k)
}

/// θ_k(F_n): n for k = 1, (k−1)·C(n+k−2, k) for k ≥ 2.
pub fn chen_rank_free(n: u64, k: u64) -> BigInt {
    assert!(k >= 1, "degree must be positive");
    if k == 1 {
        return BigInt::from(n);
    }
    if n == 0 {
        return BigInt::zero();
    }
    BigInt::from(k - 1) * exact::arith::binomial(n + k - 2, k)
}

/// Element of the free associative algebra: word ↦ coefficient.
type Tensor = BTreeMap<Vec<usize>, i64>;

fn tensor_add(acc: &mut Tensor, w: Vec<usize>, c: i64) {
    let e = acc.entry(w.clone()).or_insert(0);
    *e += c;
    if *e == 0 {
        acc.remove(&w);
    }
}

fn bracket(a: &Tensor, b: &Tensor) -> Tensor {
    let mut out = Tensor::new();
    for (wa, ca) in a {
        for (wb, cb) in b {
            let mut ab = wa.clone();
            ab.extend_from_slice(wb);
            tensor_add(&mut out, ab, ca * cb);
            let mut ba = wb.clone();
            ba.extend_from_slice(wa);
            tensor_add(&mut out, ba, -ca * cb);
        }
    }
    out
}

fn generator(i: usize) -> Tensor {
    Tensor::from([(vec![i], 1)])
}

/// A bracket monomial in the generators x₀, …, x_{n−1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LieTree {
    Gen(usize),
    Bracket(Box<LieTree>, Box<LieTree>),
}

impl LieTree {
    pub fn degree(&self) -> usize {
        match self {
            LieTree::Gen(_) => 1,
            LieTree::Bracket(a, b) => a.degree() + b.degree(),
        }
    }

    /// Image in the free associative algebra: word ↦ coefficient.
    pub fn to_tensor(&self) -> BTreeMap<Vec<usize>, i64> {
        match self {
            LieTree::Gen(i) => generator(*i),
            LieTree::Bracket(a, b) => bracket(&a.to_tensor(), &b.to_tensor()),
        }
    }
}

impl fmt::Display for LieTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LieTree::Gen(i) => write!(f, "x{i}"),
            LieTree::Bracket(a, b) => write!(f, "[{a},{b}]"),
        }
    }
}

/// Hall basis of the free Lie algebra on n generators, grouped by degree 1..=max_degree.
///
/// Elements are totally ordered by degree, then by creation order.  A bracket
/// [u, v] is basic when u, v are basic with u > v, and if u = [u₁, u₂] then u₂ ≤ v.
pub fn hall_basis(n: usize, max_degree: usize) -> Vec<Vec<LieTree>> {
    // Each element is stored with its global index and, for brackets, the index of its right factor.
    let mut all: Vec<(LieTree, Option<usize>)> = Vec::new();
    let mut by_degree: Vec<Vec<usize>> = vec![Vec::new(); max_degree + 1];
    if max_degree >= 1 {
        for i in 0..n {
            by_degree[1].push(all.len());
            all.push((LieTree::Gen(i), None));
        }
    }
    for k in 2..=max_degree {
        for du in (1..k).rev() {
            let dv = k - du;
            if dv > du {
                continue;
            }
            for &u in &by_degree[du].clone() {
                for &v in &by_degree[dv].clone() {
                    if u <= v {
                        continue;
                    }
                    if let Some(u2) = all[u].1 {
                        if u2 > v {
                            continue;
                        }
                    }
                    let t = LieTree::Bracket(Box::new(all[u].0.clone()), Box::new(all[v].0.clone()));
                    by_degree[k].push(all.len());
                    all.push((t, Some(v)));
                }
            }
        }
    }
    by_degree.iter().skip(1).map(|ix| ix.iter().map(|&i| all[i].0.clone()).collect()).collect()
}

/// Incremental row echelon form over ℚ for sparse integer rows.
#[derive(Default)]
struct SparseEchelon {
    pivots: BTreeMap<usize, BTreeMap<usize, BigInt>>,
}

impl SparseEchelon {
    /// Insert a row; returns true when it is independent of the rows already present.
    fn insert(&mut self, row: &Tensor, index: impl Fn(&[usize]) -> usize) -> bool {
        let mut r: BTreeMap<usize, BigInt> = row.iter().map(|(w, &c)| (index(w), BigInt::from(c))).collect();
        r.retain(|_, c| !c.is_zero());
        loop {
            let (&col, lead) = match r.iter().next() {
                None => return false,
                Some(x) => x,
            };
            let Some(p) = self.pivots.get(&col) else {
                self.pivots.insert(col, r);
                return true;
            };
            let (pl, rl) = (p[&col].clone(), lead.clone());
            let mut next: BTreeMap<usize, BigInt> = BTreeMap::new();
            for (k, v) in &r {
                next.insert(*k, v * &pl);
            }
            for (k, v) in p {
                let e = next.entry(*k).or_insert_with(BigInt::zero);
                *e -= v * &rl;
            }
            next.retain(|_, c| !c.is_zero());
            let g = next.values().fold(BigInt::zero(), |g, c| g.gcd(c));
            if !g.is_zero() && !g.is_one() {
                for c in next.values_mut() {
                    *c /= &g;
                }
            }
            r = next;
        }
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn word_index(n: usize) -> impl Fn(&[usize]) -> usize {
    move |w: &[usize]| w.iter().fold(0, |acc, &x| acc * n + x)
}

/// Dimension of the degree-k part of the free Lie algebra, found by spanning all
/// left-normed brackets of k generators inside the tensor algebra.
pub fn free_lie_dim_bruteforce(n: usize, k: usize) -> usize {
    let mut ech = SparseEchelon::default();
    let mut word = vec![0usize; k];
    if n == 0 || k == 0 {
        return 0;
    }
    loop {
        let mut t = generator(word[0]);
        for &g in &word[1..] {
            t = bracket(&t, &generator(g));
        }
        ech.insert(&t, word_index(n));
        let mut i = k;
        loop {
            if i == 0 {
                return ech.rank();
            }
            i -= 1;
            word[i] += 1;
            if word[i] < n {
                break;
            }
            word[i] = 0;
        }
    }
}

/// Rank of a list of homogeneous tensors of degree k over ℚ.
fn tensor_rank(rows: &[Tensor], n: usize) -> usize {
    let mut ech = SparseEchelon::default();
    for r in rows {
        ech.insert(r, word_index(n));
    }
    ech.rank()
}

/// The holonomy Lie algebra of an arrangement through degree 3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HolonomyLie {
    /// Number of generators x_H.
    pub n: usize,
    /// dim L₂ and dim L₃ of the free Lie algebra (sizes of the Hall basis).
    pub free_dims: (usize, usize),
    /// dim R₂, the span of [x_H, Σ_{K∈X} x_K] over rank-2 flats X ∋ H.
    pub relations: usize,
    /// dim 𝔥₂ = dim L₂ − dim R₂.
    pub h2: usize,
    /// dim 𝔥₃ = dim L₃ − dim [L₁, R₂].
    pub h3: usize,
    /// dim I² = C(n, 2) − b₂(M), which must equal dim 𝔥₂.
    pub dim_i2: usize,
}

impl HolonomyLie {
    pub fn to_json(&self) -> Value {
        json!({"n": self.n, "L2": self.free_dims.0, "L3": self.free_dims.1, "R2": self.relations,
               "h2": self.h2, "h3": self.h3, "I2": self.dim_i2})
    }
}

/// dim 𝔥₂ and dim 𝔥₃ over ℚ by exact elimination.
pub fn holonomy_dims(l: &IntersectionLattice) -> Result<HolonomyLie> {
    let n = l.n;
    let hall = hall_basis(n, 3);
    let (l2, l3) = (hall.get(1).map_or(0, Vec::len), hall.get(2).map_or(0, Vec::len));
    let mut rels: Vec<Tensor> = Vec::new();
    let flats2 = if l.rank >= 2 { l.rank_k(2) } else { &[] };
    for x in flats2 {
        let mut sum = Tensor::new();
        for &k in &x.hyperplanes {
            tensor_add(&mut sum, vec![k], 1);
        }
        // The |X| brackets sum to zero; any |X| − 1 of them span the same space.
        for &h in x.hyperplanes.iter().skip(1) {
            rels.push(bracket(&generator(h), &sum));
        }
    }
    let r2 = tensor_rank(&rels, n);
    let mut cubic = Vec::with_capacity(n * rels.len());
    for a in 0..n {
        for r in &rels {
            cubic.push(bracket(&generator(a), r));
        }
    }
    let r3 = tensor_rank(&cubic, n);
    let b2: u64 = flats2.iter().map(|x| (x.multiplicity() - 1) as u64).sum();
    let pairs = binomial_u64(n as u64, 2);
    let dim_i2 = pairs.checked_sub(b2).ok_or_else(|| MilnorError::InvalidInput("lattice is inconsistent".into()))?;
    let out = HolonomyLie { n, free_dims: (l2, l3), relations: r2, h2: l2 - r2, h3: l3 - r3, dim_i2: dim_i2 as usize };
    if out.h2 != out.dim_i2 {
        return Err(MilnorError::InvalidInput(format!("dim h2 = {} differs from dim I2 = {}", out.h2, out.dim_i2)));
    }
    Ok(out)
}

/// Comparison of φ₃ with its local lower bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecomposabilityReport {
    pub holonomy: HolonomyLie,
    /// Σ_{X∈L₂} φ₃(F_{μ(X)}).
    pub local_bound: u64,
    /// Σ_{X∈L₂} C(μ(X), 2), the alternative expression reported for comparison only.
    pub binomial_sum: u64,
    pub decomposable: bool,
}

impl DecomposabilityReport {
    /// Decomposable arrangements have trivial degree-one ℚ-monodromy for every multiplicity vector.
    pub fn implies_trivial_monodromy(&self) -> bool {
        self.decomposable
    }

    pub fn to_json(&self) -> Value {
        json!({
            "phi3": self.holonomy.h3,
            "local_bound": self.local_bound,
            "binomial_sum": self.binomial_sum,
            "verdict": if self.decomposable { "decomposable" } else { "not decomposable" },
            "trivial_monodromy_for_all_m": self.decomposable,
        })
    }
}

pub fn decomposability_report(l: &IntersectionLattice) -> Result<DecomposabilityReport> {
    let holonomy = holonomy_dims(l)?;
    let flats2 = if l.rank >= 2 { l.rank_k(2) } else { &[] };
    let mut local_bound = 0u64;
    let mut binomial_sum = 0u64;
    for x in flats2 {
        let mu = (x.multiplicity() - 1) as u64;
        local_bound += witt_rank(mu, 3).to_u64().unwrap_or(u64::MAX);
        binomial_sum += binomial_u64(mu, 2);
    }
    let decomposable = holonomy.h3 as u64 == local_bound;
    Ok(DecomposabilityReport { holonomy, local_bound, binomial_sum, decomposable })
}

/// Where a rank value came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    ClosedForm,
    Holonomy,
    Transfer,
    ComponentSum,
}

impl Provenance {
    pub fn as_str(&self) -> &'static str {
        match self {
            Provenance::ClosedForm => "closed-form",
            Provenance::Holonomy => "holonomy",
            Provenance::Transfer => "transfer",
            Provenance::ComponentSum => "component-sum",
        }
    }
}

/// One row of a rank table.  A missing value means no available context determines it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankEntry {
    pub phi: Option<(BigInt, Provenance)>,
    pub theta: Option<(BigInt, Provenance)>,
}

impl RankEntry {
    fn both(v: BigInt, p: Provenance) -> Self {
        RankEntry { phi: Some((v.clone(), p)), theta: Some((v, p)) }
    }

    /// JSON {"phi", "theta", "provenance"}; provenance is "a" when both values share it, else "a|b" (phi|theta).
    pub fn to_json(&self) -> Value {
        let num = |x: &Option<(BigInt, Provenance)>| match x {
            None => Value::Null,
            Some((v, _)) => v.to_u64().map_or_else(|| json!(v.to_string()), |u| json!(u)),
        };
        let tag = |x: &Option<(BigInt, Provenance)>| x.as_ref().map_or("unknown", |(_, p)| p.as_str());
        let prov = if tag(&self.phi) == tag(&self.theta) {
            tag(&self.phi).to_string()
        } else {
            format!("{}|{}", tag(&self.phi), tag(&self.theta))
        };
        json!({"phi": num(&self.phi), "theta": num(&self.theta), "provenance": prov})
    }
}

/// Map k ↦ (φ_k, θ_k).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RankTable {
    pub rows: BTreeMap<u64, RankEntry>,
}

impl RankTable {
    pub fn phi(&self, k: u64) -> Option<&BigInt> {
        self.rows.get(&k)?.phi.as_ref().map(|x| &x.0)
    }

    pub fn theta(&self, k: u64) -> Option<&BigInt> {
        self.rows.get(&k)?.theta.as_ref().map(|x| &x.0)
    }

    pub fn to_json(&self) -> Value {
        let mut obj = serde_json::Map::new();
        for (k, e) in &self.rows {
            obj.insert(k.to_string(), e.to_json());
        }
        Value::Object(obj)
    }
}

/// Structural data from which ranks beyond degree 3 are derived.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RankContext {
    /// Exponents of a fiber-type structure of M (the exponent 1 included or not).
    pub exponents: Option<Vec<u64>>,
    /// Ranks of free factors when π₁(U) is a product of free groups.
    pub product: Option<Vec<u64>>,
    /// Dimensions of the components of R¹₁.
    pub components: Option<Vec<usize>>,
}

impl RankContext {
    pub fn is_empty(&self) -> bool {
        self.exponents.is_none() && self.product.is_none() && self.components.is_none()
    }

    /// Context for a catalog arrangement: fiber-type exponents, the product
    /// structure F₂ × F₂ × ℤ of the Falk arrangements, and certified R¹ components.
    pub fn for_catalog(name: &str, l: &IntersectionLattice) -> Result<Self> {
        let e = catalog(name)?;
        let head = name.split('(').next().unwrap_or(name);
        let product = matches!(head, "falk1" | "falk2").then(|| vec![2, 2, 1]);
        let components = certified_component_dims(&e.arrangement, l)?;
        Ok(RankContext { exponents: e.exponents, product, components })
    }

    /// Context from the arrangement alone: certified R¹ component dimensions, when available.
    pub fn from_arrangement(a: &Arrangement, l: &IntersectionLattice) -> Result<Self> {
        Ok(RankContext { components: certified_component_dims(a, l)?, ..Default::default() })
    }
}

fn certified_component_dims(a: &Arrangement, l: &IntersectionLattice) -> Result<Option<Vec<usize>>> {
    match resonance_components_deg1(a, l, 0) {
        Ok(comps) => Ok(comps.iter().all(|c| c.certified).then(|| comps.iter().map(|c| c.dim()).collect())),
        Err(MilnorError::Inapplicable(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Evidence that the degree-one ℚ-monodromy of a Milnor fiber is trivial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonodromyCertificate {
    Decomposable,
    Combinatorial(String),
    CoverHomology,
}

impl MonodromyCertificate {
    pub fn from_decomposability(r: &DecomposabilityReport) -> Option<Self> {
        r.implies_trivial_monodromy().then_some(MonodromyCertificate::Decomposable)
    }

    pub fn from_triviality(r: &TrivialityReport) -> Option<Self> {
        (r.verdict == Verdict::Trivial).then(|| MonodromyCertificate::Combinatorial(r.criterion.clone()))
    }

    /// The action on the free part of H₁(F; ℤ) is the identity.
    pub fn from_action(a: &MonodromyAction) -> Option<Self> {
        (a.free_order == 1).then_some(MonodromyCertificate::CoverHomology)
    }

    pub fn as_str(&self) -> String {
        match self {
            MonodromyCertificate::Decomposable => "decomposable".into(),
            MonodromyCertificate::Combinatorial(c) => format!("combinatorial: {c}"),
            MonodromyCertificate::CoverHomology => "cover homology".into(),
        }
    }
}

/// Rank tables of π₁(U) and, when certified, of π₁(F_m).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankTables {
    pub complement: RankTable,
    pub fiber: Option<RankTable>,
    pub certificate: Option<MonodromyCertificate>,
}

impl RankTables {
    pub fn to_json(&self) -> Value {
        json!({
            "U": self.complement.to_json(),
            "F": self.fiber.as_ref().map(RankTable::to_json),
            "certificate": self.certificate.as_ref().map(MonodromyCertificate::as_str),
        })
    }
}

/// φ_k and θ_k of π₁(U) for k = 1..=k_max, with an optional transfer to the Milnor fiber.
///
/// φ₁ = θ₁ = n − 1; degrees 2 and 3 come from the holonomy Lie algebra (θ = φ there);
/// for k ≥ 4, φ_k sums φ_k(F_d) over exponents or free factors and θ_k sums
/// θ_k(F_{dim P}) over the components P of R¹₁.
pub fn rank_tables(
    l: &IntersectionLattice,
    ctx: &RankContext,
    k_max: u64,
    transfer: Option<MonodromyCertificate>,
) -> Result<RankTables> {
    if ctx.is_empty() {
        return Err(MilnorError::InvalidInput(
            "rank tables need fiber-type exponents, a product structure, or resonance components".into(),
        ));
    }
    let n = l.n as u64;
    let hol = holonomy_dims(l)?;
    let free_sum = |k: u64| -> Option<BigInt> {
        let ranks = ctx.exponents.as_ref().or(ctx.product.as_ref())?;
        Some(ranks.iter().map(|&d| witt_rank(d, k)).sum())
    };
    for (k, h) in [(2u64, hol.h2), (3, hol.h3)] {
        if let Some(v) = free_sum(k) {
            if v != BigInt::from(h) {
                return Err(MilnorError::InvalidInput(format!(
                    "context gives phi_{k} = {v} but the holonomy Lie algebra has dimension {h}"
                )));
            }
        }
    }
    let mut table = RankTable::default();
    for k in 1..=k_max {
        let entry = match k {
            1 => RankEntry::both(BigInt::from(n.saturating_sub(1)), Provenance::ClosedForm),
            2 => RankEntry::both(BigInt::from(hol.h2), Provenance::Holonomy),
            3 => RankEntry::both(BigInt::from(hol.h3), Provenance::Holonomy),
            _ => RankEntry {
                phi: free_sum(k).map(|v| (v, Provenance::ClosedForm)),
                theta: ctx.components.as_ref().map(|c| {
                    (c.iter().map(|&d| chen_rank_free(d as u64, k)).sum(), Provenance::ComponentSum)
                }),
            },
        };
        if let (Some((p, _)), Some((t, _))) = (&entry.phi, &entry.theta) {
            if t > p || t.is_negative() {
                return Err(MilnorError::InvalidInput(format!("theta_{k} = {t} exceeds phi_{k} = {p}")));
            }
        }
        table.rows.insert(k, entry);
    }
    let fiber = transfer.as_ref().map(|_| {
        let mut f = RankTable::default();
        for (k, e) in &table.rows {
            let re = |x: &Option<(BigInt, Provenance)>| x.as_ref().map(|(v, _)| (v.clone(), Provenance::Transfer));
            f.rows.insert(*k, RankEntry { phi: re(&e.phi), theta: re(&e.theta) });
        }
        f
    });
    Ok(RankTables { complement: table, fiber, certificate: transfer })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witt_and_chen_values() {
        assert_eq!(witt_rank(2, 2), BigInt::from(1));
        assert_eq!(witt_rank(2, 3), BigInt::from(2));
        assert_eq!(witt_rank(3, 1), BigInt::from(3));
        assert_eq!(chen_rank_free(3, 4), BigInt::from(15));
        assert_eq!(chen_rank_free(2, 5), BigInt::from(4));
        assert_eq!(chen_rank_free(5, 1), BigInt::from(5));
    }

    #[test]
    fn hall_basis_matches_witt_and_spans() {
        for n in 1..=3usize {
            let hall = hall_basis(n, 6);
            for k in 1..=6usize {
                let w = witt_rank(n as u64, k as u64).to_usize().unwrap();
                assert_eq!(hall[k - 1].len(), w, "n={n} k={k}");
                assert_eq!(free_lie_dim_bruteforce(n, k), w, "n={n} k={k}");
                let tensors: Vec<Tensor> = hall[k - 1].iter().map(LieTree::to_tensor).collect();
                assert_eq!(tensor_rank(&tensors, n), w, "Hall elements independent n={n} k={k}");
            }
        }
    }

    #[test]
    fn hall_basis_display() {
        let h = hall_basis(2, 3);
        assert_eq!(h[1][0].to_string(), "[x1,x0]");
        assert_eq!(h[2].iter().map(|t| t.degree()).sum::<usize>(), 6);
    }
}
