//! Multinets, nets and pointed multinets on rank-3 arrangements, pencil
//! subspaces, and combinatorial triviality tests for the algebraic monodromy.

use crate::arr::lattice::IntersectionLattice;
use crate::arr::Arrangement;
use crate::error::{MilnorError, Result};
use crate::os::{beta_p, OsAlgebra};
use exact::{rat, Matrix, Rational};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{json, Value};
use std::collections::BTreeSet;

/// A multinet on a sub-arrangement B ⊆ A.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Multinet {
    /// Sorted support B.
    pub support: Vec<usize>,
    /// Classes, each sorted, ordered by least element.
    pub partition: Vec<Vec<usize>>,
    /// Multiplicity of each hyperplane of A (zero outside the support).
    pub m: Vec<u64>,
    /// Base locus: rank-2 flats of B meeting at least two classes, as hyperplane sets of B.
    pub base_locus: Vec<Vec<usize>>,
    /// n_X for each flat of the base locus.
    pub n_x: Vec<u64>,
    /// Common class weight ℓ.
    pub ell: u64,
}

impl Multinet {
    pub fn k(&self) -> usize {
        self.partition.len()
    }
    /// All multiplicities on the support equal one.
    pub fn is_reduced(&self) -> bool {
        self.support.iter().all(|&h| self.m[h] == 1)
    }
    /// Reduced, and every base-locus flat meets each class in exactly one hyperplane.
    pub fn is_net(&self) -> bool {
        self.is_reduced() && self.n_x.iter().all(|&x| x == 1)
    }
    /// Supported on a single flat of rank 2 (a local net).
    pub fn is_local(&self) -> bool {
        self.base_locus.len() == 1 && self.base_locus[0] == self.support
    }
    /// Support is the whole arrangement.
    pub fn is_full(&self, n: usize) -> bool {
        self.support.len() == n
    }

    /// Partition rendered with 1-based labels, e.g. "(12|34|56)".
    pub fn partition_label(&self) -> String {
        let parts: Vec<String> =
            self.partition.iter().map(|c| c.iter().map(|h| (h + 1).to_string()).collect::<Vec<_>>().join("")).collect();
        format!("({})", parts.join("|"))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "support": self.support,
            "partition": self.partition,
            "m": self.support.iter().map(|&h| self.m[h]).collect::<Vec<_>>(),
            "base_locus": self.base_locus,
            "k": self.k(),
            "ell": self.ell,
        })
    }
}

/// Search options.
#[derive(Clone, Copy, Debug)]
pub struct MultinetOptions {
    /// Largest number of classes considered.
    pub k_max: usize,
    /// Search proper sub-arrangements as well as A itself.
    pub sub_arrangements: bool,
    /// Include the local nets on flats of multiplicity at least 3.
    pub include_local: bool,
    /// Maximum number of search nodes before reporting a budget error.
    pub budget: u64,
}

impl Default for MultinetOptions {
    fn default() -> Self {
        MultinetOptions { k_max: 20, sub_arrangements: false, include_local: false, budget: 50_000_000 }
    }
}

/// Rank-2 flats of a sub-arrangement: traces X ∩ B with at least two members.
fn sub_flats(l: &IntersectionLattice, support: &[usize]) -> Vec<Vec<usize>> {
    l.rank_k(2)
        .iter()
        .map(|x| x.hyperplanes.iter().copied().filter(|h| support.contains(h)).collect::<Vec<_>>())
        .filter(|t| t.len() >= 2)
        .collect()
}

/// Check the multinet axioms for a given support and partition and solve for the
/// multiplicities. Returns `Ok(None)` when the axioms cannot be met.
pub fn complete_multinet(
    a: &Arrangement,
    l: &IntersectionLattice,
    partition: &[Vec<usize>],
) -> Result<Option<Multinet>> {
    let k = partition.len();
    if k < 3 || partition.iter().any(|c| c.is_empty()) {
        return Ok(None);
    }
    let n = a.n();
    let mut class_of = vec![usize::MAX; n];
    for (i, c) in partition.iter().enumerate() {
        for &h in c {
            class_of[h] = i;
        }
    }
    let mut support: Vec<usize> = partition.iter().flatten().copied().collect();
    support.sort_unstable();
    if a.rank_of(&support) < 3 {
        return Ok(None);
    }
    let flats = sub_flats(l, &support);
    let mut base = Vec::new();
    for t in &flats {
        let classes: BTreeSet<usize> = t.iter().map(|&h| class_of[h]).collect();
        if classes.len() >= 2 {
            if classes.len() < k {
                return Ok(None);
            }
            base.push(t.clone());
        }
    }
    if base.is_empty() {
        return Ok(None);
    }
    // Connectivity of each class through flats outside the base locus.
    let base_set: BTreeSet<&Vec<usize>> = base.iter().collect();
    for c in partition {
        let mut reached = vec![c[0]];
        let mut frontier = vec![c[0]];
        while let Some(h) = frontier.pop() {
            for &g in c {
                if reached.contains(&g) {
                    continue;
                }
                let t = flats.iter().find(|t| t.contains(&h) && t.contains(&g)).expect("two hyperplanes span a flat");
                if !base_set.contains(t) {
                    reached.push(g);
                    frontier.push(g);
                }
            }
        }
        if reached.len() != c.len() {
            return Ok(None);
        }
    }
    // Linear conditions on the multiplicities: equal class weights and equal n_X.
    let idx = |h: usize| support.binary_search(&h).expect("support member");
    let s = support.len();
    let mut rows: Vec<Vec<i64>> = Vec::new();
    let weight_row = |members: &[usize]| {
        let mut r = vec![0i64; s];
        for &h in members {
            r[idx(h)] += 1;
        }
        r
    };
    let w0 = weight_row(&partition[0]);
    for c in &partition[1..] {
        let w = weight_row(c);
        rows.push(w.iter().zip(&w0).map(|(x, y)| x - y).collect());
    }
    for t in &base {
        let per_class: Vec<Vec<usize>> =
            (0..k).map(|i| t.iter().copied().filter(|&h| class_of[h] == i).collect()).collect();
        let r0 = weight_row(&per_class[0]);
        for pc in &per_class[1..] {
            let r = weight_row(pc);
            rows.push(r.iter().zip(&r0).map(|(x, y)| x - y).collect());
        }
    }
    let system = Matrix::from_i64_rows(&rows, s, &rat(0, 1));
    let kernel = system.kernel();
    if kernel.is_empty() {
        return Ok(None);
    }
    if kernel.len() > 1 {
        return Err(MilnorError::Inapplicable(format!(
            "multiplicity system for partition {:?} has a {}-dimensional solution space",
            partition,
            kernel.len()
        )));
    }
    let Some(mult) = primitive_positive(&kernel[0]) else { return Ok(None) };
    let mut m = vec![0u64; n];
    for (i, &h) in support.iter().enumerate() {
        m[h] = mult[i];
    }
    let ell: u64 = partition[0].iter().map(|&h| m[h]).sum();
    let n_x: Vec<u64> = base.iter().map(|t| t.iter().filter(|&&h| class_of[h] == 0).map(|&h| m[h]).sum()).collect();
    let mut partition = partition.to_vec();
    for c in partition.iter_mut() {
        c.sort_unstable();
    }
    partition.sort();
    Ok(Some(Multinet { support, partition, m, base_locus: base, n_x, ell }))
}

/// Scale a rational vector to a primitive vector of positive integers, if its entries share a sign.
fn primitive_positive(v: &[Rational]) -> Option<Vec<u64>> {
    let ints = crate::os::clear_denominators(v);
    let g = ints.iter().fold(BigInt::zero(), |g, x| num_integer::Integer::gcd(&g, x));
    if g.is_zero() {
        return None;
    }
    let sign = if ints.iter().find(|x| !x.is_zero())?.is_negative() { -1 } else { 1 };
    let out: Vec<i64> = ints.iter().map(|x| (x / &g).to_i64().unwrap_or(0) * sign).collect();
    if out.iter().any(|&x| x <= 0) {
        return None;
    }
    Some(out.into_iter().map(|x| x as u64).collect())
}

struct Search<'a> {
    a: &'a Arrangement,
    l: &'a IntersectionLattice,
    opts: MultinetOptions,
    k_cap: usize,
    /// Rank-2 flats of A, as hyperplane lists.
    flats: Vec<Vec<usize>>,
    /// Flats through each hyperplane.
    flats_of: Vec<Vec<usize>>,
    assign: Vec<Option<usize>>,
    nodes: u64,
    found: Vec<Multinet>,
}

const EXCLUDED: usize = usize::MAX;

impl Search<'_> {
    fn used_classes(&self) -> usize {
        self.assign.iter().flatten().filter(|&&c| c != EXCLUDED).map(|&c| c + 1).max().unwrap_or(0)
    }

    /// Partial consistency of the assignment at the flats through hyperplane h.
    fn consistent(&self, h: usize) -> bool {
        let used = self.used_classes();
        for &fi in &self.flats_of[h] {
            let f = &self.flats[fi];
            let mut classes = BTreeSet::new();
            let mut open = 0;
            for &g in f {
                match self.assign[g] {
                    None => open += 1,
                    Some(EXCLUDED) => {}
                    Some(c) => {
                        classes.insert(c);
                    }
                }
            }
            // Two included hyperplanes of a double point must share a class.
            if f.len() == 2 && classes.len() == 2 {
                return false;
            }
            if classes.len() >= 2 && classes.len() + open < used {
                return false;
            }
        }
        true
    }

    fn run(&mut self, h: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.opts.budget {
            return Err(MilnorError::Budget(format!("multinet search exceeded {} nodes", self.opts.budget)));
        }
        let n = self.a.n();
        if h == n {
            let k = self.used_classes();
            if k < 3 {
                return Ok(());
            }
            let mut partition = vec![Vec::new(); k];
            for (g, c) in self.assign.iter().enumerate() {
                if let Some(c) = *c {
                    if c != EXCLUDED {
                        partition[c].push(g);
                    }
                }
            }
            if let Some(mn) = complete_multinet(self.a, self.l, &partition)? {
                self.found.push(mn);
            }
            return Ok(());
        }
        let used = self.used_classes();
        let mut choices: Vec<usize> = (0..used.min(self.k_cap)).collect();
        if used < self.k_cap {
            choices.push(used);
        }
        if self.opts.sub_arrangements {
            choices.push(EXCLUDED);
        }
        for c in choices {
            self.assign[h] = Some(c);
            if self.consistent(h) {
                self.run(h + 1)?;
            }
        }
        self.assign[h] = None;
        Ok(())
    }
}

/// The local net on a flat of multiplicity q ≥ 3: q singleton classes.
pub fn local_net(n: usize, flat: &[usize]) -> Multinet {
    let mut m = vec![0u64; n];
    for &h in flat {
        m[h] = 1;
    }
    Multinet {
        support: flat.to_vec(),
        partition: flat.iter().map(|&h| vec![h]).collect(),
        m,
        base_locus: vec![flat.to_vec()],
        n_x: vec![1],
        ell: 1,
    }
}

/// Enumerate multinets up to class permutation, in canonical order.
pub fn enumerate_multinets(a: &Arrangement, l: &IntersectionLattice, opts: MultinetOptions) -> Result<Vec<Multinet>> {
    if a.rank() != 3 {
        return Err(MilnorError::Inapplicable(format!("multinet search needs a rank-3 arrangement, got rank {}", a.rank())));
    }
    let flats: Vec<Vec<usize>> = l.rank_k(2).iter().map(|x| x.hyperplanes.clone()).collect();
    let mut flats_of = vec![Vec::new(); a.n()];
    for (i, f) in flats.iter().enumerate() {
        for &h in f {
            flats_of[h].push(i);
        }
    }
    let max_q = flats.iter().map(Vec::len).max().unwrap_or(0);
    let k_cap = opts.k_max.min(max_q);
    let mut search = Search { a, l, opts, k_cap, flats, flats_of, assign: vec![None; a.n()], nodes: 0, found: Vec::new() };
    if k_cap >= 3 {
        search.run(0)?;
    }
    let mut out = search.found;
    if opts.include_local {
        for x in l.multiple_points() {
            if x.multiplicity() <= opts.k_max {
                out.push(local_net(a.n(), &x.hyperplanes));
            }
        }
    }
    for mn in &out {
        if let Err(why) = verify_multinet(l, mn) {
            return Err(MilnorError::Inapplicable(format!("search produced an invalid multinet {}: {why}", mn.partition_label())));
        }
    }
    out.sort_by(|x, y| (x.support.len(), &x.support, &x.partition).cmp(&(y.support.len(), &y.support, &y.partition)));
    out.dedup();
    Ok(out)
}

/// Independent check of the four multinet axioms, iterating in reverse order.
pub fn verify_multinet(l: &IntersectionLattice, mn: &Multinet) -> std::result::Result<(), String> {
    let k = mn.k();
    if k < 3 {
        return Err("fewer than three classes".into());
    }
    let g = mn.support.iter().rev().fold(0u64, |g, &h| num_integer::Integer::gcd(&g, &mn.m[h]));
    if g != 1 {
        return Err(format!("gcd of multiplicities is {g}"));
    }
    for c in mn.partition.iter().rev() {
        let w: u64 = c.iter().map(|&h| mn.m[h]).sum();
        if w != mn.ell {
            return Err(format!("class weight {w} differs from {}", mn.ell));
        }
    }
    let class_of = |h: usize| mn.partition.iter().position(|c| c.contains(&h));
    let traces = sub_flats(l, &mn.support);
    for t in traces.iter().rev() {
        let in_base = mn.base_locus.contains(t);
        let classes: BTreeSet<usize> = t.iter().filter_map(|&h| class_of(h)).collect();
        if classes.len() >= 2 && !in_base {
            return Err(format!("flat {t:?} meets two classes but is outside the base locus"));
        }
        if in_base {
            let weights: BTreeSet<u64> =
                (0..k).rev().map(|i| t.iter().filter(|&&h| class_of(h) == Some(i)).map(|&h| mn.m[h]).sum()).collect();
            if weights.len() != 1 || weights.contains(&0) {
                return Err(format!("flat {t:?} has unbalanced class weights {weights:?}"));
            }
        }
    }
    for c in mn.partition.iter().rev() {
        let mut reached = BTreeSet::from([*c.last().unwrap()]);
        loop {
            let before = reached.len();
            for &h in c.iter().rev() {
                if reached.contains(&h) {
                    continue;
                }
                let linked = reached.iter().any(|&g| {
                    let t = traces.iter().find(|t| t.contains(&h) && t.contains(&g));
                    t.is_some_and(|t| !mn.base_locus.contains(t))
                });
                if linked {
                    reached.insert(h);
                }
            }
            if reached.len() == before {
                break;
            }
        }
        if reached.len() != c.len() {
            return Err(format!("class {c:?} is not connected outside the base locus"));
        }
    }
    Ok(())
}

/// Pencil data: the vectors u_i = Σ_{H∈A_i} m_H e_H and a basis u_i − u_1 of P_N.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PencilData {
    pub u: Vec<Vec<i64>>,
    pub basis: Vec<Vec<i64>>,
}

pub fn pencil_subspace(mn: &Multinet, n: usize) -> PencilData {
    let u: Vec<Vec<i64>> = mn
        .partition
        .iter()
        .map(|c| {
            let mut v = vec![0i64; n];
            for &h in c {
                v[h] = mn.m[h] as i64;
            }
            v
        })
        .collect();
    let basis = u[1..].iter().map(|ui| ui.iter().zip(&u[0]).map(|(x, y)| x - y).collect()).collect();
    PencilData { u, basis }
}

/// A multinet together with a hyperplane H for which it is pointed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedMultinet {
    pub multinet: Multinet,
    pub hyperplane: usize,
}

/// All pointed multinets on A: m_H > 1 and m_H | n_X for every base flat X ⊂ H.
pub fn pointed_multinets(a: &Arrangement, l: &IntersectionLattice, opts: MultinetOptions) -> Result<Vec<PointedMultinet>> {
    let mut out = Vec::new();
    for mn in enumerate_multinets(a, l, opts)? {
        for &h in &mn.support {
            let mh = mn.m[h];
            if mh <= 1 {
                continue;
            }
            let ok = mn.base_locus.iter().zip(&mn.n_x).filter(|(t, _)| t.contains(&h)).all(|(_, &nx)| nx % mh == 0);
            if ok {
                out.push(PointedMultinet { multinet: mn.clone(), hyperplane: h });
            }
        }
    }
    Ok(out)
}

/// Verdict of the combinatorial triviality tests.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Trivial,
    Nontrivial,
    Undetermined,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Trivial => "trivial",
            Verdict::Nontrivial => "nontrivial",
            Verdict::Undetermined => "undetermined",
        }
    }
}

/// Result of [`triviality_report`].
#[derive(Clone, Debug)]
pub struct TrivialityReport {
    pub verdict: Verdict,
    pub criterion: String,
    /// Δ₁ as exponents {1: n−1, 3: β₃} when only double and triple points occur.
    pub delta1: Option<Vec<(u64, u64)>>,
    pub beta3: Option<usize>,
}

impl TrivialityReport {
    pub fn to_json(&self) -> Value {
        let mut v = json!({"verdict": self.verdict.as_str(), "criterion": self.criterion});
        if let Some(d) = &self.delta1 {
            let mut obj = serde_json::Map::new();
            for (k, e) in d {
                obj.insert(k.to_string(), json!(e));
            }
            v["delta1"] = Value::Object(obj);
        }
        if let Some(b) = self.beta3 {
            v["beta3"] = json!(b);
        }
        v
    }
}

/// Δ₁ for an arrangement with only double and triple points: (t−1)^{n−1}(t²+t+1)^{β₃}.
pub fn delta1_double_triple(a: &Arrangement, l: &IntersectionLattice) -> Result<Option<(Vec<(u64, u64)>, usize)>> {
    if l.rank_k(2).iter().any(|x| x.multiplicity() > 3) || a.rank() != 3 {
        return Ok(None);
    }
    let b3 = beta_p(a, 3)?;
    let mut d = vec![(1, a.n() as u64 - 1)];
    if b3 > 0 {
        d.push((3, b3 as u64));
    }
    Ok(Some((d, b3)))
}

/// Apply, in order: the double/triple-point formula, the reduced-multinet test,
/// and the no-essential-component test (only when the CV list is certified complete).
pub fn triviality_report(a: &Arrangement, l: &IntersectionLattice, cv_certified_complete: bool) -> Result<TrivialityReport> {
    if a.rank() != 3 {
        return Err(MilnorError::Inapplicable("triviality tests need a rank-3 arrangement".into()));
    }
    if let Some((d, b3)) = delta1_double_triple(a, l)? {
        let verdict = if b3 == 0 { Verdict::Trivial } else { Verdict::Nontrivial };
        return Ok(TrivialityReport {
            verdict,
            criterion: "only double and triple points: Delta1 = (t-1)^(n-1) (t^2+t+1)^beta3".into(),
            delta1: Some(d),
            beta3: Some(b3),
        });
    }
    let full = enumerate_multinets(a, l, MultinetOptions::default())?;
    if full.iter().any(Multinet::is_reduced) {
        return Ok(TrivialityReport {
            verdict: Verdict::Nontrivial,
            criterion: "admits a reduced multinet".into(),
            delta1: None,
            beta3: None,
        });
    }
    if full.is_empty() && cv_certified_complete {
        return Ok(TrivialityReport {
            verdict: Verdict::Trivial,
            criterion: "characteristic variety has no essential components".into(),
            delta1: None,
            beta3: None,
        });
    }
    let criterion = if full.is_empty() {
        "no essential multinet found, but the characteristic variety is not certified complete"
    } else {
        "essential multinets exist, none reduced"
    };
    Ok(TrivialityReport { verdict: Verdict::Undetermined, criterion: criterion.into(), delta1: None, beta3: None })
}

/// Certify that P_N lies in R¹₁: the Aomoto b₁ at each basis vector is at least 1.
pub fn certify_pencil(alg: &OsAlgebra, p: &PencilData) -> Result<bool> {
    for v in &p.basis {
        let a: Vec<Rational> = v.iter().map(|&x| rat(x, 1)).collect();
        if alg.aomoto_betti_q(&a)?[1] == 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arr::catalog::catalog;

    fn setup(name: &str) -> (Arrangement, IntersectionLattice) {
        let a = catalog(name).unwrap().arrangement;
        let l = IntersectionLattice::full(&a);
        (a, l)
    }

    #[test]
    fn braid_has_one_net() {
        let (a, l) = setup("braid");
        let nets = enumerate_multinets(&a, &l, MultinetOptions::default()).unwrap();
        assert_eq!(nets.len(), 1);
        assert_eq!(nets[0].partition_label(), "(12|34|56)");
        assert!(nets[0].is_net());
    }

    #[test]
    fn pencil_vectors_of_braid_net() {
        let (a, l) = setup("braid");
        let nets = enumerate_multinets(&a, &l, MultinetOptions::default()).unwrap();
        let p = pencil_subspace(&nets[0], a.n());
        assert_eq!(p.basis, vec![vec![-1, -1, 1, 1, 0, 0], vec![-1, -1, 0, 0, 1, 1]]);
        let alg = OsAlgebra::build(&a, crate::os::OsField::Q).unwrap();
        assert!(certify_pencil(&alg, &p).unwrap());
    }

    #[test]
    fn braid_is_not_pointed() {
        let (a, l) = setup("braid");
        assert!(pointed_multinets(&a, &l, MultinetOptions::default()).unwrap().is_empty());
    }

    #[test]
    fn falk1_trivial_by_beta3() {
        let (a, l) = setup("falk1");
        let r = triviality_report(&a, &l, false).unwrap();
        assert_eq!(r.verdict, Verdict::Trivial);
        assert_eq!(r.beta3, Some(0));
    }
}
