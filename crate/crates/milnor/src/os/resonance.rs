//! Degree-one resonance components and propagation checks.

use super::{OsAlgebra, OsField};
use crate::arr::lattice::IntersectionLattice;
use crate::arr::Arrangement;
use crate::error::{MilnorError, Result};
use crate::multinet::{enumerate_multinets, pencil_subspace, Multinet, MultinetOptions};
use exact::{rat, IntMatrix, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

/// Origin of a resonance component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComponentKind {
    /// Local component of a flat with at least three hyperplanes.
    Local { flat: Vec<usize> },
    /// Component P_N of a multinet on a (sub-)arrangement.
    Multinet { partition: Vec<Vec<usize>>, support: Vec<usize>, essential: bool },
}

/// A linear subspace of A¹ contained in R¹₁.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResonanceComponent {
    pub kind: ComponentKind,
    /// Integer basis vectors (rows) in the coordinates e_H.
    pub basis: Vec<Vec<i64>>,
    /// Number of classes k of the underlying (multi)net; generic points have b₁ = k − 2.
    pub k: usize,
    /// Certified by an Aomoto computation at a generic point.
    pub certified: bool,
}

impl ResonanceComponent {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({"basis": self.basis, "dim": self.dim()});
        match &self.kind {
            ComponentKind::Local { flat } => {
                v["kind"] = json!("local");
                v["flat"] = json!(flat);
            }
            ComponentKind::Multinet { partition, support, essential } => {
                v["kind"] = json!("multinet");
                v["partition"] = json!(partition);
                v["support"] = json!(support);
                v["essential"] = json!(essential);
            }
        }
        v
    }

    /// A seeded pseudorandom integer point of the component.
    pub fn sample(&self, rng: &mut ChaCha8Rng, n: usize) -> Vec<i64> {
        let mut a = vec![0i64; n];
        for b in &self.basis {
            let c: i64 = rng.gen_range(-9..=9);
            for (x, y) in a.iter_mut().zip(b) {
                *x += c * y;
            }
        }
        a
    }
}

fn component_from_multinet(mn: &Multinet, n: usize) -> ResonanceComponent {
    let p = pencil_subspace(mn, n);
    let kind = if mn.is_local() {
        ComponentKind::Local { flat: mn.support.clone() }
    } else {
        ComponentKind::Multinet { partition: mn.partition.clone(), support: mn.support.clone(), essential: mn.is_full(n) }
    };
    ResonanceComponent { kind, basis: p.basis, k: mn.k(), certified: false }
}

fn to_rational(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| rat(x, 1)).collect()
}

/// Canonical key of a subspace: the Hermite form of its saturated integer basis.
fn subspace_key(basis: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    let m = IntMatrix::from_i64_rows(basis, n).transpose().saturate_columns().transpose();
    m.hermite_rows().to_i64_rows()
}

/// Local and multinet components of R¹₁(A) over ℚ, deduplicated and certified.
pub fn resonance_components_deg1(a: &Arrangement, l: &IntersectionLattice, seed: u64) -> Result<Vec<ResonanceComponent>> {
    if a.rank() > 3 {
        return Err(MilnorError::Inapplicable("degree-one component lists need rank at most 3".into()));
    }
    if a.rank() < 3 {
        // A pencil (or smaller): a single local component if some flat has q ≥ 3.
        let mut out = Vec::new();
        for x in l.multiple_points() {
            let mn = crate::multinet::local_net(a.n(), &x.hyperplanes);
            out.push(component_from_multinet(&mn, a.n()));
        }
        return certify_all(a, out, seed);
    }
    let opts = MultinetOptions { sub_arrangements: true, include_local: true, ..Default::default() };
    let nets = enumerate_multinets(a, l, opts)?;
    let mut out: Vec<ResonanceComponent> = Vec::new();
    let mut keys: Vec<Vec<Vec<i64>>> = Vec::new();
    for mn in &nets {
        let c = component_from_multinet(mn, a.n());
        let key = subspace_key(&c.basis, a.n());
        if !keys.contains(&key) {
            keys.push(key);
            out.push(c);
        }
    }
    certify_all(a, out, seed)
}

fn certify_all(a: &Arrangement, mut comps: Vec<ResonanceComponent>, seed: u64) -> Result<Vec<ResonanceComponent>> {
    let alg = OsAlgebra::build_truncated(a, OsField::Q, 2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for c in comps.iter_mut() {
        let expected = c.k.saturating_sub(2).max(1);
        let mut ok = false;
        for _ in 0..20 {
            let pt = c.sample(&mut rng, a.n());
            if pt.iter().all(|&x| x == 0) {
                continue;
            }
            let b1 = alg.aomoto_betti_q(&to_rational(&pt))?[1];
            if b1 == expected {
                ok = true;
                break;
            }
        }
        c.certified = ok;
    }
    Ok(comps)
}

/// Outcome of a propagation check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropagationReport {
    pub seed: u64,
    pub samples_per_component: usize,
    pub checked: usize,
    /// Samples that turned out to lie outside R¹₁ (vacuous passes).
    pub vacuous: usize,
    /// (component index, sample, degree) triples where b_q(A, δ_a) = 0.
    pub violations: Vec<(usize, Vec<i64>, usize)>,
}

impl PropagationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
    pub fn to_json(&self) -> Value {
        json!({
            "seed": self.seed,
            "samples_per_component": self.samples_per_component,
            "checked": self.checked,
            "vacuous": self.vacuous,
            "violations": self.violations.len(),
            "passed": self.passed(),
        })
    }
}

/// For sampled points a of each component, check b_q(A, δ_a) ≥ 1 for q = 1..r.
pub fn propagation_check(
    a: &Arrangement,
    components: &[ResonanceComponent],
    samples: usize,
    seed: u64,
) -> Result<PropagationReport> {
    let alg = OsAlgebra::build(a, OsField::Q)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = PropagationReport { seed, samples_per_component: samples, checked: 0, vacuous: 0, violations: vec![] };
    for (ci, c) in components.iter().enumerate() {
        for _ in 0..samples {
            let pt = c.sample(&mut rng, a.n());
            let b = alg.aomoto_betti_q(&to_rational(&pt))?;
            report.checked += 1;
            if b.get(1).copied().unwrap_or(0) == 0 {
                report.vacuous += 1;
                continue;
            }
            for (q, &bq) in b.iter().enumerate().skip(1) {
                if bq == 0 {
                    report.violations.push((ci, pt.clone(), q));
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arr::catalog::catalog;

    #[test]
    fn pencil_has_one_component() {
        let a = catalog("pencil(5)").unwrap().arrangement;
        let l = IntersectionLattice::full(&a);
        let comps = resonance_components_deg1(&a, &l, 1).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].dim(), 4);
        assert!(comps[0].certified);
    }

    #[test]
    fn braid_components() {
        let a = catalog("braid").unwrap().arrangement;
        let l = IntersectionLattice::full(&a);
        let comps = resonance_components_deg1(&a, &l, 7).unwrap();
        assert_eq!(comps.len(), 5);
        assert!(comps.iter().all(|c| c.certified && c.dim() == 2));
        let r = propagation_check(&a, &comps, 25, 11).unwrap();
        assert!(r.passed());
    }
}
