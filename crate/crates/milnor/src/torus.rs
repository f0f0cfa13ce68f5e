//! Algebraic subtori of character tori (ℂ*)ⁿ: torsion characters, translated
//! subtori, monomial images, intersections, and the degree-one characteristic
//! varieties assembled from resonance and pointed multinets.

use crate::arr::catalog::catalog;
use crate::arr::lattice::IntersectionLattice;
use crate::arr::Arrangement;
use crate::error::{MilnorError, Result};
use crate::multinet::{pencil_subspace, pointed_multinets, MultinetOptions};
use crate::os::resonance::{resonance_components_deg1, ComponentKind};
use exact::arith::{gcd, lcm, modulo};
use exact::IntMatrix;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

/// A torsion character γ_i ↦ ζ_N^{v_i}, stored with its exact order N.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    pub order: u64,
    pub exps: Vec<u64>,
}

impl Character {
    /// Reduce exponents mod N and lower N to the exact order.
    pub fn new(order: u64, exps: &[i64]) -> Self {
        assert!(order >= 1, "character order must be positive");
        let n = order as i64;
        let mut g = n;
        let reduced: Vec<i64> = exps.iter().map(|&e| modulo(e, n)).collect();
        for &e in &reduced {
            g = gcd(g, e);
        }
        let g = g.max(1);
        Character { order: (n / g) as u64, exps: reduced.iter().map(|&e| (e / g) as u64).collect() }
    }

    pub fn identity(n: usize) -> Self {
        Character { order: 1, exps: vec![0; n] }
    }

    /// The character with values ±1 (true means −1).
    pub fn from_signs(signs: &[bool]) -> Self {
        let e: Vec<i64> = signs.iter().map(|&s| i64::from(s)).collect();
        Character::new(2, &e)
    }

    pub fn ambient(&self) -> usize {
        self.exps.len()
    }

    pub fn is_identity(&self) -> bool {
        self.order == 1
    }

    /// Exponents rescaled to a multiple L of the order.
    pub fn exps_at(&self, l: u64) -> Vec<i64> {
        assert_eq!(l % self.order, 0);
        let f = (l / self.order) as i64;
        self.exps.iter().map(|&e| e as i64 * f).collect()
    }

    pub fn mul(&self, other: &Character) -> Character {
        let l = lcm(self.order as i64, other.order as i64) as u64;
        let e: Vec<i64> = self.exps_at(l).iter().zip(other.exps_at(l)).map(|(a, b)| a + b).collect();
        Character::new(l, &e)
    }

    pub fn inverse(&self) -> Character {
        let e: Vec<i64> = self.exps.iter().map(|&x| -(x as i64)).collect();
        Character::new(self.order, &e)
    }

    pub fn pow(&self, k: i64) -> Character {
        let e: Vec<i64> = self.exps.iter().map(|&x| x as i64 * k).collect();
        Character::new(self.order, &e)
    }

    /// Image under the monomial map t ↦ (t^{f_1}, …, t^{f_m}) with rows f_i.
    pub fn image(&self, f: &[Vec<i64>]) -> Character {
        let e: Vec<i64> = f.iter().map(|row| row.iter().zip(&self.exps).map(|(a, &b)| a * b as i64).sum()).collect();
        Character::new(self.order, &e)
    }

    /// Value of the character on the integer vector w, as an exponent of ζ_N.
    pub fn pair(&self, w: &[i64]) -> i64 {
        modulo(w.iter().zip(&self.exps).map(|(a, &b)| a * b as i64).sum(), self.order as i64)
    }

    pub fn to_json(&self) -> Value {
        json!({"order": self.order, "exps": self.exps})
    }
}

/// Integer rows of a saturated basis of the ℚ-span of `vectors` in ℤⁿ.
pub fn saturate(vectors: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    if vectors.is_empty() {
        return vec![];
    }
    let cols = IntMatrix::from_i64_rows(vectors, n).transpose();
    let sat = cols.saturate_columns().transpose();
    sat.hermite_rows().to_i64_rows()
}

/// Integer rows spanning {w ∈ ℤⁿ : w·b = 0 for every b in `vectors`}.
pub fn orthogonal(vectors: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    if vectors.is_empty() {
        return IntMatrix::identity(n).to_i64_rows();
    }
    let m = IntMatrix::from_i64_rows(vectors, n);
    let k = m.kernel_basis().transpose();
    if k.rows() == 0 {
        return vec![];
    }
    k.hermite_rows().to_i64_rows()
}

/// A translated subtorus ρ·T⁰ of (ℂ*)ⁿ with T⁰ = {s^B} for a saturated lattice B.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslatedSubtorus {
    pub ambient: usize,
    /// Saturated basis of the cocharacter lattice of T⁰, as Hermite-reduced rows.
    pub basis: Vec<Vec<i64>>,
    pub translate: Character,
    /// Generic depth label s: the component lies in V¹_s.
    pub depth: usize,
}

impl TranslatedSubtorus {
    pub fn new(ambient: usize, basis: &[Vec<i64>], translate: Character, depth: usize) -> Self {
        assert_eq!(translate.ambient(), ambient);
        let basis = saturate(basis, ambient);
        let mut t = TranslatedSubtorus { ambient, basis, translate, depth };
        t.translate = t.canonical_translate();
        t
    }

    /// The full torus (ℂ*)ⁿ.
    pub fn full(n: usize, depth: usize) -> Self {
        TranslatedSubtorus::new(n, &IntMatrix::identity(n).to_i64_rows(), Character::identity(n), depth)
    }

    /// The subtorus {t : t^w = 1 for every row w}, saturated.
    pub fn from_equations(n: usize, equations: &[Vec<i64>], depth: usize) -> Self {
        let basis = orthogonal(equations, n);
        TranslatedSubtorus::new(n, &basis, Character::identity(n), depth)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn passes_through_identity(&self) -> bool {
        self.translate.is_identity()
    }

    /// Implicit form: integer rows w with T⁰ = {t^w = 1}.
    pub fn equations(&self) -> Vec<Vec<i64>> {
        orthogonal(&self.basis, self.ambient)
    }

    /// Membership of a torsion character: (ξρ⁻¹)^w = 1 for every equation w.
    pub fn contains(&self, xi: &Character) -> bool {
        let d = xi.mul(&self.translate.inverse());
        self.equations().iter().all(|w| d.pair(w) == 0)
    }

    /// Containment of translated subtori.
    pub fn contains_subtorus(&self, other: &TranslatedSubtorus) -> bool {
        let eqs = self.equations();
        other.basis.iter().all(|b| eqs.iter().all(|w| w.iter().zip(b).map(|(x, y)| x * y).sum::<i64>() == 0))
            && self.contains(&other.translate)
    }

    /// Same underlying set.
    pub fn same_set(&self, other: &TranslatedSubtorus) -> bool {
        self.basis == other.basis && self.contains(&other.translate)
    }

    /// A translate of minimal order among ρ·T⁰ found by solving on the
    /// quotient ℤⁿ/L; the representative is the one with zero free coordinates.
    fn canonical_translate(&self) -> Character {
        if self.translate.is_identity() || self.basis.is_empty() {
            return self.translate.clone();
        }
        let eqs = self.equations();
        if eqs.is_empty() {
            return Character::identity(self.ambient);
        }
        let rhs: Vec<i64> = eqs.iter().map(|w| self.translate.pair(w)).collect();
        let sols = solve_torus_system(self.ambient, &eqs, &rhs, self.translate.order);
        // ρT⁰ is a single coset, so exactly one solution coset is returned.
        sols.into_iter().next().map(|(c, _)| c).unwrap_or_else(|| self.translate.clone())
    }

    /// Image under the monomial map with integer rows `f` (m × n).
    pub fn image(&self, f: &[Vec<i64>]) -> TranslatedSubtorus {
        let m = f.len();
        let vecs: Vec<Vec<i64>> = self
            .basis
            .iter()
            .map(|b| f.iter().map(|row| row.iter().zip(b).map(|(x, y)| x * y).sum()).collect())
            .collect();
        TranslatedSubtorus::new(m, &vecs, self.translate.image(f), self.depth)
    }

    /// Parametric points t = ρ·s^B for s = ζ_k^{c} with integer c, as a character of order lcm.
    pub fn point(&self, k: u64, c: &[i64]) -> Character {
        let mut e = vec![0i64; self.ambient];
        for (b, &ci) in self.basis.iter().zip(c) {
            for (x, y) in e.iter_mut().zip(b) {
                *x += ci * y;
            }
        }
        Character::new(k, &e).mul(&self.translate)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "ambient": self.ambient,
            "dim": self.dim(),
            "basis": self.basis,
            "translate": self.translate.to_json(),
            "depth": self.depth,
        })
    }
}

fn big_to_i64(b: &BigInt) -> i64 {
    b.to_i64().expect("entry fits in i64")
}

/// Solve t^{w_i} = ζ_N^{c_i} for all rows w_i of `eqs`.  Returns one
/// (translate, kernel basis) pair per connected component of the solution set.
fn solve_torus_system(n: usize, eqs: &[Vec<i64>], rhs: &[i64], order: u64) -> Vec<(Character, Vec<Vec<i64>>)> {
    let k = eqs.len();
    if k == 0 {
        return vec![(Character::identity(n), IntMatrix::identity(n).to_i64_rows())];
    }
    let w = IntMatrix::from_i64_rows(eqs, n);
    let s = w.smith_with_transforms();
    let u = s.u.expect("transforms requested");
    let v = s.v.expect("transforms requested");
    let r = s.rank;
    let n0 = order as i64;
    // c' = U c, numerators over N0.
    let c: Vec<BigInt> = rhs.iter().map(|&x| BigInt::from(x)).collect();
    let cp: Vec<i64> = u.apply(&c).iter().map(|x| big_to_i64(x).rem_euclid(n0)).collect();
    if cp[r..].iter().any(|&x| x != 0) {
        return vec![];
    }
    let d: Vec<i64> = s.diagonal.iter().map(big_to_i64).collect();
    let dl = d.iter().fold(1i64, |acc, &x| lcm(acc, x));
    let nt = n0 * dl;
    let vrows = v.to_i64_rows();
    let kernel: Vec<Vec<i64>> = (r..n).map(|j| (0..n).map(|i| vrows[i][j]).collect()).collect();
    let total: i64 = d.iter().product();
    assert!(total <= 1_000_000, "too many torsion translates");
    let mut out = Vec::with_capacity(total as usize);
    let mut choice = vec![0i64; r];
    loop {
        // y_i = (c'_i + j_i N0) / (d_i N0), as numerators over Nt.
        let y: Vec<i64> = (0..r).map(|i| (cp[i] + choice[i] * n0) * (nt / (d[i] * n0))).collect();
        let x: Vec<i64> = (0..n).map(|row| (0..r).map(|i| vrows[row][i] * y[i]).sum::<i64>()).collect();
        out.push((Character::new(nt as u64, &x), kernel.clone()));
        let mut i = 0;
        loop {
            if i == r {
                return out;
            }
            choice[i] += 1;
            if choice[i] < d[i] {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Intersection of two translated subtori: positive-dimensional pieces and isolated points.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Intersection {
    pub components: Vec<TranslatedSubtorus>,
    pub points: Vec<Character>,
}

impl Intersection {
    pub fn is_empty(&self) -> bool {
        self.components.is_empty() && self.points.is_empty()
    }
}

/// Exact intersection ρ₁T₁ ∩ ρ₂T₂ via the Smith form of the stacked equations.
pub fn intersect_translated(a: &TranslatedSubtorus, b: &TranslatedSubtorus) -> Intersection {
    assert_eq!(a.ambient, b.ambient, "ambient ranks differ");
    let n = a.ambient;
    let order = lcm(a.translate.order as i64, b.translate.order as i64) as u64;
    let (ea, eb) = (a.equations(), b.equations());
    let mut eqs = Vec::new();
    let mut rhs = Vec::new();
    for w in ea {
        rhs.push(a.translate.pair(&w) * (order / a.translate.order) as i64);
        eqs.push(w);
    }
    for w in eb {
        rhs.push(b.translate.pair(&w) * (order / b.translate.order) as i64);
        eqs.push(w);
    }
    let depth = a.depth.max(b.depth);
    let mut out = Intersection::default();
    for (chi, kernel) in solve_torus_system(n, &eqs, &rhs, order) {
        debug_assert!(a.contains(&chi) && b.contains(&chi));
        if kernel.is_empty() {
            out.points.push(chi);
        } else {
            out.components.push(TranslatedSubtorus::new(n, &kernel, chi, depth));
        }
    }
    out.points.sort();
    out
}

/// Monomial map (ℂ*)^{n−1} → (ℂ*)ⁿ filling coordinate `drop` with the inverse product.
pub fn hopf_inclusion(n: usize, drop: usize) -> Vec<Vec<i64>> {
    let mut rows = Vec::with_capacity(n);
    let mut j = 0;
    for i in 0..n {
        if i == drop {
            rows.push(vec![-1; n - 1]);
        } else {
            let mut r = vec![0; n - 1];
            r[j] = 1;
            j += 1;
            rows.push(r);
        }
    }
    rows
}

/// Coordinate projection (ℂ*)ⁿ → (ℂ*)^{n−1} forgetting coordinate `h`.
pub fn drop_coordinate(n: usize, h: usize) -> Vec<Vec<i64>> {
    (0..n).filter(|&i| i != h).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

/// Restriction of characters of H₁(M) to the sublattice spanned by
/// γ_i − γ_{i+1}: z ↦ (z₁/z₂, …, z_{n−1}/z_n).
pub fn iota_star(n: usize) -> Vec<Vec<i64>> {
    (0..n - 1)
        .map(|i| {
            let mut r = vec![0; n];
            r[i] = 1;
            r[i + 1] = -1;
            r
        })
        .collect()
}

/// Composition f∘g of monomial maps given by their row matrices.
pub fn compose(f: &[Vec<i64>], g: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let inner = g.first().map_or(0, |r| r.len());
    f.iter().map(|row| (0..inner).map(|j| row.iter().zip(g).map(|(a, gr)| a * gr[j]).sum()).collect()).collect()
}

/// How far a component list can be trusted to be complete.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Completeness {
    /// Every component is documented for this catalog entry.
    Certified,
    /// Components found combinatorially; others (translated tori, isolated points) may exist.
    Heuristic,
}

impl Completeness {
    pub fn as_str(&self) -> &'static str {
        match self {
            Completeness::Certified => "certified",
            Completeness::Heuristic => "heuristic",
        }
    }
}

/// A characteristic variety given as a finite union of translated subtori and torsion points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CvPresentation {
    pub ambient: usize,
    pub components: Vec<TranslatedSubtorus>,
    /// Isolated torsion points with their depths.
    pub points: Vec<(Character, usize)>,
    pub completeness: Completeness,
}

impl CvPresentation {
    pub fn new(ambient: usize, completeness: Completeness) -> Self {
        CvPresentation { ambient, components: vec![], points: vec![], completeness }
    }

    /// Add a component unless it is contained in an existing one; drop existing ones it contains.
    pub fn add(&mut self, t: TranslatedSubtorus) {
        assert_eq!(t.ambient, self.ambient);
        if let Some(c) = self.components.iter_mut().find(|c| c.same_set(&t)) {
            c.depth = c.depth.max(t.depth);
            return;
        }
        if self.components.iter().any(|c| c.contains_subtorus(&t) && c.depth >= t.depth) {
            return;
        }
        self.components.retain(|c| !(t.contains_subtorus(c) && t.depth >= c.depth));
        self.components.push(t);
    }

    /// Image of every component under a monomial map.
    pub fn image(&self, f: &[Vec<i64>]) -> CvPresentation {
        let mut out = CvPresentation::new(f.len(), self.completeness);
        for c in &self.components {
            out.add(c.image(f));
        }
        out.points = self.points.iter().map(|(p, d)| (p.image(f), *d)).collect();
        out
    }

    pub fn through_identity(&self) -> Vec<&TranslatedSubtorus> {
        self.components.iter().filter(|c| c.passes_through_identity()).collect()
    }

    pub fn translated(&self) -> Vec<&TranslatedSubtorus> {
        self.components.iter().filter(|c| !c.passes_through_identity()).collect()
    }

    /// Characters lying in at least two distinct positive-dimensional components.
    pub fn pairwise_torsion_points(&self) -> Vec<Character> {
        let mut pts = Vec::new();
        for i in 0..self.components.len() {
            for j in i + 1..self.components.len() {
                for p in intersect_translated(&self.components[i], &self.components[j]).points {
                    if !pts.contains(&p) {
                        pts.push(p);
                    }
                }
            }
        }
        pts.sort();
        pts
    }

    pub fn to_json(&self) -> Value {
        json!({
            "ambient": self.ambient,
            "components": self.components.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
            "points": self.points.iter().map(|(p, d)| json!({"character": p.to_json(), "depth": d})).collect::<Vec<_>>(),
            "completeness": self.completeness.as_str(),
        })
    }
}

/// V¹ of the complement M and of its projectivization U.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cv1 {
    pub m: CvPresentation,
    pub u: CvPresentation,
    /// Coordinate dropped to identify H¹(U; ℂ*) with (ℂ*)^{n−1}.
    pub u_drop: usize,
}

impl Cv1 {
    pub fn to_json(&self) -> Value {
        json!({"M": self.m.to_json(), "U": self.u.to_json(), "u_drop": self.u_drop})
    }
}

/// Options for [`assemble_cv1`].
#[derive(Clone, Debug)]
#[derive(Default)]
pub struct CvOptions {
    /// Parent arrangement A ∪ {H} and the index of H in it, for pointed-multinet translates.
    pub parent: Option<(Arrangement, usize)>,
    pub certified: bool,
    pub u_drop: usize,
    pub seed: u64,
}


impl CvOptions {
    /// Options filled in from the catalog entry of the given name.
    pub fn for_catalog(name: &str) -> Result<Self> {
        let e = catalog(name)?;
        let parent = match &e.deletion_of {
            Some((p, order, h)) => Some((catalog(p)?.arrangement.restrict(order), *h)),
            None => None,
        };
        Ok(CvOptions { parent, certified: e.cv_certified, ..Default::default() })
    }
}

/// Translated subtori of V¹₁(M(A∖H)) predicted by pointed multinets on A at H:
/// the components of exp(P_N) ∩ {t_H = 1} avoiding 1, with coordinate H dropped.
pub fn pointed_translates(parent: &Arrangement, h: usize) -> Result<Vec<TranslatedSubtorus>> {
    let l = IntersectionLattice::full(parent);
    let n = parent.n();
    let slice = TranslatedSubtorus::new(n, &drop_coordinate(n, h), Character::identity(n), 0);
    let proj = drop_coordinate(n, h);
    let mut out: Vec<TranslatedSubtorus> = Vec::new();
    for pm in pointed_multinets(parent, &l, MultinetOptions::default())? {
        if pm.hyperplane != h {
            continue;
        }
        let p = pencil_subspace(&pm.multinet, n);
        let depth = pm.multinet.k().saturating_sub(2);
        let t = TranslatedSubtorus::new(n, &p.basis, Character::identity(n), depth);
        for c in intersect_translated(&t, &slice).components {
            if !c.passes_through_identity() {
                let img = c.image(&proj);
                if !out.iter().any(|o| o.same_set(&img)) {
                    out.push(img);
                }
            }
        }
    }
    Ok(out)
}

/// Assemble V¹(M) and V¹(U) from resonance components (through 1) and pointed-multinet translates.
pub fn assemble_cv1(a: &Arrangement, l: &IntersectionLattice, opts: &CvOptions) -> Result<Cv1> {
    let n = a.n();
    if n == 0 {
        return Err(MilnorError::InvalidInput("empty arrangement".into()));
    }
    let completeness = if opts.certified { Completeness::Certified } else { Completeness::Heuristic };
    let mut m = CvPresentation::new(n, completeness);
    if !l.multiple_points().is_empty() {
        if a.rank() > 3 {
            return Err(MilnorError::Inapplicable("characteristic varieties are assembled for rank ≤ 3".into()));
        }
        for c in resonance_components_deg1(a, l, opts.seed)? {
            let depth = match &c.kind {
                ComponentKind::Local { flat } => flat.len() - 2,
                ComponentKind::Multinet { .. } => c.k - 2,
            };
            m.add(TranslatedSubtorus::new(n, &c.basis, Character::identity(n), depth));
        }
    }
    if let Some((parent, h)) = &opts.parent {
        if parent.n() != n + 1 {
            return Err(MilnorError::InvalidInput("parent must have exactly one more hyperplane".into()));
        }
        for t in pointed_translates(parent, *h)? {
            m.add(t);
        }
    }
    let u_drop = opts.u_drop.min(n - 1);
    let u = m.image(&drop_coordinate(n, u_drop));
    Ok(Cv1 { m, u, u_drop })
}

/// Result of a depth query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DepthEstimate {
    /// depth₁(ξ); zero with `trivial` set for the identity (callers use b₁ there).
    pub value: usize,
    /// Exact when the presentation is certified and ξ lies in at most two components.
    pub exact: bool,
    pub trivial: bool,
    /// Indices of the positive-dimensional components containing ξ.
    pub containing: Vec<usize>,
}

impl DepthEstimate {
    pub fn to_json(&self) -> Value {
        json!({
            "value": self.value,
            "certainty": if self.exact { "exact" } else { "lower-bound" },
            "trivial": self.trivial,
            "containing": self.containing,
        })
    }
}

/// depth₁(ξ) of a torsion character from a component list, with the bump
/// depth(ξ) ≥ r + s for ξ in two distinct components of depths r and s.
pub fn character_depth(cv: &CvPresentation, xi: &Character) -> DepthEstimate {
    if xi.is_identity() {
        return DepthEstimate { value: 0, exact: true, trivial: true, containing: vec![] };
    }
    let containing: Vec<usize> =
        cv.components.iter().enumerate().filter(|(_, c)| c.dim() > 0 && c.contains(xi)).map(|(i, _)| i).collect();
    let mut labels: Vec<usize> = containing.iter().map(|&i| cv.components[i].depth).collect();
    labels.sort_unstable_by(|a, b| b.cmp(a));
    let mut value = match labels.len() {
        0 => 0,
        1 => labels[0],
        _ => labels[0] + labels[1],
    };
    for (p, d) in &cv.points {
        if p == xi {
            value = value.max(*d);
        }
    }
    let exact = cv.completeness == Completeness::Certified && containing.len() <= 2;
    DepthEstimate { value, exact, trivial: false, containing }
}

/// The characters ρ^j (j = 1..N−1) through which H₁ of the Milnor fiber F_m
/// decomposes: ρ(γ_H) = ζ_N^{m_H}, N = Σ m_H.
pub fn fiber_characters(m: &[u64]) -> Vec<Character> {
    let nn: u64 = m.iter().sum();
    let base: Vec<i64> = m.iter().map(|&x| x as i64).collect();
    let rho = Character::new(nn, &base);
    (1..nn as i64).map(|j| rho.pow(j)).collect()
}

/// b₁(F_m) − (n − 1) = Σ_{j} depth(ρ^j), together with whether every term is exact.
pub fn b1_excess_from_cv(cv: &CvPresentation, m: &[u64]) -> (usize, bool) {
    let mut total = 0;
    let mut exact = true;
    for xi in fiber_characters(m) {
        let d = character_depth(cv, &xi);
        total += d.value;
        exact &= d.exact;
    }
    (total, exact)
}

/// Character torus data of Γ = F_n * ℤ_{μ₁} * … * ℤ_{μ_h}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbifoldTorusData {
    pub n: usize,
    pub mus: Vec<u64>,
    pub strata: Vec<OrbifoldStratum>,
}

/// V¹_s(Γ) as components λ·T⁰ in (ℂ*)ⁿ × T_Λ ⊂ (ℂ*)^{n+h}, plus possibly the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbifoldStratum {
    pub s: usize,
    pub components: Vec<TranslatedSubtorus>,
    /// The identity character belongs to V¹_s(Γ) without a surrounding component.
    pub identity_point: bool,
}

impl OrbifoldTorusData {
    pub fn stratum(&self, s: usize) -> Option<&OrbifoldStratum> {
        self.strata.iter().find(|x| x.s == s)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "mus": self.mus,
            "strata": self.strata.iter().map(|st| json!({
                "s": st.s,
                "components": st.components.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
                "identity_point": st.identity_point,
            })).collect::<Vec<_>>(),
        })
    }
}

fn torsion_characters(mus: &[u64]) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for &mu in mus {
        let mut next = Vec::new();
        for v in &out {
            for e in 0..mu {
                let mut w = v.clone();
                w.push(e);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

/// V¹_s(Γ) for s = 1..=n+h:
/// the whole torus for s ≤ n−1, (T∖T⁰) ∪ {1} for s = n, the translates λT⁰ with
/// ℓ(λ) ≥ s−n+1 for n < s < n+h, and empty from s = n+h on.
pub fn orbifold_v1(n: usize, mus: &[u64]) -> Result<OrbifoldTorusData> {
    if mus.iter().any(|&m| m < 2) {
        return Err(MilnorError::InvalidInput("orbifold multiplicities must be at least 2".into()));
    }
    let h = mus.len();
    let amb = n + h;
    let order = mus.iter().fold(1i64, |acc, &m| lcm(acc, m as i64)) as u64;
    let free: Vec<Vec<i64>> = (0..n).map(|i| (0..amb).map(|j| i64::from(i == j)).collect()).collect();
    let lambdas = torsion_characters(mus);
    let comp = |lam: &[u64], s: usize| {
        let mut e = vec![0i64; amb];
        for (i, (&x, &mu)) in lam.iter().zip(mus).enumerate() {
            e[n + i] = (x * (order / mu)) as i64;
        }
        TranslatedSubtorus::new(amb, &free, Character::new(order, &e), s)
    };
    let ell = |lam: &[u64]| lam.iter().filter(|&&x| x != 0).count();
    let mut strata = Vec::new();
    for s in 1..=amb.max(1) {
        let (components, identity_point) = if s < n {
            (lambdas.iter().map(|l| comp(l, s)).collect(), false)
        } else if s == n {
            (lambdas.iter().filter(|l| ell(l) > 0).map(|l| comp(l, s)).collect(), true)
        } else if s < n + h {
            (lambdas.iter().filter(|l| ell(l) > s - n).map(|l| comp(l, s)).collect(), false)
        } else {
            (vec![], false)
        };
        strata.push(OrbifoldStratum { s, components, identity_point });
    }
    Ok(OrbifoldTorusData { n, mus: mus.to_vec(), strata })
}
