//! Intersection lattice, Möbius function and Betti numbers of the complement.

use super::Arrangement;
use exact::{Matrix, Quad};
use std::collections::{BTreeMap, BTreeSet};

/// A flat, identified by the closed set of hyperplanes containing it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Flat {
    /// Codimension of the intersection subspace.
    pub rank: usize,
    /// Sorted indices of every hyperplane containing the subspace.
    pub hyperplanes: Vec<usize>,
}

impl Flat {
    /// Multiplicity q_X = |A_X|.
    pub fn multiplicity(&self) -> usize {
        self.hyperplanes.len()
    }
    pub fn contains(&self, h: usize) -> bool {
        self.hyperplanes.binary_search(&h).is_ok()
    }
    /// Basis of the intersection subspace (column vectors of the kernel of the forms).
    pub fn subspace(&self, a: &Arrangement) -> Vec<Vec<Quad>> {
        let zero = a.field().zero();
        let rows: Vec<Vec<Quad>> = self.hyperplanes.iter().map(|&i| a.forms()[i].clone()).collect();
        if rows.is_empty() {
            let id = Matrix::identity(a.dim(), &zero);
            return (0..a.dim()).map(|i| id.row(i).to_vec()).collect();
        }
        Matrix::from_rows(rows, a.dim(), &zero).kernel()
    }
}

/// The ranked poset of flats with Möbius values.
#[derive(Clone, Debug)]
pub struct IntersectionLattice {
    /// Number of hyperplanes.
    pub n: usize,
    /// Rank of the arrangement.
    pub rank: usize,
    /// Flats grouped by rank, each rank sorted lexicographically by hyperplane set.
    pub flats: Vec<Vec<Flat>>,
    mobius: BTreeMap<Vec<usize>, i64>,
}

/// Closure of a hyperplane set: every hyperplane whose form lies in the span.
pub fn closure(a: &Arrangement, set: &[usize]) -> Vec<usize> {
    let r = a.rank_of(set);
    let mut out: Vec<usize> = (0..a.n())
        .filter(|k| {
            if set.contains(k) {
                return true;
            }
            let mut s = set.to_vec();
            s.push(*k);
            a.rank_of(&s) == r
        })
        .collect();
    out.sort_unstable();
    out
}

impl IntersectionLattice {
    /// Build all flats of rank at most `up_to_rank`.
    pub fn build(a: &Arrangement, up_to_rank: usize) -> Self {
        let total = a.rank();
        let top = up_to_rank.min(total);
        let mut flats: Vec<Vec<Flat>> = vec![vec![Flat { rank: 0, hyperplanes: vec![] }]];
        for k in 0..top {
            let mut next: BTreeSet<Vec<usize>> = BTreeSet::new();
            for x in &flats[k] {
                for h in 0..a.n() {
                    if x.contains(h) {
                        continue;
                    }
                    let mut s = x.hyperplanes.clone();
                    s.push(h);
                    let c = closure(a, &s);
                    next.insert(c);
                }
            }
            flats.push(next.into_iter().map(|hyperplanes| Flat { rank: k + 1, hyperplanes }).collect());
        }
        let mut mobius = BTreeMap::new();
        mobius.insert(vec![], 1i64);
        for k in 1..flats.len() {
            for x in &flats[k] {
                let mut s = 0i64;
                for lower in &flats[..k] {
                    for y in lower {
                        if is_subset(&y.hyperplanes, &x.hyperplanes) {
                            s += mobius[&y.hyperplanes];
                        }
                    }
                }
                mobius.insert(x.hyperplanes.clone(), -s);
            }
        }
        IntersectionLattice { n: a.n(), rank: total, flats, mobius }
    }

    /// Build the full lattice.
    pub fn full(a: &Arrangement) -> Self {
        Self::build(a, a.rank())
    }

    /// Möbius value of a flat.
    pub fn mobius(&self, flat: &Flat) -> i64 {
        self.mobius[&flat.hyperplanes]
    }

    /// Flats of rank k (empty if not built).
    pub fn rank_k(&self, k: usize) -> &[Flat] {
        self.flats.get(k).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Histogram of multiplicities q_X over the rank-2 flats.
    pub fn l2_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for x in self.rank_k(2) {
            *h.entry(x.multiplicity()).or_insert(0) += 1;
        }
        h
    }

    /// Rank-2 flats with at least three hyperplanes.
    pub fn multiple_points(&self) -> Vec<&Flat> {
        self.rank_k(2).iter().filter(|x| x.multiplicity() >= 3).collect()
    }

    /// The rank-2 flat spanned by two distinct hyperplanes.
    pub fn flat_of_pair(&self, h: usize, k: usize) -> Option<&Flat> {
        self.rank_k(2).iter().find(|x| x.contains(h) && x.contains(k))
    }

    /// True when every rank up to the rank of the arrangement was built.
    pub fn is_complete(&self) -> bool {
        self.flats.len() == self.rank + 1
    }

    /// Multiset of (rank, |A_X|, μ) triples, sorted; used to compare lattices.
    pub fn signature(&self) -> Vec<(usize, usize, i64)> {
        let mut v: Vec<(usize, usize, i64)> =
            self.flats.iter().flatten().map(|x| (x.rank, x.multiplicity(), self.mobius(x))).collect();
        v.sort_unstable();
        v
    }
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.len() < big.len() && small.iter().all(|x| big.binary_search(x).is_ok())
}

/// Betti numbers of the complement M and of its projectivization U.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Betti {
    pub m: Vec<u64>,
    pub u: Vec<u64>,
}

impl Betti {
    /// Coefficients of the Poincaré polynomial of U, lowest degree first.
    pub fn poincare_u(&self) -> &[u64] {
        &self.u
    }
    /// Euler characteristic of U.
    pub fn euler_u(&self) -> i64 {
        self.u.iter().enumerate().map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) }).sum()
    }
}

/// b_k(M) = |Σ_{X∈L_k} μ(X)| and b_k(U) = b_k(M) − b_{k−1}(U).
pub fn betti_numbers(l: &IntersectionLattice) -> Betti {
    let m: Vec<u64> = l.flats.iter().map(|fl| fl.iter().map(|x| l.mobius(x)).sum::<i64>().unsigned_abs()).collect();
    let mut u: Vec<u64> = Vec::new();
    if l.n == 0 {
        return Betti { m, u: vec![1] };
    }
    for (k, &bm) in m.iter().enumerate() {
        let prev = if k == 0 { 0 } else { u[k - 1] };
        u.push(bm - prev);
    }
    // U has dimension r−1: the top entry of the recursion is zero.
    while u.len() > 1 && *u.last().unwrap() == 0 {
        u.pop();
    }
    Betti { m, u }
}

/// Render the histogram `q ↦ count` of rank-2 flats with string keys.
pub fn l2_histogram_json(l: &IntersectionLattice) -> serde_json::Value {
    let mut obj = serde_json::Map::new();
    for (q, c) in l.l2_histogram() {
        obj.insert(q.to_string(), serde_json::json!(c));
    }
    serde_json::Value::Object(obj)
}
