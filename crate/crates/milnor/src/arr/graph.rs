//! Double-point graph and Williams-type bounds on the first Betti number of
//! the Milnor fiber.

use super::lattice::IntersectionLattice;
use super::Arrangement;
use crate::error::{MilnorError, Result};
use exact::arith::gcd;

/// Graph on the hyperplanes with an edge for each double point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoublePointGraph {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    /// Connected components, each sorted, ordered by least element.
    pub components: Vec<Vec<usize>>,
}

impl DoublePointGraph {
    pub fn is_connected(&self) -> bool {
        self.components.len() <= 1
    }
}

/// Build the double-point graph of an arrangement of rank at most 3.
pub fn double_point_graph(a: &Arrangement, l: &IntersectionLattice) -> Result<DoublePointGraph> {
    if a.rank() > 3 {
        return Err(MilnorError::Inapplicable(format!("double-point graph needs rank ≤ 3, got {}", a.rank())));
    }
    let edges: Vec<(usize, usize)> =
        l.rank_k(2).iter().filter(|x| x.multiplicity() == 2).map(|x| (x.hyperplanes[0], x.hyperplanes[1])).collect();
    let n = a.n();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for &(u, v) in &edges {
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru != rv {
            parent[ru.max(rv)] = ru.min(rv);
        }
    }
    let mut comps: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for v in 0..n {
        let r = find(&mut parent, v);
        comps.entry(r).or_default().push(v);
    }
    let mut components: Vec<Vec<usize>> = comps.into_values().collect();
    components.sort();
    Ok(DoublePointGraph { vertices: n, edges, components })
}

/// Per-hyperplane Williams sums and the resulting bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WilliamsBound {
    /// s_H = Σ_{X ⊂ H, X ∈ L₂} (q_X − 2)(gcd(q_X, n) − 1).
    pub s: Vec<u64>,
    /// n − 1 + min_H s_H, an upper bound for b₁(F).
    pub bound: u64,
    /// True when some hyperplane has gcd(q_X, n) = 1 for all its flats with q_X > 2,
    /// which forces H₁(F; ℤ) = ℤ^{n−1}.
    pub trivial: bool,
    /// A hyperplane witnessing the triviality flag.
    pub witness: Option<usize>,
}

/// Evaluate the Williams sums from the rank-2 flats.
pub fn williams_bound(a: &Arrangement, l: &IntersectionLattice) -> WilliamsBound {
    let n = a.n();
    if n == 0 {
        return WilliamsBound { s: vec![], bound: 0, trivial: true, witness: None };
    }
    let ni = n as i64;
    let mut s = vec![0u64; n];
    let mut clean = vec![true; n];
    for x in l.rank_k(2) {
        let q = x.multiplicity() as i64;
        let g = gcd(q, ni);
        for &h in &x.hyperplanes {
            s[h] += ((q - 2) * (g - 1)) as u64;
            if q > 2 && g != 1 {
                clean[h] = false;
            }
        }
    }
    let witness = clean.iter().position(|&c| c);
    let bound = (n as u64 - 1) + s.iter().copied().min().unwrap_or(0);
    WilliamsBound { s, bound, trivial: witness.is_some(), witness }
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
    fn braid_graph_is_three_disjoint_edges() {
        let (a, l) = setup("braid");
        let g = double_point_graph(&a, &l).unwrap();
        assert_eq!(g.edges, vec![(0, 1), (2, 3), (4, 5)]);
        assert!(!g.is_connected());
    }

    #[test]
    fn pencil_graph_has_no_edges() {
        let (a, l) = setup("pencil(4)");
        assert!(double_point_graph(&a, &l).unwrap().edges.is_empty());
    }

    #[test]
    fn williams_examples() {
        let (a, l) = setup("pencil(5)");
        let w = williams_bound(&a, &l);
        assert!(!w.trivial);
        assert_eq!(w.bound, 4 + 3 * 4);
        let (a, l) = setup("generic(5,2)");
        let w = williams_bound(&a, &l);
        assert!(w.trivial);
        assert_eq!(w.bound, 4);
        assert!(w.s.iter().all(|&x| x == 0));
        let (a, l) = setup("falk2");
        let w = williams_bound(&a, &l);
        assert!(w.trivial);
        assert_eq!(w.witness, Some(5));
    }
}
