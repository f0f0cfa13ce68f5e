//! Lattice statistics, Betti numbers and graph data of the catalog arrangements.

use milnor::arr::catalog::{catalog, default_instances};
use milnor::arr::graph::{double_point_graph, williams_bound};
use milnor::arr::lattice::{betti_numbers, IntersectionLattice};
use milnor::arr::{parse_arrangement_str, Arrangement};
use std::collections::BTreeMap;

fn lattice(name: &str) -> (Arrangement, IntersectionLattice) {
    let a = catalog(name).unwrap().arrangement;
    let l = IntersectionLattice::full(&a);
    (a, l)
}

fn hist(pairs: &[(usize, usize)]) -> BTreeMap<usize, usize> {
    pairs.iter().copied().collect()
}

#[test]
fn rank_two_statistics() {
    assert_eq!(lattice("braid").1.l2_histogram(), hist(&[(2, 3), (3, 4)]));
    assert_eq!(lattice("falk1").1.l2_histogram(), hist(&[(2, 9), (3, 2)]));
    assert_eq!(lattice("falk2").1.l2_histogram(), hist(&[(2, 9), (3, 2)]));
    assert_eq!(lattice("b3").1.l2_histogram(), hist(&[(2, 6), (3, 4), (4, 3)]));
    assert_eq!(lattice("deleted_b3").1.l2_histogram(), hist(&[(2, 4), (3, 6), (4, 1)]));
    assert_eq!(lattice("icosidodecahedral").1.l2_histogram(), hist(&[(2, 30), (4, 15)]));
    assert_eq!(lattice("monomial333").1.l2_histogram(), hist(&[(3, 12)]));
}

#[test]
fn braid_triple_flats_match_labels() {
    let (_, l) = lattice("braid");
    let triples: Vec<Vec<usize>> = l.multiple_points().iter().map(|x| x.hyperplanes.iter().map(|h| h + 1).collect()).collect();
    assert_eq!(triples, vec![vec![1, 3, 6], vec![1, 4, 5], vec![2, 3, 5], vec![2, 4, 6]]);
}

#[test]
fn falk_triple_points_share_a_line_only_in_falk2() {
    let shared = |name: &str| {
        let (_, l) = lattice(name);
        let t = l.multiple_points();
        t[0].hyperplanes.iter().any(|h| t[1].contains(*h))
    };
    assert!(!shared("falk1"));
    assert!(shared("falk2"));
}

#[test]
fn icosidodecahedral_poincare_polynomial() {
    let (_, l) = lattice("icosidodecahedral");
    assert_eq!(betti_numbers(&l).u, vec![1, 15, 60]);
}

#[test]
fn first_betti_numbers_of_catalog_entries() {
    for name in default_instances() {
        let (a, l) = lattice(name);
        let b = betti_numbers(&l);
        assert_eq!(b.m[1], a.n() as u64, "{name}");
        assert_eq!(b.u[1], a.n() as u64 - 1, "{name}");
    }
}

#[test]
fn b3_parses_from_document() {
    let doc = r#"{"dim":3,"field":"Q","forms":[[1,0,0],[0,1,0],[0,0,1],[1,-1,0],[1,1,0],[1,0,-1],[1,0,1],[0,1,-1],[0,1,1]]}"#;
    let a = parse_arrangement_str(doc).unwrap();
    assert_eq!(a.n(), 9);
    assert_eq!(a.forms(), catalog("b3").unwrap().arrangement.forms());
}

#[test]
fn lattice_is_independent_of_input_order() {
    let (a, l) = lattice("deleted_b3");
    let perm = [5, 2, 7, 0, 3, 6, 1, 4];
    let b = a.restrict(&perm);
    let lb = IntersectionLattice::full(&b);
    assert_eq!(l.signature(), lb.signature());
}

#[test]
fn degenerate_sizes() {
    let empty = parse_arrangement_str(r#"{"dim":3,"field":"Q","forms":[]}"#).unwrap();
    let l = IntersectionLattice::full(&empty);
    assert_eq!(l.flats.len(), 1);
    assert_eq!(betti_numbers(&l).u, vec![1]);
    let one = parse_arrangement_str(r#"{"dim":3,"field":"Q","forms":[[1,2,3]]}"#).unwrap();
    let b = betti_numbers(&IntersectionLattice::full(&one));
    assert_eq!(b.m, vec![1, 1]);
    assert_eq!(b.u, vec![1]);
}

#[test]
fn icosidodecahedral_graph_and_bound() {
    let (a, l) = lattice("icosidodecahedral");
    let g = double_point_graph(&a, &l).unwrap();
    assert_eq!(g.edges.len(), 30);
    let w = williams_bound(&a, &l);
    assert_eq!(w.s.len(), 16);
}
