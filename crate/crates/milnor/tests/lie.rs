use milnor::arr::catalog::catalog;
use milnor::arr::lattice::IntersectionLattice;
use milnor::arr::Arrangement;
use milnor::lie::{
    chen_rank_free, decomposability_report, holonomy_dims, rank_tables, witt_rank, MonodromyCertificate, RankContext,
};
use num_bigint::BigInt;

fn lattice(name: &str) -> IntersectionLattice {
    IntersectionLattice::full(&catalog(name).unwrap().arrangement)
}

fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

#[test]
fn holonomy_examples() {
    let h = holonomy_dims(&lattice("falk1")).unwrap();
    assert_eq!((h.h2, h.h3), (2, 4));
    let h = holonomy_dims(&lattice("braid")).unwrap();
    assert_eq!((h.h2, h.h3), (4, 10));
    let h = holonomy_dims(&lattice("boolean(4)")).unwrap();
    assert_eq!((h.h2, h.h3), (0, 0));
    let h = holonomy_dims(&lattice("b3")).unwrap();
    assert_eq!((h.h2, h.h3), (13, 48));
}

#[test]
fn decomposability_verdicts() {
    let r = decomposability_report(&lattice("falk1")).unwrap();
    assert!(r.decomposable && r.holonomy.h3 == 4 && r.local_bound == 4);
    assert!(MonodromyCertificate::from_decomposability(&r).is_some());
    let r = decomposability_report(&lattice("braid")).unwrap();
    assert!(!r.decomposable);
    assert_eq!((r.holonomy.h3, r.local_bound, r.binomial_sum), (10, 8, 4));
    let a = Arrangement::from_int_rows(
        "xyz(x+y)(x-z)(2z+y)",
        &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 0], vec![1, 0, -1], vec![0, 1, 2]],
    )
    .unwrap();
    let r = decomposability_report(&IntersectionLattice::full(&a)).unwrap();
    assert!(r.decomposable);
    assert_eq!(r.local_bound, 6);
}

#[test]
fn fiber_type_chen_ranks() {
    for (name, f) in [("b3", (|k: i64| (k - 1) * (3 * k + 19)) as fn(i64) -> i64), ("deleted_b3", |k| (k - 1) * (k + 12))] {
        let l = lattice(name);
        let ctx = RankContext::for_catalog(name, &l).unwrap();
        let t = rank_tables(&l, &ctx, 8, None).unwrap();
        for k in 4..=8u64 {
            assert_eq!(t.complement.theta(k), Some(&big(f(k as i64))), "{name} k={k}");
            assert!(t.complement.theta(k) <= t.complement.phi(k));
        }
        for k in 2..=3u64 {
            assert_eq!(t.complement.theta(k), t.complement.phi(k));
        }
        assert!(t.fiber.is_none());
    }
}

#[test]
fn falk_fiber_transfer() {
    let l = lattice("falk1");
    let ctx = RankContext::for_catalog("falk1", &l).unwrap();
    let cert = MonodromyCertificate::from_decomposability(&decomposability_report(&l).unwrap());
    let t = rank_tables(&l, &ctx, 8, cert).unwrap();
    let f = t.fiber.unwrap();
    for k in 2..=8u64 {
        assert_eq!(f.theta(k), Some(&big(2 * (k as i64 - 1))), "k={k}");
        assert_eq!(f.phi(k), Some(&(witt_rank(2, k) * 2)), "k={k}");
    }
    assert_eq!(f.to_json()["4"]["provenance"], "transfer");
    assert_eq!(t.complement.to_json()["4"]["provenance"], "closed-form|component-sum");
}

#[test]
fn missing_context_is_an_error() {
    assert!(rank_tables(&lattice("braid"), &RankContext::default(), 4, None).is_err());
    assert_eq!(chen_rank_free(3, 4), big(15));
}
