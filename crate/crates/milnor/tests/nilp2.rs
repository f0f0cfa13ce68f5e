use milnor::arr::catalog::catalog;
use milnor::arr::lattice::IntersectionLattice;
use milnor::cover::{milnor_fiber_h1, IntegralHomology};
use milnor::nilp2::{chi2_arrangement, chi2_milnor, h2_second_nilpotent, Cocycle2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Falk arrangement reordered as (ℓ1, …, ℓ5, ℓ0) so that ℓ0 is deconed last.
fn falk(name: &str) -> IntersectionLattice {
    let a = catalog(name).unwrap().arrangement.restrict(&[1, 2, 3, 4, 5, 0]);
    IntersectionLattice::full(&a)
}

fn fiber_cocycle(name: &str) -> Cocycle2 {
    let cert = milnor_fiber_h1(name, &[1; 6]).unwrap();
    chi2_milnor(&falk(name), &[1; 6], 5, &cert).unwrap()
}

fn h2(rank: usize, torsion: &[u64]) -> Option<IntegralHomology> {
    Some(IntegralHomology { rank, torsion: torsion.to_vec() })
}

#[test]
fn falk1_complement() {
    let chi = chi2_arrangement(&falk("falk1"), 5).unwrap();
    assert_eq!(chi.matrix, vec![vec![1, -1, 1, 0, 0, 0, 0, 0, 0, 0], vec![0, 0, 0, 0, 0, 0, 0, 0, 0, 1]]);
    let o = h2_second_nilpotent(&chi).unwrap();
    assert_eq!(o.e20, 8);
    assert_eq!(o.e11, IntegralHomology::free(4));
    assert!(o.e02_zero);
    assert_eq!(o.h2, h2(12, &[]));
}

#[test]
fn falk_fibers_differ_by_order_three() {
    let chi = fiber_cocycle("falk1");
    assert_eq!(chi.matrix, vec![vec![3, -2, 1, 0, 0, 0, 0, 0, 0, 0], vec![0, 0, 0, 0, 0, 1, 0, 0, -2, 3]]);
    let o = h2_second_nilpotent(&chi).unwrap();
    assert_eq!(o.e11, IntegralHomology { rank: 4, torsion: vec![3] });
    assert_eq!(o.h2, h2(12, &[3]));
    let o2 = h2_second_nilpotent(&fiber_cocycle("falk2")).unwrap();
    assert_eq!(o2.h2, h2(12, &[]));
    assert_eq!(o.to_json()["H2"]["torsion"], serde_json::json!([3]));
}

#[test]
fn small_cases() {
    let l = IntersectionLattice::full(&catalog("boolean(4)").unwrap().arrangement);
    let chi = chi2_arrangement(&l, 0).unwrap();
    assert_eq!(chi.c, 0);
    let cert = milnor_fiber_h1("boolean(4)", &[1; 4]).unwrap();
    assert_eq!(chi2_milnor(&l, &[1; 4], 0, &cert).unwrap().c, 0);
    let l = IntersectionLattice::full(&catalog("pencil(3)").unwrap().arrangement);
    let chi = chi2_arrangement(&l, 0).unwrap();
    assert_eq!(chi.matrix, vec![vec![1]]);
}

#[test]
fn nontrivial_monodromy_is_refused() {
    let l = IntersectionLattice::full(&catalog("braid").unwrap().arrangement);
    let cert = milnor_fiber_h1("braid", &[1; 6]).unwrap();
    assert!(chi2_milnor(&l, &[1; 6], 0, &cert).is_err());
}

/// A random matrix in GL_n(ℤ) built from elementary operations and sign flips.
fn unimodular(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<i64>> {
    let mut g: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    for _ in 0..3 * n {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i == j {
            g[i].iter_mut().for_each(|x| *x = -*x);
            continue;
        }
        let k: i64 = rng.gen_range(-2..=2);
        for c in 0..n {
            g[i][c] += k * g[j][c];
        }
    }
    g
}

#[test]
fn outcome_is_basis_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for chi in [fiber_cocycle("falk1"), fiber_cocycle("falk2"), chi2_arrangement(&falk("falk1"), 5).unwrap()] {
        let base = h2_second_nilpotent(&chi).unwrap();
        for _ in 0..4 {
            let (gh, gc) = (unimodular(&mut rng, chi.n), unimodular(&mut rng, chi.c));
            let moved = chi.change_basis(&gh, &gc);
            assert_eq!(h2_second_nilpotent(&moved).unwrap(), base);
        }
    }
}
