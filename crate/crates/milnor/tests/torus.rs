//! Characteristic varieties of catalog arrangements and their Milnor fibers.

use milnor::arr::catalog::catalog;
use milnor::arr::lattice::IntersectionLattice;
use milnor::arr::Arrangement;
use milnor::torus::{
    assemble_cv1, b1_excess_from_cv, character_depth, compose, drop_coordinate, intersect_translated, iota_star,
    orbifold_v1, Character, CvOptions, TranslatedSubtorus,
};

/// Falk arrangements with hyperplanes reordered so that the triple points
/// occupy the coordinate blocks used in the fiber computation.
fn falk_charted(name: &str) -> Arrangement {
    let a = catalog(name).unwrap().arrangement;
    let perm: &[usize] = if name == "falk1" { &[1, 2, 3, 0, 4, 5] } else { &[1, 2, 3, 4, 5, 0] };
    a.restrict(perm)
}

fn fiber_cv(a: &Arrangement) -> milnor::torus::CvPresentation {
    let l = IntersectionLattice::full(a);
    let opts = CvOptions { certified: true, ..Default::default() };
    let cv = assemble_cv1(a, &l, &opts).unwrap();
    cv.m.image(&iota_star(a.n()))
}

fn eq(n: usize, rows: &[Vec<i64>]) -> TranslatedSubtorus {
    TranslatedSubtorus::from_equations(n, rows, 1)
}

#[test]
fn falk1_fiber_tori() {
    let cv = fiber_cv(&falk_charted("falk1"));
    let t1 = eq(5, &[vec![1, 2, 3, 0, 0], vec![0, 0, 0, 1, 0], vec![0, 0, 0, 0, 1]]);
    let t2 = eq(5, &[vec![1, 0, 0, 0, 0], vec![0, 1, 0, 0, 0], vec![0, 0, 3, 2, 1]]);
    assert_eq!(cv.components.len(), 2);
    assert!(cv.components[0].same_set(&t1));
    assert!(cv.components[1].same_set(&t2));
    let i = intersect_translated(&t1, &t2);
    assert!(i.components.is_empty());
    let omega = Character::new(3, &[0, 0, 1, 0, 0]);
    assert_eq!(i.points, vec![Character::identity(5), omega.clone(), omega.pow(2)]);
    let d = character_depth(&cv, &omega);
    assert_eq!((d.value, d.exact), (2, true));
    assert_eq!(cv.pairwise_torsion_points().len(), 3);
}

#[test]
fn falk2_fiber_tori() {
    let cv = fiber_cv(&falk_charted("falk2"));
    let t1 = eq(5, &[vec![1, 2, 0, 0, -1], vec![0, 0, 1, 0, 0], vec![0, 0, 0, 1, 0]]);
    let t2 = eq(5, &[vec![1, 0, 0, 0, 0], vec![0, 1, 1, 1, 0], vec![0, 1, 0, -1, 1]]);
    assert_eq!(cv.components.len(), 2);
    assert!(cv.components.iter().any(|c| c.same_set(&t1)));
    assert!(cv.components.iter().any(|c| c.same_set(&t2)));
    let i = intersect_translated(&t1, &t2);
    assert_eq!(i.points, vec![Character::identity(5)]);
    assert_eq!(intersect_translated(&t2, &t1), i);
}

#[test]
fn falk1_projective_components() {
    let a = catalog("falk1").unwrap().arrangement;
    let l = IntersectionLattice::full(&a);
    let cv = assemble_cv1(&a, &l, &CvOptions::for_catalog("falk1").unwrap()).unwrap();
    let u1 = eq(5, &[vec![1, 1, 1, 0, 0], vec![0, 0, 0, 1, 0], vec![0, 0, 0, 0, 1]]);
    let u2 = eq(5, &[vec![1, 0, 0, 0, 0], vec![0, 1, 0, 0, 0], vec![0, 0, 1, 0, 0]]);
    assert_eq!(cv.u.components.len(), 2);
    assert!(cv.u.components.iter().any(|c| c.same_set(&u1)));
    assert!(cv.u.components.iter().any(|c| c.same_set(&u2)));
}

#[test]
fn braid_depths() {
    let a = catalog("braid").unwrap().arrangement;
    let l = IntersectionLattice::full(&a);
    let cv = assemble_cv1(&a, &l, &CvOptions::for_catalog("braid").unwrap()).unwrap();
    assert_eq!(cv.m.components.len(), 5);
    let rho = Character::new(6, &[1; 6]);
    let d = character_depth(&cv.m, &rho.pow(2));
    assert_eq!((d.value, d.containing.len()), (1, 1));
    assert_eq!(character_depth(&cv.m, &rho).value, 0);
    assert!(character_depth(&cv.m, &Character::identity(6)).trivial);
    assert_eq!(b1_excess_from_cv(&cv.m, &[1; 6]), (2, true));
}

#[test]
fn trivial_monodromy_cases_have_no_excess() {
    for name in ["falk1", "falk2", "b3", "deleted_b3", "boolean(4)", "generic(5,2)"] {
        let e = catalog(name).unwrap();
        let a = e.arrangement;
        let l = IntersectionLattice::full(&a);
        let cv = assemble_cv1(&a, &l, &CvOptions::for_catalog(name).unwrap()).unwrap();
        let ones = vec![1u64; a.n()];
        assert_eq!(b1_excess_from_cv(&cv.m, &ones).0, 0, "{name}");
    }
}

#[test]
fn pencil_excess_matches_monodromy() {
    // Δ₁ = (t−1)(tⁿ−1)^{n−2}: b₁(F) − (n−1) = (n−1)(n−2).
    for n in 3..=6usize {
        let name = format!("pencil({n})");
        let a = catalog(&name).unwrap().arrangement;
        let l = IntersectionLattice::full(&a);
        let cv = assemble_cv1(&a, &l, &CvOptions::for_catalog(&name).unwrap()).unwrap();
        assert_eq!(b1_excess_from_cv(&cv.m, &vec![1; n]), ((n - 1) * (n - 2), true));
    }
}

#[test]
fn boolean_has_no_components() {
    let a = catalog("boolean(4)").unwrap().arrangement;
    let l = IntersectionLattice::full(&a);
    let cv = assemble_cv1(&a, &l, &CvOptions::default()).unwrap();
    assert!(cv.m.components.is_empty() && cv.u.components.is_empty());
}

#[test]
fn deleted_b3_translated_component() {
    let a = catalog("deleted_b3").unwrap().arrangement;
    let l = IntersectionLattice::full(&a);
    let cv = assemble_cv1(&a, &l, &CvOptions::for_catalog("deleted_b3").unwrap()).unwrap();
    assert_eq!(cv.m.through_identity().len(), 12);
    let tr = cv.m.translated();
    assert_eq!(tr.len(), 1);
    let rho = Character::from_signs(&[false, false, true, true, true, true, false, false]);
    let expected = TranslatedSubtorus::new(8, &[vec![2, -2, -1, -1, 0, 0, 1, 1]], rho.clone(), 1);
    assert!(tr[0].same_set(&expected));
    assert!(!tr[0].contains(&Character::identity(8)));
    // The same component is the pullback of V¹₁(ℤ * ℤ₂) = ℂ* × {−1}.
    let orb = orbifold_v1(1, &[2]).unwrap();
    let psi = vec![
        vec![2, 0],
        vec![-2, 0],
        vec![-1, 1],
        vec![-1, 1],
        vec![0, 1],
        vec![0, 1],
        vec![1, 0],
        vec![1, 0],
    ];
    let comps = &orb.stratum(1).unwrap().components;
    assert_eq!(comps.len(), 1);
    assert!(comps[0].image(&psi).same_set(&expected));
}

#[test]
fn images_compose() {
    let t = eq(6, &[vec![1, 1, 1, 0, 0, 0], vec![0, 0, 0, 1, 0, 0]]);
    let f = iota_star(6);
    let g = drop_coordinate(5, 0);
    assert_eq!(t.image(&f).image(&g), t.image(&compose(&g, &f)));
}
