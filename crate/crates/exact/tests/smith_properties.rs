//! Smith normal form properties on random integer matrices.

use exact::IntMatrix;
use num_traits::Zero;
use proptest::prelude::*;

/// A random matrix with a random row and column permutation of matching size.
fn permuted_matrix() -> impl Strategy<Value = (IntMatrix, Vec<usize>, Vec<usize>)> {
    (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
        (
            proptest::collection::vec(proptest::collection::vec(-9i64..=9, c), r)
                .prop_map(move |rows| IntMatrix::from_i64_rows(&rows, c)),
            Just((0..r).collect::<Vec<_>>()).prop_shuffle(),
            Just((0..c).collect::<Vec<_>>()).prop_shuffle(),
        )
    })
}

proptest! {
    #[test]
    fn invariant_under_row_and_column_permutations((m, rp, cp) in permuted_matrix()) {
        prop_assert_eq!(m.permuted(&rp, &cp).invariant_factors(), m.invariant_factors());
    }

    #[test]
    fn factors_divide_and_transforms_reconstruct((m, _, _) in permuted_matrix()) {
        let s = m.smith_with_transforms();
        for w in s.diagonal.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        let mut d = IntMatrix::zeros(m.rows(), m.cols());
        for (i, x) in s.diagonal.iter().enumerate() {
            d.set(i, i, x.clone());
        }
        let (u, v) = (s.u.clone().unwrap(), s.v.clone().unwrap());
        prop_assert_eq!(u.mul(&m).mul(&v), d);
        prop_assert_eq!(u.mul(s.u_inv.as_ref().unwrap()), IntMatrix::identity(m.rows()));
        prop_assert_eq!(v.mul(s.v_inv.as_ref().unwrap()), IntMatrix::identity(m.cols()));
        prop_assert_eq!(s.rank, m.rank());
    }

    #[test]
    fn transpose_has_the_same_factors((m, _, _) in permuted_matrix()) {
        prop_assert_eq!(m.transpose().invariant_factors(), m.invariant_factors());
    }
}
