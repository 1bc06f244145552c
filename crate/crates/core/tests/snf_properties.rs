use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use pcmult::zlinalg::{abelian_structure, elementary_divisors, smith_normal_form, AbelianStructure, IntMatrix};
use proptest::prelude::*;

fn matrix() -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
    (0usize..=8, 0usize..=8).prop_flat_map(|(r, c)| {
        (Just(c), proptest::collection::vec(proptest::collection::vec(-9i64..=9, c), r))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn transforms_reproduce_the_diagonal((cols, rows) in matrix()) {
        let a = IntMatrix::from_rows(cols, rows.iter());
        let r = smith_normal_form(&a);
        prop_assert_eq!(r.u.mul(&a).mul(&r.v), r.s.clone());
        prop_assert!(r.u.determinant().abs().is_one());
        prop_assert!(r.v.determinant().abs().is_one());
        let d = r.diagonal();
        prop_assert!(d.iter().all(Signed::is_positive));
        prop_assert!(d.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
        for i in 0..r.s.rows() {
            for j in 0..r.s.cols() {
                if i != j || i >= r.rank {
                    prop_assert!(r.s[(i, j)].is_zero());
                }
            }
        }
        if a.rows() == a.cols() && r.rank == a.rows() {
            let prod: BigInt = d.iter().product();
            prop_assert_eq!(a.determinant().abs(), prod);
        }
        prop_assert_eq!(elementary_divisors(&a), d);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn structure_ignores_row_order_and_signs(
        (cols, rows) in matrix(),
        seed in any::<u64>(),
    ) {
        let base = abelian_structure(&IntMatrix::from_rows(cols, rows.iter())).unwrap();
        let mut shuffled = rows.clone();
        let n = shuffled.len();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            shuffled.swap(i, (s >> 33) as usize % (i + 1));
        }
        for (i, row) in shuffled.iter_mut().enumerate() {
            if (seed >> (i % 64)) & 1 == 1 {
                row.iter_mut().for_each(|x| *x = -*x);
            }
        }
        prop_assert_eq!(abelian_structure(&IntMatrix::from_rows(cols, shuffled.iter())).unwrap(), base);
    }

    #[test]
    fn subgroup_times_quotient_is_ambient(
        torsion in proptest::collection::vec(2u64..8, 0..4),
        gens in proptest::collection::vec(proptest::collection::vec(-12i64..12, 4), 0..4),
    ) {
        // Build a valid divisibility chain from arbitrary factors.
        let mut chain: Vec<u64> = Vec::new();
        for t in torsion {
            let next = chain.last().map_or(t, |&l| l * t);
            chain.push(next);
        }
        let ambient = AbelianStructure::finite(chain);
        let k = ambient.torsion.len();
        let gens: Vec<Vec<i64>> = gens.into_iter().map(|g| g[..k].to_vec()).collect();
        let sub = ambient.subgroup_order(&gens).unwrap();
        let quo = ambient.quotient(&gens).unwrap();
        prop_assert_eq!(sub * quo.torsion_order(), ambient.torsion_order());
    }
}
