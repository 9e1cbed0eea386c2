use covera::linalg::{hnf, IntMatrix, ZLattice, ZVec};
use covera::roots::{Cocycle, RootLattice};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-9i64..10, c), r))
}

proptest! {
    #[test]
    fn hnf_is_echelon_with_unimodular_transform(rows in matrix()) {
        let m = IntMatrix::from_i64(&rows);
        let (h, u) = hnf(&m);
        prop_assert_eq!(u.mul(&m).to_dense(), h.to_dense());
        prop_assert!(u.det().abs().is_one());
        let dense = h.to_dense();
        let mut last: Option<usize> = None;
        for row in &dense {
            match row.iter().position(|x| !x.is_zero()) {
                Some(p) => {
                    prop_assert!(last.is_none_or(|l| p > l));
                    prop_assert!(row[p] > BigInt::zero());
                    last = Some(p);
                }
                None => last = Some(usize::MAX - 1),
            }
        }
    }

    #[test]
    fn lattice_membership_is_consistent(rows in matrix(), coeffs in prop::collection::vec(-5i64..6, 4)) {
        let cols = rows[0].len();
        let l = ZLattice::from_generators(cols, rows.iter().map(|r| ZVec::from_i64(r)));
        // any integer combination of generators is a member
        let mut v = vec![BigInt::zero(); cols];
        for (r, c) in rows.iter().zip(&coeffs) {
            for (x, y) in v.iter_mut().zip(r) {
                *x += BigInt::from(*c * *y);
            }
        }
        let z = ZVec::from_dense(&v);
        prop_assert!(l.contains_vec(&z));
        let c = l.coordinates(&z).unwrap();
        let mut back = ZVec::new();
        for (b, k) in l.basis().iter().zip(&c) {
            back = back.add(&b.scale(k));
        }
        prop_assert_eq!(back, z);
        prop_assert!(l.contains(&ZLattice::from_generators(cols, l.basis().iter().take(1).cloned())));
    }

    #[test]
    fn cocycle_is_bimultiplicative_with_the_right_commutator(
        name in prop::sample::select(vec!["A2", "A3", "D4", "D5", "E6", "E7", "E8"]),
        seed in prop::collection::vec(-3i64..4, 24),
    ) {
        let l = RootLattice::parse(name).unwrap();
        let r = l.rank();
        let (a, b, c) = (&seed[0..r], &seed[8..8 + r], &seed[16..16 + r]);
        let eps = Cocycle::new(&l);
        let bc: Vec<i64> = b.iter().zip(c).map(|(x, y)| x + y).collect();
        let ab: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        prop_assert_eq!(eps.sign(a, &bc), eps.sign(a, b) * eps.sign(a, c));
        prop_assert_eq!(eps.sign(&ab, c), eps.sign(a, c) * eps.sign(b, c));
        let expected = if l.inner(a, b).rem_euclid(2) == 0 { 1 } else { -1 };
        prop_assert_eq!(eps.sign(a, b) * eps.sign(b, a), expected);
        let self_sign = if (l.norm(a) / 2).rem_euclid(2) == 0 { 1 } else { -1 };
        prop_assert_eq!(eps.sign(a, a), self_sign);
    }
}
