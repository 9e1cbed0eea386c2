use covera::scalar::{ring_reduce, Ring, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn rings() -> impl Strategy<Value = Ring> {
    prop_oneof![
        Just(Ring::Int),
        Just(Ring::Rat),
        Just(Ring::PrimeField(2)),
        Just(Ring::PrimeField(3)),
        Just(Ring::PrimeField(7)),
        Just(Ring::F9),
        Just(Ring::IntHalf),
        Just(Ring::GaussHalf),
    ]
}

fn element(ring: Ring, a: i64, b: i64, k: u32) -> Scalar {
    match ring {
        Ring::Rat => Scalar::from_rational(ring, &BigRational::new(a.into(), (b.abs() + 1).into())).unwrap(),
        Ring::IntHalf => Scalar::from_rational(ring, &BigRational::new(a.into(), BigInt::from(2).pow(k))).unwrap(),
        Ring::GaussHalf => {
            let d = BigInt::from(2).pow(k);
            Scalar::gauss(ring, &BigRational::new(a.into(), d.clone()), &BigRational::new(b.into(), d)).unwrap()
        }
        Ring::F9 => Scalar::f9(a.rem_euclid(3) as u8, b.rem_euclid(3) as u8),
        _ => Scalar::from_i64(ring, a),
    }
}

fn triple() -> impl Strategy<Value = (Scalar, Scalar, Scalar)> {
    (rings(), prop::array::uniform6(-50i64..50), prop::array::uniform3(0u32..4)).prop_map(|(r, v, k)| {
        (element(r, v[0], v[1], k[0]), element(r, v[2], v[3], k[1]), element(r, v[4], v[5], k[2]))
    })
}

proptest! {
    #[test]
    fn commutative_ring_laws((x, y, z) in triple()) {
        let ring = x.ring();
        prop_assert_eq!(x.clone() + y.clone(), y.clone() + x.clone());
        prop_assert_eq!(x.clone() * y.clone(), y.clone() * x.clone());
        prop_assert_eq!((x.clone() + y.clone()) + z.clone(), x.clone() + (y.clone() + z.clone()));
        prop_assert_eq!((x.clone() * y.clone()) * z.clone(), x.clone() * (y.clone() * z.clone()));
        prop_assert_eq!(x.clone() * (y.clone() + z.clone()), x.clone() * y.clone() + x.clone() * z.clone());
        prop_assert_eq!(x.clone() + (-x.clone()), Scalar::zero(ring));
        prop_assert_eq!(x.clone() * Scalar::one(ring), x.clone());
    }

    #[test]
    fn inverses_exist_exactly_for_units((x, _, _) in triple()) {
        let ring = x.ring();
        match x.inv() {
            Some(y) => prop_assert_eq!(x * y, Scalar::one(ring)),
            None => prop_assert!(x.is_zero() || !ring.is_field()),
        }
    }

    #[test]
    fn reduction_is_a_homomorphism(a in -1000i64..1000, b in -1000i64..1000, p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let (x, y) = (Scalar::from_i64(Ring::Int, a), Scalar::from_i64(Ring::Int, b));
        let red = |s: &Scalar| s.reduce(p).unwrap();
        prop_assert_eq!(red(&(x.clone() * y.clone())), red(&x) * red(&y));
        prop_assert_eq!(red(&(x.clone() + y.clone())), red(&x) + red(&y));
    }

    #[test]
    fn half_integers_reduce_mod_odd_primes(a in -200i64..200, b in -200i64..200, k in 0u32..5, p in prop::sample::select(vec![3u64, 5, 7])) {
        let (x, y) = (element(Ring::IntHalf, a, 0, k), element(Ring::IntHalf, b, 0, 4 - k));
        let red = |s: &Scalar| ring_reduce(s, p).unwrap();
        prop_assert_eq!(red(&(x.clone() * y.clone())), red(&x) * red(&y));
        prop_assert_eq!(red(&(x.clone() + y.clone())), red(&x) + red(&y));
        prop_assert!(ring_reduce(&x, 2).is_err());
    }

    #[test]
    fn conjugation_is_an_involution((x, y, _) in triple()) {
        prop_assert_eq!(x.conj().conj(), x.clone());
        prop_assert_eq!((x.clone() * y.clone()).conj(), x.conj() * y.conj());
    }
}
