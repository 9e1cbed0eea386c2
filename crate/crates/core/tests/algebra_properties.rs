use covera::lie::LieAlgebra;
use covera::scalar::Ring;
use covera::va::axioms::borcherds_defect_ring;
use covera::va::morphism::random_element;
use covera::va::LatticeVA;
use covera::Error;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::OnceLock;

fn a2_va() -> &'static LatticeVA {
    static VA: OnceLock<LatticeVA> = OnceLock::new();
    VA.get_or_init(|| LatticeVA::build("A2", 6).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn borcherds_identity_on_random_triples(
        seed in any::<u64>(),
        weights in prop::array::uniform3(0usize..3),
        modes in prop::array::uniform3(-3i64..4),
        ring in prop::sample::select(vec![Ring::Int, Ring::PrimeField(2), Ring::PrimeField(3)]),
    ) {
        let va = a2_va();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_element(va, ring, weights[0], 2, &mut rng).unwrap();
        let b = random_element(va, ring, weights[1], 2, &mut rng).unwrap();
        let c = random_element(va, ring, weights[2], 2, &mut rng).unwrap();
        match borcherds_defect_ring(va, &a, &b, &c, modes[0], modes[1], modes[2]) {
            Ok(d) => prop_assert!(d.is_zero()),
            Err(Error::Truncation { .. }) => {}
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }

    #[test]
    fn chevalley_bracket_is_alternating_and_jacobi(
        name in prop::sample::select(vec!["A2", "D4", "E6"]),
        ring in prop::sample::select(vec![Ring::PrimeField(2), Ring::PrimeField(3), Ring::Rat]),
        idx in prop::array::uniform3(0usize..1000),
    ) {
        let g = LieAlgebra::build(name, ring).unwrap();
        let n = g.dim();
        let (x, y, z) = (g.basis_vector(idx[0] % n), g.basis_vector(idx[1] % n), g.basis_vector(idx[2] % n));
        prop_assert!(g.bracket(&x, &x).unwrap().is_zero());
        let xy = g.bracket(&x, &y).unwrap();
        prop_assert!(xy.add(&g.bracket(&y, &x).unwrap()).is_zero());
        let j = g.bracket(&x, &g.bracket(&y, &z).unwrap()).unwrap()
            .add(&g.bracket(&y, &g.bracket(&z, &x).unwrap()).unwrap())
            .add(&g.bracket(&z, &xy).unwrap());
        prop_assert!(j.is_zero());
    }
}
