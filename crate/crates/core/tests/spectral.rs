mod support;

use hypercoh_core::filtered::{decalage, er_page, sigma_r_filtration, stable_page, FilteredComplex};
use hypercoh_core::random;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use support::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn stable_page_is_the_associated_graded_of_cohomology(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random::filtered_complex::<Q, _>(&mut rng, 3, 3, 3);
        let e = stable_page(&a);
        let got: Vec<_> = e.entries.iter().filter(|(_, x)| x.dim() > 0).map(|(&k, x)| (k, x.dim())).collect();
        let want: Vec<_> = graded_cohomology_dims(&a).into_iter().collect();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn trivial_filtration_e1_is_cohomology(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random::complex::<Q, _>(&mut rng, 4, 3);
        let e = er_page(&FilteredComplex::trivial(&c), 1);
        for n in 0..=3 {
            prop_assert_eq!(e.dim(0, n), c.cohomology(n).dim());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn decalage_intertwines_sigma_filtrations(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = random::filtered_cosimplicial::<Q, _>(&mut rng, 3, 2, 1, 2, 3);
        let dv = v.decalage();
        for r in 0..2 {
            let (_, lhs) = sigma_r_filtration(&v, r + 1, 2).unwrap();
            let (_, rhs) = sigma_r_filtration(&dv, r, 2).unwrap();
            prop_assert!(decalage(&lhs).agrees_through(&rhs, 2), "r = {}", r);
        }
    }
}
