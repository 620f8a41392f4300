mod support;

use hypercoh_core::random;
use hypercoh_core::site::MonotoneMap;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use support::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn comparisons_are_natural(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let site = random::poset(&mut rng, 4, 0.5);
        let f = random::sheaf::<Q, _>(&mut rng, &site, 2, 1);
        let g = random::sheaf::<Q, _>(&mut rng, &site, 2, 1);
        let opens = site.all_opens();
        let u = &opens[rng.gen_range(0..opens.len())];
        prop_assert!(sections_comparison_is_natural(&f, &g, u));
        prop_assert!(direct_image_comparison_is_natural(&f, &g, &MonotoneMap::to_point(&site)));
        prop_assert!(direct_image_comparison_is_natural(&f, &g, &collapse_to_chain(&site, u)));
    }
}
