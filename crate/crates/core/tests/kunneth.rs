use hypercoh_core::cosimp::{aw_kunneth, aw_multi, shuffle};
use hypercoh_core::homalg::ChainMap;
use hypercoh_core::{random, Rational};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Q = Rational;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn shuffle_inverts_alexander_whitney(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = random::cosimplicial::<Q, _>(&mut rng, 3, 1, 1, 4);
        let w = random::cosimplicial::<Q, _>(&mut rng, 3, 1, 1, 4);
        let aw = aw_kunneth(&v, &w, 3).unwrap();
        let sh = shuffle(&v, &w, 3).unwrap();
        prop_assert_eq!(aw.map.first_noncommuting_degree(), None);
        prop_assert_eq!(sh.map.first_noncommuting_degree(), None);
        let id = sh.map.compose(&aw.map).unwrap();
        for n in 0..=3 {
            prop_assert!(id.component(n).is_identity(), "degree {}", n);
        }
        prop_assert!(aw.map.compose(&sh.map).unwrap().is_quasi_iso());
    }

    #[test]
    fn alexander_whitney_is_strictly_associative(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = random::cosimplicial::<Q, _>(&mut rng, 2, 1, 1, 3);
        let v = random::cosimplicial::<Q, _>(&mut rng, 2, 1, 1, 3);
        let w = random::cosimplicial::<Q, _>(&mut rng, 2, 1, 1, 3);
        let triple = aw_multi(&[&u, &v, &w], 2).unwrap();
        let uv = aw_kunneth(&u, &v, 2).unwrap();
        let uv_w = aw_kunneth(&uv.product, &w, 2).unwrap();
        let vw = aw_kunneth(&v, &w, 2).unwrap();
        let u_vw = aw_kunneth(&u, &vw.product, 2).unwrap();
        let ut = u.tot_simple(2).unwrap();
        let wt = w.tot_simple(2).unwrap();
        let left = uv.map.tensor(&ChainMap::identity(&wt.complex));
        let right = ChainMap::identity(&ut.complex).tensor(&vw.map);
        for n in 0..=3 {
            prop_assert_eq!(uv_w.map.component(n).mul(&left.component(n)), triple.map.component(n));
            prop_assert_eq!(u_vw.map.component(n).mul(&right.component(n)), triple.map.component(n));
        }
    }

    #[test]
    fn mu_is_a_quasi_isomorphism(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let z = random::bicosimplicial::<Q, _>(&mut rng, 3);
        z.validate().unwrap();
        let mu = z.mu(1).unwrap();
        prop_assert_eq!(mu.map.first_noncommuting_degree(), None);
        prop_assert!(mu.map.is_quasi_iso());
    }
}
