use super::*;
use crate::random;
use crate::Rational;
use alloc::vec;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Q = Rational;

fn small() -> CochainComplex<Q> {
    CochainComplex::new(vec![1, 2, 1], vec![Matrix::from_i64_rows(&[&[1], &[0]]), Matrix::from_i64_rows(&[&[0, 1]])]).unwrap()
}

#[test]
fn constant_object_normalizes_to_its_value() {
    let a = small();
    let c = CosimplicialComplex::constant(&a, 3);
    c.validate().unwrap();
    let n = c.conormalize().unwrap();
    for q in 0..=2 {
        assert_eq!(n.dim(0, q), a.dim(q));
        for p in 1..=3 {
            assert_eq!(n.dim(p, q), 0);
        }
    }
    let lam = CosimplicialComplex::lambda(&a, 1);
    assert!(lam.is_quasi_iso());
}

#[test]
fn insufficient_truncation_is_reported() {
    let c = CosimplicialComplex::constant(&small(), 2);
    assert_eq!(c.tot_simple(2).unwrap_err(), Error::InsufficientTruncation { needed: 3, available: 2 });
}

#[test]
fn raw_and_normalized_totals_agree_in_cohomology() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..5 {
        let v = random::cosimplicial::<Q, _>(&mut rng, 3, 2, 1, 3);
        let norm = v.tot_simple(2).unwrap().complex;
        let raw = v.tot_raw(2).unwrap();
        for n in 0..=2 {
            assert_eq!(norm.cohomology(n).dim(), raw.cohomology(n).dim());
        }
    }
}

#[test]
fn shuffle_after_alexander_whitney_is_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..4 {
        let v = random::cosimplicial::<Q, _>(&mut rng, 3, 1, 1, 3);
        let w = random::cosimplicial::<Q, _>(&mut rng, 3, 1, 1, 3);
        let aw = aw_kunneth(&v, &w, 2).unwrap();
        let sh = shuffle(&v, &w, 2).unwrap();
        assert_eq!(aw.map.first_noncommuting_degree(), None);
        assert_eq!(sh.map.first_noncommuting_degree(), None);
        let id = sh.map.compose(&aw.map).unwrap();
        for n in 0..=3 {
            assert!(id.component(n).is_identity(), "degree {n}");
        }
        assert!(aw.map.compose(&sh.map).unwrap().is_quasi_iso());
    }
}

#[test]
fn alexander_whitney_is_associative() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let u = random::cosimplicial::<Q, _>(&mut rng, 2, 1, 1, 3);
    let v = random::cosimplicial::<Q, _>(&mut rng, 2, 1, 1, 3);
    let w = random::cosimplicial::<Q, _>(&mut rng, 2, 1, 1, 3);
    let triple = aw_multi(&[&u, &v, &w], 2).unwrap();
    let uv = aw_kunneth(&u, &v, 2).unwrap();
    let uv_w = aw_kunneth(&uv.product, &w, 2).unwrap();
    let wt = w.tot_simple(2).unwrap();
    let left = uv.map.tensor(&ChainMap::identity(&wt.complex));
    for n in 0..=3 {
        let composite = uv_w.map.component(n).mul(&left.component(n));
        assert_eq!(composite, triple.map.component(n), "degree {n}");
    }
}

#[test]
fn mu_is_a_quasi_isomorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..3 {
        let z = random::bicosimplicial::<Q, _>(&mut rng, 3);
        z.validate().unwrap();
        let mu = z.mu(1).unwrap();
        assert_eq!(mu.map.first_noncommuting_degree(), None);
        assert!(mu.map.is_quasi_iso());
    }
}

#[test]
fn constant_in_one_direction() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let v = random::cosimplicial::<Q, _>(&mut rng, 3, 1, 1, 3);
    let c = CosimplicialComplex::constant(&CochainComplex::<Q>::unit(), 3);
    let z = BicosimplicialComplex::external_tensor(&v, &c);
    let mu = z.mu(1).unwrap();
    assert!(mu.map.is_quasi_iso());
}
