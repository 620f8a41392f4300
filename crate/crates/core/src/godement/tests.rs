use super::*;
use crate::site::PosetSite;
use crate::Rational;
use alloc::vec;

type Q = Rational;

#[test]
fn resolution_dimensions_count_multichains() {
    let s = PosetSite::two_chain();
    let f = Sheaf::<Q>::constant_field(&s);
    let g = godement(&f, 3);
    let dims: Vec<usize> = (0..=3).map(|p| g.stalk(0).level(p).dim(0)).collect();
    assert_eq!(dims, vec![2, 3, 4, 5]);
    let dims_b: Vec<usize> = (0..=3).map(|p| g.stalk(1).level(p).dim(0)).collect();
    assert_eq!(dims_b, vec![1, 1, 1, 1]);
    for y in 0..2 {
        g.stalk(y).validate().unwrap();
        assert!(g.verify_extra_codegeneracy(y));
    }
}

#[test]
fn level_zero_is_the_triple() {
    let s = PosetSite::pseudocircle();
    let f = Sheaf::<Q>::constant(&s, &CochainComplex::concentrated(0, 2));
    let g = godement(&f, 1);
    let (t, _) = f.triple();
    assert_eq!(g.level_sheaf(0), t);
}

#[test]
fn point_hypersheaf_is_the_input() {
    let s = PosetSite::point();
    let a = CochainComplex::<Q>::new(vec![1, 1], vec![Matrix::from_i64_rows(&[&[1]])]).unwrap();
    let f = Sheaf::constant(&s, &a);
    let h = hypersheaf(&f, 2);
    let r = h.rho.at(&f, &h.sheaf, 0);
    assert!(r.is_quasi_iso());
    assert_eq!(h.sheaf.value(0).dims()[..2], [1, 1]);
}

#[test]
fn betti_numbers_of_models() {
    let b = |s: PosetSite| derived_betti(&Sheaf::<Q>::constant_field(&s), &s.whole(), 3);
    assert_eq!(b(PosetSite::point()), vec![1, 0, 0, 0]);
    assert_eq!(b(PosetSite::two_chain()), vec![1, 0, 0, 0]);
    assert_eq!(b(PosetSite::pseudocircle()), vec![1, 1, 0, 0]);
    assert_eq!(b(PosetSite::sphere()), vec![1, 0, 1, 0]);
}

#[test]
fn fast_model_matches_generic_total_complex() {
    let s = PosetSite::pseudocircle();
    let f = Sheaf::<Q>::constant(&s, &CochainComplex::concentrated(0, 1));
    let g = godement(&f, 3);
    for y in 0..4 {
        let tot = g.stalk(y).tot_simple(2).unwrap();
        let m = ChainModel::build(&f, &s.up_set(y), 2);
        assert_eq!(tot.complex, m.complex);
    }
}

#[test]
fn diagnostics_on_small_examples() {
    for s in [PosetSite::point(), PosetSite::two_chain(), PosetSite::pseudocircle()] {
        let f = Sheaf::<Q>::constant_field(&s);
        let r = descent_diagnostics(&f, 2).unwrap();
        assert!(r.passed(), "{r:?}");
    }
}

#[test]
fn direct_image_to_point_of_pseudocircle() {
    let s = PosetSite::pseudocircle();
    let f = Sheaf::<Q>::constant_field(&s);
    let g = derived_direct_image(&MonotoneMap::to_point(&s), &f, 2).unwrap();
    let b: Vec<usize> = (0..=2).map(|n| g.value(0).cohomology(n).dim()).collect();
    assert_eq!(b, vec![1, 1, 0]);
}

#[test]
fn torus_products() {
    let s = PosetSite::torus();
    let (f, m) = constant_multiplication::<Q>(&s);
    for engine in [Engine::Aw, Engine::Tw] {
        let (model, mu, table) = derived_ring(&f, &m, &s.whole(), 2, engine).unwrap();
        assert_eq!(mu.first_noncommuting_degree(), None, "{engine:?}");
        assert_eq!(table.left, vec![1, 2, 1]);
        let ab = table.get(1, 1, 0, 1);
        let ba = table.get(1, 1, 1, 0);
        assert!(!ab.is_empty());
        assert_eq!(crate::homalg::vector::add(&ab, &ba), Vec::new());
        if engine == Engine::Tw {
            assert!(crate::homalg::is_graded_commutative(&mu, &model.complex));
        }
    }
}

#[test]
fn generic_products_on_torus_sections() {
    let site = PosetSite::torus();
    let (f, m) = constant_multiplication::<Q>(&site);
    let (v, mul) = godement_product(&f, &m, &site.whole(), 3).unwrap();
    let cmp = crate::thomwhitney::compare_products(&v, &mul, 2).unwrap();
    assert!(cmp.tw_commutative);
    assert!(cmp.agree());
    let h1 = cmp.aw.get(1, 1, 0, 1);
    assert!(!h1.is_empty());
}

#[test]
fn lazy_evaluation_matches_transferred_matrix() {
    let site = PosetSite::pseudocircle();
    let (f, m) = constant_multiplication::<Q>(&site);
    let model = derived_sections(&f, &site.whole(), 1);
    for engine in [Engine::Aw, Engine::Tw] {
        let mut cache = CoefficientCache::new();
        let mu = transfer_operation(engine, &[(&f, &model), (&f, &model)], (&f, &model), &m, &mut cache).unwrap();
        let layout = crate::homalg::MultiTensorLayout::new(&[model.complex.dims(), model.complex.dims()]);
        for i in 0..=2 {
            for j in 0..=2 - i {
                for a in 0..model.complex.dim(i) {
                    for b in 0..model.complex.dim(j) {
                        let x = vec![(a, Q::one())];
                        let y = vec![(b, Q::one())];
                        let args = [
                            Argument { sheaf: &f, model: &model, degree: i, vector: &x },
                            Argument { sheaf: &f, model: &model, degree: j, vector: &y },
                        ];
                        let lazy = evaluate_operation(engine, &args, (&f, &model), &m, &mut cache).unwrap();
                        let col = mu.component(i + j).column(layout.pos(&[(i, a), (j, b)]));
                        assert_eq!(lazy, col);
                    }
                }
            }
        }
    }
}
