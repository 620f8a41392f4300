use super::*;
use crate::godement::{constant_multiplication, derived_ring, Engine};
use crate::homalg::{ChainMap, Matrix, TensorLayout};
use crate::site::PosetSite;
use crate::{Error, Rational};
use alloc::vec;

type Q = Rational;

/// `Q[t]/(t^k)` in degree 0.
fn truncated_polynomial(k: usize) -> (CochainComplex<Q>, ChainMap<Q>) {
    let a = CochainComplex::<Q>::concentrated(0, k);
    let sq = a.tensor(&a);
    let e = (0..k).flat_map(|i| (0..k).filter(move |j| i + j < k).map(move |j| (i + j, i * k + j, Q::one())));
    let mu = ChainMap::new(sq, a.clone(), vec![Matrix::from_triplets(k, k * k, e)]).unwrap();
    (a, mu)
}

/// The exterior algebra on one generator of degree 1.
fn exterior() -> (CochainComplex<Q>, ChainMap<Q>) {
    let a = CochainComplex::<Q>::graded(vec![1, 1]);
    let sq = a.tensor(&a);
    let l = TensorLayout::new(a.dims(), a.dims());
    let m0 = Matrix::from_triplets(1, 1, [(0, l.pos(0, 0, 0, 0), Q::one())]);
    let m1 = Matrix::from_triplets(1, 2, [(0, l.pos(0, 1, 0, 0), Q::one()), (0, l.pos(1, 0, 0, 0), Q::one())]);
    let mu = ChainMap::new(sq, a.clone(), vec![m0, m1]).unwrap();
    (a, mu)
}

#[test]
fn builtin_operads_validate_through_arity_four() {
    for p in [DgOperad::<Q>::com(4), DgOperad::ucom(4), DgOperad::ass(4)] {
        let r = validate_operad(&p);
        assert!(r.passed(), "{}: {:?}", p.name, r.failures());
        assert!(r.cases() > 0);
    }
    let ass = DgOperad::<Q>::ass(4);
    for l in 1..=4 {
        assert_eq!(ass.components()[l].dim(0), crate::combi::permutations(l).len());
    }
}

#[test]
fn corrupted_composition_is_caught() {
    let ass = DgOperad::<Q>::ass(3);
    let g = ass.gamma(&[1, 1]).unwrap().to_vec();
    // send e_id ∘ (e, e) to e_(10) instead of e_(01)
    let bad = vec![Matrix::from_triplets(2, 2, [(1, 0, Q::one()), (1, 1, Q::one())])];
    assert_ne!(g, bad);
    let broken = ass.with_gamma(&[1, 1], bad).unwrap();
    let r = validate_operad(&broken);
    assert!(!r.passed());
    let names: Vec<&str> = r.failures().iter().map(|c| c.axiom.as_str()).collect();
    assert!(names.contains(&"associativity") || names.contains(&"outer equivariance"), "{names:?}");
    assert!(r.failures()[0].failure.as_ref().unwrap().contains("["));
}

#[test]
fn endomorphism_operad_dimensions() {
    let v = CochainComplex::<Q>::concentrated(0, 2);
    let end = endomorphism_operad(&v, 4).unwrap();
    for l in 0..=4 {
        assert_eq!(end.operad.components()[l].dims(), &[1usize << (l + 1)][..]);
    }
    let unit = endomorphism_operad(&CochainComplex::<Q>::unit(), 4).unwrap();
    for l in 0..=4 {
        assert_eq!(unit.operad.components()[l].dims(), &[1][..]);
    }
    let r = validate_operad(&end.operad.truncate(3));
    assert!(r.passed(), "{:?}", r.failures());
    assert!(matches!(endomorphism_operad(&v, 12), Err(Error::CapTooLarge { .. })));
}

#[test]
fn endomorphism_operad_of_a_complex_validates() {
    let a = CochainComplex::<Q>::new(vec![1, 2, 1], vec![Matrix::from_i64_rows(&[&[1], &[0]]), Matrix::from_i64_rows(&[&[0, 1]])]).unwrap();
    let end = endomorphism_operad(&a, 2).unwrap();
    let r = validate_operad(&end.operad);
    assert!(r.passed(), "{:?}", r.failures());
    // H(End_A(1)) in degree 0 is the chain maps modulo nothing: at least the identity
    assert!(end.operad.components()[1].dim(0) >= 1);
    let g = CochainComplex::<Q>::graded(vec![1, 1]);
    let end = endomorphism_operad(&g, 3).unwrap();
    let r = validate_operad(&end.operad);
    assert!(r.passed(), "{:?}", r.failures());
}

#[test]
fn algebras_are_operad_morphisms_to_end() {
    for (a, mu) in [truncated_polynomial(3), exterior()] {
        let alg = OperadAlgebra::commutative(&a, &mu, None, 3).unwrap();
        let r = validate_algebra(&alg);
        assert!(r.passed(), "{:?}", r.failures());
        let end = endomorphism_operad(&a, 3).unwrap();
        let f = alg.structure_morphism(&end).unwrap();
        let r = validate_morphism_with(&f, alg.operad(), &end.operad, &Policy::exact(3, a.top_degree()));
        assert!(r.passed(), "{:?}", r.failures());
    }
    let (a, mu) = truncated_polynomial(3);
    let unital = OperadAlgebra::commutative(&a, &mu, Some(vec![(0, Q::one())]), 3).unwrap();
    assert!(validate_algebra(&unital).passed());
    let bad = unital.clone().with_action(2, vec![Matrix::zeros(3, 9)]).unwrap();
    assert!(!validate_algebra(&bad).passed());
}

#[test]
fn reciprocal_image_along_ass_to_com() {
    for (a, mu) in [truncated_polynomial(3), exterior()] {
        let com = OperadAlgebra::commutative(&a, &mu, None, 4).unwrap();
        let ass = DgOperad::ass(4);
        let f = ass_to_com::<Q>(4);
        let r = validate_morphism_with(&f, &ass, com.operad(), &Policy::exact(4, 0));
        assert!(r.passed(), "{:?}", r.failures());
        let pulled = reciprocal_image(&f, &ass, &com);
        let direct = OperadAlgebra::associative(&a, &mu, 4).unwrap();
        for l in 0..=4 {
            assert_eq!(pulled.action(l), direct.action(l), "arity {l}");
        }
        assert!(validate_algebra(&pulled).passed());
        let same = reciprocal_image(&OperadMorphism::identity(com.operad()), com.operad(), &com);
        assert_eq!(same, com);
    }
}

#[test]
fn generated_suboperad_of_multidifferential_operators() {
    let (a, mu) = truncated_polynomial(3);
    let end = endomorphism_operad(&a, 3).unwrap();
    let prod = end.coordinates_of_map(2, 0, |parts| mu.component(0).apply(&[(parts[0].1 * 3 + parts[1].1, Q::one())])).unwrap();
    // ∂ t^k = k t^{k-1}
    let der = end.coordinates_of_map(1, 0, |parts| if parts[0].1 == 0 { Vec::new() } else { vec![(parts[0].1 - 1, Q::from_i64(parts[0].1 as i64))] }).unwrap();
    let p = end.operad.generated_suboperad("Diff", &[(2, 0, prod), (1, 0, der)]).unwrap();
    assert_eq!(p.components()[1].dim(0), 3);
    let r = validate_operad(&p);
    assert!(r.passed(), "{:?}", r.failures());
    assert!(p.components()[2].dim(0) > 1);
}

#[test]
fn skyscraper_and_constant_sheaf_operads_validate() {
    let site = PosetSite::two_chain();
    let ass = DgOperad::<Q>::ass(3);
    for p in [SheafOperad::constant(&site, &ass), SheafOperad::skyscraper(&site, 0, &ass)] {
        let r = p.validate(&Policy::exact(3, 0));
        assert!(r.passed(), "{:?}", r.failures());
    }
}

#[test]
fn hyper_operad_of_constant_ass_on_pseudocircle() {
    let site = PosetSite::pseudocircle();
    let p = SheafOperad::constant(&site, &DgOperad::<Q>::ass(3));
    for engine in [Engine::Aw, Engine::Tw] {
        let rg = rgamma_operad(&p, &site.whole(), 1, engine).unwrap();
        for l in 1..=3 {
            let c = rg.component(l);
            let f = crate::combi::permutations(l).len();
            assert_eq!((c.cohomology(0).dim(), c.cohomology(1).dim()), (f, f), "arity {l}");
        }
        let r = validate_operad_with(&rg, &Policy::transferred(engine, 3, 1));
        assert!(r.passed(), "{engine:?}: {:?}", r.failures());
        let h = hyper_operad(&p, 1, engine).unwrap();
        let r = h.validate(&Policy::transferred(engine, 2, 1));
        assert!(r.passed(), "{engine:?}: {:?}", r.failures());
        for y in 0..site.len() {
            let src = p.at(y);
            let r = validate_morphism_with(&h.rho(y), &src, h.at(y), &Policy::exact(3, 1));
            assert!(r.passed(), "{:?}", r.failures());
        }
    }
}

#[test]
fn skyscraper_operad_is_supported_over_one_point() {
    let site = PosetSite::two_chain();
    let p = SheafOperad::skyscraper(&site, 0, &DgOperad::<Q>::com(2));
    let h = hyper_operad(&p, 1, Engine::Aw).unwrap();
    for l in 1..=2 {
        let dims: Vec<usize> = (0..site.len()).map(|y| h.at(y).component(l).cohomology(0).dim()).collect();
        let expected: Vec<usize> = (0..site.len()).map(|y| usize::from(site.leq(y, 0))).collect();
        assert_eq!(dims, expected);
    }
}

fn com_field_algebra(site: &PosetSite, cap: usize) -> SheafAlgebra<Q> {
    let a = CochainComplex::<Q>::unit();
    let mu = ChainMap::new(a.tensor(&a), a.clone(), vec![Matrix::identity(1)]).unwrap();
    SheafAlgebra::constant(site, &OperadAlgebra::commutative(&a, &mu, None, cap).unwrap())
}

/// Structure constants of the binary operation of `alg` on cohomology, in the same
/// layout as [`derived_ring`].
fn binary_table<A: Algebra<Q>>(alg: &A, n_max: usize) -> Vec<Vec<Matrix<Q>>> {
    let c = alg.carrier();
    // the global product: the unique class in H^0 of the arity-2 component
    let h2 = alg.operad().component(2).cohomology(0);
    let x = h2.representative(0);
    let h: Vec<_> = (0..=n_max).map(|n| c.cohomology(n)).collect();
    (0..=n_max)
        .map(|i| {
            (0..=n_max - i)
                .map(|j| {
                    let mut cols = Vec::new();
                    for u in 0..h[i].dim() {
                        for w in 0..h[j].dim() {
                            let v = alg.act((0, &x), &[(i, h[i].representative(u)), (j, h[j].representative(w))]);
                            cols.push(h[i + j].class_of(&v).unwrap());
                        }
                    }
                    Matrix::from_columns(h[i + j].dim(), cols.len(), &cols)
                })
                .collect()
        })
        .collect()
}

#[test]
fn rgamma_algebra_on_sphere_and_torus() {
    let s2 = PosetSite::sphere();
    let alg = rgamma_algebra(&com_field_algebra(&s2, 2), &s2.whole(), 2, Engine::Aw).unwrap();
    let c = alg.carrier();
    assert_eq!((0..=2).map(|n| c.cohomology(n).dim()).collect::<Vec<_>>(), vec![1, 0, 1]);
    let t = binary_table(&alg, 2);
    assert!(t[0][2].is_identity());
    let torus = PosetSite::torus();
    for engine in [Engine::Aw, Engine::Tw] {
        let alg = rgamma_algebra(&com_field_algebra(&torus, 2), &torus.whole(), 2, engine).unwrap();
        let (f, m) = constant_multiplication::<Q>(&torus);
        let (_, _, table) = derived_ring(&f, &m, &torus.whole(), 2, engine).unwrap();
        assert_eq!(binary_table(&alg, 2), table.entries, "{engine:?}");
        assert!(!table.entries[1][1].is_zero());
    }
}

#[test]
fn hyper_algebra_on_pseudocircle_validates() {
    let site = PosetSite::pseudocircle();
    let a = com_field_algebra(&site, 3);
    assert!(a.validate(&Policy::exact(3, 0)).passed());
    for engine in [Engine::Aw, Engine::Tw] {
        let h = hyper_algebra(&a, 1, engine).unwrap();
        for y in 0..site.len() {
            assert_eq!(h.carrier.models[y].complex, crate::godement::hypersheaf(&a.carrier, 1).models[y].complex);
            let r = validate_algebra_with(h.at(y), &Policy::transferred(engine, 3, 1));
            assert!(r.passed(), "{engine:?}: {:?}", r.failures());
            let r = validate_algebra_with(&h.over_source(y), &Policy::transferred(engine, 3, 1));
            assert!(r.passed(), "{engine:?}: {:?}", r.failures());
        }
    }
}
