use hypercoh_core::godement::{hypersheaf, Engine};
use hypercoh_core::homalg::{ChainMap, CochainComplex, Matrix};
use hypercoh_core::operads::{
    ass_to_com, endomorphism_operad, hyper_algebra, reciprocal_image, rgamma_algebra, validate_algebra, validate_operad, Algebra, DgOperad,
    OperadAlgebra, OperadMap, OperadMorphism, Policy, SheafAlgebra,
};
use hypercoh_core::site::PosetSite;
use hypercoh_core::{Field, Rational};

type Q = Rational;

/// `Q[t]/(t^3)` in degree 0.
fn truncated_polynomial() -> OperadAlgebra<Q> {
    let a = CochainComplex::<Q>::concentrated(0, 3);
    let e = (0..3).flat_map(|i| (0..3).filter(move |j| i + j < 3).map(move |j| (i + j, i * 3 + j, Q::one())));
    let mu = ChainMap::new(a.tensor(&a), a.clone(), vec![Matrix::from_triplets(3, 9, e)]).unwrap();
    OperadAlgebra::commutative(&a, &mu, Some(vec![(0, Q::one())]), 3).unwrap()
}

#[test]
fn builtins_and_endomorphisms() {
    assert!(validate_operad(&DgOperad::<Q>::com(4)).passed());
    assert!(validate_operad(&DgOperad::<Q>::ass(4)).passed());
    let end = endomorphism_operad(&CochainComplex::<Q>::concentrated(0, 2), 4).unwrap();
    let dims: Vec<usize> = (0..=4).map(|l| end.operad.components()[l].dim(0)).collect();
    assert_eq!(dims, vec![2, 4, 8, 16, 32]);
}

#[test]
fn zero_morphism_gives_the_trivial_action() {
    let alg = truncated_polynomial();
    let ucom = alg.operad().clone();
    let zero = OperadMorphism {
        components: ucom.components().iter().enumerate().map(|(l, c)| vec![if l == 0 { Matrix::identity(c.dim(0)) } else { Matrix::zeros(c.dim(0), c.dim(0)) }]).collect(),
    };
    let pulled = reciprocal_image(&zero, &ucom, &alg);
    for l in 1..=3 {
        assert!(pulled.action(l).iter().all(|m| m.is_zero()), "arity {l}");
    }
}

#[test]
fn reciprocal_image_keeps_the_product() {
    let alg = truncated_polynomial();
    let com = OperadAlgebra::from_fn(DgOperad::com(3), alg.carrier().clone(), |l, parts| {
        let x = vec![(0, Q::one())];
        let args: Vec<(usize, Vec<(usize, Q)>)> = parts[1..].iter().map(|&(d, i)| (d, vec![(i, Q::one())])).collect();
        let refs: Vec<_> = args.iter().map(|(d, v)| (*d, v.as_slice())).collect();
        if l == 0 { Vec::new() } else { alg.act((0, &x), &refs) }
    });
    assert!(validate_algebra(&com).passed());
    let ass = reciprocal_image(&ass_to_com::<Q>(3), &DgOperad::ass(3), &com);
    assert!(validate_algebra(&ass).passed());
    assert_eq!(ass.action(2)[0].column(0), com.action(2)[0].column(0));
    assert_eq!(ass.action(2)[0].column(9 + 4), com.action(2)[0].column(4));
}

#[test]
fn point_site_reproduces_the_algebra() {
    let site = PosetSite::point();
    let alg = truncated_polynomial();
    let sheaf = SheafAlgebra::constant(&site, &alg);
    let rg = rgamma_algebra(&sheaf, &site.whole(), 1, Engine::Aw).unwrap();
    assert_eq!(rg.carrier().cohomology(0).dim(), 3);
    let h = hyper_algebra(&sheaf, 1, Engine::Aw).unwrap();
    assert_eq!(h.carrier.models[0].complex, hypersheaf(&sheaf.carrier, 1).models[0].complex);
    let r = hypercoh_core::operads::validate_algebra_with(&h.over_source(0), &Policy::transferred(Engine::Aw, 3, 1));
    assert!(r.passed(), "{:?}", r.failures());
    // t · t = t², t · t² = 0 on cohomology
    let t = vec![(1, Q::one())];
    let (_, rho, _) = h.rho(0);
    let lifted = rho.apply(2, (0, &[(0, Q::one())]));
    let hc = h.carrier.models[0].complex.cohomology(0);
    let lt = h.carrier.rho.components[0][0].apply(&t);
    let tt = h.at(0).act((0, &lifted), &[(0, &lt), (0, &lt)]);
    let t2 = h.carrier.rho.components[0][0].apply(&[(2, Q::one())]);
    assert_eq!(hc.class_of(&tt).unwrap(), hc.class_of(&t2).unwrap());
}
