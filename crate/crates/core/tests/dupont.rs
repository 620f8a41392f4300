use hypercoh_core::thomwhitney::{dupont_project, PolyForm, WhitneyBasis, WhitneyCoords};
use hypercoh_core::{Field, Rational};
use proptest::prelude::*;

type Q = Rational;

fn dense_apply(m: &hypercoh_core::homalg::Matrix<Q>, v: &[Q]) -> Vec<Q> {
    (0..m.nrows()).map(|i| m.row(i).iter().fold(Q::zero(), |acc, (j, c)| acc + c.clone() * v[*j].clone())).collect()
}

#[test]
fn projection_after_inclusion_is_the_identity() {
    for level in 0..=3 {
        let basis = WhitneyBasis::new(level);
        for k in 0..=level {
            for i in 0..basis.dim(k) {
                let mut coeffs: Vec<Vec<Q>> = (0..=level).map(|j| vec![Q::zero(); basis.dim(j)]).collect();
                coeffs[k][i] = Q::one();
                let e = WhitneyCoords { level, coeffs };
                assert_eq!(dupont_project(&basis.include(&e)), e, "level {level}, face {:?}", basis.faces(k)[i]);
            }
        }
    }
}

/// A form of polynomial degree ≤ 2 on `Δ^level` from a list of `(exponents, dx set, coefficient)`.
fn form(level: usize, terms: &[(Vec<u32>, u32, i64)]) -> PolyForm<Q> {
    let mut f = PolyForm::zero(level);
    for (e, mask, c) in terms {
        let dxs: Vec<usize> = (1..=level).filter(|i| mask >> (i - 1) & 1 == 1).collect();
        f = f.add(&PolyForm::monomial(level, e, &dxs, Q::integer(*c)));
    }
    f
}

fn terms(level: usize) -> impl Strategy<Value = Vec<(Vec<u32>, u32, i64)>> {
    let term = (prop::collection::vec(0u32..3, level), 0u32..(1 << level), -3i64..=3)
        .prop_filter("polynomial degree at most 2", |(e, _, _)| e.iter().sum::<u32>() <= 2);
    prop::collection::vec(term, 1..5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn dupont_projection_is_a_chain_map((level, ts) in (1usize..=3).prop_flat_map(|l| (Just(l), terms(l)))) {
        let f = form(level, &ts);
        let basis = WhitneyBasis::new(level);
        let pf = dupont_project(&f);
        let pdf = dupont_project(&f.d());
        for k in 0..level {
            let d = basis.differential::<Q>(k);
            prop_assert_eq!(dense_apply(&d, &pf.coeffs[k]), pdf.coeffs[k + 1].clone(), "form degree {}", k);
        }
        prop_assert!(pdf.coeffs[0].iter().all(|c| c.is_zero()));
    }

    #[test]
    fn wedge_satisfies_leibniz((level, a, b) in (1usize..=3).prop_flat_map(|l| (Just(l), terms(l), terms(l)))) {
        let f = form(level, &a);
        let g = form(level, &b);
        for p in 0..=level {
            let fp = f.homogeneous(p);
            let lhs = fp.wedge(&g).unwrap().d();
            let rhs = fp.d().wedge(&g).unwrap().add(&fp.wedge(&g.d()).unwrap().scale(&Q::sign(p)));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
