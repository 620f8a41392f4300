//! The acceptance suite: one PASS/FAIL line per criterion on stdout.
//!
//! Criteria run in parallel; each returns a short summary or the first failure.
//! Random inputs come from fixed seeds so a failure reproduces.

#[path = "../../core/tests/support/mod.rs"]
mod support;

use std::io::Write;
use std::time::Instant;

use hypercoh_core::cosimp::{aw_kunneth, shuffle};
use hypercoh_core::filtered::{decalage, er_page, sigma_r_filtration, stable_page, FilteredComplex};
use hypercoh_core::godement::{constant_multiplication, derived_betti, derived_ring, descent_diagnostics, Engine};
use hypercoh_core::homalg::{is_graded_commutative, ChainMap, CochainComplex, Matrix, ProductTable};
use hypercoh_core::operads::{
    ass_to_com, endomorphism_operad, reciprocal_image, rgamma_algebra, validate_morphism_with, validate_operad, Algebra, DgOperad, Operad, OperadAlgebra,
    Policy, SheafAlgebra,
};
use hypercoh_core::site::{order_complex_oracle, PosetSite, Sheaf};
use hypercoh_core::thomwhitney::{dupont_project, monomial_integral, PolyForm, WhitneyBasis, WhitneyCoords};
use hypercoh_core::{random, Field};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use support::*;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rng(criterion: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed_0000 + criterion)
}

fn models() -> Vec<(&'static str, PosetSite, Vec<usize>)> {
    vec![
        ("point", PosetSite::point(), vec![1, 0, 0, 0]),
        ("2-chain", PosetSite::two_chain(), vec![1, 0, 0, 0]),
        ("pseudocircle", PosetSite::pseudocircle(), vec![1, 1, 0, 0]),
        ("sphere", PosetSite::sphere(), vec![1, 0, 1, 0]),
        ("torus", PosetSite::torus(), vec![1, 2, 1, 0]),
    ]
}

fn criterion_1() -> Outcome {
    let mut seen = Vec::new();
    for (name, site, expected) in models() {
        let oracle = betti_mod_p(&site, 3);
        ensure(oracle == expected, || format!("{name}: oracle gives {oracle:?}, expected {expected:?}"))?;
        let got = derived_betti(&Sheaf::<Q>::constant_field(&site), &site.whole(), 3);
        ensure(got == oracle, || format!("{name}: derived sections give {got:?}, oracle {oracle:?}"))?;
        seen.push(format!("{name} {:?}", &got[..]));
    }
    Ok(seen.join(", "))
}

fn torus_oracle_entries() -> (PosetSite, hypercoh_core::site::OrderComplexRing<Q>, Vec<Vec<Matrix<Q>>>) {
    let site = PosetSite::torus();
    let oracle = order_complex_oracle::<Q>(&site, 2);
    let expected = oracle_entries(&oracle, 2);
    (site, oracle, expected)
}

fn criterion_2() -> Outcome {
    let (site, oracle, expected) = torus_oracle_entries();
    // exterior algebra on two degree-1 classes
    let h11 = &expected[1][1];
    ensure(h11.column(0).is_empty() && h11.column(3).is_empty(), || "oracle squares of degree-1 classes are nonzero".into())?;
    ensure(!h11.column(1).is_empty() && h11.column(1) == h11.column(2).iter().map(|(i, c)| (*i, -c.clone())).collect::<Vec<_>>(), || {
        "oracle degree-1 product is not alternating".into()
    })?;
    let (f, m) = constant_multiplication::<Q>(&site);
    for engine in [Engine::Aw, Engine::Tw] {
        let (model, mu, table) = derived_ring(&f, &m, &site.whole(), 2, engine).map_err(|e| e.to_string())?;
        let moved = table_in_oracle_basis(&model, &table, &oracle).ok_or("no change of basis to the oracle")?;
        ensure(moved.entries == expected, || format!("{engine:?} structure constants differ from the oracle"))?;
        let strict = is_graded_commutative(&mu, &model.complex);
        ensure(strict == (engine == Engine::Tw), || format!("{engine:?}: strict graded commutativity is {strict}"))?;
    }
    Ok("AW and TW match the oracle cup product; TW strictly graded-commutative, AW not".into())
}

fn criterion_3() -> Outcome {
    let mut rng = rng(3);
    let cases = 50;
    let (mut max_n, mut nontrivial) = (0, 0);
    for i in 0..cases {
        let site = random::poset(&mut rng, 6, 0.5);
        let f = random::sheaf::<Q, _>(&mut rng, &site, 3, 2);
        max_n = max_n.max(site.len());
        let r = descent_diagnostics(&f, 3).map_err(|e| format!("sheaf {i}: {e}"))?;
        ensure(r.passed(), || format!("sheaf {i} on {} points: {r:?}", site.len()))?;
        nontrivial += usize::from(derived_betti(&f, &site.whole(), 3).iter().any(|&b| b > 0));
    }
    Ok(format!("{cases} random sheaves (up to {max_n} points, {nontrivial} with nonzero cohomology) pass checks (2), (3), (4) through degree 3"))
}

fn criterion_4() -> Outcome {
    let mut rng = rng(4);
    let cases = 20;
    for i in 0..cases {
        let v = random::cosimplicial::<Q, _>(&mut rng, 3, 1, 1, 4);
        let w = random::cosimplicial::<Q, _>(&mut rng, 3, 1, 1, 4);
        let aw = aw_kunneth(&v, &w, 3).map_err(|e| e.to_string())?;
        let sh = shuffle(&v, &w, 3).map_err(|e| e.to_string())?;
        let id = sh.map.compose(&aw.map).map_err(|e| e.to_string())?;
        for n in 0..=3 {
            ensure(id.component(n).is_identity(), || format!("pair {i}: shuffle after AW is not the identity in degree {n}"))?;
        }
        let other = aw.map.compose(&sh.map).map_err(|e| e.to_string())?;
        ensure(other.is_quasi_iso(), || format!("pair {i}: AW after shuffle is not a quasi-isomorphism"))?;
        let z = random::bicosimplicial::<Q, _>(&mut rng, 3);
        let mu = z.mu(1).map_err(|e| e.to_string())?;
        ensure(mu.map.first_noncommuting_degree().is_none() && mu.map.is_quasi_iso(), || format!("input {i}: mu is not a quasi-isomorphism"))?;
    }
    Ok(format!("exact identity through level 3; AW after shuffle and mu quasi-isomorphisms on {cases} inputs"))
}

fn dense_apply(m: &Matrix<Q>, v: &[Q]) -> Vec<Q> {
    (0..m.nrows()).map(|i| m.row(i).iter().fold(Q::zero(), |acc, (j, c)| acc + c.clone() * v[*j].clone())).collect()
}

fn criterion_5() -> Outcome {
    for level in 0..=3 {
        let basis = WhitneyBasis::new(level);
        for k in 0..=level {
            for i in 0..basis.dim(k) {
                let mut coeffs: Vec<Vec<Q>> = (0..=level).map(|j| vec![Q::zero(); basis.dim(j)]).collect();
                coeffs[k][i] = Q::one();
                let e = WhitneyCoords { level, coeffs };
                ensure(dupont_project(&basis.include(&e)) == e, || format!("p∘i ≠ id at level {level}, degree {k}, index {i}"))?;
            }
        }
    }
    let mut rng = rng(5);
    for case in 0..20 {
        let level = rng.gen_range(1..=3);
        let mut f = PolyForm::<Q>::zero(level);
        for _ in 0..rng.gen_range(1..5) {
            let mut e = vec![0u32; level];
            for _ in 0..rng.gen_range(0..=2) {
                e[rng.gen_range(0..level)] += 1;
            }
            let dxs: Vec<usize> = (1..=level).filter(|_| rng.gen_bool(0.5)).collect();
            f = f.add(&PolyForm::monomial(level, &e, &dxs, Q::integer(rng.gen_range(-3..=3))));
        }
        let basis = WhitneyBasis::new(level);
        let (pf, pdf) = (dupont_project(&f), dupont_project(&f.d()));
        for k in 0..level {
            ensure(dense_apply(&basis.differential::<Q>(k), &pf.coeffs[k]) == pdf.coeffs[k + 1], || format!("form {case}: p is not a chain map in degree {k}"))?;
        }
    }
    for case in 0..30 {
        let len = rng.gen_range(1..=4);
        let exps: Vec<u32> = (0..len).map(|_| rng.gen_range(0..4)).collect();
        let (got, want) = (monomial_integral::<Q>(&exps), iterated_simplex_integral(&exps));
        ensure(got == want, || format!("integral {case} of {exps:?}: {got} vs {want}"))?;
    }
    Ok("p∘i = id through level 3; p a chain map on 20 forms; 30 integrals match".into())
}

fn criterion_6() -> Outcome {
    let mut rng = rng(6);
    for i in 0..10 {
        let v = random::filtered_cosimplicial::<Q, _>(&mut rng, 3, 2, 1, 2, 3);
        let dv = v.decalage();
        for r in 0..2 {
            let (_, lhs) = sigma_r_filtration(&v, r + 1, 2).map_err(|e| e.to_string())?;
            let (_, rhs) = sigma_r_filtration(&dv, r, 2).map_err(|e| e.to_string())?;
            ensure(decalage(&lhs).agrees_through(&rhs, 2), || format!("input {i}: Dec σ_{} ≠ σ_{r} Dec", r + 1))?;
        }
    }
    for i in 0..20 {
        let a = random::filtered_complex::<Q, _>(&mut rng, 3, 3, 3);
        let e = stable_page(&a);
        let got: Vec<_> = e.entries.iter().filter(|(_, x)| x.dim() > 0).map(|(&k, x)| (k, x.dim())).collect();
        let want: Vec<_> = graded_cohomology_dims(&a).into_iter().collect();
        ensure(got == want, || format!("complex {i}: E_inf {got:?} vs gr H {want:?}"))?;
    }
    for i in 0..20 {
        let c = random::complex::<Q, _>(&mut rng, 4, 3);
        let e = er_page(&FilteredComplex::trivial(&c), 1);
        for n in 0..=3 {
            ensure(e.dim(0, n) == c.cohomology(n).dim(), || format!("complex {i}: trivial E_1 differs from H^{n}"))?;
        }
    }
    Ok("décalage identity for r = 0, 1 on 10 inputs; E_inf = gr H on 20; trivial E_1 = H".into())
}

fn truncated_polynomial() -> (CochainComplex<Q>, ChainMap<Q>) {
    let a = CochainComplex::<Q>::concentrated(0, 3);
    let e = (0..3).flat_map(|i| (0..3).filter(move |j| i + j < 3).map(move |j| (i + j, i * 3 + j, Q::one())));
    let mu = ChainMap::new(a.tensor(&a), a.clone(), vec![Matrix::from_triplets(3, 9, e)]).expect("product");
    (a, mu)
}

/// Structure constants of the binary operation of a transferred algebra, laid out
/// like a [`ProductTable`].
fn binary_table<A: Algebra<Q>>(alg: &A, n_max: usize) -> Result<ProductTable<Q>, String> {
    let c = alg.carrier();
    let h2 = alg.operad().component(2).cohomology(0);
    let x = h2.representative(0);
    let h: Vec<_> = (0..=n_max).map(|n| c.cohomology(n)).collect();
    let mut entries = Vec::new();
    for i in 0..=n_max {
        let mut row = Vec::new();
        for j in 0..=n_max - i {
            let mut cols = Vec::new();
            for u in 0..h[i].dim() {
                for w in 0..h[j].dim() {
                    let v = alg.act((0, x), &[(i, h[i].representative(u)), (j, h[j].representative(w))]);
                    cols.push(h[i + j].class_of(&v).map_err(|e| e.to_string())?);
                }
            }
            row.push(Matrix::from_columns(h[i + j].dim(), cols.len(), &cols));
        }
        entries.push(row);
    }
    let betti: Vec<usize> = h.iter().map(|x| x.dim()).collect();
    Ok(ProductTable { top: n_max, left: betti.clone(), right: betti, entries })
}

fn criterion_7() -> Outcome {
    for p in [DgOperad::<Q>::com(4), DgOperad::ass(4)] {
        let r = validate_operad(&p);
        ensure(r.passed(), || format!("{} fails: {:?}", p.name, r.failures()))?;
    }
    let end = endomorphism_operad(&CochainComplex::<Q>::concentrated(0, 2), 4).map_err(|e| e.to_string())?;
    for l in 0..=4 {
        let d = end.operad.components()[l].dims();
        ensure(d == [1usize << (l + 1)], || format!("End arity {l} has dimensions {d:?}"))?;
    }
    let (a, mu) = truncated_polynomial();
    let com = OperadAlgebra::commutative(&a, &mu, None, 4).map_err(|e| e.to_string())?;
    let f = ass_to_com::<Q>(4);
    let ass = DgOperad::ass(4);
    ensure(validate_morphism_with(&f, &ass, com.operad(), &Policy::exact(4, 0)).passed(), || "Ass → Com is not a morphism".into())?;
    let pulled = reciprocal_image(&f, &ass, &com);
    let direct = OperadAlgebra::associative(&a, &mu, 4).map_err(|e| e.to_string())?;
    for l in 0..=4 {
        ensure(pulled.action(l) == direct.action(l), || format!("reciprocal image differs in arity {l}"))?;
    }
    let (site, oracle, expected) = torus_oracle_entries();
    let unit = CochainComplex::<Q>::unit();
    let m = ChainMap::new(unit.tensor(&unit), unit.clone(), vec![Matrix::identity(1)]).expect("product");
    let alg = SheafAlgebra::constant(&site, &OperadAlgebra::commutative(&unit, &m, None, 2).map_err(|e| e.to_string())?);
    let (f, fm) = constant_multiplication::<Q>(&site);
    for engine in [Engine::Aw, Engine::Tw] {
        let global = rgamma_algebra(&alg, &site.whole(), 2, engine).map_err(|e| e.to_string())?;
        let table = binary_table(&global, 2)?;
        let (model, _, _) = derived_ring(&f, &fm, &site.whole(), 2, engine).map_err(|e| e.to_string())?;
        let moved = table_in_oracle_basis(&model, &table, &oracle).ok_or("no change of basis to the oracle")?;
        ensure(moved.entries == expected, || format!("{engine:?}: transferred Com-algebra ring differs from the oracle"))?;
    }
    Ok("Com, Ass valid through arity 4; End(Q^2) dims 2^(l+1); reciprocal image exact; torus Com-algebra ring matches".into())
}

fn criterion_8() -> Outcome {
    let mut rng = rng(8);
    for i in 0..10 {
        let site = random::poset(&mut rng, 4, 0.5);
        let f = random::sheaf::<Q, _>(&mut rng, &site, 2, 1);
        let g = random::sheaf::<Q, _>(&mut rng, &site, 2, 1);
        let opens = site.all_opens();
        let u = &opens[rng.gen_range(0..opens.len())];
        ensure(sections_comparison_is_natural(&f, &g, u), || format!("pair {i}: Γ comparison is not natural"))?;
        let phi = collapse_to_chain(&site, &opens[rng.gen_range(0..opens.len())]);
        ensure(direct_image_comparison_is_natural(&f, &g, &phi), || format!("pair {i}: direct image comparison is not natural"))?;
    }
    Ok("both comparison maps natural on 10 random pairs".into())
}

#[test]
fn acceptance_criteria() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("oracle equivalence for constant sheaves", criterion_1),
        ("torus ring structure", criterion_2),
        ("descent diagnostics on random sheaves", criterion_3),
        ("Eilenberg-Zilber suite", criterion_4),
        ("Dupont suite", criterion_5),
        ("filtered suite", criterion_6),
        ("operad suite", criterion_7),
        ("monoidality of sections and direct images", criterion_8),
    ];
    let results: Vec<(Outcome, f64)> = std::thread::scope(|s| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|(_, run)| {
                s.spawn(move || {
                    let t = Instant::now();
                    let r = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
                    (r, t.elapsed().as_secs_f64())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("criterion thread")).collect()
    });
    let mut out = String::new();
    for (i, ((name, _), (r, secs))) in criteria.iter().zip(&results).enumerate() {
        let (tag, detail) = match r {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        out.push_str(&format!("criterion {}: {tag} {name} ({secs:.1}s): {detail}\n", i + 1));
    }
    std::io::stdout().write_all(out.as_bytes()).expect("stdout");
    assert!(results.iter().all(|(r, _)| r.is_ok()), "{out}");
}
