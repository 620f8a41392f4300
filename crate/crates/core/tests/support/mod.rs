//! Independent oracles shared by the integration and acceptance tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use hypercoh_core::filtered::FilteredComplex;
use hypercoh_core::godement::ChainModel;
use hypercoh_core::homalg::{Matrix, ProductTable, Subspace};
use hypercoh_core::site::{OrderComplexRing, PosetSite};
use hypercoh_core::{Field, Rational};

pub type Q = Rational;

const P: u64 = 1_000_003;

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1;
    b %= P;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    r
}

fn rank_mod_p(mut rows: Vec<Vec<u64>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(rank, piv);
        let inv = pow_mod(rows[rank][c], P - 2);
        for v in rows[rank].iter_mut() {
            *v = *v * inv % P;
        }
        for i in 0..rows.len() {
            if i != rank && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..ncols {
                    rows[i][j] = (rows[i][j] + P * P - f * rows[rank][j]) % P;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Strict chains `x_0 < … < x_p` of the poset, found by brute force over all subsets.
pub fn order_complex(site: &PosetSite) -> Vec<Vec<Vec<usize>>> {
    let n = site.len();
    let mut by_dim: Vec<Vec<Vec<usize>>> = vec![Vec::new(); n];
    for mask in 1u32..(1 << n) {
        let mut s: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let comparable = s.iter().all(|&a| s.iter().all(|&b| a == b || site.lt(a, b) || site.lt(b, a)));
        if comparable {
            s.sort_by_key(|&a| (0..n).filter(|&b| mask >> b & 1 == 1 && site.lt(b, a)).count());
            by_dim[s.len() - 1].push(s);
        }
    }
    while by_dim.last().is_some_and(|d| d.is_empty()) {
        by_dim.pop();
    }
    by_dim
}

/// Betti numbers of the order complex through degree `top`, by rank computations mod a large prime.
pub fn betti_mod_p(site: &PosetSite, top: usize) -> Vec<usize> {
    let simplices = order_complex(site);
    let count = |p: usize| simplices.get(p).map_or(0, |s| s.len());
    // rank of the coboundary C^p → C^{p+1}
    let rank = |p: usize| -> usize {
        if count(p) == 0 || count(p + 1) == 0 {
            return 0;
        }
        let index: BTreeMap<&Vec<usize>, usize> = simplices[p].iter().enumerate().map(|(i, s)| (s, i)).collect();
        let rows = simplices[p + 1]
            .iter()
            .map(|s| {
                let mut row = vec![0u64; count(p)];
                for i in 0..s.len() {
                    let mut face = s.clone();
                    face.remove(i);
                    row[index[&face]] = if i % 2 == 0 { 1 } else { P - 1 };
                }
                row
            })
            .collect();
        rank_mod_p(rows)
    };
    (0..=top).map(|p| count(p) - rank(p) - if p == 0 { 0 } else { rank(p - 1) }).collect()
}

/// The structure constants of a product on `H^*(Γ(X, H_X(Q)))` rewritten in the
/// oracle's representative basis: a model cocycle in degree `p` is a function on
/// strict chains of length `p`, i.e. a simplicial cochain of the order complex.
pub fn table_in_oracle_basis(model: &ChainModel<Q>, table: &ProductTable<Q>, oracle: &OrderComplexRing<Q>) -> Option<ProductTable<Q>> {
    let top = table.top;
    let maps: Vec<Matrix<Q>> = (0..=top)
        .map(|p| {
            let h = model.complex.cohomology(p);
            let cols: Vec<Vec<(usize, Q)>> = (0..h.dim())
                .map(|k| {
                    let rep = h.representative(k);
                    let cochain: Vec<Q> = oracle.simplices[p]
                        .iter()
                        .map(|s| {
                            let c = model.chain_index(s).expect("oracle simplex is a model chain");
                            let pos = model.pos(p, c, 0, 0);
                            rep.iter().find(|(i, _)| *i == pos).map_or(Q::zero(), |(_, v)| v.clone())
                        })
                        .collect();
                    let coords = oracle.class_coords(p, &cochain).expect("model cocycle is a simplicial cocycle");
                    coords.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect()
                })
                .collect();
            Matrix::from_columns(oracle.betti[p], h.dim(), &cols)
        })
        .collect();
    table.transform(&maps, &maps, &maps)
}

/// The oracle's cup products as a [`ProductTable`]-shaped array of matrices.
pub fn oracle_entries(oracle: &OrderComplexRing<Q>, top: usize) -> Vec<Vec<Matrix<Q>>> {
    (0..=top)
        .map(|i| {
            (0..=top - i)
                .map(|j| {
                    let mut cols = Vec::new();
                    for a in 0..oracle.betti[i] {
                        for b in 0..oracle.betti[j] {
                            let v = &oracle.products[i][j][a][b];
                            cols.push(v.iter().cloned().enumerate().filter(|(_, x)| !x.is_zero()).collect::<Vec<_>>());
                        }
                    }
                    Matrix::from_columns(oracle.betti[i + j], cols.len(), &cols)
                })
                .collect()
        })
        .collect()
}

/// Multivariate polynomial with rational coefficients, keyed by exponent vectors.
type Poly = BTreeMap<Vec<u32>, Q>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let c = out.entry(e).or_insert_with(Q::zero);
            *c = c.clone() + ca.clone() * cb.clone();
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn poly_pow(a: &Poly, k: u32, vars: usize) -> Poly {
    let mut out: Poly = [(vec![0; vars], Q::one())].into();
    for _ in 0..k {
        out = poly_mul(&out, a);
    }
    out
}

/// `∫_{Δ^k} x_0^{a_0} ⋯ x_k^{a_k} dx_1 ⋯ dx_k` by iterated symbolic integration:
/// `x_k` from 0 to `1 - x_1 - … - x_{k-1}`, then `x_{k-1}`, and so on.
pub fn iterated_simplex_integral(exponents: &[u32]) -> Q {
    let k = exponents.len() - 1;
    let mut one_minus: Poly = [(vec![0; k], Q::one())].into();
    for i in 0..k {
        let mut e = vec![0; k];
        e[i] = 1;
        one_minus.insert(e, -Q::one());
    }
    let mut f = poly_pow(&one_minus, exponents[0], k);
    let mut mono = vec![0; k];
    mono[..k].copy_from_slice(&exponents[1..]);
    f = poly_mul(&f, &[(mono, Q::one())].into());
    for j in (0..k).rev() {
        // upper bound 1 - x_0 - … - x_{j-1} (variables indexed from 0 here)
        let mut bound: Poly = [(vec![0; k], Q::one())].into();
        for i in 0..j {
            let mut e = vec![0; k];
            e[i] = 1;
            bound.insert(e, -Q::one());
        }
        let mut next = Poly::new();
        for (e, c) in &f {
            let m = e[j] + 1;
            let mut rest = e.clone();
            rest[j] = 0;
            let term = poly_mul(&poly_pow(&bound, m, k), &[(rest, c.clone() * Q::integer(m as i64).inv())].into());
            for (e2, c2) in term {
                let t = next.entry(e2).or_insert_with(Q::zero);
                *t = t.clone() + c2;
            }
        }
        next.retain(|_, c| !c.is_zero());
        f = next;
    }
    f.get(&vec![0; k]).cloned().unwrap_or_else(Q::zero)
}

/// `dim gr^p H^n`: `F^p H^n = (Z^n ∩ F^p + B^n) / B^n` computed directly from subspaces.
pub fn graded_cohomology_dims(a: &FilteredComplex<Q>) -> BTreeMap<(i64, usize), usize> {
    let c = a.complex();
    let mut out = BTreeMap::new();
    for n in 0..=c.top_degree() {
        let z = Subspace::kernel(&c.diff(n));
        let b = if n == 0 { Subspace::zero(c.dim(0)) } else { Subspace::image(&c.diff(n - 1)) };
        let fh = |p: i64| z.intersect(&a.level(p, n)).sum(&b).dim();
        for p in a.min()..a.max() {
            let d = fh(p) - fh(p + 1);
            if d > 0 {
                out.insert((p, n), d);
            }
        }
    }
    out
}

use hypercoh_core::site::{direct_image_comparison, sections_comparison, MonotoneMap, Open, Sheaf};

/// `cmp' ∘ (Γα ⊗ Γβ) = Γ(α ⊗ β) ∘ cmp` over `u` for the triple units `α : f → Tf`, `β : g → Tg`.
pub fn sections_comparison_is_natural(f: &Sheaf<Q>, g: &Sheaf<Q>, u: &Open) -> bool {
    let (tf, a) = f.triple();
    let (tg, b) = g.triple();
    let (fg, tftg) = (f.tensor(g).unwrap(), tf.tensor(&tg).unwrap());
    let ab = a.tensor(&b, (f, g), (&tf, &tg));
    let (sf, sg, sfg) = (f.sections(u), g.sections(u), fg.sections(u));
    let (stf, stg, stftg) = (tf.sections(u), tg.sections(u), tftg.sections(u));
    let before = sections_comparison(f, g, &fg, &sf, &sg, &sfg);
    let after = sections_comparison(&tf, &tg, &tftg, &stf, &stg, &stftg);
    let left = after.compose(&a.on_sections(&sf, &stf).tensor(&b.on_sections(&sg, &stg))).unwrap();
    let right = ab.on_sections(&sfg, &stftg).compose(&before).unwrap();
    left.components() == right.components()
}

/// The same square for `φ_* f ⊗ φ_* g → φ_*(f ⊗ g)`, checked as maps of sheaves on the target.
pub fn direct_image_comparison_is_natural(f: &Sheaf<Q>, g: &Sheaf<Q>, phi: &MonotoneMap) -> bool {
    let (tf, a) = f.triple();
    let (tg, b) = g.triple();
    let (src, tgt, before) = direct_image_comparison(f, g, phi).unwrap();
    let (tsrc, ttgt, after) = direct_image_comparison(&tf, &tg, phi).unwrap();
    if before.validate(&src, &tgt).is_err() || after.validate(&tsrc, &ttgt).is_err() {
        return false;
    }
    let (pf, pg, ptf, ptg) = (f.direct_image(phi).unwrap(), g.direct_image(phi).unwrap(), tf.direct_image(phi).unwrap(), tg.direct_image(phi).unwrap());
    let pa = a.direct_image(f, &tf, phi);
    let pb = b.direct_image(g, &tg, phi);
    let (fg, tftg) = (f.tensor(g).unwrap(), tf.tensor(&tg).unwrap());
    let pab = a.tensor(&b, (f, g), (&tf, &tg)).direct_image(&fg, &tftg, phi);
    let left = after.compose(&pa.tensor(&pb, (&pf, &pg), (&ptf, &ptg)));
    let right = pab.compose(&before);
    left == right
}

/// A monotone map from `site` onto the 2-chain sending an up-set to the top.
pub fn collapse_to_chain(site: &PosetSite, up: &Open) -> MonotoneMap {
    let images = (0..site.len()).map(|x| usize::from(up.contains(x))).collect();
    MonotoneMap::new(site.clone(), PosetSite::two_chain(), images).unwrap()
}
