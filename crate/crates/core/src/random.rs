//! Random small inputs for property tests and the acceptance suite.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::Rng;

use crate::cosimp::{BicosimplicialComplex, CosimplicialComplex, LevelMap};
use crate::field::Field;
use crate::filtered::{FilteredComplex, FilteredCosimplicial};
use crate::homalg::{CochainComplex, Matrix, SparseVec, Subspace};
use crate::site::{PosetSite, Sheaf};

/// A random scalar in `[-bound, bound]`.
pub fn scalar<F: Field, R: Rng + ?Sized>(rng: &mut R, bound: i64) -> F {
    F::from_i64(rng.gen_range(-bound..=bound))
}

/// A random matrix with entries in `[-bound, bound]`, each zero with probability `1 - density`.
pub fn matrix<F: Field, R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize, bound: i64, density: f64) -> Matrix<F> {
    let mut e = Vec::new();
    for i in 0..rows {
        for j in 0..cols {
            if rng.gen_bool(density) {
                e.push((i, j, scalar(rng, bound)));
            }
        }
    }
    Matrix::from_triplets(rows, cols, e)
}

fn vector<F: Field, R: Rng + ?Sized>(rng: &mut R, len: usize) -> SparseVec<F> {
    (0..len).map(|i| (i, scalar::<F, R>(rng, 2))).filter(|(_, c)| !c.is_zero()).collect()
}

/// A random poset on `1..=max_elements` points: each pair `i < j` is related with probability `density`.
pub fn poset<R: Rng + ?Sized>(rng: &mut R, max_elements: usize, density: f64) -> PosetSite {
    let n = rng.gen_range(1..=max_elements.max(1));
    let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    let mut rel = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                rel.push((i, j));
            }
        }
    }
    PosetSite::new(names, &rel).expect("upper-triangular relations are antisymmetric")
}

/// A random bounded complex with `dim ≤ max_dim` in degrees `0..=top`.
pub fn complex<F: Field, R: Rng + ?Sized>(rng: &mut R, max_dim: usize, top: usize) -> CochainComplex<F> {
    let dims: Vec<usize> = (0..=top).map(|_| rng.gen_range(0..=max_dim)).collect();
    let mut diffs: Vec<Matrix<F>> = Vec::with_capacity(top);
    for n in 0..top {
        // rows of `k` annihilate the image of the previous differential
        let k = match diffs.last() {
            Some(prev) => Subspace::kernel(&prev.transpose()).basis_matrix(),
            None => Matrix::identity(dims[0]),
        };
        let r = matrix(rng, dims[n + 1], k.nrows(), 2, 0.6);
        diffs.push(r.mul(&k));
    }
    CochainComplex::new(dims, diffs).expect("d ∘ d = 0 by construction")
}

/// Smallest subcomplex containing the given vectors (per degree).
fn closure<F: Field>(c: &CochainComplex<F>, gens: Vec<Vec<SparseVec<F>>>) -> Vec<Subspace<F>> {
    let top = c.top_degree();
    let mut out: Vec<Subspace<F>> = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let mut g = gens[n].clone();
        if n > 0 {
            let d = c.diff(n - 1);
            g.extend(out[n - 1].basis().iter().map(|v| d.apply(v)));
        }
        out.push(Subspace::span(c.dim(n), g));
    }
    out
}

fn random_subcomplex<F: Field, R: Rng + ?Sized>(rng: &mut R, c: &CochainComplex<F>, inside: &[Subspace<F>]) -> Vec<Subspace<F>> {
    let gens = (0..=c.top_degree())
        .map(|n| {
            let s = &inside[n];
            if s.dim() == 0 || rng.gen_bool(0.5) {
                return Vec::new();
            }
            let coeffs = vector::<F, R>(rng, s.dim());
            let mut v: SparseVec<F> = Vec::new();
            for (i, a) in coeffs {
                v = crate::homalg::vector::axpy(&v, &a, &s.basis()[i]);
            }
            alloc::vec![v]
        })
        .collect();
    closure(c, gens)
}

/// A random sheaf whose values are subquotients `A_x / B_x` of one complex, with
/// `A`, `B` increasing along the order; restrictions are the induced maps.
pub fn sheaf<F: Field, R: Rng + ?Sized>(rng: &mut R, site: &PosetSite, max_dim: usize, top: usize) -> Sheaf<F> {
    filtered_sheaf(rng, site, max_dim, top, 0).0
}

/// A random sheaf as in [`sheaf`] with a filtration of every value by `steps`
/// nonzero subsheaves below `F^0`; the filtrations start at 0 and vanish at `steps + 1`.
pub fn filtered_sheaf<F: Field, R: Rng + ?Sized>(
    rng: &mut R,
    site: &PosetSite,
    max_dim: usize,
    top: usize,
    steps: usize,
) -> (Sheaf<F>, Vec<FilteredComplex<F>>) {
    let v = complex::<F, R>(rng, max_dim, top);
    let full: Vec<Subspace<F>> = (0..=top).map(|n| Subspace::full(v.dim(n))).collect();
    let n = site.len();
    let sa: Vec<Vec<Subspace<F>>> = (0..n)
        .map(|_| {
            if rng.gen_bool(0.3) {
                full.clone()
            } else {
                random_subcomplex(rng, &v, &full)
            }
        })
        .collect();
    let a: Vec<Vec<Subspace<F>>> = (0..n)
        .map(|x| {
            (0..=top)
                .map(|q| (0..n).filter(|&z| site.leq(z, x)).fold(Subspace::zero(v.dim(q)), |acc, z| acc.sum(&sa[z][q])))
                .collect()
        })
        .collect();
    let sb: Vec<Vec<Subspace<F>>> = (0..n).map(|z| random_subcomplex(rng, &v, &a[z])).collect();
    let b: Vec<Vec<Subspace<F>>> = (0..n)
        .map(|x| {
            (0..=top)
                .map(|q| (0..n).filter(|&z| site.leq(z, x)).fold(Subspace::zero(v.dim(q)), |acc, z| acc.sum(&sb[z][q])))
                .collect()
        })
        .collect();
    let reps: Vec<Vec<Subspace<F>>> = (0..n).map(|x| (0..=top).map(|q| a[x][q].complement_in(&b[x][q])).collect()).collect();
    let class = |x: usize, q: usize, w: &[(usize, F)]| -> SparseVec<F> {
        let r = b[x][q].reduce(w);
        reps[x][q].coords(&r).expect("residues lie in the complement")
    };
    let values: Vec<CochainComplex<F>> = (0..n)
        .map(|x| {
            let dims: Vec<usize> = (0..=top).map(|q| reps[x][q].dim()).collect();
            let diffs = (0..top)
                .map(|q| {
                    let d = v.diff(q);
                    let cols: Vec<SparseVec<F>> = reps[x][q].basis().iter().map(|r| class(x, q + 1, &d.apply(r))).collect();
                    Matrix::from_columns(dims[q + 1], dims[q], &cols)
                })
                .collect();
            CochainComplex::new(dims, diffs).expect("quotient of subcomplexes")
        })
        .collect();
    let mut covers: BTreeMap<(usize, usize), LevelMap<F>> = BTreeMap::new();
    for &(x, y) in site.covers() {
        let lm = (0..=top)
            .map(|q| {
                let cols: Vec<SparseVec<F>> = reps[x][q].basis().iter().map(|r| class(y, q, r)).collect();
                Matrix::from_columns(reps[y][q].dim(), reps[x][q].dim(), &cols)
            })
            .collect();
        covers.insert((x, y), lm);
    }
    let f = Sheaf::from_covers(site.clone(), values, covers).expect("subquotient sheaves are functorial");
    // C^k_x = Σ_{z ≤ x, k' ≥ k} S^{k'}_z with S^{k'}_z ⊆ A_z random subcomplexes
    let s: Vec<Vec<Vec<Subspace<F>>>> = (0..steps).map(|_| (0..n).map(|z| random_subcomplex(rng, &v, &a[z])).collect()).collect();
    let filtrations = (0..n)
        .map(|x| {
            let value = f.value(x);
            let mut levels: Vec<Vec<Subspace<F>>> = alloc::vec![(0..=top).map(|q| Subspace::full(value.dim(q))).collect()];
            for k in 1..=steps {
                let lv = (0..=top)
                    .map(|q| {
                        let mut c = Subspace::zero(v.dim(q));
                        for kk in k..=steps {
                            for z in (0..n).filter(|&z| site.leq(z, x)) {
                                c = c.sum(&s[kk - 1][z][q]);
                            }
                        }
                        Subspace::span(value.dim(q), c.basis().iter().map(|w| class(x, q, w)))
                    })
                    .collect();
                levels.push(lv);
            }
            FilteredComplex::new(value.clone(), 0, levels).expect("images of subcomplexes")
        })
        .collect();
    (f, filtrations)
}

/// A random bounded complex with a filtration by `steps` nested random subcomplexes.
pub fn filtered_complex<F: Field, R: Rng + ?Sized>(rng: &mut R, max_dim: usize, top: usize, steps: usize) -> FilteredComplex<F> {
    let c = complex::<F, R>(rng, max_dim, top);
    let mut levels: Vec<Vec<Subspace<F>>> = alloc::vec![(0..=top).map(|n| Subspace::full(c.dim(n))).collect()];
    for _ in 0..steps {
        let inside = levels.last().expect("nonempty").clone();
        levels.push(random_subcomplex(rng, &c, &inside));
    }
    FilteredComplex::new(c, 0, levels).expect("nested subcomplexes")
}

/// A random filtered cosimplicial complex: global sections of the Godement resolution
/// of a random filtered sheaf.
pub fn filtered_cosimplicial<F: Field, R: Rng + ?Sized>(
    rng: &mut R,
    max_elements: usize,
    max_dim: usize,
    top: usize,
    steps: usize,
    trunc: usize,
) -> FilteredCosimplicial<F> {
    let site = poset(rng, max_elements, 0.5);
    let (f, filt) = filtered_sheaf::<F, R>(rng, &site, max_dim, top, steps);
    FilteredCosimplicial::godement(&f, &filt, &site.whole(), trunc).expect("restrictions preserve the filtrations")
}

/// A random cosimplicial complex: global sections of the Godement resolution of a
/// random sheaf on a random poset.
pub fn cosimplicial<F: Field, R: Rng + ?Sized>(rng: &mut R, max_elements: usize, max_dim: usize, top: usize, trunc: usize) -> CosimplicialComplex<F> {
    let site = poset(rng, max_elements, 0.5);
    let f = sheaf::<F, R>(rng, &site, max_dim, top);
    crate::godement::godement_sections(&f, &site.whole(), trunc)
}

/// A random bicosimplicial complex: the external tensor product of two random cosimplicial complexes.
pub fn bicosimplicial<F: Field, R: Rng + ?Sized>(rng: &mut R, trunc: usize) -> BicosimplicialComplex<F> {
    let v = cosimplicial::<F, R>(rng, 3, 1, 1, trunc);
    let w = cosimplicial::<F, R>(rng, 3, 1, 1, trunc);
    BicosimplicialComplex::external_tensor(&v, &w)
}
