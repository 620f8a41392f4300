//! The Thom–Whitney product on the total complex, computed through the
//! Whitney lift, the level-wise product and integration over the top simplex.

use alloc::vec::Vec;

use super::whitney::CoefficientCache;
use crate::cosimp::{aw_operation, CosimplicialComplex, CosimplicialMap, Total};
use crate::field::Field;
use crate::homalg::{product_table, ChainMap, CochainComplex, Matrix, MultiTensorLayout, ProductTable, SparseVec};
use crate::Error;

fn koszul_odd(ps: &[usize], qs: &[usize]) -> bool {
    let mut s = 0usize;
    for j in 0..ps.len() {
        for i in 0..j {
            s += qs[i] * ps[j];
        }
    }
    s % 2 == 1
}

/// Require characteristic zero: the Whitney coefficients involve `1/n!`.
pub fn require_char_zero<F: Field>() -> Result<(), Error> {
    match F::characteristic() {
        0 => Ok(()),
        p => Err(Error::UnsupportedCharacteristic(p)),
    }
}

/// The k-ary Thom–Whitney operation `s(v_1) ⊗ … ⊗ s(v_k) → s(w)`.
///
/// On `x_j ∈ N^{p_j}` of cochain degree `q_j` the value lies in level `n = Σ p_j`:
/// `Σ_{φ_1, …, φ_k} c(φ_1, …, φ_k) (-1)^{Σ_{i<j} q_i p_j} m(φ_1 x_1 ⊗ … ⊗ φ_k x_k)`,
/// the sum running over injective `φ_j : [p_j] → [n]` and
/// `c = ∫_{Δ^n} ω_{φ_1} ∧ … ∧ ω_{φ_k}`.
pub fn tw_multi<F: Field>(
    factors: &[&CosimplicialComplex<F>],
    target: &CosimplicialComplex<F>,
    m: &CosimplicialMap<F>,
    n_max: usize,
) -> Result<ChainMap<F>, Error> {
    require_char_zero::<F>()?;
    let tots: Vec<Total<F>> = factors.iter().map(|f| f.tot_simple(n_max)).collect::<Result<_, _>>()?;
    let tt = target.tot_simple(n_max)?;
    let top = n_max + 1;
    let source = CochainComplex::tensor_all_upto(&tots.iter().map(|t| &t.complex).collect::<Vec<_>>(), top);
    let src_layout = MultiTensorLayout::new(&tots.iter().map(|t| t.complex.dims()).collect::<Vec<_>>());
    let level_layouts: Vec<MultiTensorLayout> = (0..=top)
        .map(|l| MultiTensorLayout::new(&factors.iter().map(|f| f.level(l).dims()).collect::<Vec<_>>()))
        .collect();
    let mut cache = CoefficientCache::<F>::new();
    let mut comps = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let mut cols = Vec::with_capacity(source.dim(n));
        for idx in 0..source.dim(n) {
            let parts = src_layout.split(n, idx);
            let raws: Vec<(usize, usize, &SparseVec<F>)> = parts.iter().zip(&tots).map(|(&(d, i), t)| t.raw(d, i)).collect();
            let ps: Vec<usize> = raws.iter().map(|r| r.0).collect();
            let qs: Vec<usize> = raws.iter().map(|r| r.1).collect();
            let lvl: usize = ps.iter().sum();
            let q: usize = qs.iter().sum();
            let sign = F::sign(koszul_odd(&ps, &qs) as usize);
            let mut acc: SparseVec<F> = Vec::new();
            for (faces, c) in cache.get(&ps).to_vec() {
                let images: Vec<(usize, SparseVec<F>)> = raws
                    .iter()
                    .zip(&faces)
                    .enumerate()
                    .map(|(j, ((_, qj, v), face))| (*qj, factors[j].apply_coface_composite(face, lvl, *qj, v)))
                    .collect();
                let refs: Vec<(usize, &SparseVec<F>)> = images.iter().map(|(d, v)| (*d, v)).collect();
                let raw = crate::cosimp::outer(&level_layouts[lvl], &refs);
                let out = m.components[lvl][q].apply(&raw);
                acc = crate::homalg::vector::axpy(&acc, &(c * sign.clone()), &out);
            }
            let col = tt
                .from_raw(lvl, q, &acc)
                .ok_or_else(|| Error::Invalid("Thom–Whitney image is not conormalized".into()))?;
            cols.push(col);
        }
        comps.push(Matrix::from_columns(tt.complex.dim(n), source.dim(n), &cols));
    }
    Ok(ChainMap::from_parts(source, tt.complex, comps))
}

/// Binary Thom–Whitney product for a level-wise multiplication `m : v ⊗ v → v`.
pub fn tw_product_map<F: Field>(v: &CosimplicialComplex<F>, m: &CosimplicialMap<F>, n_max: usize) -> Result<ChainMap<F>, Error> {
    tw_multi(&[v, v], v, m, n_max)
}

/// Product of two elements of the total complex, given in total coordinates.
pub fn tw_product<F: Field>(
    v: &CosimplicialComplex<F>,
    m: &CosimplicialMap<F>,
    a: (usize, &[(usize, F)]),
    b: (usize, &[(usize, F)]),
    n_max: usize,
) -> Result<(usize, SparseVec<F>), Error> {
    let map = tw_product_map(v, m, n_max)?;
    let tot = v.tot_simple(n_max)?;
    let layout = crate::homalg::TensorLayout::new(tot.complex.dims(), tot.complex.dims());
    let n = a.0 + b.0;
    if n > n_max + 1 {
        return Err(Error::InsufficientTruncation { needed: n, available: n_max + 1 });
    }
    let mut x: SparseVec<F> = Vec::new();
    for (i, ci) in a.1 {
        for (j, cj) in b.1 {
            x.push((layout.pos(a.0, b.0, *i, *j), ci.clone() * cj.clone()));
        }
    }
    x.sort_unstable_by_key(|(k, _)| *k);
    Ok((n, map.component_ref(n).apply(&x)))
}

/// The Alexander–Whitney and Thom–Whitney products side by side on cohomology.
#[derive(Clone, Debug)]
pub struct ProductComparison<F: Field> {
    pub aw: ProductTable<F>,
    pub tw: ProductTable<F>,
    pub tw_commutative: bool,
}

impl<F: Field> ProductComparison<F> {
    pub fn agree(&self) -> bool {
        self.aw == self.tw
    }
}

/// Structure constants of both products on `H^*(s(v))` through degree `n_max`.
pub fn compare_products<F: Field>(v: &CosimplicialComplex<F>, m: &CosimplicialMap<F>, n_max: usize) -> Result<ProductComparison<F>, Error> {
    let tot = v.tot_simple(n_max)?;
    let aw = aw_operation(&[v, v], v, m, n_max)?;
    let tw = tw_product_map(v, m, n_max)?;
    let aw_t = product_table(&aw, &tot.complex, &tot.complex, n_max)?;
    let tw_t = product_table(&tw, &tot.complex, &tot.complex, n_max)?;
    let tw_commutative = crate::homalg::is_graded_commutative(&tw, &tot.complex);
    Ok(ProductComparison { aw: aw_t, tw: tw_t, tw_commutative })
}
