//! Alexander–Whitney and shuffle maps between total complexes.

use alloc::vec::Vec;

use super::{CosimplicialComplex, Total};
use crate::combi;
use crate::field::Field;
use crate::homalg::{ChainMap, CochainComplex, Matrix, MultiTensorLayout, SparseVec, TensorLayout};
use crate::Error;

/// A Künneth-type comparison map together with the objects it connects.
#[derive(Clone, Debug)]
pub struct Kunneth<F: Field> {
    /// `s(v_1) ⊗ … ⊗ s(v_k) → s(v_1 ⊗ … ⊗ v_k)`.
    pub map: ChainMap<F>,
    /// The level-wise tensor product.
    pub product: CosimplicialComplex<F>,
    /// Its total complex.
    pub target: Total<F>,
}

/// Outer product of sparse vectors placed through a multi-tensor layout.
pub fn outer<F: Field>(layout: &MultiTensorLayout, parts: &[(usize, &SparseVec<F>)]) -> SparseVec<F> {
    let mut acc: Vec<(Vec<(usize, usize)>, F)> = alloc::vec![(Vec::new(), F::one())];
    for (deg, v) in parts {
        let mut next = Vec::with_capacity(acc.len() * v.len());
        for (idx, c) in &acc {
            for (i, x) in v.iter() {
                let mut k = idx.clone();
                k.push((*deg, *i));
                next.push((k, c.clone() * x.clone()));
            }
        }
        acc = next;
    }
    let mut out: SparseVec<F> = acc.into_iter().map(|(k, c)| (layout.pos(&k), c)).collect();
    out.sort_unstable_by_key(|(i, _)| *i);
    out
}

/// Sign `(-1)^{Σ_{i<j} q_i p_j}` of the Alexander–Whitney map.
pub(crate) fn aw_sign(ps: &[usize], qs: &[usize]) -> bool {
    let mut s = 0usize;
    for j in 0..ps.len() {
        for i in 0..j {
            s += qs[i] * ps[j];
        }
    }
    s % 2 == 1
}

/// The k-ary Alexander–Whitney map.
///
/// On `x_1 ⊗ … ⊗ x_k` with `x_j ∈ N^{p_j}` of cochain degree `q_j`, the value is
/// `(-1)^{Σ_{i<j} q_i p_j} φ_1(x_1) ⊗ … ⊗ φ_k(x_k)` in level `p_1 + … + p_k`, where
/// `φ_j` is the inclusion of the consecutive face `[a_{j-1}, a_j]`, `a_j = p_1 + … + p_j`.
pub fn aw_multi<F: Field>(factors: &[&CosimplicialComplex<F>], n_max: usize) -> Result<Kunneth<F>, Error> {
    let tots: Vec<Total<F>> = factors.iter().map(|f| f.tot_simple(n_max)).collect::<Result<_, _>>()?;
    let product = CosimplicialComplex::tensor_all(factors);
    let target = product.tot_simple(n_max)?;
    let top = n_max + 1;
    let source = CochainComplex::tensor_all_upto(&tots.iter().map(|t| &t.complex).collect::<Vec<_>>(), top);
    let src_layout = MultiTensorLayout::new(&tots.iter().map(|t| t.complex.dims()).collect::<Vec<_>>());
    let level_layouts: Vec<MultiTensorLayout> = (0..=top)
        .map(|m| MultiTensorLayout::new(&factors.iter().map(|f| f.level(m).dims()).collect::<Vec<_>>()))
        .collect();
    let mut comps = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let mut cols = Vec::with_capacity(source.dim(n));
        for idx in 0..source.dim(n) {
            let parts = src_layout.split(n, idx);
            let raws: Vec<(usize, usize, &SparseVec<F>)> =
                parts.iter().zip(&tots).map(|(&(d, i), t)| t.raw(d, i)).collect();
            let ps: Vec<usize> = raws.iter().map(|r| r.0).collect();
            let qs: Vec<usize> = raws.iter().map(|r| r.1).collect();
            let m: usize = ps.iter().sum();
            let q: usize = qs.iter().sum();
            let mut start = 0;
            let mut images = Vec::with_capacity(raws.len());
            for (j, &(p, qj, v)) in raws.iter().enumerate() {
                let image: Vec<usize> = (start..=start + p).collect();
                images.push((qj, factors[j].apply_coface_composite(&image, m, qj, v)));
                start += p;
            }
            let refs: Vec<(usize, &SparseVec<F>)> = images.iter().map(|(d, v)| (*d, v)).collect();
            let mut raw = outer(&level_layouts[m], &refs);
            if aw_sign(&ps, &qs) {
                raw = crate::homalg::vector::scale(&raw, &-F::one());
            }
            let c = target
                .from_raw(m, q, &raw)
                .ok_or_else(|| Error::Invalid("Alexander–Whitney image is not conormalized".into()))?;
            cols.push(c);
        }
        comps.push(Matrix::from_columns(target.complex.dim(n), source.dim(n), &cols));
    }
    let map = ChainMap::from_parts(source, target.complex.clone(), comps);
    Ok(Kunneth { map, product, target })
}

/// Binary Alexander–Whitney map `s(v) ⊗ s(w) → s(v ⊗ w)`.
pub fn aw_kunneth<F: Field>(v: &CosimplicialComplex<F>, w: &CosimplicialComplex<F>, n_max: usize) -> Result<Kunneth<F>, Error> {
    aw_multi(&[v, w], n_max)
}

/// The shuffle map `s(v ⊗ w) → s(v) ⊗ s(w)`.
#[derive(Clone, Debug)]
pub struct ShuffleMap<F: Field> {
    pub map: ChainMap<F>,
    pub source: Total<F>,
    pub left: Total<F>,
    pub right: Total<F>,
}

/// Cosimplicial shuffle map, followed by the projections onto the conormalized parts.
///
/// A `(p, p')`-shuffle `(μ, ν)` of `{0, …, n-1}` sends `a ⊗ b` (cochain degrees
/// `q_1, q_2`) to `ε (-1)^{q_1 p'} s_ν(a) ⊗ s_μ(b)`, `ε` the shuffle sign.
pub fn shuffle<F: Field>(v: &CosimplicialComplex<F>, w: &CosimplicialComplex<F>, n_max: usize) -> Result<ShuffleMap<F>, Error> {
    let left = v.tot_simple(n_max)?;
    let right = w.tot_simple(n_max)?;
    let vw = v.level_tensor(w);
    let source = vw.tot_simple(n_max)?;
    let top = n_max + 1;
    let target = left.complex.tensor(&right.complex).brutal(top);
    let tl = TensorLayout::new(left.complex.dims(), right.complex.dims());
    let proj_v: Vec<Vec<Matrix<F>>> = (0..=top).map(|p| v.normalization_projections(&left.norm, p)).collect();
    let proj_w: Vec<Vec<Matrix<F>>> = (0..=top).map(|p| w.normalization_projections(&right.norm, p)).collect();
    let mut comps = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let mut entries = Vec::new();
        for idx in 0..source.complex.dim(n) {
            let (lvl, q, z) = source.raw(n, idx);
            let layout = TensorLayout::new(v.level(lvl).dims(), w.level(lvl).dims());
            for p in 0..=lvl {
                let pp = lvl - p;
                for mu in combi::subsets(lvl, p) {
                    let nu = combi::complement(lvl, &mu);
                    let sv = v.codegeneracy_composite(&nu, lvl);
                    let sw = w.codegeneracy_composite(&mu, lvl);
                    let odd = combi::shuffle_sign(&mu, &nu);
                    for (k, c) in z {
                        let (q1, ia, ib) = layout.split(q, *k);
                        let q2 = q - q1;
                        let a = proj_v[p][q1].apply(&sv[q1].apply(&[(ia, F::one())]));
                        let b = proj_w[pp][q2].apply(&sw[q2].apply(&[(ib, F::one())]));
                        let neg = odd ^ ((q1 * pp) % 2 == 1);
                        let s = if neg { -c.clone() } else { c.clone() };
                        for (ka, xa) in &a {
                            for (kb, xb) in &b {
                                let r = tl.pos(p + q1, pp + q2, left.pos(p, q1, *ka), right.pos(pp, q2, *kb));
                                entries.push((r, idx, s.clone() * xa.clone() * xb.clone()));
                            }
                        }
                    }
                }
            }
        }
        comps.push(Matrix::from_triplets(target.dim(n), source.complex.dim(n), entries));
    }
    let map = ChainMap::from_parts(source.complex.clone(), target, comps);
    Ok(ShuffleMap { map, source, left, right })
}

/// `s(v_1) ⊗ … ⊗ s(v_k) → s(w)`: the Alexander–Whitney map followed by a level-wise
/// operation `m : v_1 ⊗ … ⊗ v_k → w`.
pub fn aw_operation<F: Field>(
    factors: &[&CosimplicialComplex<F>],
    target: &CosimplicialComplex<F>,
    m: &super::CosimplicialMap<F>,
    n_max: usize,
) -> Result<ChainMap<F>, Error> {
    let k = aw_multi(factors, n_max)?;
    let tt = target.tot_simple(n_max)?;
    let induced = m.tot(&k.target, &tt);
    Ok(ChainMap::from_parts(k.map.source.clone(), tt.complex, induced.compose(&k.map)?.components().to_vec()))
}
