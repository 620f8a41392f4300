//! Sections of the hypercohomology sheaf over an open, computed on strict chains.
//!
//! On a poset site the conormalized Godement resolution over an open `U` has
//! `Γ(U, N G^p F)^q = ⊕_{x_0 < … < x_p, x_0 ∈ U} F(x_p)^q`, with
//! `δf(x_0 … x_{p+1}) = Σ_{i ≤ p} (-1)^i f(… x̂_i …) + (-1)^{p+1} res f(x_0 … x_p)`.
//! Degree `n` is ordered by `p`, then chains lexicographically, then the stalk basis,
//! which agrees with the generic conormalization of the stalk resolutions.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::field::Field;
use crate::homalg::{ChainMap, CochainComplex, Matrix, MultiTensorLayout, SparseVec};
use crate::site::{Open, Sheaf, SheafMap};
use crate::thomwhitney::CoefficientCache;
use crate::Error;

/// `Γ(U, H_X(F))` through degree `n_max`, with its chain bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainModel<F: Field> {
    pub open: Open,
    pub n_max: usize,
    pub complex: CochainComplex<F>,
    chains: Vec<Vec<Vec<usize>>>,
    index: Vec<BTreeMap<Vec<usize>, usize>>,
    /// `offsets[n][p][c]`: first index of the block of chain `c` at level `p` in degree `n`.
    offsets: Vec<Vec<Vec<usize>>>,
    /// `(start, p, c)` for every nonempty block of degree `n`, sorted by `start`.
    blocks: Vec<Vec<(usize, usize, usize)>>,
    stalk_dims: Vec<Vec<usize>>,
}

impl<F: Field> ChainModel<F> {
    /// Build the model of `Γ(u, H_X(f))`; degrees run through `max(n_max + 1, top of f)`
    /// and the result is exact through `n_max`.
    pub fn build(f: &Sheaf<F>, u: &Open, n_max: usize) -> Self {
        let site = f.site();
        let trunc = n_max + 1;
        let top = trunc.max(f.top_degree());
        let chains: Vec<Vec<Vec<usize>>> = (0..=trunc.min(site.height())).map(|p| site.strict_chains(u, p)).collect();
        let index: Vec<BTreeMap<Vec<usize>, usize>> =
            chains.iter().map(|cs| cs.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect()).collect();
        let stalk_dims: Vec<Vec<usize>> = (0..site.len()).map(|x| (0..=top).map(|q| f.value(x).dim(q)).collect()).collect();
        let sd = |x: usize, q: usize| stalk_dims[x].get(q).copied().unwrap_or(0);
        let mut offsets = Vec::with_capacity(top + 1);
        let mut blocks = Vec::with_capacity(top + 1);
        let mut dims = Vec::with_capacity(top + 1);
        for n in 0..=top {
            let mut off = 0;
            let mut per_p = Vec::with_capacity(chains.len());
            let mut bl = Vec::new();
            for (p, cs) in chains.iter().enumerate() {
                let mut row = Vec::with_capacity(cs.len());
                for (c, chain) in cs.iter().enumerate() {
                    row.push(off);
                    if p <= n && n <= trunc {
                        let d = sd(*chain.last().expect("chain"), n - p);
                        if d > 0 {
                            bl.push((off, p, c));
                        }
                        off += d;
                    }
                }
                per_p.push(row);
            }
            offsets.push(per_p);
            blocks.push(bl);
            dims.push(off);
        }
        let mut model = ChainModel {
            open: u.clone(),
            n_max,
            complex: CochainComplex::graded(dims.clone()),
            chains,
            index,
            offsets,
            blocks,
            stalk_dims,
        };
        let mut diffs = Vec::with_capacity(top);
        for n in 0..top {
            let mut e = Vec::new();
            for &(start, p, c) in &model.blocks[n] {
                let q = n - p;
                let chain = &model.chains[p][c];
                let last = *chain.last().expect("chain");
                let d = model.stalk_dim(last, q);
                // horizontal part
                if n < trunc && p < model.chains.len() - 1 {
                    for i in 0..=p + 1 {
                        for z in 0..site.len() {
                            let ok = if i == 0 {
                                u.contains(z) && site.lt(z, chain[0])
                            } else if i <= p {
                                site.lt(chain[i - 1], z) && site.lt(z, chain[i])
                            } else {
                                site.lt(last, z)
                            };
                            if !ok {
                                continue;
                            }
                            let mut s = chain.clone();
                            s.insert(i, z);
                            let t = model.index[p + 1][&s];
                            let row0 = model.offsets[n + 1][p + 1][t];
                            let sign = F::sign(i);
                            if i <= p {
                                for k in 0..d {
                                    e.push((row0 + k, start + k, sign.clone()));
                                }
                            } else {
                                let r = &f.restriction(last, z)[q];
                                for (rr, row) in r.rows_iter().enumerate() {
                                    for (cc, v) in row {
                                        e.push((row0 + rr, start + cc, sign.clone() * v.clone()));
                                    }
                                }
                            }
                        }
                    }
                }
                // vertical part
                if q < f.top_degree() && n < trunc {
                    let row0 = model.offsets[n + 1][p][c];
                    let sign = F::sign(p);
                    for (rr, row) in f.value(last).diff(q).rows_iter().enumerate() {
                        for (cc, v) in row {
                            e.push((row0 + rr, start + cc, sign.clone() * v.clone()));
                        }
                    }
                }
            }
            diffs.push(Matrix::from_triplets(dims[n + 1], dims[n], e));
        }
        let exact = f.values().iter().filter_map(|v| v.exact_through()).min().map_or(n_max, |e| e.min(n_max));
        model.complex = CochainComplex::from_parts(dims, diffs, Some(exact));
        model
    }

    fn stalk_dim(&self, x: usize, q: usize) -> usize {
        self.stalk_dims[x].get(q).copied().unwrap_or(0)
    }

    pub fn top_level(&self) -> usize {
        self.chains.len() - 1
    }

    /// Strict chains at level `p` starting in the open.
    pub fn chains(&self, p: usize) -> &[Vec<usize>] {
        self.chains.get(p).map_or(&[], |c| c.as_slice())
    }

    pub fn chain_index(&self, chain: &[usize]) -> Option<usize> {
        self.index.get(chain.len().checked_sub(1)?)?.get(chain).copied()
    }

    /// Index in degree `p + q` of basis vector `k` of `F(last)^q` on chain `c` of level `p`.
    pub fn pos(&self, p: usize, c: usize, q: usize, k: usize) -> usize {
        self.offsets[p + q][p][c] + k
    }

    /// Inverse of [`pos`](Self::pos): `(p, chain index, k)`.
    pub fn split(&self, n: usize, idx: usize) -> (usize, usize, usize) {
        let bl = &self.blocks[n];
        let i = bl.partition_point(|&(s, _, _)| s <= idx) - 1;
        let (s, p, c) = bl[i];
        (p, c, idx - s)
    }

    /// Restriction to a smaller open: keep the chains starting there.
    pub fn restrict_to(&self, smaller: &ChainModel<F>) -> ChainMap<F> {
        let top = self.complex.top_degree();
        let comps = (0..=top)
            .map(|n| {
                let mut e = Vec::new();
                for &(start, p, c) in &self.blocks[n] {
                    let chain = &self.chains[p][c];
                    if !smaller.open.contains(chain[0]) {
                        continue;
                    }
                    let t = smaller.index[p][chain];
                    let r0 = smaller.offsets[n][p][t];
                    for k in 0..self.stalk_dim(*chain.last().expect("chain"), n - p) {
                        e.push((r0 + k, start + k, F::one()));
                    }
                }
                Matrix::from_triplets(smaller.complex.dim(n), self.complex.dim(n), e)
            })
            .collect();
        ChainMap::from_parts(self.complex.clone(), smaller.complex.clone(), comps)
    }

    /// The level-0 inclusion of a section `(a_x)_{x ∈ U}` of `f`: chain `(x)` gets `a_x`.
    pub fn section_inclusion(&self, f: &Sheaf<F>, sections: &crate::site::Sections<F>) -> ChainMap<F> {
        let top = self.complex.top_degree();
        let comps = (0..=top)
            .map(|q| {
                if q > sections.complex.top_degree() {
                    return Matrix::zeros(self.complex.dim(q), 0);
                }
                let cols: Vec<SparseVec<F>> = sections.basis[q]
                    .basis()
                    .iter()
                    .map(|v| {
                        let mut out = Vec::new();
                        for (k, &x) in sections.open.elements().iter().enumerate() {
                            let c = self.index[0][&alloc::vec![x]];
                            let r0 = self.offsets[q][0][c];
                            out.extend(sections.component(q, k, v).into_iter().map(|(i, a)| (r0 + i, a)));
                        }
                        out
                    })
                    .collect();
                Matrix::from_columns(self.complex.dim(q), sections.complex.dim(q), &cols)
            })
            .collect();
        let _ = f;
        ChainMap::from_parts(sections.complex.clone(), self.complex.clone(), comps)
    }
}

/// Which product formula to transfer a stalk-wise operation with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Engine {
    /// Alexander–Whitney: front and back faces; strictly associative.
    Aw,
    /// Thom–Whitney: sums over all faces weighted by Whitney integrals; strictly graded-commutative.
    Tw,
}

/// Transfer a stalk-wise operation `m : F_1 ⊗ … ⊗ F_k → G` to sections of the
/// hypercohomology sheaves over a common open.
///
/// `m` is a sheaf map out of the left-nested tensor product of the `F_j`.
pub fn transfer_operation<F: Field>(
    engine: Engine,
    inputs: &[(&Sheaf<F>, &ChainModel<F>)],
    output: (&Sheaf<F>, &ChainModel<F>),
    m: &SheafMap<F>,
    cache: &mut CoefficientCache<F>,
) -> Result<ChainMap<F>, Error> {
    if engine == Engine::Tw {
        crate::thomwhitney::require_char_zero::<F>()?;
    }
    let (g, out) = output;
    let n_max = out.n_max;
    let top = n_max + 1;
    let arity = inputs.len();
    let site = g.site();
    let source = CochainComplex::tensor_all_upto(&inputs.iter().map(|(_, md)| &md.complex).collect::<Vec<_>>(), top);
    let src_layout = MultiTensorLayout::new(&inputs.iter().map(|(_, md)| md.complex.dims()).collect::<Vec<_>>());
    let stalk_layouts: Vec<MultiTensorLayout> = (0..site.len())
        .map(|x| MultiTensorLayout::new(&inputs.iter().map(|(f, _)| f.value(x).dims()).collect::<Vec<_>>()))
        .collect();
    let mut entries: Vec<Vec<(usize, usize, F)>> = (0..=top).map(|_| Vec::new()).collect();
    let max_level = out.top_level();
    // distribute levels p_j summing to each target level
    for lvl in 0..=max_level.min(top) {
        for ps in crate::combi::compositions(lvl, arity) {
            if ps.iter().zip(inputs).any(|(&p, (_, md))| p > md.top_level()) {
                continue;
            }
            let table: Vec<(Vec<Vec<usize>>, F)> = match engine {
                Engine::Aw => {
                    let mut faces = Vec::with_capacity(arity);
                    let mut a = 0;
                    for &p in &ps {
                        faces.push((a..=a + p).collect());
                        a += p;
                    }
                    alloc::vec![(faces, F::one())]
                }
                Engine::Tw => cache.get(&ps).to_vec(),
            };
            for (ci, sigma) in out.chains(lvl).iter().enumerate() {
                let top_pt = *sigma.last().expect("chain");
                let layout = &stalk_layouts[top_pt];
                for (faces, coef) in &table {
                    let subs: Vec<Vec<usize>> = faces.iter().map(|f| f.iter().map(|&i| sigma[i]).collect()).collect();
                    let idxs: Vec<usize> = subs
                        .iter()
                        .zip(inputs)
                        .map(|(s, (_, md))| md.chain_index(s).expect("sub-chains start in the open"))
                        .collect();
                    // distribute cochain degrees
                    for q in 0..=top - lvl {
                        for qs in crate::combi::compositions(q, arity) {
                            let sign = coef.clone() * F::sign(koszul(&ps, &qs));
                            let total_deg = lvl + q;
                            // restricted basis vectors per factor
                            let restricted: Vec<Vec<SparseVec<F>>> = (0..arity)
                                .map(|j| {
                                    let (f, _) = inputs[j];
                                    let last = *subs[j].last().expect("chain");
                                    match f.restriction(last, top_pt).get(qs[j]) {
                                        Some(r) => (0..f.value(last).dim(qs[j])).map(|k| r.column(k)).collect(),
                                        None => Vec::new(),
                                    }
                                })
                                .collect();
                            if restricted.iter().any(|r| r.is_empty()) {
                                continue;
                            }
                            let mut counter = alloc::vec![0usize; arity];
                            loop {
                                let parts: Vec<(usize, &SparseVec<F>)> =
                                    (0..arity).map(|j| (qs[j], &restricted[j][counter[j]])).collect();
                                let raw = crate::cosimp::outer(layout, &parts);
                                let img = m.components[top_pt].get(q).map_or_else(Vec::new, |mq| mq.apply(&raw));
                                if !img.is_empty() {
                                    let src_parts: Vec<(usize, usize)> = (0..arity)
                                        .map(|j| (ps[j] + qs[j], inputs[j].1.pos(ps[j], idxs[j], qs[j], counter[j])))
                                        .collect();
                                    let col = src_layout.pos(&src_parts);
                                    let r0 = out.pos(lvl, ci, q, 0);
                                    for (r, v) in img {
                                        entries[total_deg].push((r0 + r, col, sign.clone() * v));
                                    }
                                }
                                // advance the mixed-radix counter
                                let mut j = arity;
                                loop {
                                    if j == 0 {
                                        break;
                                    }
                                    j -= 1;
                                    counter[j] += 1;
                                    if counter[j] < restricted[j].len() {
                                        break;
                                    }
                                    counter[j] = 0;
                                    if j == 0 {
                                        j = usize::MAX;
                                        break;
                                    }
                                }
                                if j == usize::MAX || (arity == 0) {
                                    break;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let comps = entries
        .into_iter()
        .enumerate()
        .map(|(n, e)| Matrix::from_triplets(out.complex.dim(n), source.dim(n), e))
        .collect();
    Ok(ChainMap::from_parts(source, out.complex.clone(), comps))
}

fn koszul(ps: &[usize], qs: &[usize]) -> usize {
    let mut s = 0usize;
    for j in 0..ps.len() {
        for i in 0..j {
            s += qs[i] * ps[j];
        }
    }
    s % 2
}

/// One homogeneous argument of [`evaluate_operation`]: an element of degree `degree`
/// of the model of `sheaf` over a common open.
#[derive(Clone, Copy, Debug)]
pub struct Argument<'a, F: Field> {
    pub sheaf: &'a Sheaf<F>,
    pub model: &'a ChainModel<F>,
    pub degree: usize,
    pub vector: &'a [(usize, F)],
}

/// The image of `x_1 ⊗ … ⊗ x_k` under the transferred operation of
/// [`transfer_operation`], computed without building the tensor product.
pub fn evaluate_operation<F: Field>(
    engine: Engine,
    args: &[Argument<'_, F>],
    output: (&Sheaf<F>, &ChainModel<F>),
    m: &SheafMap<F>,
    cache: &mut CoefficientCache<F>,
) -> Result<SparseVec<F>, Error> {
    if engine == Engine::Tw {
        crate::thomwhitney::require_char_zero::<F>()?;
    }
    let (g, out) = output;
    let top = out.n_max + 1;
    let arity = args.len();
    let total: usize = args.iter().map(|a| a.degree).sum();
    if total > top {
        return Ok(Vec::new());
    }
    // blocks of each argument keyed by (level, chain index)
    let parts: Vec<BTreeMap<(usize, usize), SparseVec<F>>> = args
        .iter()
        .map(|a| {
            let mut map: BTreeMap<(usize, usize), SparseVec<F>> = BTreeMap::new();
            for (idx, v) in a.vector {
                let (p, c, k) = a.model.split(a.degree, *idx);
                map.entry((p, c)).or_default().push((k, v.clone()));
            }
            map
        })
        .collect();
    let mut layouts: Vec<Option<MultiTensorLayout>> = alloc::vec![None; g.site().len()];
    let mut acc: SparseVec<F> = Vec::new();
    for lvl in 0..=total.min(out.top_level()) {
        let q = total - lvl;
        for ps in crate::combi::compositions(lvl, arity) {
            if ps.iter().zip(args).any(|(&p, a)| p > a.degree || p > a.model.top_level()) {
                continue;
            }
            let qs: Vec<usize> = ps.iter().zip(args).map(|(&p, a)| a.degree - p).collect();
            let table: Vec<(Vec<Vec<usize>>, F)> = match engine {
                Engine::Aw => {
                    let mut faces = Vec::with_capacity(arity);
                    let mut s = 0;
                    for &p in &ps {
                        faces.push((s..=s + p).collect());
                        s += p;
                    }
                    alloc::vec![(faces, F::one())]
                }
                Engine::Tw => cache.get(&ps).to_vec(),
            };
            let ksign = F::sign(koszul(&ps, &qs));
            for (ci, sigma) in out.chains(lvl).iter().enumerate() {
                let top_pt = *sigma.last().expect("chain");
                let Some(mq) = m.components[top_pt].get(q) else { continue };
                let layout = layouts[top_pt]
                    .get_or_insert_with(|| MultiTensorLayout::new(&args.iter().map(|a| a.sheaf.value(top_pt).dims()).collect::<Vec<_>>()))
                    .clone();
                for (faces, coef) in &table {
                    let mut restricted: Vec<SparseVec<F>> = Vec::with_capacity(arity);
                    for j in 0..arity {
                        let sub: Vec<usize> = faces[j].iter().map(|&i| sigma[i]).collect();
                        let Some(ix) = args[j].model.chain_index(&sub) else { break };
                        let Some(block) = parts[j].get(&(ps[j], ix)) else { break };
                        let last = *sub.last().expect("chain");
                        let Some(r) = args[j].sheaf.restriction(last, top_pt).get(qs[j]) else { break };
                        restricted.push(r.apply(block));
                    }
                    if restricted.len() < arity || restricted.iter().any(|r| r.is_empty()) {
                        continue;
                    }
                    let refs: Vec<(usize, &SparseVec<F>)> = qs.iter().copied().zip(restricted.iter()).collect();
                    let raw = crate::cosimp::outer(&layout, &refs);
                    let img = mq.apply(&raw);
                    let r0 = out.pos(lvl, ci, q, 0);
                    let c = coef.clone() * ksign.clone();
                    let shifted: SparseVec<F> = img.into_iter().map(|(r, v)| (r0 + r, v)).collect();
                    acc = crate::homalg::vector::axpy(&acc, &c, &shifted);
                }
            }
        }
    }
    Ok(acc)
}
