use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{admissible, koszul_odd, outer, Elem, Operad, OperadMap};
use crate::combi::{perm_compose, perm_inverse, perm_rank, permutations};
use crate::field::Field;
use crate::homalg::{CochainComplex, Matrix, MultiTensorLayout, SparseVec, Subspace};
use crate::Error;

/// Default arity cap.
pub const DEFAULT_CAP: usize = 4;

/// Resource guard for [`endomorphism_operad`]: largest number of basis
/// evaluations allowed for one composition map.
const END_BUDGET: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
struct Composition<F: Field> {
    layout: MultiTensorLayout,
    components: Vec<Matrix<F>>,
}

/// A dg operad truncated at an arity cap, stored as explicit matrices.
///
/// `actions[l][r]` is the right action of the permutation of lexicographic rank `r`;
/// composition maps exist for every `(l; m_0, …, m_{l-1})` with `l ≥ 1`, `Σ m_j ≤ cap`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgOperad<F: Field> {
    pub name: String,
    cap: usize,
    components: Vec<CochainComplex<F>>,
    actions: Vec<Vec<Vec<Matrix<F>>>>,
    unit: SparseVec<F>,
    gamma: BTreeMap<(usize, Vec<usize>), Composition<F>>,
}

/// Action matrices from a function on basis vectors: `f(l, σ, degree, index)`.
pub(crate) fn action_matrices<F: Field>(
    components: &[CochainComplex<F>],
    mut f: impl FnMut(usize, &[usize], usize, usize) -> SparseVec<F>,
) -> Vec<Vec<Vec<Matrix<F>>>> {
    components
        .iter()
        .enumerate()
        .map(|(l, c)| {
            permutations(l)
                .iter()
                .map(|s| {
                    (0..=c.top_degree())
                        .map(|n| {
                            let cols: Vec<SparseVec<F>> = (0..c.dim(n)).map(|k| f(l, s, n, k)).collect();
                            Matrix::from_columns(c.dim(n), c.dim(n), &cols)
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

impl<F: Field> DgOperad<F> {
    /// Assemble an operad from its components, action matrices, unit and a function
    /// computing `γ` on basis tuples `[(deg, idx) of x, (deg, idx) of y_0, …]`.
    pub fn from_fn(
        name: &str,
        components: Vec<CochainComplex<F>>,
        actions: Vec<Vec<Vec<Matrix<F>>>>,
        unit: SparseVec<F>,
        mut gamma: impl FnMut(usize, &[usize], &[(usize, usize)]) -> SparseVec<F>,
    ) -> Self {
        let cap = components.len() - 1;
        let mut table = BTreeMap::new();
        for (l, ms) in admissible(cap, true) {
            let m: usize = ms.iter().sum();
            let mut dims: Vec<&[usize]> = vec![components[l].dims()];
            dims.extend(ms.iter().map(|&mj| components[mj].dims()));
            let layout = MultiTensorLayout::new(&dims);
            let target = &components[m];
            let comps = (0..=target.top_degree())
                .map(|n| {
                    let cols: Vec<SparseVec<F>> = (0..layout.dim(n)).map(|k| gamma(l, &ms, &layout.split(n, k))).collect();
                    Matrix::from_columns(target.dim(n), layout.dim(n), &cols)
                })
                .collect();
            table.insert((l, ms), Composition { layout, components: comps });
        }
        DgOperad { name: name.into(), cap, components, actions, unit, gamma: table }
    }

    /// Assemble from stored composition matrices; missing components are zero.
    pub(crate) fn from_matrices(
        name: &str,
        components: Vec<CochainComplex<F>>,
        actions: Vec<Vec<Vec<Matrix<F>>>>,
        unit: SparseVec<F>,
        gamma: &BTreeMap<(usize, Vec<usize>), Vec<Matrix<F>>>,
    ) -> Self {
        let cap = components.len() - 1;
        let mut table = BTreeMap::new();
        for (l, ms) in admissible(cap, true) {
            let m: usize = ms.iter().sum();
            let mut dims: Vec<&[usize]> = vec![components[l].dims()];
            dims.extend(ms.iter().map(|&mj| components[mj].dims()));
            let layout = MultiTensorLayout::new(&dims);
            let stored = gamma.get(&(l, ms.clone()));
            let comps = (0..=components[m].top_degree())
                .map(|n| match stored.and_then(|g| g.get(n)) {
                    Some(mat) if mat.nrows() == components[m].dim(n) && mat.ncols() == layout.dim(n) => mat.clone(),
                    _ => Matrix::zeros(components[m].dim(n), layout.dim(n)),
                })
                .collect();
            table.insert((l, ms), Composition { layout, components: comps });
        }
        DgOperad { name: name.into(), cap, components, actions, unit, gamma: table }
    }

    /// The commutative operad: every positive arity is the unit complex.
    pub fn com(cap: usize) -> Self {
        Self::commutative("Com", cap, false)
    }

    /// The unital commutative operad, with `uCom(0)` the unit complex.
    pub fn ucom(cap: usize) -> Self {
        Self::commutative("uCom", cap, true)
    }

    fn commutative(name: &str, cap: usize, unital: bool) -> Self {
        let components: Vec<CochainComplex<F>> =
            (0..=cap).map(|l| if l > 0 || unital { CochainComplex::unit() } else { CochainComplex::zero() }).collect();
        let actions = action_matrices(&components, |_, _, _, k| vec![(k, F::one())]);
        Self::from_fn(name, components, actions, vec![(0, F::one())], |_, _, _| vec![(0, F::one())])
    }

    /// The associative operad: `Ass(l)` is the group algebra of `Σ_l` in degree 0,
    /// with basis `e_π` in lexicographic order of `π` and `e_π · σ = e_{π∘σ}`.
    pub fn ass(cap: usize) -> Self {
        let components: Vec<CochainComplex<F>> = (0..=cap)
            .map(|l| if l == 0 { CochainComplex::zero() } else { CochainComplex::concentrated(0, permutations(l).len()) })
            .collect();
        let perms: Vec<Vec<Vec<usize>>> = (0..=cap).map(permutations).collect();
        let actions = action_matrices(&components, |l, s, _, k| vec![(perm_rank(&perm_compose(&perms[l][k], s)), F::one())]);
        Self::from_fn("Ass", components, actions, vec![(0, F::one())], |l, ms, parts| {
            let pi = &perms[l][parts[0].1];
            let inv = perm_inverse(pi);
            let taus: Vec<&[usize]> = (0..l).map(|j| perms[ms[inv[j]]][parts[1 + inv[j]].1].as_slice()).collect();
            let rho = perm_compose(&super::block_sum(&taus), &super::block_permutation(pi, ms));
            vec![(perm_rank(&rho), F::one())]
        })
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn components(&self) -> &[CochainComplex<F>] {
        &self.components
    }

    /// Matrices of the right action of `σ` on `P(σ.len())`.
    pub fn action(&self, sigma: &[usize]) -> &[Matrix<F>] {
        &self.actions[sigma.len()][perm_rank(sigma)]
    }

    pub fn unit_vector(&self) -> &SparseVec<F> {
        &self.unit
    }

    /// Components of `γ_{l; ms}` on the left-nested tensor product, through the top degree of `P(Σ ms)`.
    pub fn gamma(&self, ms: &[usize]) -> Option<&[Matrix<F>]> {
        self.gamma.get(&(ms.len(), ms.to_vec())).map(|c| c.components.as_slice())
    }

    /// Replace one composition map; used to build negative controls.
    pub fn with_gamma(mut self, ms: &[usize], components: Vec<Matrix<F>>) -> Result<Self, Error> {
        let c = self
            .gamma
            .get_mut(&(ms.len(), ms.to_vec()))
            .ok_or_else(|| Error::Invalid(format!("no composition map for arities {ms:?}")))?;
        if components.len() != c.components.len() || components.iter().zip(&c.components).any(|(a, b)| a.nrows() != b.nrows() || a.ncols() != b.ncols()) {
            return Err(Error::DimensionMismatch { what: "composition map", degree: 0 });
        }
        c.components = components;
        Ok(self)
    }

    /// The operad restricted to arities `≤ cap`.
    pub fn truncate(&self, cap: usize) -> Self {
        let cap = cap.min(self.cap);
        DgOperad {
            name: self.name.clone(),
            cap,
            components: self.components[..=cap].to_vec(),
            actions: self.actions[..=cap].to_vec(),
            unit: self.unit.clone(),
            gamma: self.gamma.iter().filter(|((_, ms), _)| ms.iter().sum::<usize>() <= cap && ms.len() <= cap).map(|(k, v)| (k.clone(), v.clone())).collect(),
        }
    }

    /// The suboperad generated by the given homogeneous elements `(arity, degree, vector)`
    /// and the unit: the smallest family of subcomplexes closed under the action and `γ`.
    pub fn generated_suboperad(&self, name: &str, generators: &[(usize, usize, SparseVec<F>)]) -> Result<Self, Error> {
        let cap = self.cap;
        let mut spans: Vec<Vec<Subspace<F>>> =
            self.components.iter().map(|c| (0..=c.top_degree()).map(|n| Subspace::zero(c.dim(n))).collect()).collect();
        let add = |spans: &mut Vec<Vec<Subspace<F>>>, l: usize, n: usize, v: SparseVec<F>| -> bool {
            let s = &mut spans[l][n];
            if v.is_empty() || s.contains(&v) {
                return false;
            }
            let mut g = s.basis().to_vec();
            g.push(v);
            *s = Subspace::span(s.ambient(), g);
            true
        };
        if !self.components[1].dims().is_empty() && self.components[1].dim(0) > 0 {
            add(&mut spans, 1, 0, self.unit.clone());
        }
        for (l, n, v) in generators {
            if *l > cap || *n > self.components[*l].top_degree() {
                return Err(Error::Invalid(format!("generator of arity {l} and degree {n} is outside the operad")));
            }
            add(&mut spans, *l, *n, v.clone());
        }
        loop {
            let mut grew = false;
            for l in 0..=cap {
                let c = &self.components[l];
                for n in 0..=c.top_degree() {
                    let basis = spans[l][n].basis().to_vec();
                    for v in &basis {
                        if n < c.top_degree() {
                            grew |= add(&mut spans, l, n + 1, c.diff(n).apply(v));
                        }
                        for s in super::generators(l) {
                            grew |= add(&mut spans, l, n, self.act(l, &s, (n, v)));
                        }
                    }
                }
            }
            for (l, ms) in admissible(cap, true) {
                let m: usize = ms.iter().sum();
                let mut lists: Vec<Vec<(usize, SparseVec<F>)>> = vec![elements_of(&spans[l])];
                lists.extend(ms.iter().map(|&mj| elements_of(&spans[mj])));
                let top = self.components[m].top_degree();
                let mut found = Vec::new();
                for_each_choice(&lists, &mut |choice| {
                    let total: usize = choice.iter().map(|(d, _)| d).sum();
                    if total <= top {
                        let ys: Vec<(usize, Elem<'_, F>)> = ms.iter().zip(&choice[1..]).map(|(&mj, (d, v))| (mj, (*d, v.as_slice()))).collect();
                        found.push((total, self.compose((choice[0].0, &choice[0].1), &ys)));
                    }
                });
                for (n, v) in found {
                    grew |= add(&mut spans, m, n, v);
                }
            }
            if !grew {
                break;
            }
        }
        self.restrict(name, &spans)
    }

    /// The suboperad on the given subcomplexes, in the coordinates of their bases.
    fn restrict(&self, name: &str, spans: &[Vec<Subspace<F>>]) -> Result<Self, Error> {
        let coords = |l: usize, n: usize, v: &[(usize, F)]| -> Result<SparseVec<F>, Error> {
            spans[l][n].coords(v).ok_or_else(|| Error::Invalid(format!("suboperad is not closed in arity {l}, degree {n}")))
        };
        let mut components = Vec::with_capacity(spans.len());
        for (l, sp) in spans.iter().enumerate() {
            let c = &self.components[l];
            let dims: Vec<usize> = sp.iter().map(|s| s.dim()).collect();
            let mut diffs = Vec::new();
            for n in 0..c.top_degree() {
                let cols = sp[n].basis().iter().map(|v| coords(l, n + 1, &c.diff(n).apply(v))).collect::<Result<Vec<_>, _>>()?;
                diffs.push(Matrix::from_columns(dims[n + 1], dims[n], &cols));
            }
            components.push(CochainComplex::new(dims, diffs)?);
        }
        let mut actions = Vec::with_capacity(spans.len());
        for (l, sp) in spans.iter().enumerate() {
            let mut per = Vec::new();
            for s in permutations(l) {
                let mut mats = Vec::new();
                for (n, space) in sp.iter().enumerate() {
                    let cols = space.basis().iter().map(|v| coords(l, n, &self.act(l, &s, (n, v)))).collect::<Result<Vec<_>, _>>()?;
                    mats.push(Matrix::from_columns(space.dim(), space.dim(), &cols));
                }
                per.push(mats);
            }
            actions.push(per);
        }
        let unit = coords(1, 0, &self.unit)?;
        let mut failure = None;
        let out = Self::from_fn(name, components, actions, unit, |l, ms, parts| {
            let m: usize = ms.iter().sum();
            let total: usize = parts.iter().map(|p| p.0).sum();
            let x = spans[l][parts[0].0].basis()[parts[0].1].clone();
            let ys: Vec<SparseVec<F>> = parts[1..].iter().zip(ms).map(|(&(d, i), &mj)| spans[mj][d].basis()[i].clone()).collect();
            let yr: Vec<(usize, Elem<'_, F>)> = ms.iter().zip(&parts[1..]).zip(&ys).map(|((&mj, p), y)| (mj, (p.0, y.as_slice()))).collect();
            let v = self.compose((parts[0].0, &x), &yr);
            match coords(m, total, &v) {
                Ok(c) => c,
                Err(e) => {
                    failure.get_or_insert(e);
                    Vec::new()
                }
            }
        });
        match failure {
            Some(e) => Err(e),
            None => Ok(out),
        }
    }
}

fn elements_of<F: Field>(spans: &[Subspace<F>]) -> Vec<(usize, SparseVec<F>)> {
    spans.iter().enumerate().flat_map(|(n, s)| s.basis().iter().map(move |v| (n, v.clone()))).collect()
}

/// Call `f` on every choice of one entry per list.
pub(crate) fn for_each_choice<T: Clone>(lists: &[Vec<T>], f: &mut impl FnMut(&[T])) {
    fn rec<T: Clone>(lists: &[Vec<T>], cur: &mut Vec<T>, f: &mut impl FnMut(&[T])) {
        if cur.len() == lists.len() {
            f(cur);
            return;
        }
        for v in &lists[cur.len()] {
            cur.push(v.clone());
            rec(lists, cur, f);
            cur.pop();
        }
    }
    rec(lists, &mut Vec::new(), f)
}

impl<F: Field> Operad<F> for DgOperad<F> {
    fn cap(&self) -> usize {
        self.cap
    }

    fn component(&self, l: usize) -> &CochainComplex<F> {
        &self.components[l]
    }

    fn act(&self, l: usize, sigma: &[usize], x: Elem<'_, F>) -> SparseVec<F> {
        debug_assert_eq!(sigma.len(), l);
        match self.actions[l][perm_rank(sigma)].get(x.0) {
            Some(m) => m.apply(x.1),
            None => Vec::new(),
        }
    }

    fn unit(&self) -> SparseVec<F> {
        self.unit.clone()
    }

    fn compose(&self, x: Elem<'_, F>, ys: &[(usize, Elem<'_, F>)]) -> SparseVec<F> {
        if ys.is_empty() {
            return x.1.to_vec();
        }
        let ms: Vec<usize> = ys.iter().map(|y| y.0).collect();
        let Some(c) = self.gamma.get(&(ys.len(), ms)) else { return Vec::new() };
        let total = x.0 + ys.iter().map(|y| y.1 .0).sum::<usize>();
        let Some(m) = c.components.get(total) else { return Vec::new() };
        let mut parts = vec![x];
        parts.extend(ys.iter().map(|y| y.1));
        m.apply(&outer(&c.layout, &parts))
    }
}

/// An operad morphism given by matrices `f(l)^n : P(l)^n → Q(l)^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperadMorphism<F: Field> {
    pub components: Vec<Vec<Matrix<F>>>,
}

impl<F: Field> OperadMorphism<F> {
    pub fn identity(p: &DgOperad<F>) -> Self {
        OperadMorphism { components: p.components.iter().map(|c| (0..=c.top_degree()).map(|n| Matrix::identity(c.dim(n))).collect()).collect() }
    }
}

impl<F: Field> OperadMap<F> for OperadMorphism<F> {
    fn apply(&self, l: usize, x: Elem<'_, F>) -> SparseVec<F> {
        match self.components.get(l).and_then(|c| c.get(x.0)) {
            Some(m) => m.apply(x.1),
            None => Vec::new(),
        }
    }
}

/// The canonical morphism `Ass → Com`, `e_π ↦ 1`.
pub fn ass_to_com<F: Field>(cap: usize) -> OperadMorphism<F> {
    let components = (0..=cap)
        .map(|l| {
            if l == 0 {
                vec![Matrix::zeros(0, 0)]
            } else {
                let n = permutations(l).len();
                vec![Matrix::from_triplets(1, n, (0..n).map(|k| (0, k, F::one())))]
            }
        })
        .collect();
    OperadMorphism { components }
}


/// Hom spaces `Hom^n(A^{⊗l}, A)` in one arity.
#[derive(Clone, Debug, PartialEq, Eq)]
struct HomSpaces<F: Field> {
    tensor: CochainComplex<F>,
    layout: MultiTensorLayout,
    /// `offsets[n][i]`: start of the block `Hom(T^i, A^{i+n})` inside `Hom^n`.
    offsets: Vec<Vec<usize>>,
    dims: Vec<usize>,
    cycles: Subspace<F>,
}

/// A map `A^{⊗l} → A` of degree `n`: `blocks[i][c]` is the image of basis vector `c` of `T^i`.
pub type HomBlocks<F> = Vec<Vec<SparseVec<F>>>;

#[derive(Clone, Debug, PartialEq, Eq)]
struct EndData<F: Field> {
    carrier: CochainComplex<F>,
    homs: Vec<HomSpaces<F>>,
}

impl<F: Field> EndData<F> {
    fn new(a: &CochainComplex<F>, cap: usize) -> Self {
        let top = a.top_degree();
        let homs: Vec<HomSpaces<F>> = (0..=cap)
            .map(|l| {
                let factors = vec![a; l];
                let tensor = CochainComplex::tensor_all_upto(&factors, top).pad(top);
                let layout = MultiTensorLayout::new(&vec![a.dims(); l]);
                let mut offsets = Vec::with_capacity(top + 1);
                let mut dims = Vec::with_capacity(top + 1);
                for n in 0..=top {
                    let mut off = 0;
                    let mut row = Vec::with_capacity(top + 1 - n);
                    for i in 0..=top - n {
                        row.push(off);
                        off += tensor.dim(i) * a.dim(i + n);
                    }
                    offsets.push(row);
                    dims.push(off);
                }
                HomSpaces { tensor, layout, offsets, dims, cycles: Subspace::zero(0) }
            })
            .collect();
        let mut data = EndData { carrier: a.clone(), homs };
        for l in 0..=cap {
            let d0 = data.hom_differential(l, 0);
            data.homs[l].cycles = Subspace::kernel(&d0);
        }
        data
    }

    fn top(&self) -> usize {
        self.carrier.top_degree()
    }

    fn zero_blocks(&self, l: usize, n: usize) -> HomBlocks<F> {
        let h = &self.homs[l];
        (0..=self.top().saturating_sub(n)).map(|i| if i + n <= self.top() { vec![Vec::new(); h.tensor.dim(i)] } else { Vec::new() }).collect()
    }

    fn blocks_from_hom(&self, l: usize, n: usize, v: &[(usize, F)]) -> HomBlocks<F> {
        let h = &self.homs[l];
        let mut b = self.zero_blocks(l, n);
        for (idx, c) in v {
            let i = (0..h.offsets[n].len()).rev().find(|&i| h.tensor.dim(i) * self.carrier.dim(i + n) > 0 && h.offsets[n][i] <= *idx).expect("index inside a block");
            let r = idx - h.offsets[n][i];
            let da = self.carrier.dim(i + n);
            b[i][r / da].push((r % da, c.clone()));
        }
        b
    }

    fn hom_from_blocks(&self, l: usize, n: usize, b: &HomBlocks<F>) -> SparseVec<F> {
        let h = &self.homs[l];
        let da = |i: usize| self.carrier.dim(i + n);
        let mut out: SparseVec<F> = Vec::new();
        for (i, cols) in b.iter().enumerate() {
            for (c, col) in cols.iter().enumerate() {
                out.extend(col.iter().map(|(r, v)| (h.offsets[n][i] + c * da(i) + r, v.clone())));
            }
        }
        out.sort_unstable_by_key(|e| e.0);
        out
    }

    /// `Df = d_A f - (-1)^n f d_T`.
    fn diff_blocks(&self, l: usize, n: usize, f: &HomBlocks<F>) -> HomBlocks<F> {
        let top = self.top();
        if n + 1 > top {
            return Vec::new();
        }
        let t = &self.homs[l].tensor;
        let s = -F::sign(n);
        let mut out = self.zero_blocks(l, n + 1);
        for i in 0..=top - n - 1 {
            let da = self.carrier.diff(i + n);
            let dt = t.diff(i);
            for c in 0..t.dim(i) {
                let mut v = da.apply(&f[i][c]);
                for (k, coef) in dt.column(c) {
                    v = crate::homalg::vector::axpy(&v, &(s.clone() * coef), &f[i + 1][k]);
                }
                out[i][c] = v;
            }
        }
        out
    }

    fn hom_differential(&self, l: usize, n: usize) -> Matrix<F> {
        let h = &self.homs[l];
        let rows = h.dims.get(n + 1).copied().unwrap_or(0);
        let cols: Vec<SparseVec<F>> = (0..h.dims[n])
            .map(|k| {
                let b = self.blocks_from_hom(l, n, &[(k, F::one())]);
                self.hom_from_blocks(l, n + 1, &self.diff_blocks(l, n, &b))
            })
            .collect();
        Matrix::from_columns(rows, h.dims[n], &cols)
    }

    fn to_coords(&self, l: usize, n: usize, b: &HomBlocks<F>) -> Option<SparseVec<F>> {
        let v = self.hom_from_blocks(l, n, b);
        if n == 0 {
            self.homs[l].cycles.coords(&v)
        } else {
            Some(v)
        }
    }

    fn from_coords(&self, l: usize, n: usize, v: &[(usize, F)]) -> HomBlocks<F> {
        if n == 0 {
            let z = &self.homs[l].cycles;
            let mut w: SparseVec<F> = Vec::new();
            for (k, c) in v {
                w = crate::homalg::vector::axpy(&w, c, &z.basis()[*k]);
            }
            self.blocks_from_hom(l, 0, &w)
        } else {
            self.blocks_from_hom(l, n, v)
        }
    }

    /// `f ∘ L(σ)`.
    fn precompose(&self, l: usize, n: usize, sigma: &[usize], f: &HomBlocks<F>) -> HomBlocks<F> {
        let h = &self.homs[l];
        let mut out = self.zero_blocks(l, n);
        for (i, cols) in out.iter_mut().enumerate() {
            for (c, col) in cols.iter_mut().enumerate() {
                let parts = h.layout.split(i, c);
                let mut moved = vec![(0, 0); l];
                for (k, p) in parts.iter().enumerate() {
                    moved[sigma[k]] = *p;
                }
                let degs: Vec<usize> = parts.iter().map(|p| p.0).collect();
                let src = &f[i][h.layout.pos(&moved)];
                *col = if koszul_odd(sigma, &degs) { crate::homalg::vector::scale(src, &-F::one()) } else { src.clone() };
            }
        }
        out
    }

    /// `f ∘ (g_0 ⊗ … ⊗ g_{l-1})` with Koszul signs; `gs[j] = (m_j, n_j, g_j)`.
    fn compose(&self, n_f: usize, f: &HomBlocks<F>, gs: &[(usize, usize, &HomBlocks<F>)]) -> HomBlocks<F> {
        let l = gs.len();
        let m: usize = gs.iter().map(|g| g.0).sum();
        let ng: usize = gs.iter().map(|g| g.1).sum();
        let total = n_f + ng;
        if total > self.top() {
            return Vec::new();
        }
        let lay_m = &self.homs[m].layout;
        let lay_l = &self.homs[l].layout;
        let mut out = self.zero_blocks(m, total);
        for (i, cols) in out.iter_mut().enumerate() {
            for (c, col) in cols.iter_mut().enumerate() {
                let parts = if m == 0 { Vec::new() } else { lay_m.split(i, c) };
                let mut start = 0;
                let mut images: Vec<(usize, SparseVec<F>)> = Vec::with_capacity(l);
                let mut sign = 0usize;
                let mut before = 0usize;
                let mut zero = false;
                for &(mj, nj, g) in gs {
                    let block = &parts[start..start + mj];
                    start += mj;
                    let e: usize = block.iter().map(|p| p.0).sum();
                    sign += nj * before;
                    before += e;
                    let idx = self.homs[mj].layout.pos(block);
                    match g.get(e) {
                        Some(cs) if !cs[idx].is_empty() => images.push((e + nj, cs[idx].clone())),
                        _ => {
                            zero = true;
                            break;
                        }
                    }
                }
                if zero {
                    continue;
                }
                let refs: Vec<Elem<'_, F>> = images.iter().map(|(d, v)| (*d, v.as_slice())).collect();
                let arg = outer(lay_l, &refs);
                let deg = i + ng;
                let mut v: SparseVec<F> = Vec::new();
                for (k, a) in arg {
                    v = crate::homalg::vector::axpy(&v, &a, &f[deg][k]);
                }
                *col = if sign % 2 == 1 { crate::homalg::vector::scale(&v, &-F::one()) } else { v };
            }
        }
        out
    }

    /// `f(a_0 ⊗ … ⊗ a_{l-1})`.
    fn evaluate(&self, n: usize, f: &HomBlocks<F>, args: &[Elem<'_, F>]) -> SparseVec<F> {
        let l = args.len();
        let deg: usize = args.iter().map(|a| a.0).sum();
        if deg + n > self.top() {
            return Vec::new();
        }
        let arg = outer(&self.homs[l].layout, args);
        let mut v: SparseVec<F> = Vec::new();
        for (k, a) in arg {
            v = crate::homalg::vector::axpy(&v, &a, &f[deg][k]);
        }
        v
    }
}

/// The endomorphism operad `End_A(l) = τ_{≥0} [A^{⊗l}, A]` of a bounded complex.
///
/// Degree 0 of each arity consists of the chain maps; positive degrees are all
/// homogeneous maps, with `Df = d_A f - (-1)^n f d`. Basis of degree `n ≥ 1`:
/// `(i, c, r)` lexicographically, the map sending basis vector `c` of `(A^{⊗l})^i`
/// to basis vector `r` of `A^{i+n}`; degree 0 uses the echelon basis of the chain maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndomorphismOperad<F: Field> {
    pub operad: DgOperad<F>,
    data: EndData<F>,
}

/// Build `End_A` through arity `cap`.
pub fn endomorphism_operad<F: Field>(a: &CochainComplex<F>, cap: usize) -> Result<EndomorphismOperad<F>, Error> {
    let d = a.total_dim().max(2);
    let limit = (0usize..64).take_while(|&c| d.checked_pow(3 * c as u32 + 1).is_some_and(|v| v <= END_BUDGET)).last().unwrap_or(0);
    if cap > limit {
        return Err(Error::CapTooLarge { cap, limit });
    }
    let data = EndData::new(a, cap);
    let top = a.top_degree();
    let components: Vec<CochainComplex<F>> = data
        .homs
        .iter()
        .enumerate()
        .map(|(l, h)| {
            let mut dims = h.dims.clone();
            dims[0] = h.cycles.dim();
            let mut diffs = Vec::with_capacity(top);
            for n in 0..top {
                diffs.push(if n == 0 { Matrix::zeros(dims[1], dims[0]) } else { data.hom_differential(l, n) });
            }
            CochainComplex::new(dims, diffs).expect("D∘D = 0 on hom complexes")
        })
        .collect();
    let actions = action_matrices(&components, |l, s, n, k| {
        let f = data.from_coords(l, n, &[(k, F::one())]);
        data.to_coords(l, n, &data.precompose(l, n, s, &f)).expect("precomposition preserves chain maps")
    });
    let id: HomBlocks<F> = (0..=top).map(|i| (0..a.dim(i)).map(|c| vec![(c, F::one())]).collect()).collect();
    let unit = if cap >= 1 { data.to_coords(1, 0, &id).expect("the identity is a chain map") } else { Vec::new() };
    let mut cache: BTreeMap<(usize, usize, usize), HomBlocks<F>> = BTreeMap::new();
    let operad = DgOperad::from_fn("End", components, actions, unit, |l, ms, parts| {
        for (j, &(n, k)) in parts.iter().enumerate() {
            let ar = if j == 0 { l } else { ms[j - 1] };
            cache.entry((ar, n, k)).or_insert_with(|| data.from_coords(ar, n, &[(k, F::one())]));
        }
        let f = &cache[&(l, parts[0].0, parts[0].1)];
        let gs: Vec<(usize, usize, &HomBlocks<F>)> = ms.iter().zip(&parts[1..]).map(|(&mj, &(n, k))| (mj, n, &cache[&(mj, n, k)])).collect();
        let m: usize = ms.iter().sum();
        let total: usize = parts.iter().map(|p| p.0).sum();
        let h = data.compose(parts[0].0, f, &gs);
        data.to_coords(m, total, &h).expect("composites of chain maps are chain maps")
    });
    Ok(EndomorphismOperad { operad, data })
}

impl<F: Field> EndomorphismOperad<F> {
    pub fn carrier(&self) -> &CochainComplex<F> {
        &self.data.carrier
    }

    /// Coordinates of the degree-`n` map `A^{⊗l} → A` given on basis tuples `[(deg, idx)]`;
    /// `None` in degree 0 when the map is not a chain map.
    pub fn coordinates_of_map(&self, l: usize, n: usize, mut f: impl FnMut(&[(usize, usize)]) -> SparseVec<F>) -> Option<SparseVec<F>> {
        let h = &self.data.homs[l];
        let mut b = self.data.zero_blocks(l, n);
        for (i, cols) in b.iter_mut().enumerate() {
            for (c, col) in cols.iter_mut().enumerate() {
                *col = f(&h.layout.split(i, c));
            }
        }
        self.data.to_coords(l, n, &b)
    }

    /// The tautological action `f(a_0 ⊗ … ⊗ a_{l-1})` for `f ∈ End_A(l)`.
    pub fn evaluate(&self, f: Elem<'_, F>, args: &[Elem<'_, F>]) -> SparseVec<F> {
        let b = self.data.from_coords(args.len(), f.0, f.1);
        self.data.evaluate(f.0, &b, args)
    }
}
