//! Sheaves of cochain complexes on finite posets.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::poset::{MonotoneMap, Open, PosetSite};
use crate::cosimp::LevelMap;
use crate::field::Field;
use crate::homalg::{ChainMap, CochainComplex, Matrix, SparseVec, Subspace, TensorLayout};
use crate::Error;

/// A functor from the poset to cochain complexes: `value(x)` with restrictions
/// `value(x) → value(y)` for `x ≤ y`. All values share a common top degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sheaf<F: Field> {
    site: PosetSite,
    values: Vec<CochainComplex<F>>,
    restrictions: BTreeMap<(usize, usize), LevelMap<F>>,
}

fn identity<F: Field>(c: &CochainComplex<F>) -> LevelMap<F> {
    (0..=c.top_degree()).map(|q| Matrix::identity(c.dim(q))).collect()
}

fn compose<F: Field>(second: &LevelMap<F>, first: &LevelMap<F>) -> LevelMap<F> {
    second.iter().zip(first).map(|(a, b)| a.mul(b)).collect()
}

impl<F: Field> Sheaf<F> {
    /// Build from values and restriction maps along the covers of the site.
    ///
    /// Restrictions along longer relations are composites; the constructor checks
    /// that they are chain maps and that all composites agree.
    pub fn from_covers(
        site: PosetSite,
        values: Vec<CochainComplex<F>>,
        cover_maps: BTreeMap<(usize, usize), LevelMap<F>>,
    ) -> Result<Self, Error> {
        let n = site.len();
        if values.len() != n {
            return Err(Error::Invalid(format!("{} values for {n} elements", values.len())));
        }
        let top = values.iter().map(|v| v.top_degree()).max().unwrap_or(0);
        let values: Vec<CochainComplex<F>> = values.iter().map(|v| v.pad(top)).collect();
        let mut covers = BTreeMap::new();
        for &(a, b) in site.covers() {
            let mut m = cover_maps
                .get(&(a, b))
                .cloned()
                .ok_or_else(|| Error::Invalid(format!("missing restriction {} → {}", site.name(a), site.name(b))))?;
            for q in m.len()..=top {
                m.push(Matrix::zeros(values[b].dim(q), values[a].dim(q)));
            }
            if m.len() != top + 1 {
                return Err(Error::DimensionMismatch { what: "restriction", degree: m.len() - 1 });
            }
            ChainMap::new(values[a].clone(), values[b].clone(), m.clone()).map_err(|e| match e {
                Error::NotAChainMap { degree } => Error::Invalid(format!(
                    "restriction {} → {} is not a chain map in degree {degree}",
                    site.name(a),
                    site.name(b)
                )),
                Error::DimensionMismatch { degree, .. } => Error::Invalid(format!(
                    "restriction {} → {} has the wrong shape in degree {degree}",
                    site.name(a),
                    site.name(b)
                )),
                other => other,
            })?;
            covers.insert((a, b), m);
        }
        for key in cover_maps.keys() {
            if !covers.contains_key(key) {
                return Err(Error::Invalid(format!(
                    "restriction {} → {} is not along a cover",
                    site.name(key.0),
                    site.name(key.1)
                )));
            }
        }
        let restrictions = Self::close(&site, &values, &covers)?;
        Ok(Sheaf { site, values, restrictions })
    }

    fn close(
        site: &PosetSite,
        values: &[CochainComplex<F>],
        covers: &BTreeMap<(usize, usize), LevelMap<F>>,
    ) -> Result<BTreeMap<(usize, usize), LevelMap<F>>, Error> {
        let n = site.len();
        // order targets by the size of their down-set so shorter relations come first
        let mut res: BTreeMap<(usize, usize), LevelMap<F>> = BTreeMap::new();
        for x in 0..n {
            res.insert((x, x), identity(&values[x]));
        }
        let mut pending: Vec<(usize, usize)> = site.relations().into_iter().filter(|(a, b)| a != b).collect();
        pending.sort_by_key(|&(a, b)| (0..n).filter(|&c| site.leq(a, c) && site.leq(c, b)).count());
        for (a, b) in pending {
            let &(_, mid) = site
                .covers()
                .iter()
                .find(|&&(lo, hi)| lo == a && site.leq(hi, b))
                .expect("a strict relation factors through a cover");
            let m = compose(&res[&(mid, b)], &covers[&(a, mid)]);
            res.insert((a, b), m);
        }
        for &(a, mid) in site.covers() {
            for b in 0..n {
                if site.leq(mid, b) && compose(&res[&(mid, b)], &covers[&(a, mid)]) != res[&(a, b)] {
                    return Err(Error::Invalid(format!(
                        "restrictions are not functorial: {} → {} depends on the path",
                        site.name(a),
                        site.name(b)
                    )));
                }
            }
        }
        Ok(res)
    }

    /// The constant sheaf with value `a`.
    pub fn constant(site: &PosetSite, a: &CochainComplex<F>) -> Self {
        let values = vec![a.clone(); site.len()];
        let restrictions = site.relations().into_iter().map(|r| (r, identity(a))).collect();
        Sheaf { site: site.clone(), values, restrictions }
    }

    /// The constant sheaf `F` in degree 0.
    pub fn constant_field(site: &PosetSite) -> Self {
        Self::constant(site, &CochainComplex::unit())
    }

    /// The skyscraper at `x`: value `d` at every `y ≤ x`, zero elsewhere.
    pub fn skyscraper(site: &PosetSite, x: usize, d: &CochainComplex<F>) -> Self {
        let n = site.len();
        let zero = CochainComplex::zero().pad(d.top_degree());
        let values: Vec<CochainComplex<F>> =
            (0..n).map(|y| if site.leq(y, x) { d.clone() } else { zero.clone() }).collect();
        let restrictions = site
            .relations()
            .into_iter()
            .map(|(a, b)| {
                let m = if site.leq(b, x) {
                    identity(d)
                } else {
                    (0..=d.top_degree()).map(|q| Matrix::zeros(values[b].dim(q), values[a].dim(q))).collect()
                };
                ((a, b), m)
            })
            .collect();
        Sheaf { site: site.clone(), values, restrictions }
    }

    pub fn site(&self) -> &PosetSite {
        &self.site
    }

    pub fn value(&self, x: usize) -> &CochainComplex<F> {
        &self.values[x]
    }

    pub fn values(&self) -> &[CochainComplex<F>] {
        &self.values
    }

    pub fn top_degree(&self) -> usize {
        self.values.first().map_or(0, |v| v.top_degree())
    }

    /// Restriction along `x ≤ y`.
    pub fn restriction(&self, x: usize, y: usize) -> &LevelMap<F> {
        &self.restrictions[&(x, y)]
    }

    pub fn restriction_map(&self, x: usize, y: usize) -> ChainMap<F> {
        ChainMap::from_parts(self.values[x].clone(), self.values[y].clone(), self.restriction(x, y).clone())
    }

    /// The stalk at `x` and the identity comparison `Γ(U_x) ≅ value(x)` witnessing the collapse.
    pub fn stalk(&self, x: usize) -> (CochainComplex<F>, ChainMap<F>) {
        let s = self.sections(&self.site.up_set(x));
        let proj = s.projection(self, x);
        (self.values[x].clone(), proj)
    }

    /// Sections over an open: compatible families inside `∏_{x ∈ u} value(x)`.
    pub fn sections(&self, u: &Open) -> Sections<F> {
        Sections::compute(self, u)
    }

    /// Sections over an open given by elements (checked for up-closure).
    pub fn sections_over(&self, elements: &[usize]) -> Result<Sections<F>, Error> {
        let u = self.site.open(elements)?;
        Ok(self.sections(&u))
    }

    /// Value-wise tensor product.
    pub fn tensor(&self, other: &Self) -> Result<Self, Error> {
        if self.site != other.site {
            return Err(Error::Invalid("tensor product needs a common site".into()));
        }
        let values: Vec<CochainComplex<F>> = (0..self.site.len()).map(|x| self.values[x].tensor(&other.values[x])).collect();
        let restrictions = self
            .restrictions
            .keys()
            .map(|&(a, b)| {
                let f = self.restriction_map(a, b).tensor(&other.restriction_map(a, b));
                ((a, b), f.components().to_vec())
            })
            .collect();
        Ok(Sheaf { site: self.site.clone(), values, restrictions })
    }

    /// Value-wise direct sum.
    pub fn direct_sum(&self, other: &Self) -> Result<Self, Error> {
        if self.site != other.site {
            return Err(Error::Invalid("direct sum needs a common site".into()));
        }
        let values: Vec<CochainComplex<F>> = (0..self.site.len()).map(|x| self.values[x].direct_sum(&other.values[x])).collect();
        let top = values.first().map_or(0, |v| v.top_degree());
        let restrictions = self
            .restrictions
            .keys()
            .map(|&(a, b)| {
                let m = (0..=top)
                    .map(|q| {
                        let ma = self.restrictions[&(a, b)].get(q).cloned().unwrap_or_else(|| Matrix::zeros(self.values[b].dim(q), self.values[a].dim(q)));
                        let mb = other.restrictions[&(a, b)].get(q).cloned().unwrap_or_else(|| Matrix::zeros(other.values[b].dim(q), other.values[a].dim(q)));
                        Matrix::block_diag(&[&ma, &mb])
                    })
                    .collect();
                ((a, b), m)
            })
            .collect();
        Ok(Sheaf { site: self.site.clone(), values, restrictions })
    }

    /// `(φ_* f)(y) = Γ(φ^{-1} U_y, f)` with restrictions of sections.
    pub fn direct_image(&self, phi: &MonotoneMap) -> Result<Self, Error> {
        if phi.source != self.site {
            return Err(Error::Invalid("direct image along a map from a different site".into()));
        }
        let target = &phi.target;
        let secs: Vec<Sections<F>> = (0..target.len()).map(|y| self.sections(&phi.preimage(&target.up_set(y)))).collect();
        let values: Vec<CochainComplex<F>> = secs.iter().map(|s| s.complex.clone()).collect();
        let restrictions = target
            .relations()
            .into_iter()
            .map(|(a, b)| ((a, b), secs[a].restrict_to(&secs[b]).components().to_vec()))
            .collect();
        Ok(Sheaf { site: target.clone(), values, restrictions })
    }

    /// `η : f → T f` into the product of skyscrapers: `a ↦ (res_{y ≤ x} a)_{x ≥ y}`.
    pub fn triple(&self) -> (Self, SheafMap<F>) {
        let n = self.site.len();
        let top = self.top_degree();
        let values: Vec<CochainComplex<F>> = (0..n)
            .map(|y| {
                let parts: Vec<&CochainComplex<F>> = self.site.up_set(y).elements().iter().map(|&x| &self.values[x]).collect();
                parts.iter().fold(CochainComplex::zero().pad(top), |acc, c| acc.direct_sum(c))
            })
            .collect();
        let offsets = |y: usize, q: usize| -> BTreeMap<usize, usize> {
            let mut off = 0;
            let mut m = BTreeMap::new();
            for &x in self.site.up_set(y).elements() {
                m.insert(x, off);
                off += self.values[x].dim(q);
            }
            m
        };
        let restrictions = self
            .site
            .relations()
            .into_iter()
            .map(|(a, b)| {
                let m = (0..=top)
                    .map(|q| {
                        let (oa, ob) = (offsets(a, q), offsets(b, q));
                        let mut e = Vec::new();
                        for (&x, &o) in &ob {
                            for k in 0..self.values[x].dim(q) {
                                e.push((o + k, oa[&x] + k, F::one()));
                            }
                        }
                        Matrix::from_triplets(values[b].dim(q), values[a].dim(q), e)
                    })
                    .collect();
                ((a, b), m)
            })
            .collect();
        let t = Sheaf { site: self.site.clone(), values, restrictions };
        let eta = (0..n)
            .map(|y| {
                (0..=top)
                    .map(|q| {
                        let oy = offsets(y, q);
                        let blocks: Vec<Matrix<F>> = oy.keys().map(|&x| self.restrictions[&(y, x)][q].clone()).collect();
                        let refs: Vec<&Matrix<F>> = blocks.iter().collect();
                        if refs.is_empty() {
                            Matrix::zeros(0, self.values[y].dim(q))
                        } else {
                            Matrix::vstack(&refs)
                        }
                    })
                    .collect()
            })
            .collect();
        let eta = SheafMap { components: eta };
        (t, eta)
    }
}

/// A morphism of sheaves: chain maps `f(x) → g(x)` commuting with restrictions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SheafMap<F: Field> {
    pub components: Vec<LevelMap<F>>,
}

impl<F: Field> SheafMap<F> {
    pub fn identity(f: &Sheaf<F>) -> Self {
        SheafMap { components: f.values.iter().map(identity).collect() }
    }

    /// Check chain-map and naturality conditions.
    pub fn validate(&self, src: &Sheaf<F>, tgt: &Sheaf<F>) -> Result<(), Error> {
        for x in 0..src.site.len() {
            ChainMap::new(src.values[x].clone(), tgt.values[x].clone(), self.components[x].clone())?;
        }
        for (a, b) in src.site.relations() {
            if compose(tgt.restriction(a, b), &self.components[a]) != compose(&self.components[b], src.restriction(a, b)) {
                return Err(Error::Invalid(format!(
                    "map does not commute with the restriction {} → {}",
                    src.site.name(a),
                    src.site.name(b)
                )));
            }
        }
        Ok(())
    }

    pub fn at(&self, src: &Sheaf<F>, tgt: &Sheaf<F>, x: usize) -> ChainMap<F> {
        ChainMap::from_parts(src.value(x).clone(), tgt.value(x).clone(), self.components[x].clone())
    }

    pub fn compose(&self, first: &SheafMap<F>) -> SheafMap<F> {
        SheafMap { components: self.components.iter().zip(&first.components).map(|(a, b)| compose(a, b)).collect() }
    }

    /// `α ⊗ β : f ⊗ g → f' ⊗ g'`.
    pub fn tensor(&self, other: &SheafMap<F>, src: (&Sheaf<F>, &Sheaf<F>), tgt: (&Sheaf<F>, &Sheaf<F>)) -> SheafMap<F> {
        let comps = (0..src.0.site.len())
            .map(|x| self.at(src.0, tgt.0, x).tensor(&other.at(src.1, tgt.1, x)).components().to_vec())
            .collect();
        SheafMap { components: comps }
    }

    /// Induced map on sections over a common open.
    pub fn on_sections(&self, src: &Sections<F>, tgt: &Sections<F>) -> ChainMap<F> {
        let top = src.complex.top_degree();
        let comps = (0..=top)
            .map(|q| {
                let cols: Vec<SparseVec<F>> = src.basis[q]
                    .basis()
                    .iter()
                    .map(|v| {
                        let mut out = Vec::new();
                        for (k, &x) in src.open.elements().iter().enumerate() {
                            let part = src.component(q, k, v);
                            let img = self.components[x][q].apply(&part);
                            out.extend(img.into_iter().map(|(i, c)| (tgt.offsets[q][k] + i, c)));
                        }
                        tgt.basis[q].coords(&out).expect("sheaf maps send sections to sections")
                    })
                    .collect();
                Matrix::from_columns(tgt.complex.dim(q), src.complex.dim(q), &cols)
            })
            .collect();
        ChainMap::from_parts(src.complex.clone(), tgt.complex.clone(), comps)
    }

    /// `φ_* α`.
    pub fn direct_image(&self, src: &Sheaf<F>, tgt: &Sheaf<F>, phi: &MonotoneMap) -> SheafMap<F> {
        let comps = (0..phi.target.len())
            .map(|y| {
                let u = phi.preimage(&phi.target.up_set(y));
                self.on_sections(&src.sections(&u), &tgt.sections(&u)).components().to_vec()
            })
            .collect();
        SheafMap { components: comps }
    }
}

/// `Γ(u, f)` as a subcomplex of `∏_{x ∈ u} value(x)`.
///
/// The product is ordered by element index, each block by the value's basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sections<F: Field> {
    pub open: Open,
    pub complex: CochainComplex<F>,
    /// Per degree, the sections as a subspace of the product.
    pub basis: Vec<Subspace<F>>,
    offsets: Vec<Vec<usize>>,
    block_dims: Vec<Vec<usize>>,
}

impl<F: Field> Sections<F> {
    fn compute(f: &Sheaf<F>, u: &Open) -> Self {
        let top = f.top_degree();
        let elems = u.elements();
        let mut offsets = Vec::with_capacity(top + 1);
        let mut block_dims = Vec::with_capacity(top + 1);
        let mut prod_dims = Vec::with_capacity(top + 1);
        for q in 0..=top {
            let mut off = 0;
            let mut o = Vec::with_capacity(elems.len());
            let mut bd = Vec::with_capacity(elems.len());
            for &x in elems {
                o.push(off);
                bd.push(f.values[x].dim(q));
                off += f.values[x].dim(q);
            }
            offsets.push(o);
            block_dims.push(bd);
            prod_dims.push(off);
        }
        let pos = |x: usize| elems.binary_search(&x).expect("element of the open");
        let mut basis = Vec::with_capacity(top + 1);
        for q in 0..=top {
            // equalizer rows: res(a→b) a_a - a_b = 0 for covers inside u
            let mut rows: Vec<SparseVec<F>> = Vec::new();
            for &(a, b) in f.site.covers() {
                if !u.contains(a) {
                    continue;
                }
                let m = &f.restrictions[&(a, b)][q];
                let (oa, ob) = (offsets[q][pos(a)], offsets[q][pos(b)]);
                for (r, row) in m.rows_iter().enumerate() {
                    let mut v: SparseVec<F> = row.iter().map(|(c, x)| (oa + c, x.clone())).collect();
                    v.push((ob + r, -F::one()));
                    v.sort_unstable_by_key(|(i, _)| *i);
                    rows.push(v);
                }
            }
            let eq = Matrix::from_sparse_rows(rows.len(), prod_dims[q], rows);
            basis.push(Subspace::kernel(&eq));
        }
        let mut diffs = Vec::with_capacity(top);
        for q in 0..top {
            let cols: Vec<SparseVec<F>> = basis[q]
                .basis()
                .iter()
                .map(|v| {
                    let mut out = Vec::new();
                    for (k, &x) in elems.iter().enumerate() {
                        let part: SparseVec<F> = v
                            .iter()
                            .filter(|(i, _)| *i >= offsets[q][k] && *i < offsets[q][k] + block_dims[q][k])
                            .map(|(i, c)| (i - offsets[q][k], c.clone()))
                            .collect();
                        let img = f.values[x].diff(q).apply(&part);
                        out.extend(img.into_iter().map(|(i, c)| (offsets[q + 1][k] + i, c)));
                    }
                    basis[q + 1].coords(&out).expect("sections form a subcomplex")
                })
                .collect();
            diffs.push(Matrix::from_columns(basis[q + 1].dim(), basis[q].dim(), &cols));
        }
        let dims = basis.iter().map(|b| b.dim()).collect();
        let exact = f.values.iter().filter_map(|v| v.exact_through()).min();
        let complex = CochainComplex::from_parts(dims, diffs, exact);
        Sections { open: u.clone(), complex, basis, offsets, block_dims }
    }

    /// Block `k` (the `k`-th element of the open) of a product vector in degree `q`.
    pub fn component(&self, q: usize, k: usize, v: &[(usize, F)]) -> SparseVec<F> {
        let (o, d) = (self.offsets[q][k], self.block_dims[q][k]);
        v.iter().filter(|(i, _)| *i >= o && *i < o + d).map(|(i, c)| (i - o, c.clone())).collect()
    }

    /// Product vector of a section given in section coordinates.
    pub fn embed(&self, q: usize, coords: &[(usize, F)]) -> SparseVec<F> {
        self.basis[q].basis_matrix().transpose().apply(coords)
    }

    /// Section coordinates of a compatible family given by its components.
    pub fn coords_of_family(&self, q: usize, parts: &[SparseVec<F>]) -> Option<SparseVec<F>> {
        let mut v = Vec::new();
        for (k, p) in parts.iter().enumerate() {
            v.extend(p.iter().map(|(i, c)| (self.offsets[q][k] + i, c.clone())));
        }
        self.basis[q].coords(&v)
    }

    /// The evaluation `Γ(u) → value(x)` for `x ∈ u`.
    pub fn projection(&self, f: &Sheaf<F>, x: usize) -> ChainMap<F> {
        let k = self.open.elements().binary_search(&x).expect("element of the open");
        let comps = (0..=self.complex.top_degree())
            .map(|q| {
                let cols: Vec<SparseVec<F>> = self.basis[q].basis().iter().map(|v| self.component(q, k, v)).collect();
                Matrix::from_columns(f.values[x].dim(q), self.complex.dim(q), &cols)
            })
            .collect();
        ChainMap::from_parts(self.complex.clone(), f.values[x].clone(), comps)
    }

    /// Restriction `Γ(u) → Γ(v)` for an open `v ⊆ u`.
    pub fn restrict_to(&self, smaller: &Sections<F>) -> ChainMap<F> {
        let comps = (0..=self.complex.top_degree())
            .map(|q| {
                let cols: Vec<SparseVec<F>> = self.basis[q]
                    .basis()
                    .iter()
                    .map(|v| {
                        let parts: Vec<SparseVec<F>> = smaller
                            .open
                            .elements()
                            .iter()
                            .map(|&x| {
                                let k = self.open.elements().binary_search(&x).expect("smaller open");
                                self.component(q, k, v)
                            })
                            .collect();
                        smaller.coords_of_family(q, &parts).expect("restricted sections are sections")
                    })
                    .collect();
                Matrix::from_columns(smaller.complex.dim(q), self.complex.dim(q), &cols)
            })
            .collect();
        ChainMap::from_parts(self.complex.clone(), smaller.complex.clone(), comps)
    }
}

/// The monoidal comparison `Γ(u, f) ⊗ Γ(u, g) → Γ(u, f ⊗ g)`, `(a_x) ⊗ (b_x) ↦ (a_x ⊗ b_x)`.
pub fn sections_comparison<F: Field>(
    f: &Sheaf<F>,
    g: &Sheaf<F>,
    fg: &Sheaf<F>,
    sf: &Sections<F>,
    sg: &Sections<F>,
    sfg: &Sections<F>,
) -> ChainMap<F> {
    let source = sf.complex.tensor(&sg.complex);
    let layout = TensorLayout::new(sf.complex.dims(), sg.complex.dims());
    let elems = sf.open.elements();
    let comps = (0..=source.top_degree())
        .map(|n| {
            let mut cols = Vec::with_capacity(source.dim(n));
            for idx in 0..source.dim(n) {
                let (i, ia, ib) = layout.split(n, idx);
                let j = n - i;
                let a = &sf.basis[i].basis()[ia];
                let b = &sg.basis[j].basis()[ib];
                let parts: Vec<SparseVec<F>> = (0..elems.len())
                    .map(|k| {
                        let x = elems[k];
                        let (pa, pb) = (sf.component(i, k, a), sg.component(j, k, b));
                        let l = TensorLayout::new(f.value(x).dims(), g.value(x).dims());
                        let mut v: SparseVec<F> = Vec::new();
                        for (u, cu) in &pa {
                            for (w, cw) in &pb {
                                v.push((l.pos(i, j, *u, *w), cu.clone() * cw.clone()));
                            }
                        }
                        v.sort_unstable_by_key(|(t, _)| *t);
                        v
                    })
                    .collect();
                if n > sfg.complex.top_degree() {
                    cols.push(Vec::new());
                    continue;
                }
                cols.push(sfg.coords_of_family(n, &parts).expect("tensor of sections is a section"));
            }
            Matrix::from_columns(sfg.complex.dim(n), source.dim(n), &cols)
        })
        .collect();
    let _ = fg;
    ChainMap::from_parts(source, sfg.complex.clone(), comps)
}

/// The comparison `φ_* f ⊗ φ_* g → φ_*(f ⊗ g)` as a map of sheaves on the target.
pub fn direct_image_comparison<F: Field>(
    f: &Sheaf<F>,
    g: &Sheaf<F>,
    phi: &MonotoneMap,
) -> Result<(Sheaf<F>, Sheaf<F>, SheafMap<F>), Error> {
    let fg = f.tensor(g)?;
    let pf = f.direct_image(phi)?;
    let pg = g.direct_image(phi)?;
    let pfg = fg.direct_image(phi)?;
    let source = pf.tensor(&pg)?;
    let comps = (0..phi.target.len())
        .map(|y| {
            let u = phi.preimage(&phi.target.up_set(y));
            let (sf, sg, sfg) = (f.sections(&u), g.sections(&u), fg.sections(&u));
            sections_comparison(f, g, &fg, &sf, &sg, &sfg).components().to_vec()
        })
        .collect();
    Ok((source, pfg, SheafMap { components: comps }))
}

/// Presheaf data on the opens that are minimal opens `U_x`: objects `p(U_x)` and
/// maps `p(U_x) → p(U_y)` for `x ≤ y`.
pub struct Presheaf<F: Field> {
    pub site: PosetSite,
    pub on_minimal: Vec<CochainComplex<F>>,
    pub maps: BTreeMap<(usize, usize), LevelMap<F>>,
}

/// Sheafification on a poset site: `value(x) = p(U_x)` with the presheaf's maps.
pub fn sheafify<F: Field>(p: Presheaf<F>) -> Result<Sheaf<F>, Error> {
    let covers = p.site.covers().iter().map(|c| (*c, p.maps.get(c).cloned())).collect::<Vec<_>>();
    let mut cover_maps = BTreeMap::new();
    for (c, m) in covers {
        let m = m.ok_or_else(|| Error::Invalid(format!("presheaf lacks the map along {} ≤ {}", p.site.name(c.0), p.site.name(c.1))))?;
        cover_maps.insert(c, m);
    }
    let s = Sheaf::from_covers(p.site.clone(), p.on_minimal, cover_maps)?;
    for (key, m) in &p.maps {
        if s.restrictions.get(key).is_some_and(|r| r != m) {
            return Err(Error::Invalid("presheaf maps are not functorial".into()));
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use alloc::vec;

    type Q = Rational;

    fn q(v: i64) -> Q {
        Q::from(v)
    }

    #[test]
    fn sections_of_constant() {
        let s = PosetSite::pseudocircle();
        let f = Sheaf::<Q>::constant_field(&s);
        assert_eq!(f.sections(&s.whole()).complex.dims(), &[1]);
        assert_eq!(f.sections(&s.up_set(0)).complex.dims(), &[1]);
        assert_eq!(f.sections(&s.empty_open()).complex.dims(), &[0]);
        let disjoint = s.open(&[2, 3]).unwrap();
        assert_eq!(f.sections(&disjoint).complex.dims(), &[2]);
        assert!(matches!(f.sections_over(&[0]), Err(Error::NotUpClosed { .. })));
    }

    #[test]
    fn stalk_collapse() {
        let s = PosetSite::two_chain();
        let f = Sheaf::<Q>::constant(&s, &CochainComplex::concentrated(0, 2));
        for x in 0..2 {
            let (v, w) = f.stalk(x);
            assert_eq!(&v, f.value(x));
            assert!(w.component(0).is_identity());
        }
    }

    #[test]
    fn skyscrapers_on_two_chain() {
        let s = PosetSite::two_chain();
        let d = CochainComplex::<Q>::unit();
        let at_b = Sheaf::skyscraper(&s, 1, &d);
        assert_eq!((at_b.value(0).dim(0), at_b.value(1).dim(0)), (1, 1));
        let at_a = Sheaf::skyscraper(&s, 0, &d);
        assert_eq!((at_a.value(0).dim(0), at_a.value(1).dim(0)), (1, 0));
    }

    #[test]
    fn cover_restrictions_compose() {
        let s = PosetSite::from_names(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        let vals = vec![CochainComplex::<Q>::concentrated(0, 1); 3];
        let mut covers = BTreeMap::new();
        covers.insert((0, 1), vec![Matrix::scalar(1, q(2))]);
        covers.insert((1, 2), vec![Matrix::scalar(1, q(3))]);
        let f = Sheaf::from_covers(s, vals, covers).unwrap();
        assert_eq!(f.restriction(0, 2)[0].get(0, 0), q(6));
    }

    #[test]
    fn path_dependence_is_rejected() {
        let s = PosetSite::from_names(&["a", "b", "c", "d"], &[("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")]).unwrap();
        let vals = vec![CochainComplex::<Q>::concentrated(0, 1); 4];
        let mut covers = BTreeMap::new();
        for &(a, b) in s.covers() {
            covers.insert((a, b), vec![Matrix::scalar(1, q(1))]);
        }
        let k = *s.covers().last().unwrap();
        covers.insert(k, vec![Matrix::scalar(1, q(-1))]);
        assert!(Sheaf::from_covers(s, vals, covers).is_err());
    }

    #[test]
    fn direct_images() {
        let s = PosetSite::pseudocircle();
        let f = Sheaf::<Q>::constant_field(&s);
        assert_eq!(f.direct_image(&MonotoneMap::identity(&s)).unwrap(), f);
        let g = f.direct_image(&MonotoneMap::to_point(&s)).unwrap();
        assert_eq!(g.value(0).dims(), &[1]);
        let chain = PosetSite::two_chain();
        let inc = MonotoneMap::new(chain.clone(), s.clone(), vec![0, 2]).unwrap();
        let h = Sheaf::<Q>::constant_field(&chain);
        let ph = h.direct_image(&inc).unwrap();
        let dims: Vec<usize> = (0..4).map(|y| ph.value(y).dim(0)).collect();
        assert_eq!(dims, vec![1, 1, 1, 0]);
    }

    #[test]
    fn tensor_and_comparisons() {
        let s = PosetSite::two_chain();
        let f = Sheaf::<Q>::constant(&s, &CochainComplex::concentrated(0, 2));
        let g = Sheaf::<Q>::skyscraper(&s, 1, &CochainComplex::concentrated(1, 1));
        let fg = f.tensor(&g).unwrap();
        assert_eq!(fg.value(0).dims(), &[0, 2]);
        let (src, tgt, m) = direct_image_comparison(&f, &g, &MonotoneMap::to_point(&s)).unwrap();
        m.validate(&src, &tgt).unwrap();
        let (_, eta) = f.triple();
        let (t, _) = f.triple();
        eta.validate(&f, &t).unwrap();
        assert_eq!(t.value(0).dim(0), 4);
    }

    #[test]
    fn sheafify_sheaf_data() {
        let s = PosetSite::two_chain();
        let f = Sheaf::<Q>::constant_field(&s);
        let p = Presheaf { site: s, on_minimal: f.values().to_vec(), maps: f.restrictions.clone() };
        assert_eq!(sheafify(p).unwrap(), f);
    }
}
