//! Godement resolutions on poset sites, hypercohomology sheaves, derived
//! sections and direct images, and the descent diagnostics.

mod model;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

pub use model::{evaluate_operation, transfer_operation, Argument, ChainModel, Engine};

use crate::cosimp::{CosimplicialComplex, CosimplicialMap, LevelMap};
use crate::field::Field;
use crate::homalg::{product_table, ChainMap, CochainComplex, Matrix, ProductTable, TensorLayout};
use crate::site::{MonotoneMap, Open, PosetSite, Sheaf, SheafMap};
use crate::thomwhitney::CoefficientCache;
use crate::Error;

/// The cosimplicial Godement resolution `G^p = T^{p+1}`, levels `0..=trunc`, held as
/// the stalk cosimplicial complexes: at `y`, level `p` is
/// `⊕_{y ≤ x_0 ≤ … ≤ x_p} F(x_p)` over weakly increasing chains in lexicographic order.
///
/// Cofaces `d^i` (`i ≤ p`) forget `x_i`; `d^{p+1}` restricts along `x_p ≤ x_{p+1}`;
/// codegeneracies repeat an entry.
#[derive(Clone, Debug)]
pub struct GodementResolution<F: Field> {
    source: Sheaf<F>,
    trunc: usize,
    chains: Vec<Vec<Vec<Vec<usize>>>>,
    stalks: Vec<CosimplicialComplex<F>>,
}

fn block_offsets<F: Field>(f: &Sheaf<F>, chains: &[Vec<usize>], q: usize) -> (Vec<usize>, usize) {
    let mut off = 0;
    let mut out = Vec::with_capacity(chains.len());
    for c in chains {
        out.push(off);
        off += f.value(*c.last().expect("chain")).dim(q);
    }
    (out, off)
}

fn resolution_over<F: Field>(f: &Sheaf<F>, u: &Open, trunc: usize) -> (Vec<Vec<Vec<usize>>>, CosimplicialComplex<F>) {
    let site = f.site();
    let top = f.top_degree();
    let cs: Vec<Vec<Vec<usize>>> = (0..=trunc).map(|p| site.multichains(u, p)).collect();
    let idx: Vec<BTreeMap<&[usize], usize>> =
        cs.iter().map(|l| l.iter().enumerate().map(|(i, c)| (c.as_slice(), i)).collect()).collect();
    let offs: Vec<Vec<(Vec<usize>, usize)>> =
        (0..=trunc).map(|p| (0..=top).map(|q| block_offsets(f, &cs[p], q)).collect()).collect();
    let levels: Vec<CochainComplex<F>> = (0..=trunc)
        .map(|p| cs[p].iter().fold(CochainComplex::zero().pad(top), |acc, c| acc.direct_sum(f.value(*c.last().expect("chain")))))
        .collect();
    let mut cofaces = Vec::with_capacity(trunc);
    for p in 0..trunc {
        let mut fam = Vec::with_capacity(p + 2);
        for i in 0..=p + 1 {
            let lm: LevelMap<F> = (0..=top)
                .map(|q| {
                    let (to, tdim) = (&offs[p + 1][q].0, offs[p + 1][q].1);
                    let (so, sdim) = (&offs[p][q].0, offs[p][q].1);
                    let mut e = Vec::new();
                    for (t, s) in cs[p + 1].iter().enumerate() {
                        let mut face = s.clone();
                        face.remove(i);
                        let src = idx[p][face.as_slice()];
                        if i <= p {
                            for k in 0..f.value(*s.last().expect("chain")).dim(q) {
                                e.push((to[t] + k, so[src] + k, F::one()));
                            }
                        } else {
                            let r = &f.restriction(s[p], s[p + 1])[q];
                            for (rr, row) in r.rows_iter().enumerate() {
                                for (cc, v) in row {
                                    e.push((to[t] + rr, so[src] + cc, v.clone()));
                                }
                            }
                        }
                    }
                    Matrix::from_triplets(tdim, sdim, e)
                })
                .collect();
            fam.push(lm);
        }
        cofaces.push(fam);
    }
    let mut codegs = Vec::with_capacity(trunc + 1);
    codegs.push(Vec::new());
    for p in 1..=trunc {
        let mut fam = Vec::with_capacity(p);
        for i in 0..p {
            let lm: LevelMap<F> = (0..=top)
                .map(|q| {
                    let (to, tdim) = (&offs[p - 1][q].0, offs[p - 1][q].1);
                    let (so, sdim) = (&offs[p][q].0, offs[p][q].1);
                    let mut e = Vec::new();
                    for (t, s) in cs[p - 1].iter().enumerate() {
                        let mut deg = s.clone();
                        deg.insert(i, s[i]);
                        let src = idx[p][deg.as_slice()];
                        for k in 0..f.value(*s.last().expect("chain")).dim(q) {
                            e.push((to[t] + k, so[src] + k, F::one()));
                        }
                    }
                    Matrix::from_triplets(tdim, sdim, e)
                })
                .collect();
            fam.push(lm);
        }
        codegs.push(fam);
    }
    let v = CosimplicialComplex::assemble(levels, cofaces, codegs).expect("shapes are consistent by construction");
    drop(idx);
    (cs, v)
}

/// The resolution through level `trunc`.
pub fn godement<F: Field>(f: &Sheaf<F>, trunc: usize) -> GodementResolution<F> {
    let site = f.site();
    let mut chains = Vec::with_capacity(site.len());
    let mut stalks = Vec::with_capacity(site.len());
    for y in 0..site.len() {
        let (cs, v) = resolution_over(f, &site.up_set(y), trunc);
        chains.push(cs);
        stalks.push(v);
    }
    GodementResolution { source: f.clone(), trunc, chains, stalks }
}

/// The cosimplicial complex `Γ(u, G^•F)` through level `trunc` (generic, unnormalized form).
pub fn godement_sections<F: Field>(f: &Sheaf<F>, u: &Open, trunc: usize) -> CosimplicialComplex<F> {
    resolution_over(f, u, trunc).1
}

/// `Γ(u, G^•F)` together with the level-wise product induced by a stalk-wise
/// multiplication `m : F ⊗ F → F`: `(c, a) ⊗ (c', b) ↦ [c = c'] m(a ⊗ b)` on chains.
pub fn godement_product<F: Field>(f: &Sheaf<F>, m: &SheafMap<F>, u: &Open, trunc: usize) -> Result<(CosimplicialComplex<F>, CosimplicialMap<F>), Error> {
    let ff = f.tensor(f)?;
    m.validate(&ff, f)?;
    let (cs, v) = resolution_over(f, u, trunc);
    let vv = v.level_tensor(&v);
    let top = vv.vertical_top();
    let mut components = Vec::with_capacity(trunc + 1);
    for p in 0..=trunc {
        let offs: Vec<Vec<usize>> = (0..=top).map(|q| block_offsets(f, &cs[p], q).0).collect();
        let layout = TensorLayout::new(v.level(p).dims(), v.level(p).dims());
        let lm: LevelMap<F> = (0..=top)
            .map(|n| {
                let mut e = Vec::new();
                for (c, chain) in cs[p].iter().enumerate() {
                    let x = *chain.last().expect("chain");
                    let val = f.value(x);
                    let local = TensorLayout::new(val.dims(), val.dims());
                    let Some(mx) = m.components[x].get(n) else { continue };
                    for i in 0..=n.min(val.top_degree()) {
                        let j = n - i;
                        for a in 0..val.dim(i) {
                            for b in 0..val.dim(j) {
                                let col = layout.pos(i, j, offs[i][c] + a, offs[j][c] + b);
                                for (r, coef) in mx.column(local.pos(i, j, a, b)) {
                                    e.push((offs[n][c] + r, col, coef));
                                }
                            }
                        }
                    }
                }
                Matrix::from_triplets(v.level(p).dim(n), vv.level(p).dim(n), e)
            })
            .collect();
        components.push(lm);
    }
    let map = CosimplicialMap::new(&vv, &v, components)?;
    Ok((v, map))
}

impl<F: Field> GodementResolution<F> {
    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn source(&self) -> &Sheaf<F> {
        &self.source
    }

    /// The cosimplicial complex `G^•(F)(y)`, which is also the stalk at `y`.
    pub fn stalk(&self, y: usize) -> &CosimplicialComplex<F> {
        &self.stalks[y]
    }

    /// Weakly increasing chains indexing level `p` at `y`.
    pub fn chains(&self, y: usize, p: usize) -> &[Vec<usize>] {
        &self.chains[y][p]
    }

    /// Level `p` as a sheaf: restriction along `y ≤ y'` keeps the chains with `x_0 ≥ y'`.
    pub fn level_sheaf(&self, p: usize) -> Sheaf<F> {
        let site = self.source.site();
        let top = self.source.top_degree();
        let values: Vec<CochainComplex<F>> = self.stalks.iter().map(|s| s.level(p).clone()).collect();
        let mut covers = BTreeMap::new();
        for &(a, b) in site.covers() {
            let lm: LevelMap<F> = (0..=top)
                .map(|q| {
                    let (oa, da) = block_offsets(&self.source, &self.chains[a][p], q);
                    let (ob, db) = block_offsets(&self.source, &self.chains[b][p], q);
                    let mut e = Vec::new();
                    for (t, c) in self.chains[b][p].iter().enumerate() {
                        let s = self.chains[a][p].binary_search(c).expect("smaller open");
                        for k in 0..self.source.value(*c.last().expect("chain")).dim(q) {
                            e.push((ob[t] + k, oa[s] + k, F::one()));
                        }
                    }
                    Matrix::from_triplets(db, da, e)
                })
                .collect();
            covers.insert((a, b), lm);
        }
        Sheaf::from_covers(site.clone(), values, covers).expect("projections are functorial")
    }

    /// The augmentation `F(y) → G^0(F)(y)`, `a ↦ (res_{y ≤ x} a)_x`.
    pub fn augmentation(&self, y: usize) -> LevelMap<F> {
        let f = &self.source;
        (0..=f.top_degree())
            .map(|q| {
                let (o, d) = block_offsets(f, &self.chains[y][0], q);
                let mut e = Vec::new();
                for (t, c) in self.chains[y][0].iter().enumerate() {
                    for (rr, row) in f.restriction(y, c[0])[q].rows_iter().enumerate() {
                        for (cc, v) in row {
                            e.push((o[t] + rr, *cc, v.clone()));
                        }
                    }
                }
                Matrix::from_triplets(d, f.value(y).dim(q), e)
            })
            .collect()
    }

    /// The extra codegeneracy `s^{-1} : G^p(y) → G^{p-1}(y)`, `(s^{-1}a)(x_0…x_{p-1}) = a(y, x_0, …, x_{p-1})`,
    /// with `G^{-1}(y) = F(y)`.
    pub fn extra_codegeneracy(&self, y: usize, p: usize) -> LevelMap<F> {
        let f = &self.source;
        (0..=f.top_degree())
            .map(|q| {
                let (so, sd) = block_offsets(f, &self.chains[y][p], q);
                if p == 0 {
                    let c = self.chains[y][0].binary_search(&alloc::vec![y]).expect("y ≥ y");
                    let e = (0..f.value(y).dim(q)).map(|k| (k, so[c] + k, F::one()));
                    return Matrix::from_triplets(f.value(y).dim(q), sd, e);
                }
                let (to, td) = block_offsets(f, &self.chains[y][p - 1], q);
                let mut e = Vec::new();
                for (t, c) in self.chains[y][p - 1].iter().enumerate() {
                    let mut s = alloc::vec![y];
                    s.extend_from_slice(c);
                    let src = self.chains[y][p].binary_search(&s).expect("chain from y");
                    for k in 0..f.value(*c.last().expect("chain")).dim(q) {
                        e.push((to[t] + k, so[src] + k, F::one()));
                    }
                }
                Matrix::from_triplets(td, sd, e)
            })
            .collect()
    }

    /// Check the contraction identities `s^{-1} d^0 = id` and `s^{-1} d^i = d^{i-1} s^{-1}`
    /// (`i ≥ 1`) at `y`, with `d^0 : G^{-1} → G^0` the augmentation.
    pub fn verify_extra_codegeneracy(&self, y: usize) -> bool {
        let v = &self.stalks[y];
        let top = self.source.top_degree();
        let mul = |a: &LevelMap<F>, b: &LevelMap<F>| -> LevelMap<F> { a.iter().zip(b).map(|(x, y)| x.mul(y)).collect() };
        let aug = self.augmentation(y);
        // level -1 → 0 → -1
        if !mul(&self.extra_codegeneracy(y, 0), &aug).iter().all(|m| m.is_identity()) {
            return false;
        }
        for p in 0..self.trunc {
            let s_up = self.extra_codegeneracy(y, p + 1);
            for i in 0..=p + 1 {
                let lhs = mul(&s_up, v.coface(p, i));
                if i == 0 {
                    if !lhs.iter().all(|m| m.is_identity()) {
                        return false;
                    }
                    continue;
                }
                let s_here = self.extra_codegeneracy(y, p);
                let rhs = if p == 0 { mul(&aug, &s_here) } else { mul(v.coface(p - 1, i - 1), &s_here) };
                if (0..=top).any(|q| lhs[q] != rhs[q]) {
                    return false;
                }
            }
        }
        true
    }
}

/// `H_X(F)`: values `Γ(U_y, H_X(F))` on strict chains, restrictions by projection, and `ρ`.
#[derive(Clone, Debug)]
pub struct HyperSheaf<F: Field> {
    pub n_max: usize,
    pub sheaf: Sheaf<F>,
    pub models: Vec<ChainModel<F>>,
    pub rho: SheafMap<F>,
}

/// Build the hypercohomology sheaf through degree `n_max`.
pub fn hypersheaf<F: Field>(f: &Sheaf<F>, n_max: usize) -> HyperSheaf<F> {
    let site = f.site();
    let models: Vec<ChainModel<F>> = (0..site.len()).map(|y| ChainModel::build(f, &site.up_set(y), n_max)).collect();
    let values: Vec<CochainComplex<F>> = models.iter().map(|m| m.complex.clone()).collect();
    let mut covers = BTreeMap::new();
    for &(a, b) in site.covers() {
        covers.insert((a, b), models[a].restrict_to(&models[b]).components().to_vec());
    }
    let sheaf = Sheaf::from_covers(site.clone(), values, covers).expect("projections are functorial");
    let rho = SheafMap { components: (0..site.len()).map(|y| rho_at(f, &models[y], y)).collect() };
    HyperSheaf { n_max, sheaf, models, rho }
}

fn rho_at<F: Field>(f: &Sheaf<F>, model: &ChainModel<F>, y: usize) -> LevelMap<F> {
    let top = model.complex.top_degree().max(f.top_degree());
    (0..=top)
        .map(|q| {
            let mut e = Vec::new();
            if q <= model.complex.top_degree() && q <= f.top_degree() {
                for (c, chain) in model.chains(0).iter().enumerate() {
                    let r0 = model.pos(0, c, q, 0);
                    for (rr, row) in f.restriction(y, chain[0])[q].rows_iter().enumerate() {
                        for (cc, v) in row {
                            e.push((r0 + rr, *cc, v.clone()));
                        }
                    }
                }
            }
            Matrix::from_triplets(model.complex.dim(q), f.value(y).dim(q), e)
        })
        .collect()
}

/// `ρ_F : F → H_X(F)`.
pub fn rho<F: Field>(f: &Sheaf<F>, n_max: usize) -> (HyperSheaf<F>, SheafMap<F>) {
    let h = hypersheaf(f, n_max);
    let r = h.rho.clone();
    (h, r)
}

/// `RΓ(U, F) = Γ(U, H_X(F))` through degree `n_max`.
pub fn derived_sections<F: Field>(f: &Sheaf<F>, u: &Open, n_max: usize) -> ChainModel<F> {
    ChainModel::build(f, u, n_max)
}

/// `Rφ_* F = φ_* H_X(F)`.
pub fn derived_direct_image<F: Field>(phi: &MonotoneMap, f: &Sheaf<F>, n_max: usize) -> Result<Sheaf<F>, Error> {
    hypersheaf(f, n_max).sheaf.direct_image(phi)
}

/// Cohomology dimensions of `RΓ(U, F)` through `n_max`.
pub fn derived_betti<F: Field>(f: &Sheaf<F>, u: &Open, n_max: usize) -> Vec<usize> {
    let m = derived_sections(f, u, n_max);
    (0..=n_max).map(|n| m.complex.cohomology(n).dim()).collect()
}

/// Structure constants on `H^*(U, F)` of a stalk-wise multiplication `m : F ⊗ F → F`.
pub fn derived_ring<F: Field>(f: &Sheaf<F>, m: &SheafMap<F>, u: &Open, n_max: usize, engine: Engine) -> Result<(ChainModel<F>, ChainMap<F>, ProductTable<F>), Error> {
    let model = derived_sections(f, u, n_max);
    let mut cache = CoefficientCache::new();
    let mu = transfer_operation(engine, &[(f, &model), (f, &model)], (f, &model), m, &mut cache)?;
    let table = product_table(&mu, &model.complex, &model.complex, n_max)?;
    Ok((model, mu, table))
}

/// The multiplication of a field-valued constant sheaf: `F ⊗ F → F` at every point.
pub fn constant_multiplication<F: Field>(site: &PosetSite) -> (Sheaf<F>, SheafMap<F>) {
    let f = Sheaf::constant_field(site);
    let m = SheafMap { components: (0..site.len()).map(|_| alloc::vec![Matrix::identity(1)]).collect() };
    (f, m)
}

/// Outcome of one diagnostic check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub passed: bool,
    pub witness: Option<String>,
}

impl Check {
    fn from(failures: Vec<String>) -> Self {
        Check { passed: failures.is_empty(), witness: failures.into_iter().next() }
    }
}

/// Results of the descent checks through degree `n_max`:
/// (2) `ρ_F` is a stalk-wise quasi-isomorphism;
/// (3) the simple commutes with stalks: the chain model at `U_y` equals the total complex
///     of the stalk resolution, and the comparison is a quasi-isomorphism;
/// (4) `ρ_{H_X(F)}` is a quasi-isomorphism on sections over every open.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentReport {
    pub n_max: usize,
    pub rho_local: Check,
    pub simple_commutes: Check,
    pub thomason: Check,
}

impl DescentReport {
    pub fn passed(&self) -> bool {
        self.rho_local.passed && self.simple_commutes.passed && self.thomason.passed
    }
}

/// Run checks (2), (3) and (4).
pub fn descent_diagnostics<F: Field>(f: &Sheaf<F>, n_max: usize) -> Result<DescentReport, Error> {
    let site = f.site();
    let h = hypersheaf(f, n_max);
    // (2)
    let mut fails = Vec::new();
    for y in 0..site.len() {
        let m = h.rho.at(f, &h.sheaf, y);
        if let Some(bad) = m.first_non_iso_degree() {
            fails.push(format!("ρ is not a quasi-isomorphism at {} in degree {bad}", site.name(y)));
        }
    }
    let rho_local = Check::from(fails);
    // (3)
    let g = godement(f, n_max + 1);
    let mut fails = Vec::new();
    for y in 0..site.len() {
        let tot = g.stalk(y).tot_simple(n_max)?;
        let generic = tot.complex.pad(h.models[y].complex.top_degree());
        if generic != h.models[y].complex {
            fails.push(format!("simple of the stalk resolution at {} differs from the stalk of the simple", site.name(y)));
            continue;
        }
        let id = ChainMap::identity(&generic);
        if id.first_non_iso_degree().is_some() {
            fails.push(format!("stalk comparison at {} is not a quasi-isomorphism", site.name(y)));
        }
    }
    let simple_commutes = Check::from(fails);
    // (4)
    let mut fails = Vec::new();
    for u in site.all_opens() {
        let secs = h.sheaf.sections(&u);
        let hh = ChainModel::build(&h.sheaf, &u, n_max);
        let m = hh.section_inclusion(&h.sheaf, &secs);
        if let Some(d) = m.first_noncommuting_degree() {
            fails.push(format!("ρ on sections over {:?} is not a chain map in degree {d}", names(site, &u)));
            continue;
        }
        if let Some(bad) = m.first_non_iso_degree() {
            fails.push(format!("ρ on sections over {:?} is not a quasi-isomorphism in degree {bad}", names(site, &u)));
        }
    }
    let thomason = Check::from(fails);
    Ok(DescentReport { n_max, rho_local, simple_commutes, thomason })
}

fn names(site: &PosetSite, u: &Open) -> Vec<String> {
    u.elements().iter().map(|&x| String::from(site.name(x))).collect()
}

#[cfg(test)]
mod tests;
