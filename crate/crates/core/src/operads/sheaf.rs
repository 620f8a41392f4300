use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;

use super::validate::{validate_algebra_with, validate_operad_with};
use super::{admissible, Algebra, DgOperad, Elem, Operad, OperadAlgebra, OperadMap, Policy, Pullback, Report};
use crate::combi::{perm_rank, permutations};
use crate::cosimp::LevelMap;
use crate::field::Field;
use crate::godement::{evaluate_operation, hypersheaf, Argument, ChainModel, Engine, HyperSheaf};
use crate::homalg::{CochainComplex, Matrix, SparseVec};
use crate::site::{Open, PosetSite, Sheaf, SheafMap};
use crate::thomwhitney::CoefficientCache;
use crate::Error;

/// A sheaf of operads on a finite poset: a sheaf per arity, with action, unit and
/// composition maps given point-wise and commuting with the restrictions.
///
/// Composition components may stop below the top degree; missing ones are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SheafOperad<F: Field> {
    pub name: String,
    cap: usize,
    arities: Vec<Sheaf<F>>,
    actions: Vec<Vec<SheafMap<F>>>,
    units: Vec<SparseVec<F>>,
    gamma: BTreeMap<(usize, Vec<usize>), SheafMap<F>>,
}

impl<F: Field> SheafOperad<F> {
    /// The constant sheaf of operads with value `p`.
    pub fn constant(site: &PosetSite, p: &DgOperad<F>) -> Self {
        Self::supported(site, p, |_| true, |c| Sheaf::constant(site, c))
    }

    /// The skyscraper at `x`: value `p` at every `y ≤ x`, zero elsewhere.
    pub fn skyscraper(site: &PosetSite, x: usize, p: &DgOperad<F>) -> Self {
        Self::supported(site, p, |y| site.leq(y, x), |c| Sheaf::skyscraper(site, x, c))
    }

    fn supported(site: &PosetSite, p: &DgOperad<F>, on: impl Fn(usize) -> bool, sheaf: impl Fn(&CochainComplex<F>) -> Sheaf<F>) -> Self {
        let n = site.len();
        let arities: Vec<Sheaf<F>> = p.components().iter().map(&sheaf).collect();
        let zero_like = |f: &Sheaf<F>, y: usize| -> LevelMap<F> { f.value(y).dims().iter().map(|&d| Matrix::zeros(d, d)).collect() };
        let actions = arities
            .iter()
            .enumerate()
            .map(|(l, f)| {
                permutations(l)
                    .iter()
                    .map(|s| SheafMap { components: (0..n).map(|y| if on(y) { p.action(s).to_vec() } else { zero_like(f, y) }).collect() })
                    .collect()
            })
            .collect();
        let units = (0..n).map(|y| if on(y) { p.unit_vector().clone() } else { Vec::new() }).collect();
        let gamma = admissible(p.cap(), true)
            .into_iter()
            .map(|(l, ms)| {
                let g = p.gamma(&ms).expect("admissible arities").to_vec();
                let comps = (0..n).map(|y| if on(y) { g.clone() } else { Vec::new() }).collect();
                ((l, ms), SheafMap { components: comps })
            })
            .collect();
        SheafOperad { name: p.name.clone(), cap: p.cap(), arities, actions, units, gamma }
    }

    pub fn site(&self) -> &PosetSite {
        self.arities[0].site()
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn arity(&self, l: usize) -> &Sheaf<F> {
        &self.arities[l]
    }

    /// The operad of values at `y`.
    pub fn at(&self, y: usize) -> DgOperad<F> {
        let components: Vec<CochainComplex<F>> = self.arities.iter().map(|f| f.value(y).clone()).collect();
        let actions = self.actions.iter().map(|per| per.iter().map(|m| m.components[y].clone()).collect()).collect();
        let gamma: BTreeMap<(usize, Vec<usize>), Vec<Matrix<F>>> = self.gamma.iter().map(|(k, m)| (k.clone(), m.components[y].clone())).collect();
        DgOperad::from_matrices(&self.name, components, actions, self.units[y].clone(), &gamma)
    }

    /// Point-wise validation plus compatibility of units, actions and compositions
    /// with every restriction along a cover.
    pub fn validate(&self, policy: &Policy) -> Report {
        let site = self.site();
        let points: Vec<DgOperad<F>> = (0..site.len()).map(|y| self.at(y)).collect();
        let mut report = Report::default();
        for (y, p) in points.iter().enumerate() {
            report.absorb(&format!("{}: ", site.name(y)), validate_operad_with(p, policy));
        }
        let cap = policy.cap.min(self.cap);
        let mut t = super::validate::Naturality::new("restrictions");
        for &(a, b) in site.covers() {
            let res = |l: usize, v: Elem<'_, F>| -> SparseVec<F> {
                self.arities[l].restriction(a, b).get(v.0).map_or(Vec::new(), |m| m.apply(v.1))
            };
            t.check(res(1, (0, &self.units[a])) == self.units[b], || format!("unit at {} does not restrict", site.name(a)));
            for l in 0..=cap {
                for s in permutations(l) {
                    for (n, k, x) in basis(self.arities[l].value(a), policy.max_degree) {
                        let lhs = res(l, (n, &points[a].act(l, &s, (n, &x))));
                        let rhs = points[b].act(l, &s, (n, &res(l, (n, &x))));
                        t.check(lhs == rhs, || format!("action of {s:?} on basis vector {k} of degree {n} does not restrict along {} → {}", site.name(a), site.name(b)));
                    }
                }
            }
            for (l, ms) in admissible(cap, true) {
                let m: usize = ms.iter().sum();
                let mut lists = vec![basis(self.arities[l].value(a), policy.max_degree)];
                lists.extend(ms.iter().map(|&mj| basis(self.arities[mj].value(a), policy.max_degree)));
                super::operad::for_each_choice(&lists, &mut |choice| {
                    let total: usize = choice.iter().map(|c| c.0).sum();
                    if total > policy.max_degree {
                        return;
                    }
                    let ys: Vec<(usize, Elem<'_, F>)> = ms.iter().zip(&choice[1..]).map(|(&mj, c)| (mj, (c.0, c.2.as_slice()))).collect();
                    let lhs = res(m, (total, &points[a].compose((choice[0].0, &choice[0].2), &ys)));
                    let rx = res(l, (choice[0].0, &choice[0].2));
                    let rys: Vec<SparseVec<F>> = ms.iter().zip(&choice[1..]).map(|(&mj, c)| res(mj, (c.0, &c.2))).collect();
                    let ryel: Vec<(usize, Elem<'_, F>)> = ms.iter().zip(&choice[1..]).zip(&rys).map(|((&mj, c), v)| (mj, (c.0, v.as_slice()))).collect();
                    let rhs = points[b].compose((choice[0].0, &rx), &ryel);
                    t.check(lhs == rhs, || format!("γ for arities {l}; {ms:?} does not restrict along {} → {}", site.name(a), site.name(b)));
                });
            }
        }
        report.checks.push(t.done());
        report
    }
}

fn basis<F: Field>(c: &CochainComplex<F>, bound: usize) -> Vec<(usize, usize, SparseVec<F>)> {
    (0..=bound.min(c.top_degree())).flat_map(|n| (0..c.dim(n)).map(move |k| (n, k, vec![(k, F::one())]))).collect()
}

/// A sheaf of algebras over a sheaf of operads.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SheafAlgebra<F: Field> {
    pub operad: SheafOperad<F>,
    pub carrier: Sheaf<F>,
    actions: Vec<SheafMap<F>>,
}

impl<F: Field> SheafAlgebra<F> {
    /// The constant sheaf of algebras with value `a`, over the constant sheaf of its operad.
    pub fn constant(site: &PosetSite, a: &OperadAlgebra<F>) -> Self {
        let operad = SheafOperad::constant(site, a.operad());
        let carrier = Sheaf::constant(site, a.carrier());
        let actions = (0..=a.operad().cap()).map(|l| SheafMap { components: vec![a.action(l).to_vec(); site.len()] }).collect();
        SheafAlgebra { operad, carrier, actions }
    }

    /// The algebra of values at `y`.
    pub fn at(&self, y: usize) -> OperadAlgebra<F> {
        let acts: Vec<Vec<Matrix<F>>> = self.actions.iter().map(|m| m.components[y].clone()).collect();
        OperadAlgebra::from_matrices(self.operad.at(y), self.carrier.value(y).clone(), &acts)
    }

    /// Point-wise validation plus compatibility of the actions with the restrictions.
    pub fn validate(&self, policy: &Policy) -> Report {
        let site = self.operad.site();
        let points: Vec<OperadAlgebra<F>> = (0..site.len()).map(|y| self.at(y)).collect();
        let mut report = Report::default();
        for (y, p) in points.iter().enumerate() {
            report.absorb(&format!("{}: ", site.name(y)), validate_algebra_with(p, policy));
        }
        let cap = policy.cap.min(self.operad.cap);
        let mut t = super::validate::Naturality::new("restrictions");
        for &(a, b) in site.covers() {
            let res_p = |l: usize, v: &(usize, usize, SparseVec<F>)| -> SparseVec<F> {
                self.operad.arities[l].restriction(a, b).get(v.0).map_or(Vec::new(), |m| m.apply(&v.2))
            };
            let res_a = |v: &(usize, usize, SparseVec<F>)| -> SparseVec<F> { self.carrier.restriction(a, b).get(v.0).map_or(Vec::new(), |m| m.apply(&v.2)) };
            for l in 0..=cap {
                let mut lists = vec![basis(self.operad.arities[l].value(a), policy.max_degree)];
                lists.extend((0..l).map(|_| basis(self.carrier.value(a), policy.max_degree)));
                super::operad::for_each_choice(&lists, &mut |choice| {
                    let total: usize = choice.iter().map(|c| c.0).sum();
                    if total > policy.max_degree {
                        return;
                    }
                    let args: Vec<Elem<'_, F>> = choice[1..].iter().map(|c| (c.0, c.2.as_slice())).collect();
                    let img = points[a].act((choice[0].0, &choice[0].2), &args);
                    let lhs = res_a(&(total, 0, img));
                    let rx = res_p(l, &choice[0]);
                    let ra: Vec<SparseVec<F>> = choice[1..].iter().map(|c| res_a(c)).collect();
                    let rael: Vec<Elem<'_, F>> = choice[1..].iter().zip(&ra).map(|(c, v)| (c.0, v.as_slice())).collect();
                    let rhs = points[b].act((choice[0].0, &rx), &rael);
                    t.check(lhs == rhs, || format!("action of arity {l} does not restrict along {} → {}", site.name(a), site.name(b)));
                });
            }
        }
        report.checks.push(t.done());
        report
    }
}

/// A sheaf operad transferred to derived sections over an open: arity `l` is
/// `Γ(U, H_X(P(l)))`, and actions, unit and compositions are evaluated on demand
/// through the chosen Künneth engine.
#[derive(Clone, Debug)]
pub struct TransferredOperad<F: Field> {
    engine: Engine,
    source: SheafOperad<F>,
    models: Vec<ChainModel<F>>,
    cache: RefCell<CoefficientCache<F>>,
}

/// `RΓ(U, P)` as an operad through degree `n_max`.
pub fn rgamma_operad<F: Field>(p: &SheafOperad<F>, u: &Open, n_max: usize, engine: Engine) -> Result<TransferredOperad<F>, Error> {
    let models = p.arities.iter().map(|f| ChainModel::build(f, u, n_max)).collect();
    TransferredOperad::new(engine, p.clone(), models)
}

impl<F: Field> TransferredOperad<F> {
    fn new(engine: Engine, source: SheafOperad<F>, models: Vec<ChainModel<F>>) -> Result<Self, Error> {
        if engine == Engine::Tw {
            crate::thomwhitney::require_char_zero::<F>()?;
        }
        Ok(TransferredOperad { engine, source, models, cache: RefCell::new(CoefficientCache::new()) })
    }

    pub fn engine(&self) -> Engine {
        self.engine
    }

    pub fn n_max(&self) -> usize {
        self.models[0].n_max
    }

    pub fn model(&self, l: usize) -> &ChainModel<F> {
        &self.models[l]
    }

    fn arg<'a>(&'a self, l: usize, x: Elem<'a, F>) -> Argument<'a, F> {
        Argument { sheaf: &self.source.arities[l], model: &self.models[l], degree: x.0, vector: x.1 }
    }

    fn eval(&self, args: &[Argument<'_, F>], out: usize, m: &SheafMap<F>) -> SparseVec<F> {
        evaluate_operation(self.engine, args, (&self.source.arities[out], &self.models[out]), m, &mut self.cache.borrow_mut())
            .expect("engine checked at construction")
    }
}

impl<F: Field> Operad<F> for TransferredOperad<F> {
    fn cap(&self) -> usize {
        self.source.cap
    }

    fn component(&self, l: usize) -> &CochainComplex<F> {
        &self.models[l].complex
    }

    fn act(&self, l: usize, sigma: &[usize], x: Elem<'_, F>) -> SparseVec<F> {
        self.eval(&[self.arg(l, x)], l, &self.source.actions[l][perm_rank(sigma)])
    }

    fn unit(&self) -> SparseVec<F> {
        let model = &self.models[1];
        let mut out = Vec::new();
        for (c, chain) in model.chains(0).iter().enumerate() {
            let r0 = model.pos(0, c, 0, 0);
            out.extend(self.source.units[chain[0]].iter().map(|(k, v)| (r0 + k, v.clone())));
        }
        out
    }

    fn compose(&self, x: Elem<'_, F>, ys: &[(usize, Elem<'_, F>)]) -> SparseVec<F> {
        if ys.is_empty() {
            return x.1.to_vec();
        }
        let ms: Vec<usize> = ys.iter().map(|y| y.0).collect();
        let m: usize = ms.iter().sum();
        let Some(g) = self.source.gamma.get(&(ys.len(), ms)) else { return Vec::new() };
        let mut args = vec![self.arg(ys.len(), x)];
        args.extend(ys.iter().map(|&(mj, y)| self.arg(mj, y)));
        self.eval(&args, m, g)
    }
}

/// A sheaf algebra transferred to derived sections over an open.
#[derive(Clone, Debug)]
pub struct TransferredAlgebra<F: Field> {
    operad: TransferredOperad<F>,
    carrier: Sheaf<F>,
    model: ChainModel<F>,
    actions: Vec<SheafMap<F>>,
}

/// `RΓ(U, A)` as an `RΓ(U, P)`-algebra through degree `n_max`.
pub fn rgamma_algebra<F: Field>(a: &SheafAlgebra<F>, u: &Open, n_max: usize, engine: Engine) -> Result<TransferredAlgebra<F>, Error> {
    let operad = rgamma_operad(&a.operad, u, n_max, engine)?;
    let model = ChainModel::build(&a.carrier, u, n_max);
    Ok(TransferredAlgebra { operad, carrier: a.carrier.clone(), model, actions: a.actions.clone() })
}

impl<F: Field> TransferredAlgebra<F> {
    pub fn model(&self) -> &ChainModel<F> {
        &self.model
    }
}

impl<F: Field> Algebra<F> for TransferredAlgebra<F> {
    type Op = TransferredOperad<F>;

    fn operad(&self) -> &TransferredOperad<F> {
        &self.operad
    }

    fn carrier(&self) -> &CochainComplex<F> {
        &self.model.complex
    }

    fn act(&self, x: Elem<'_, F>, args: &[Elem<'_, F>]) -> SparseVec<F> {
        let l = args.len();
        let Some(m) = self.actions.get(l) else { return Vec::new() };
        let mut all = vec![self.operad.arg(l, x)];
        all.extend(args.iter().map(|a| Argument { sheaf: &self.carrier, model: &self.model, degree: a.0, vector: a.1 }));
        evaluate_operation(self.operad.engine, &all, (&self.carrier, &self.model), m, &mut self.operad.cache.borrow_mut())
            .expect("engine checked at construction")
    }
}

/// `ρ_P : P(y) → H_X(P)(y)` arity-wise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhoMorphism<F: Field> {
    pub components: Vec<LevelMap<F>>,
}

impl<F: Field> OperadMap<F> for RhoMorphism<F> {
    fn apply(&self, l: usize, x: Elem<'_, F>) -> SparseVec<F> {
        match self.components.get(l).and_then(|c| c.get(x.0)) {
            Some(m) => m.apply(x.1),
            None => Vec::new(),
        }
    }
}

/// `H_X(P)`: the hypercohomology sheaf arity-wise, with the transferred operad
/// structure on its value `Γ(U_y, H_X(P))` at every point.
#[derive(Clone, Debug)]
pub struct HyperOperad<F: Field> {
    pub source: SheafOperad<F>,
    pub arities: Vec<HyperSheaf<F>>,
    points: Vec<TransferredOperad<F>>,
}

/// Build `H_X(P)` through degree `n_max`.
pub fn hyper_operad<F: Field>(p: &SheafOperad<F>, n_max: usize, engine: Engine) -> Result<HyperOperad<F>, Error> {
    let arities: Vec<HyperSheaf<F>> = p.arities.iter().map(|f| hypersheaf(f, n_max)).collect();
    let points = (0..p.site().len())
        .map(|y| TransferredOperad::new(engine, p.clone(), arities.iter().map(|h| h.models[y].clone()).collect()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(HyperOperad { source: p.clone(), arities, points })
}

impl<F: Field> HyperOperad<F> {
    pub fn at(&self, y: usize) -> &TransferredOperad<F> {
        &self.points[y]
    }

    /// `ρ_P` at `y`.
    pub fn rho(&self, y: usize) -> RhoMorphism<F> {
        RhoMorphism { components: self.arities.iter().map(|h| h.rho.components[y].clone()).collect() }
    }

    /// Point-wise validation with `policy`, plus compatibility of the compositions with
    /// the restrictions of the hypercohomology sheaves on basis elements.
    pub fn validate(&self, policy: &Policy) -> Report {
        let site = self.source.site();
        let mut report = Report::default();
        for (y, p) in self.points.iter().enumerate() {
            report.absorb(&format!("{}: ", site.name(y)), validate_operad_with(p, policy));
        }
        let cap = policy.cap.min(self.source.cap);
        let mut t = super::validate::Naturality::new("restrictions");
        for &(a, b) in site.covers() {
            let res = |l: usize, deg: usize, v: &[(usize, F)]| -> SparseVec<F> {
                self.arities[l].sheaf.restriction(a, b).get(deg).map_or(Vec::new(), |m| m.apply(v))
            };
            for (l, ms) in admissible(cap, true) {
                let m: usize = ms.iter().sum();
                let mut lists = vec![basis(&self.points[a].models[l].complex, policy.max_degree)];
                lists.extend(ms.iter().map(|&mj| basis(&self.points[a].models[mj].complex, policy.max_degree)));
                super::operad::for_each_choice(&lists, &mut |choice| {
                    let total: usize = choice.iter().map(|c| c.0).sum();
                    if total > policy.max_degree {
                        return;
                    }
                    let ys: Vec<(usize, Elem<'_, F>)> = ms.iter().zip(&choice[1..]).map(|(&mj, c)| (mj, (c.0, c.2.as_slice()))).collect();
                    let lhs = res(m, total, &self.points[a].compose((choice[0].0, &choice[0].2), &ys));
                    let rx = res(l, choice[0].0, &choice[0].2);
                    let rys: Vec<SparseVec<F>> = ms.iter().zip(&choice[1..]).map(|(&mj, c)| res(mj, c.0, &c.2)).collect();
                    let ryel: Vec<(usize, Elem<'_, F>)> = ms.iter().zip(&choice[1..]).zip(&rys).map(|((&mj, c), v)| (mj, (c.0, v.as_slice()))).collect();
                    let rhs = self.points[b].compose((choice[0].0, &rx), &ryel);
                    t.check(lhs == rhs, || format!("γ for arities {l}; {ms:?} does not restrict along {} → {}", site.name(a), site.name(b)));
                });
            }
        }
        report.checks.push(t.done());
        report
    }
}

/// `H_X(A)` as a sheaf of `H_X(P)`-algebras, and of `P`-algebras through `ρ_P`.
#[derive(Clone, Debug)]
pub struct HyperAlgebra<F: Field> {
    pub operad: HyperOperad<F>,
    pub carrier: HyperSheaf<F>,
    points: Vec<TransferredAlgebra<F>>,
    sources: Vec<DgOperad<F>>,
    rhos: Vec<RhoMorphism<F>>,
}

/// Build `H_X(A)` through degree `n_max`.
pub fn hyper_algebra<F: Field>(a: &SheafAlgebra<F>, n_max: usize, engine: Engine) -> Result<HyperAlgebra<F>, Error> {
    let operad = hyper_operad(&a.operad, n_max, engine)?;
    let carrier = hypersheaf(&a.carrier, n_max);
    let n = a.operad.site().len();
    let points = (0..n)
        .map(|y| TransferredAlgebra { operad: operad.points[y].clone(), carrier: a.carrier.clone(), model: carrier.models[y].clone(), actions: a.actions.clone() })
        .collect();
    let sources = (0..n).map(|y| a.operad.at(y)).collect();
    let rhos = (0..n).map(|y| operad.rho(y)).collect();
    Ok(HyperAlgebra { operad, carrier, points, sources, rhos })
}

impl<F: Field> HyperAlgebra<F> {
    /// `Γ(U_y, H_X(A))` as a `Γ(U_y, H_X(P))`-algebra.
    pub fn at(&self, y: usize) -> &TransferredAlgebra<F> {
        &self.points[y]
    }

    /// `Γ(U_y, H_X(A))` as a `P(y)`-algebra, through `ρ_P`.
    pub fn over_source(&self, y: usize) -> Pullback<'_, DgOperad<F>, RhoMorphism<F>, TransferredAlgebra<F>> {
        Pullback { operad: &self.sources[y], map: &self.rhos[y], algebra: &self.points[y] }
    }

    /// `ρ_P` at `y` and the operads it relates.
    pub fn rho(&self, y: usize) -> (&DgOperad<F>, &RhoMorphism<F>, &TransferredOperad<F>) {
        (&self.sources[y], &self.rhos[y], &self.operad.points[y])
    }
}
