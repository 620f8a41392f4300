use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;

use super::{admissible, block_permutation, block_sum, generators, koszul_odd, Algebra, Elem, Operad, OperadMap};
use crate::combi::{compositions, perm_compose, permutations};
use crate::field::Field;
use crate::godement::Engine;
use crate::homalg::vector::{add, axpy, scale, sub};
use crate::homalg::{CochainComplex, SparseVec, Subspace};

/// How a constraint is checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mode {
    /// On all basis elements, as an identity of cochains.
    Exact,
    /// On cocycle representatives of cohomology, as an identity of cochains.
    Cocycles,
    /// On cocycle representatives, up to coboundaries.
    Cohomology,
    /// Not checked.
    Skip,
}

/// Which constraints to check, and how.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Policy {
    pub cap: usize,
    /// Largest total degree of inputs for basis checks.
    pub max_degree: usize,
    /// Largest total degree for checks on cohomology representatives.
    pub cohomology_degree: usize,
    pub chain: Mode,
    pub action: Mode,
    pub unit: Mode,
    pub slot_equivariance: Mode,
    /// Permutations of the top slot; for algebras, permutations of the inputs.
    pub top_equivariance: Mode,
    pub associativity: Mode,
}

impl Policy {
    /// Every constraint on basis elements.
    pub fn exact(cap: usize, max_degree: usize) -> Self {
        Policy {
            cap,
            max_degree,
            cohomology_degree: max_degree,
            chain: Mode::Exact,
            action: Mode::Exact,
            unit: Mode::Exact,
            slot_equivariance: Mode::Exact,
            top_equivariance: Mode::Exact,
            associativity: Mode::Exact,
        }
    }

    /// Checks for structures transferred to models exact through `n_max`.
    ///
    /// Alexander–Whitney transfers are not symmetric, so every constraint that
    /// reorders inputs (top-slot equivariance, associativity, algebra equivariance)
    /// holds only up to homotopy. Thom–Whitney transfers are strictly equivariant
    /// but only homotopy associative. The weak constraints are checked on cohomology.
    pub fn transferred(engine: Engine, cap: usize, n_max: usize) -> Self {
        let mut p = Self::exact(cap, n_max + 1);
        p.cohomology_degree = n_max;
        p.associativity = Mode::Cohomology;
        if engine == Engine::Aw {
            p.top_equivariance = Mode::Cohomology;
        }
        p
    }

    fn bound(&self, mode: Mode) -> usize {
        if mode == Mode::Exact {
            self.max_degree
        } else {
            self.cohomology_degree
        }
    }
}

/// Outcome of one family of constraints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    pub axiom: String,
    pub mode: Mode,
    pub cases: usize,
    /// The first violated instance.
    pub failure: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<AxiomCheck>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.failure.is_none())
    }

    pub fn failures(&self) -> Vec<&AxiomCheck> {
        self.checks.iter().filter(|c| c.failure.is_some()).collect()
    }

    pub fn cases(&self) -> usize {
        self.checks.iter().map(|c| c.cases).sum()
    }

    /// Append the checks of `other`, prefixing their names.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.axiom = format!("{prefix}{}", c.axiom);
            self.checks.push(c);
        }
    }
}

type Elems<F> = Vec<(usize, SparseVec<F>)>;

/// Test elements of a complex in a mode, through degree `bound`.
fn elements<F: Field>(c: &CochainComplex<F>, mode: Mode, bound: usize) -> Elems<F> {
    let mut out = Vec::new();
    match mode {
        Mode::Skip => {}
        Mode::Exact => {
            for n in 0..=bound.min(c.top_degree()) {
                out.extend((0..c.dim(n)).map(|k| (n, vec![(k, F::one())])));
            }
        }
        Mode::Cocycles | Mode::Cohomology => {
            for n in 0..=bound.min(c.reliable_top()) {
                let h = c.cohomology(n);
                out.extend(h.reps.basis().iter().map(|v| (n, v.clone())));
            }
        }
    }
    out
}

/// Equality of cochains, or of classes in [`Mode::Cohomology`].
struct Comparer<F: Field> {
    boundaries: RefCell<BTreeMap<(usize, usize, usize), Subspace<F>>>,
}

impl<F: Field> Comparer<F> {
    fn new() -> Self {
        Comparer { boundaries: RefCell::new(BTreeMap::new()) }
    }

    /// `key` identifies the complex `c` (e.g. its arity).
    fn same(&self, mode: Mode, key: (usize, usize), c: &CochainComplex<F>, n: usize, lhs: &[(usize, F)], rhs: &[(usize, F)]) -> bool {
        let diff = sub(lhs, rhs);
        if diff.is_empty() {
            return true;
        }
        if mode != Mode::Cohomology || n == 0 {
            return false;
        }
        let mut b = self.boundaries.borrow_mut();
        let s = b.entry((key.0, key.1, n)).or_insert_with(|| Subspace::image(&c.diff(n - 1)));
        s.contains(&diff)
    }
}

/// Enumerate tuples with one element per list and total degree `≤ bound`;
/// `f` returns `false` to stop. Returns `false` when stopped.
fn tuples<'b, F: Field>(lists: &[&'b Elems<F>], bound: usize, f: &mut dyn FnMut(&[&'b (usize, SparseVec<F>)]) -> bool) -> bool {
    fn rec<'b, F: Field>(
        lists: &[&'b Elems<F>],
        bound: usize,
        cur: &mut Vec<&'b (usize, SparseVec<F>)>,
        used: usize,
        f: &mut dyn FnMut(&[&'b (usize, SparseVec<F>)]) -> bool,
    ) -> bool {
        if cur.len() == lists.len() {
            return f(cur);
        }
        for e in lists[cur.len()].iter() {
            if used + e.0 > bound {
                continue;
            }
            cur.push(e);
            let go = rec(lists, bound, cur, used + e.0, f);
            cur.pop();
            if !go {
                return false;
            }
        }
        true
    }
    rec(lists, bound, &mut Vec::new(), 0, f)
}

fn el<F: Field>(e: &(usize, SparseVec<F>)) -> Elem<'_, F> {
    (e.0, e.1.as_slice())
}

/// Running state of one axiom.
struct Tally {
    axiom: String,
    mode: Mode,
    cases: usize,
    failure: Option<String>,
}

impl Tally {
    fn new(axiom: &str, mode: Mode) -> Self {
        Tally { axiom: axiom.into(), mode, cases: 0, failure: None }
    }

    /// Record one case; returns whether to continue.
    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) -> bool {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(witness());
        }
        ok
    }

    fn done(self) -> AxiomCheck {
        AxiomCheck { axiom: self.axiom, mode: self.mode, cases: self.cases, failure: self.failure }
    }
}

fn degrees<F: Field>(t: &[&(usize, SparseVec<F>)]) -> Vec<usize> {
    t.iter().map(|e| e.0).collect()
}

fn diff_of<F: Field>(c: &CochainComplex<F>, e: &(usize, SparseVec<F>)) -> Option<(usize, SparseVec<F>)> {
    let n = e.0;
    if n >= c.top_degree() {
        return None;
    }
    Some((n + 1, c.diff(n).apply(&e.1)))
}

/// Validate an explicit operad exhaustively within its cap.
pub fn validate_operad<F: Field>(p: &super::DgOperad<F>) -> Report {
    let top = p.components().iter().map(|c| c.top_degree()).max().unwrap_or(0);
    validate_operad_with(p, &Policy::exact(p.cap(), top))
}

/// Check the operad constraints selected by `policy`.
pub fn validate_operad_with<F: Field, O: Operad<F>>(p: &O, policy: &Policy) -> Report {
    let cap = policy.cap.min(p.cap());
    let cmp = Comparer::new();
    let mut checks = Vec::new();
    let comp = |l: usize| p.component(l);
    let els = |mode: Mode| -> Vec<Elems<F>> { (0..=cap).map(|l| elements(comp(l), mode, policy.bound(mode))).collect() };
    let configs = admissible(cap, true);

    // chain maps
    if policy.chain != Mode::Skip {
        let mode = Mode::Exact;
        let e = els(mode);
        let mut t = Tally::new("differential", mode);
        'outer: for l in 0..=cap {
            for s in generators(l) {
                for x in &e[l] {
                    let lhs = match diff_of(comp(l), &(x.0, p.act(l, &s, el(x)))) {
                        Some(v) => v.1,
                        None => continue,
                    };
                    let dx = diff_of(comp(l), x).expect("checked above");
                    let rhs = p.act(l, &s, el(&dx));
                    if !t.record(lhs == rhs, || format!("d(x·σ) ≠ (dx)·σ in arity {l}, σ = {s:?}, x = {:?}", x)) {
                        break 'outer;
                    }
                }
            }
        }
        for (l, ms) in &configs {
            if t.failure.is_some() {
                break;
            }
            let m: usize = ms.iter().sum();
            let mut lists: Vec<&Elems<F>> = vec![&e[*l]];
            lists.extend(ms.iter().map(|&mj| &e[mj]));
            tuples(&lists, policy.max_degree.saturating_sub(1), &mut |tup| {
                let total: usize = tup.iter().map(|x| x.0).sum();
                if total >= comp(m).top_degree() {
                    return true;
                }
                let ys: Vec<(usize, Elem<'_, F>)> = ms.iter().zip(&tup[1..]).map(|(&mj, y)| (mj, el(y))).collect();
                let g = p.compose(el(tup[0]), &ys);
                let lhs = comp(m).diff(total).apply(&g);
                let mut rhs: SparseVec<F> = Vec::new();
                if let Some(dx) = diff_of(comp(*l), tup[0]) {
                    rhs = add(&rhs, &p.compose(el(&dx), &ys));
                }
                let mut sgn = tup[0].0;
                for j in 0..ms.len() {
                    if let Some(dy) = diff_of(comp(ms[j]), tup[1 + j]) {
                        let mut ys2 = ys.clone();
                        ys2[j] = (ms[j], el(&dy));
                        rhs = axpy(&rhs, &F::sign(sgn), &p.compose(el(tup[0]), &ys2));
                    }
                    sgn += tup[1 + j].0;
                }
                t.record(lhs == rhs, || format!("γ is not a chain map for arities {l}; {ms:?} at degrees {:?}", degrees(tup)))
            });
        }
        checks.push(t.done());
    }

    // right action
    if policy.action != Mode::Skip {
        let mode = policy.action;
        let e = els(mode);
        let mut t = Tally::new("right action", mode);
        'outer: for l in 0..=cap {
            let id: Vec<usize> = (0..l).collect();
            for x in &e[l] {
                let ok = cmp.same(mode, (0, l), comp(l), x.0, &p.act(l, &id, el(x)), &x.1);
                if !t.record(ok, || format!("identity acts nontrivially in arity {l} on {x:?}")) {
                    break 'outer;
                }
                for s in permutations(l) {
                    let xs = p.act(l, &s, el(x));
                    for g in generators(l) {
                        let lhs = p.act(l, &g, (x.0, &xs));
                        let rhs = p.act(l, &perm_compose(&s, &g), el(x));
                        if !t.record(cmp.same(mode, (0, l), comp(l), x.0, &lhs, &rhs), || format!("(x·σ)·τ ≠ x·(στ) in arity {l}, σ = {s:?}, τ = {g:?}")) {
                            break 'outer;
                        }
                    }
                }
            }
        }
        checks.push(t.done());
    }

    // unit
    if policy.unit != Mode::Skip && cap >= 1 {
        let mode = policy.unit;
        let e = els(mode);
        let unit = p.unit();
        let mut t = Tally::new("unit", mode);
        'outer: for m in 0..=cap {
            for y in &e[m] {
                let lhs = p.compose((0, &unit), &[(m, el(y))]);
                if !t.record(cmp.same(mode, (0, m), comp(m), y.0, &lhs, &y.1), || format!("γ(1; y) ≠ y in arity {m} for {y:?}")) {
                    break 'outer;
                }
            }
        }
        for l in 1..=cap {
            if t.failure.is_some() {
                break;
            }
            let ys: Vec<(usize, Elem<'_, F>)> = (0..l).map(|_| (1, (0, unit.as_slice()))).collect();
            for x in &e[l] {
                let lhs = p.compose(el(x), &ys);
                if !t.record(cmp.same(mode, (0, l), comp(l), x.0, &lhs, &x.1), || format!("γ(x; 1, …, 1) ≠ x in arity {l} for {x:?}")) {
                    break;
                }
            }
        }
        checks.push(t.done());
    }

    // equivariance in the inner slots
    if policy.slot_equivariance != Mode::Skip {
        let mode = policy.slot_equivariance;
        let e = els(mode);
        let mut t = Tally::new("inner equivariance", mode);
        for (l, ms) in &configs {
            if t.failure.is_some() {
                break;
            }
            let m: usize = ms.iter().sum();
            let mut lists: Vec<&Elems<F>> = vec![&e[*l]];
            lists.extend(ms.iter().map(|&mj| &e[mj]));
            tuples(&lists, policy.bound(mode), &mut |tup| {
                let total: usize = tup.iter().map(|x| x.0).sum();
                let ys: Vec<(usize, Elem<'_, F>)> = ms.iter().zip(&tup[1..]).map(|(&mj, y)| (mj, el(y))).collect();
                let base = p.compose(el(tup[0]), &ys);
                for j in 0..ms.len() {
                    for tau in generators(ms[j]) {
                        let yt = p.act(ms[j], &tau, el(tup[1 + j]));
                        let mut ys2 = ys.clone();
                        ys2[j] = (ms[j], (tup[1 + j].0, &yt));
                        let lhs = p.compose(el(tup[0]), &ys2);
                        let ids: Vec<Vec<usize>> = ms.iter().map(|&mk| (0..mk).collect()).collect();
                        let mut blocks: Vec<&[usize]> = ids.iter().map(|v| v.as_slice()).collect();
                        blocks[j] = &tau;
                        let rhs = p.act(m, &block_sum(&blocks), (total, &base));
                        if !t.record(cmp.same(mode, (0, m), comp(m), total, &lhs, &rhs), || {
                            format!("γ(x; …, y·τ, …) ≠ γ(x; y)·τ for arities {l}; {ms:?}, slot {j}, τ = {tau:?}, degrees {:?}", degrees(tup))
                        }) {
                            return false;
                        }
                    }
                }
                true
            });
        }
        checks.push(t.done());
    }

    // equivariance in the outer slot
    if policy.top_equivariance != Mode::Skip {
        let mode = policy.top_equivariance;
        let e = els(mode);
        let mut t = Tally::new("outer equivariance", mode);
        for (l, ms) in &configs {
            if t.failure.is_some() {
                break;
            }
            let m: usize = ms.iter().sum();
            let mut lists: Vec<&Elems<F>> = vec![&e[*l]];
            lists.extend(ms.iter().map(|&mj| &e[mj]));
            tuples(&lists, policy.bound(mode), &mut |tup| {
                let total: usize = tup.iter().map(|x| x.0).sum();
                let ys: Vec<(usize, Elem<'_, F>)> = ms.iter().zip(&tup[1..]).map(|(&mj, y)| (mj, el(y))).collect();
                let ydeg: Vec<usize> = tup[1..].iter().map(|y| y.0).collect();
                for s in generators(*l) {
                    let xs = p.act(*l, &s, el(tup[0]));
                    let lhs = p.compose((tup[0].0, &xs), &ys);
                    let inv = crate::combi::perm_inverse(&s);
                    let moved: Vec<(usize, Elem<'_, F>)> = (0..*l).map(|j| ys[inv[j]]).collect();
                    let mut rhs = p.act(m, &block_permutation(&s, ms), (total, &p.compose(el(tup[0]), &moved)));
                    if koszul_odd(&s, &ydeg) {
                        rhs = scale(&rhs, &-F::one());
                    }
                    if !t.record(cmp.same(mode, (0, m), comp(m), total, &lhs, &rhs), || {
                        format!("γ(x·σ; y) ≠ ±γ(x; σy)·σ for arities {l}; {ms:?}, σ = {s:?}, degrees {:?}", degrees(tup))
                    }) {
                        return false;
                    }
                }
                true
            });
        }
        checks.push(t.done());
    }

    // associativity
    if policy.associativity != Mode::Skip {
        let mode = policy.associativity;
        let e = els(mode);
        let mut t = Tally::new("associativity", mode);
        'outer: for (l, ms) in &configs {
            let m: usize = ms.iter().sum();
            for k in 0..=cap {
                for ks in compositions(k, m) {
                    let mut lists: Vec<&Elems<F>> = vec![&e[*l]];
                    lists.extend(ms.iter().map(|&mj| &e[mj]));
                    lists.extend(ks.iter().map(|&kj| &e[kj]));
                    let go = tuples(&lists, policy.bound(mode), &mut |tup| {
                        let total: usize = tup.iter().map(|x| x.0).sum();
                        let x = tup[0];
                        let ys = &tup[1..=*l];
                        let zs = &tup[1 + *l..];
                        let yel: Vec<(usize, Elem<'_, F>)> = ms.iter().zip(ys).map(|(&mj, y)| (mj, el(y))).collect();
                        let zel: Vec<(usize, Elem<'_, F>)> = ks.iter().zip(zs).map(|(&kj, z)| (kj, el(z))).collect();
                        let xy = p.compose(el(x), &yel);
                        let xy_deg = x.0 + ys.iter().map(|y| y.0).sum::<usize>();
                        let lhs = p.compose((xy_deg, &xy), &zel);
                        let mut start = 0;
                        let mut ws: Vec<(usize, usize, SparseVec<F>)> = Vec::with_capacity(*l);
                        let mut sign = 0usize;
                        let mut before = 0usize;
                        for (j, y) in ys.iter().enumerate() {
                            let block = &zel[start..start + ms[j]];
                            let zdeg: usize = zs[start..start + ms[j]].iter().map(|z| z.0).sum();
                            let kj: usize = ks[start..start + ms[j]].iter().sum();
                            start += ms[j];
                            sign += y.0 * before;
                            before += zdeg;
                            ws.push((kj, y.0 + zdeg, p.compose(el(y), block)));
                        }
                        let wel: Vec<(usize, Elem<'_, F>)> = ws.iter().map(|(kj, d, w)| (*kj, (*d, w.as_slice()))).collect();
                        let mut rhs = p.compose(el(x), &wel);
                        if sign % 2 == 1 {
                            rhs = scale(&rhs, &-F::one());
                        }
                        t.record(cmp.same(mode, (0, k), comp(k), total, &lhs, &rhs), || {
                            format!("associativity fails for arities {l}; {ms:?}; {ks:?} at degrees {:?}", degrees(tup))
                        })
                    });
                    if !go {
                        break 'outer;
                    }
                }
            }
        }
        checks.push(t.done());
    }
    Report { checks }
}

/// Check the algebra constraints selected by `policy`.
pub fn validate_algebra_with<F: Field, A: Algebra<F>>(a: &A, policy: &Policy) -> Report {
    let p = a.operad();
    let cap = policy.cap.min(p.cap());
    let c = a.carrier();
    let cmp = Comparer::new();
    let key = (1, 0);
    let mut checks = Vec::new();
    let pels = |mode: Mode| -> Vec<Elems<F>> { (0..=cap).map(|l| elements(p.component(l), mode, policy.bound(mode))).collect() };

    if policy.chain != Mode::Skip {
        let mode = Mode::Exact;
        let e = pels(mode);
        let ae = elements(c, mode, policy.max_degree);
        let mut t = Tally::new("differential", mode);
        for l in 0..=cap {
            let mut lists: Vec<&Elems<F>> = vec![&e[l]];
            lists.extend((0..l).map(|_| &ae));
            let go = tuples(&lists, policy.max_degree.saturating_sub(1), &mut |tup| {
                let total: usize = tup.iter().map(|x| x.0).sum();
                if total >= c.top_degree() {
                    return true;
                }
                let args: Vec<Elem<'_, F>> = tup[1..].iter().map(|x| el(x)).collect();
                let lhs = c.diff(total).apply(&a.act(el(tup[0]), &args));
                let mut rhs: SparseVec<F> = Vec::new();
                if let Some(dx) = diff_of(p.component(l), tup[0]) {
                    rhs = a.act(el(&dx), &args);
                }
                let mut sgn = tup[0].0;
                for j in 0..l {
                    if let Some(da) = diff_of(c, tup[1 + j]) {
                        let mut args2 = args.clone();
                        args2[j] = el(&da);
                        rhs = axpy(&rhs, &F::sign(sgn), &a.act(el(tup[0]), &args2));
                    }
                    sgn += tup[1 + j].0;
                }
                t.record(lhs == rhs, || format!("action is not a chain map in arity {l} at degrees {:?}", degrees(tup)))
            });
            if !go {
                break;
            }
        }
        checks.push(t.done());
    }

    if policy.unit != Mode::Skip && cap >= 1 {
        let mode = policy.unit;
        let unit = p.unit();
        let mut t = Tally::new("unit", mode);
        for x in elements(c, mode, policy.bound(mode)) {
            let lhs = a.act((0, &unit), &[el(&x)]);
            if !t.record(cmp.same(mode, key, c, x.0, &lhs, &x.1), || format!("1 acts nontrivially on {x:?}")) {
                break;
            }
        }
        checks.push(t.done());
    }

    if policy.top_equivariance != Mode::Skip {
        let mode = policy.top_equivariance;
        let e = pels(mode);
        let ae = elements(c, mode, policy.bound(mode));
        let mut t = Tally::new("equivariance", mode);
        for l in 2..=cap {
            let mut lists: Vec<&Elems<F>> = vec![&e[l]];
            lists.extend((0..l).map(|_| &ae));
            let go = tuples(&lists, policy.bound(mode), &mut |tup| {
                let total: usize = tup.iter().map(|x| x.0).sum();
                let args: Vec<Elem<'_, F>> = tup[1..].iter().map(|x| el(x)).collect();
                let adeg: Vec<usize> = tup[1..].iter().map(|x| x.0).collect();
                for s in generators(l) {
                    let xs = p.act(l, &s, el(tup[0]));
                    let lhs = a.act((tup[0].0, &xs), &args);
                    let mut moved = args.clone();
                    for (i, arg) in args.iter().enumerate() {
                        moved[s[i]] = *arg;
                    }
                    let mut rhs = a.act(el(tup[0]), &moved);
                    if koszul_odd(&s, &adeg) {
                        rhs = scale(&rhs, &-F::one());
                    }
                    if !t.record(cmp.same(mode, key, c, total, &lhs, &rhs), || format!("α(x·σ ⊗ a) ≠ α(x ⊗ σa) in arity {l}, σ = {s:?}, degrees {:?}", degrees(tup))) {
                        return false;
                    }
                }
                true
            });
            if !go {
                break;
            }
        }
        checks.push(t.done());
    }

    if policy.associativity != Mode::Skip {
        let mode = policy.associativity;
        let e = pels(mode);
        let ae = elements(c, mode, policy.bound(mode));
        let mut t = Tally::new("associativity", mode);
        'outer: for (l, ms) in admissible(cap, true) {
            let m: usize = ms.iter().sum();
            let mut lists: Vec<&Elems<F>> = vec![&e[l]];
            lists.extend(ms.iter().map(|&mj| &e[mj]));
            lists.extend((0..m).map(|_| &ae));
            let go = tuples(&lists, policy.bound(mode), &mut |tup| {
                let total: usize = tup.iter().map(|x| x.0).sum();
                let x = tup[0];
                let ys = &tup[1..=l];
                let args: Vec<Elem<'_, F>> = tup[1 + l..].iter().map(|x| el(x)).collect();
                let yel: Vec<(usize, Elem<'_, F>)> = ms.iter().zip(ys).map(|(&mj, y)| (mj, el(y))).collect();
                let xy = p.compose(el(x), &yel);
                let xy_deg = x.0 + ys.iter().map(|y| y.0).sum::<usize>();
                let lhs = a.act((xy_deg, &xy), &args);
                let mut start = 0;
                let mut ws: Vec<(usize, SparseVec<F>)> = Vec::with_capacity(l);
                let mut sign = 0usize;
                let mut before = 0usize;
                for (j, y) in ys.iter().enumerate() {
                    let block = &args[start..start + ms[j]];
                    let adeg: usize = block.iter().map(|a| a.0).sum();
                    start += ms[j];
                    sign += y.0 * before;
                    before += adeg;
                    ws.push((y.0 + adeg, a.act(el(y), block)));
                }
                let wel: Vec<Elem<'_, F>> = ws.iter().map(|(d, w)| (*d, w.as_slice())).collect();
                let mut rhs = a.act(el(x), &wel);
                if sign % 2 == 1 {
                    rhs = scale(&rhs, &-F::one());
                }
                t.record(cmp.same(mode, key, c, total, &lhs, &rhs), || format!("associativity fails for arities {l}; {ms:?} at degrees {:?}", degrees(tup)))
            });
            if !go {
                break 'outer;
            }
        }
        checks.push(t.done());
    }
    Report { checks }
}

/// Validate an explicit algebra exhaustively within its operad's cap.
pub fn validate_algebra<F: Field>(a: &super::OperadAlgebra<F>) -> Report {
    let top = a.carrier().top_degree().max(a.operad().components().iter().map(|c| c.top_degree()).max().unwrap_or(0));
    validate_algebra_with(a, &Policy::exact(a.operad().cap(), top))
}

/// Check that `f : P → Q` commutes with differentials, actions, units and compositions.
pub fn validate_morphism_with<F: Field, P: Operad<F>, Q: Operad<F>, M: OperadMap<F>>(f: &M, p: &P, q: &Q, policy: &Policy) -> Report {
    let cap = policy.cap.min(p.cap()).min(q.cap());
    let cmp = Comparer::new();
    let mut checks = Vec::new();
    let pels = |mode: Mode| -> Vec<Elems<F>> { (0..=cap).map(|l| elements(p.component(l), mode, policy.bound(mode))).collect() };

    if policy.chain != Mode::Skip {
        let mut t = Tally::new("differential", Mode::Exact);
        'outer: for (l, xs) in pels(Mode::Exact).iter().enumerate() {
            for x in xs {
                let Some(dx) = diff_of(p.component(l), x) else { continue };
                let lhs = q.component(l).diff(x.0).apply(&f.apply(l, el(x)));
                let rhs = f.apply(l, el(&dx));
                if !t.record(lhs == rhs, || format!("f is not a chain map in arity {l} on {x:?}")) {
                    break 'outer;
                }
            }
        }
        checks.push(t.done());
    }
    if policy.action != Mode::Skip {
        let mode = policy.action;
        let mut t = Tally::new("equivariance", mode);
        'outer: for (l, xs) in pels(mode).iter().enumerate() {
            for x in xs {
                let fx = f.apply(l, el(x));
                for s in generators(l) {
                    let lhs = f.apply(l, (x.0, &p.act(l, &s, el(x))));
                    let rhs = q.act(l, &s, (x.0, &fx));
                    if !t.record(cmp.same(mode, (2, l), q.component(l), x.0, &lhs, &rhs), || format!("f(x·σ) ≠ f(x)·σ in arity {l}, σ = {s:?}")) {
                        break 'outer;
                    }
                }
            }
        }
        checks.push(t.done());
    }
    if policy.unit != Mode::Skip && cap >= 1 {
        let mode = policy.unit;
        let mut t = Tally::new("unit", mode);
        let lhs = f.apply(1, (0, &p.unit()));
        t.record(cmp.same(mode, (2, 1), q.component(1), 0, &lhs, &q.unit()), || String::from("f(1) ≠ 1"));
        checks.push(t.done());
    }
    if policy.associativity != Mode::Skip {
        let mode = policy.associativity;
        let e = pels(mode);
        let mut t = Tally::new("composition", mode);
        for (l, ms) in admissible(cap, true) {
            let m: usize = ms.iter().sum();
            let mut lists: Vec<&Elems<F>> = vec![&e[l]];
            lists.extend(ms.iter().map(|&mj| &e[mj]));
            let go = tuples(&lists, policy.bound(mode), &mut |tup| {
                let total: usize = tup.iter().map(|x| x.0).sum();
                let ys: Vec<(usize, Elem<'_, F>)> = ms.iter().zip(&tup[1..]).map(|(&mj, y)| (mj, el(y))).collect();
                let lhs = f.apply(m, (total, &p.compose(el(tup[0]), &ys)));
                let fx = f.apply(l, el(tup[0]));
                let fys: Vec<SparseVec<F>> = ms.iter().zip(&tup[1..]).map(|(&mj, y)| f.apply(mj, el(y))).collect();
                let fyel: Vec<(usize, Elem<'_, F>)> = ms.iter().zip(&tup[1..]).zip(&fys).map(|((&mj, y), v)| (mj, (y.0, v.as_slice()))).collect();
                let rhs = q.compose((tup[0].0, &fx), &fyel);
                t.record(cmp.same(mode, (2, m), q.component(m), total, &lhs, &rhs), || format!("f(γ(x; y)) ≠ γ(f x; f y) for arities {l}; {ms:?} at degrees {:?}", degrees(tup)))
            });
            if !go {
                break;
            }
        }
        checks.push(t.done());
    }
    Report { checks }
}

/// A family of exact compatibility checks.
pub(crate) struct Naturality(Tally);

impl Naturality {
    pub(crate) fn new(axiom: &str) -> Self {
        Naturality(Tally::new(axiom, Mode::Exact))
    }

    pub(crate) fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.0.record(ok, witness);
    }

    pub(crate) fn done(self) -> AxiomCheck {
        self.0.done()
    }
}
