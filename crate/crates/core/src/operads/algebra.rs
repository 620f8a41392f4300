use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::operad::EndomorphismOperad;
use super::{koszul_odd, outer, Algebra, DgOperad, Elem, Operad, OperadMap, OperadMorphism};
use crate::combi::permutations;
use crate::field::Field;
use crate::homalg::{ChainMap, CochainComplex, Matrix, MultiTensorLayout, SparseVec, TensorLayout};
use crate::Error;

/// An algebra over an explicit operad: `α_l : P(l) ⊗ A^{⊗l} → A` for `l ≤ cap`,
/// stored as matrices on the left-nested tensor product through the top degree of `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperadAlgebra<F: Field> {
    operad: DgOperad<F>,
    carrier: CochainComplex<F>,
    actions: Vec<(MultiTensorLayout, Vec<Matrix<F>>)>,
}

impl<F: Field> OperadAlgebra<F> {
    /// Assemble from a function on basis tuples `[(deg, idx) of x, (deg, idx) of a_0, …]`.
    pub fn from_fn(operad: DgOperad<F>, carrier: CochainComplex<F>, mut f: impl FnMut(usize, &[(usize, usize)]) -> SparseVec<F>) -> Self {
        let top = carrier.top_degree();
        let actions = (0..=operad.cap())
            .map(|l| {
                let mut dims: Vec<&[usize]> = vec![operad.components()[l].dims()];
                dims.extend((0..l).map(|_| carrier.dims()));
                let layout = MultiTensorLayout::new(&dims);
                let comps = (0..=top)
                    .map(|n| {
                        let cols: Vec<SparseVec<F>> = (0..layout.dim(n)).map(|k| f(l, &layout.split(n, k))).collect();
                        Matrix::from_columns(carrier.dim(n), layout.dim(n), &cols)
                    })
                    .collect();
                (layout, comps)
            })
            .collect();
        OperadAlgebra { operad, carrier, actions }
    }

    pub(crate) fn from_matrices(operad: DgOperad<F>, carrier: CochainComplex<F>, actions: &[Vec<Matrix<F>>]) -> Self {
        let top = carrier.top_degree();
        let actions = (0..=operad.cap())
            .map(|l| {
                let mut dims: Vec<&[usize]> = vec![operad.components()[l].dims()];
                dims.extend((0..l).map(|_| carrier.dims()));
                let layout = MultiTensorLayout::new(&dims);
                let comps = (0..=top)
                    .map(|n| match actions.get(l).and_then(|a| a.get(n)) {
                        Some(mat) if mat.nrows() == carrier.dim(n) && mat.ncols() == layout.dim(n) => mat.clone(),
                        _ => Matrix::zeros(carrier.dim(n), layout.dim(n)),
                    })
                    .collect();
                (layout, comps)
            })
            .collect();
        OperadAlgebra { operad, carrier, actions }
    }

    /// The Com-algebra (uCom-algebra when `unit` is given) of a commutative product
    /// `mu : A ⊗ A → A`: `α_l(1 ⊗ a_0 ⊗ … ⊗ a_{l-1}) = (…(a_0 a_1)…) a_{l-1}`.
    pub fn commutative(carrier: &CochainComplex<F>, mu: &ChainMap<F>, unit: Option<SparseVec<F>>, cap: usize) -> Result<Self, Error> {
        check_product(carrier, mu)?;
        let operad = if unit.is_some() { DgOperad::ucom(cap) } else { DgOperad::com(cap) };
        let layout2 = TensorLayout::new(carrier.dims(), carrier.dims());
        let basis = basis_elements(carrier);
        Ok(Self::from_fn(operad, carrier.clone(), |l, parts| {
            if l == 0 {
                return unit.clone().unwrap_or_default();
            }
            let args: Vec<(usize, SparseVec<F>)> = parts[1..].iter().map(|&(d, i)| (d, basis[d][i].clone())).collect();
            iterated_product(carrier, mu, &layout2, &args).1
        }))
    }

    /// The Ass-algebra of an associative product: `α_l(e_π ⊗ a) = μ_l(L(π) a)`, where
    /// `L(π)` moves `a_i` to position `π(i)` with the Koszul sign.
    pub fn associative(carrier: &CochainComplex<F>, mu: &ChainMap<F>, cap: usize) -> Result<Self, Error> {
        check_product(carrier, mu)?;
        let perms: Vec<Vec<Vec<usize>>> = (0..=cap).map(permutations).collect();
        let layout2 = TensorLayout::new(carrier.dims(), carrier.dims());
        let basis = basis_elements(carrier);
        Ok(Self::from_fn(DgOperad::ass(cap), carrier.clone(), |l, parts| {
            if l == 0 {
                return Vec::new();
            }
            let pi = &perms[l][parts[0].1];
            let args: Vec<(usize, SparseVec<F>)> = parts[1..].iter().map(|&(d, i)| (d, basis[d][i].clone())).collect();
            let mut moved = args.clone();
            for (i, a) in args.iter().enumerate() {
                moved[pi[i]] = a.clone();
            }
            let degs: Vec<usize> = args.iter().map(|a| a.0).collect();
            let v = iterated_product(carrier, mu, &layout2, &moved).1;
            if koszul_odd(pi, &degs) {
                crate::homalg::vector::scale(&v, &-F::one())
            } else {
                v
            }
        }))
    }

    pub fn operad(&self) -> &DgOperad<F> {
        &self.operad
    }

    pub fn carrier(&self) -> &CochainComplex<F> {
        &self.carrier
    }

    /// Components of `α_l`.
    pub fn action(&self, l: usize) -> &[Matrix<F>] {
        &self.actions[l].1
    }

    /// Replace `α_l`; used to build negative controls.
    pub fn with_action(mut self, l: usize, components: Vec<Matrix<F>>) -> Result<Self, Error> {
        let old = &self.actions[l].1;
        if old.len() != components.len() || old.iter().zip(&components).any(|(a, b)| a.nrows() != b.nrows() || a.ncols() != b.ncols()) {
            return Err(Error::DimensionMismatch { what: "algebra action", degree: 0 });
        }
        self.actions[l].1 = components;
        Ok(self)
    }

    /// The structure morphism `P → End_A`, `x ↦ α(x ⊗ -)`.
    ///
    /// Fails when some `α(x ⊗ -)` of degree 0 is not a chain map, which happens
    /// exactly when `P(l)^0 → P(l)^1` does not vanish on `x`.
    pub fn structure_morphism(&self, end: &EndomorphismOperad<F>) -> Result<OperadMorphism<F>, Error> {
        let mut components = Vec::new();
        for (l, c) in self.operad.components().iter().enumerate() {
            let tgt = &end.operad.components()[l];
            let mut per = Vec::new();
            for n in 0..=c.top_degree() {
                let rows = if n <= tgt.top_degree() { tgt.dim(n) } else { 0 };
                let mut cols = Vec::with_capacity(c.dim(n));
                for k in 0..c.dim(n) {
                    let x = vec![(k, F::one())];
                    if n > tgt.top_degree() {
                        cols.push(Vec::new());
                        continue;
                    }
                    let basis = basis_elements(&self.carrier);
                    let v = end
                        .coordinates_of_map(l, n, |parts| {
                            let args: Vec<(usize, SparseVec<F>)> = parts.iter().map(|&(d, i)| (d, basis[d][i].clone())).collect();
                            let refs: Vec<Elem<'_, F>> = args.iter().map(|(d, v)| (*d, v.as_slice())).collect();
                            self.act((n, &x), &refs)
                        })
                        .ok_or_else(|| Error::Invalid(format!("α(x ⊗ -) is not a chain map for basis vector {k} of arity {l}")))?;
                    cols.push(v);
                }
                per.push(Matrix::from_columns(rows, c.dim(n), &cols));
            }
            components.push(per);
        }
        Ok(OperadMorphism { components })
    }
}

fn check_product<F: Field>(carrier: &CochainComplex<F>, mu: &ChainMap<F>) -> Result<(), Error> {
    let sq = carrier.tensor(carrier);
    let top = carrier.top_degree();
    if mu.target.dims()[..=top.min(mu.target.top_degree())] != carrier.dims()[..=top.min(mu.target.top_degree())]
        || (0..=top).any(|n| mu.source.dim(n) != sq.dim(n))
    {
        return Err(Error::DimensionMismatch { what: "product", degree: 0 });
    }
    Ok(())
}

fn basis_elements<F: Field>(c: &CochainComplex<F>) -> Vec<Vec<SparseVec<F>>> {
    (0..=c.top_degree()).map(|n| (0..c.dim(n)).map(|k| vec![(k, F::one())]).collect()).collect()
}

fn iterated_product<F: Field>(c: &CochainComplex<F>, mu: &ChainMap<F>, layout: &TensorLayout, args: &[(usize, SparseVec<F>)]) -> (usize, SparseVec<F>) {
    let mut acc = args[0].clone();
    for b in &args[1..] {
        let n = acc.0 + b.0;
        if n > c.top_degree() {
            return (n, Vec::new());
        }
        let mut raw: SparseVec<F> = Vec::new();
        for (i, x) in &acc.1 {
            for (j, y) in &b.1 {
                raw.push((layout.pos(acc.0, b.0, *i, *j), x.clone() * y.clone()));
            }
        }
        raw.sort_unstable_by_key(|e| e.0);
        acc = (n, mu.component(n).apply(&raw));
    }
    acc
}

impl<F: Field> Algebra<F> for OperadAlgebra<F> {
    type Op = DgOperad<F>;

    fn operad(&self) -> &DgOperad<F> {
        &self.operad
    }

    fn carrier(&self) -> &CochainComplex<F> {
        &self.carrier
    }

    fn act(&self, x: Elem<'_, F>, args: &[Elem<'_, F>]) -> SparseVec<F> {
        let l = args.len();
        let Some((layout, comps)) = self.actions.get(l) else { return Vec::new() };
        let total = x.0 + args.iter().map(|a| a.0).sum::<usize>();
        let Some(m) = comps.get(total) else { return Vec::new() };
        let mut parts = vec![x];
        parts.extend_from_slice(args);
        m.apply(&outer(layout, &parts))
    }
}

/// The reciprocal image `f^* B` of a `Q`-algebra along `f : P → Q`:
/// `α_{f^*B}(x ⊗ a) = α_B(f(x) ⊗ a)`.
pub fn reciprocal_image<F: Field, M: OperadMap<F>, B: Algebra<F>>(f: &M, p: &DgOperad<F>, b: &B) -> OperadAlgebra<F> {
    let pb = Pullback { operad: p, map: f, algebra: b };
    let basis = basis_elements(b.carrier());
    let pbasis: Vec<Vec<Vec<SparseVec<F>>>> = p.components().iter().map(basis_elements).collect();
    OperadAlgebra::from_fn(p.clone(), b.carrier().clone(), |l, parts| {
        let (d0, i0) = parts[0];
        let args: Vec<Elem<'_, F>> = parts[1..].iter().map(|&(d, i)| (d, basis[d][i].as_slice())).collect();
        pb.act((d0, &pbasis[l][d0][i0]), &args)
    })
}

/// The reciprocal image computed on demand.
pub struct Pullback<'a, O, M, B> {
    pub operad: &'a O,
    pub map: &'a M,
    pub algebra: &'a B,
}

impl<F: Field, O: Operad<F>, M: OperadMap<F>, B: Algebra<F>> Algebra<F> for Pullback<'_, O, M, B> {
    type Op = O;

    fn operad(&self) -> &O {
        self.operad
    }

    fn carrier(&self) -> &CochainComplex<F> {
        self.algebra.carrier()
    }

    fn act(&self, x: Elem<'_, F>, args: &[Elem<'_, F>]) -> SparseVec<F> {
        let fx = self.map.apply(args.len(), x);
        self.algebra.act((x.0, &fx), args)
    }
}
