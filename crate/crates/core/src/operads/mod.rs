//! dg operads and their algebras: built-in operads, endomorphism operads,
//! reciprocal images, sheaves of operads and the transfer of operad and
//! algebra structures to derived sections and hypercohomology sheaves.

mod algebra;
mod operad;
mod sheaf;
mod validate;

use alloc::vec::Vec;

use crate::field::Field;
use crate::homalg::{CochainComplex, MultiTensorLayout, SparseVec};

pub use algebra::{reciprocal_image, OperadAlgebra, Pullback};
pub use operad::{ass_to_com, endomorphism_operad, DgOperad, EndomorphismOperad, HomBlocks, OperadMorphism, DEFAULT_CAP};
pub use sheaf::{hyper_algebra, hyper_operad, rgamma_algebra, rgamma_operad, HyperAlgebra, HyperOperad, RhoMorphism, SheafAlgebra, SheafOperad, TransferredAlgebra, TransferredOperad};
pub use validate::{validate_algebra, validate_algebra_with, validate_morphism_with, validate_operad, validate_operad_with, AxiomCheck, Mode, Policy, Report};

/// A homogeneous element: `(degree, coordinates)`.
pub type Elem<'a, F> = (usize, &'a [(usize, F)]);

/// Evaluation interface shared by explicit and transferred operads.
///
/// The symmetric groups act on the right; `compose` is
/// `γ(x; y_0, …, y_{l-1})` with `x ∈ P(l)` and `y_j ∈ P(m_j)`.
pub trait Operad<F: Field> {
    fn cap(&self) -> usize;
    fn component(&self, l: usize) -> &CochainComplex<F>;
    /// `x · σ` for `x ∈ P(l)`.
    fn act(&self, l: usize, sigma: &[usize], x: Elem<'_, F>) -> SparseVec<F>;
    /// The unit in `P(1)^0`.
    fn unit(&self) -> SparseVec<F>;
    /// `ys[j] = (m_j, y_j)`.
    fn compose(&self, x: Elem<'_, F>, ys: &[(usize, Elem<'_, F>)]) -> SparseVec<F>;
}

/// Evaluation interface for algebras: `α_l(x ⊗ a_0 ⊗ … ⊗ a_{l-1})` with `l = args.len()`.
pub trait Algebra<F: Field> {
    type Op: Operad<F>;
    fn operad(&self) -> &Self::Op;
    fn carrier(&self) -> &CochainComplex<F>;
    fn act(&self, x: Elem<'_, F>, args: &[Elem<'_, F>]) -> SparseVec<F>;
}

/// Arity-wise maps `P(l) → Q(l)`.
pub trait OperadMap<F: Field> {
    fn apply(&self, l: usize, x: Elem<'_, F>) -> SparseVec<F>;
}

/// Left-nested tensor product of homogeneous vectors, as coordinates in `layout`.
pub(crate) fn outer<F: Field>(layout: &MultiTensorLayout, parts: &[Elem<'_, F>]) -> SparseVec<F> {
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

/// Permutation moving block `i` (of size `sizes[i]`) to block position `sigma(i)`.
pub fn block_permutation(sigma: &[usize], sizes: &[usize]) -> Vec<usize> {
    let inv = crate::combi::perm_inverse(sigma);
    let mut new_off = alloc::vec![0; sizes.len()];
    let mut acc = 0;
    for (pos, &i) in inv.iter().enumerate() {
        new_off[pos] = acc;
        acc += sizes[i];
    }
    let mut out = Vec::with_capacity(acc);
    for (i, &s) in sizes.iter().enumerate() {
        for t in 0..s {
            out.push(new_off[sigma[i]] + t);
        }
    }
    out
}

/// Block sum `τ_0 ⊕ … ⊕ τ_{l-1}` acting on concatenated positions.
pub fn block_sum(perms: &[&[usize]]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut off = 0;
    for p in perms {
        out.extend(p.iter().map(|&i| i + off));
        off += p.len();
    }
    out
}

/// Koszul parity of moving element `i` (of degree `degrees[i]`) to position `sigma(i)`.
pub fn koszul_odd(sigma: &[usize], degrees: &[usize]) -> bool {
    let mut s = 0;
    for i in 0..sigma.len() {
        for j in i + 1..sigma.len() {
            if sigma[i] > sigma[j] {
                s += degrees[i] * degrees[j];
            }
        }
    }
    s % 2 == 1
}

/// Adjacent transpositions of `0..l`.
pub fn generators(l: usize) -> Vec<Vec<usize>> {
    (0..l.saturating_sub(1))
        .map(|i| {
            let mut p: Vec<usize> = (0..l).collect();
            p.swap(i, i + 1);
            p
        })
        .collect()
}

/// Arity tuples `(l, m_0, …, m_{l-1})` with `1 ≤ l ≤ cap` and `Σ m_j ≤ cap`.
pub fn admissible(cap: usize, with_zero: bool) -> Vec<(usize, Vec<usize>)> {
    let mut out = Vec::new();
    for l in 1..=cap {
        for m in 0..=cap {
            for ms in crate::combi::compositions(m, l) {
                if !with_zero && ms.contains(&0) {
                    continue;
                }
                out.push((l, ms));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests;
