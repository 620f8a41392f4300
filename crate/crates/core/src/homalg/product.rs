//! Structure constants of binary operations on cohomology.

use alloc::vec::Vec;

use super::complex::{ChainMap, CochainComplex, TensorLayout};
use super::matrix::Matrix;
use super::vector::SparseVec;
use crate::field::Field;
use crate::Error;

/// Structure constants of `μ : A ⊗ B → C` on cohomology in the canonical
/// representative bases, for `i + j ≤ top`.
///
/// `entries[i][j]` has one column per pair `(a, b)` of basis classes of
/// `H^i(A)` and `H^j(B)`, ordered lexicographically, holding the class of
/// `μ(a ⊗ b)` in `H^{i+j}(C)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductTable<F: Field> {
    pub top: usize,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub entries: Vec<Vec<Matrix<F>>>,
}

impl<F: Field> ProductTable<F> {
    /// Class of the product of basis classes `a ∈ H^i` and `b ∈ H^j`.
    pub fn get(&self, i: usize, j: usize, a: usize, b: usize) -> SparseVec<F> {
        self.entries[i][j].column(a * self.right[j] + b)
    }

    /// Apply a change of basis on each side: `left_maps[i]` and `right_maps[j]` send old
    /// classes to new ones and `target_maps[n]` does the same on the product side.
    pub fn transform(&self, left_maps: &[Matrix<F>], right_maps: &[Matrix<F>], target_maps: &[Matrix<F>]) -> Option<Self> {
        let mut entries = Vec::with_capacity(self.top + 1);
        for i in 0..=self.top {
            let mut row = Vec::with_capacity(self.top + 1 - i);
            for j in 0..=self.top - i {
                let linv = left_maps[i].inverse()?;
                let rinv = right_maps[j].inverse()?;
                let m = target_maps[i + j].mul(&self.entries[i][j]).mul(&linv.kron(&rinv));
                row.push(m);
            }
            entries.push(row);
        }
        Some(ProductTable { top: self.top, left: self.left.clone(), right: self.right.clone(), entries })
    }
}

/// Compute the structure constants of `mu`, whose source is `a ⊗ b` (possibly truncated).
pub fn product_table<F: Field>(
    mu: &ChainMap<F>,
    a: &CochainComplex<F>,
    b: &CochainComplex<F>,
    top: usize,
) -> Result<ProductTable<F>, Error> {
    let layout = TensorLayout::new(a.dims(), b.dims());
    let ha: Vec<_> = (0..=top).map(|i| a.cohomology(i)).collect();
    let hb: Vec<_> = (0..=top).map(|j| b.cohomology(j)).collect();
    let hc: Vec<_> = (0..=top).map(|n| mu.target.cohomology(n)).collect();
    let mut entries = Vec::with_capacity(top + 1);
    for i in 0..=top {
        let mut row = Vec::with_capacity(top + 1 - i);
        for j in 0..=top - i {
            let n = i + j;
            let mut cols = Vec::with_capacity(ha[i].dim() * hb[j].dim());
            for x in 0..ha[i].dim() {
                for y in 0..hb[j].dim() {
                    let mut v: SparseVec<F> = Vec::new();
                    for (u, cu) in ha[i].representative(x) {
                        for (w, cw) in hb[j].representative(y) {
                            v.push((layout.pos(i, j, *u, *w), cu.clone() * cw.clone()));
                        }
                    }
                    v.sort_unstable_by_key(|(k, _)| *k);
                    let img = mu.component_ref(n).apply(&v);
                    cols.push(hc[n].class_of(&img)?);
                }
            }
            row.push(Matrix::from_columns(hc[n].dim(), cols.len(), &cols));
        }
        entries.push(row);
    }
    Ok(ProductTable {
        top,
        left: ha.iter().map(|h| h.dim()).collect(),
        right: hb.iter().map(|h| h.dim()).collect(),
        entries,
    })
}

/// The symmetry `A ⊗ B → B ⊗ A`, `x ⊗ y ↦ (-1)^{|x||y|} y ⊗ x`, in degrees `0..=top`.
pub fn twist<F: Field>(a: &[usize], b: &[usize], top: usize) -> Vec<Matrix<F>> {
    let ab = TensorLayout::new(a, b);
    let ba = TensorLayout::new(b, a);
    (0..=top)
        .map(|n| {
            let mut e = Vec::with_capacity(ab.dim(n));
            for k in 0..ab.dim(n) {
                let (i, x, y) = ab.split(n, k);
                e.push((ba.pos(n - i, i, y, x), k, F::sign(i * (n - i))));
            }
            Matrix::from_triplets(ba.dim(n), ab.dim(n), e)
        })
        .collect()
}

/// Whether `μ : A ⊗ A → C` satisfies `μ ∘ τ = μ` exactly, degree by degree.
pub fn is_graded_commutative<F: Field>(mu: &ChainMap<F>, a: &CochainComplex<F>) -> bool {
    let top = mu.source.top_degree();
    let t = twist::<F>(a.dims(), a.dims(), top);
    (0..=top).all(|n| mu.component_ref(n).mul(&t[n]) == *mu.component_ref(n))
}
