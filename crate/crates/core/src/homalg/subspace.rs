//! Subspaces of `F^n` in canonical reduced echelon form.

use alloc::vec::Vec;

use super::matrix::{echelonize, Echelon, Matrix};
use super::vector::{self, SparseVec};
use crate::field::Field;

/// A subspace of `F^ambient`, stored as the rows of its reduced row echelon basis.
///
/// Two subspaces are equal iff their stored data is equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace<F: Field> {
    ambient: usize,
    basis: Vec<SparseVec<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: (0..ambient).map(vector::unit).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span(ambient: usize, gens: impl IntoIterator<Item = SparseVec<F>>) -> Self {
        Self::from_echelon(echelonize(ambient, gens))
    }

    /// Row space of `m`.
    pub fn row_space(m: &Matrix<F>) -> Self {
        Self::from_echelon(m.echelon())
    }

    /// Column space (image) of `m`.
    pub fn image(m: &Matrix<F>) -> Self {
        Self::row_space(&m.transpose())
    }

    pub fn kernel(m: &Matrix<F>) -> Self {
        Self::from_echelon(m.kernel())
    }

    pub fn from_echelon(e: Echelon<F>) -> Self {
        Subspace { ambient: e.cols, basis: e.rows, pivots: e.pivots }
    }

    /// Span of the coordinate vectors `e_i` for `i` in `idx`.
    pub fn coordinate(ambient: usize, idx: impl IntoIterator<Item = usize>) -> Self {
        let mut idx: Vec<usize> = idx.into_iter().collect();
        idx.sort_unstable();
        idx.dedup();
        Subspace { ambient, basis: idx.iter().map(|&i| vector::unit(i)).collect(), pivots: idx }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    pub fn basis(&self) -> &[SparseVec<F>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis as a `dim × ambient` matrix.
    pub fn basis_matrix(&self) -> Matrix<F> {
        Matrix::from_sparse_rows(self.dim(), self.ambient, self.basis.clone())
    }

    /// Reduce `v` modulo the subspace: the result vanishes at every pivot column.
    pub fn reduce(&self, v: &[(usize, F)]) -> SparseVec<F> {
        let mut r = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let c = vector::get(&r, p);
            if !c.is_zero() {
                r = vector::axpy(&r, &-c, row);
            }
        }
        r
    }

    pub fn contains(&self, v: &[(usize, F)]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is not in the subspace.
    pub fn coords(&self, v: &[(usize, F)]) -> Option<SparseVec<F>> {
        if !self.contains(v) {
            return None;
        }
        Some(
            self.pivots
                .iter()
                .enumerate()
                .filter_map(|(k, &p)| {
                    let c = vector::get(v, p);
                    (!c.is_zero()).then_some((k, c))
                })
                .collect(),
        )
    }

    pub fn is_subspace_of(&self, other: &Subspace<F>) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|b| other.contains(b))
    }

    pub fn sum(&self, other: &Subspace<F>) -> Subspace<F> {
        assert_eq!(self.ambient, other.ambient);
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        Self::span(self.ambient, self.basis.iter().chain(&other.basis).cloned())
    }

    pub fn intersect(&self, other: &Subspace<F>) -> Subspace<F> {
        assert_eq!(self.ambient, other.ambient);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.ambient);
        }
        if self.is_full() {
            return other.clone();
        }
        if other.is_full() {
            return self.clone();
        }
        // v ∈ self ∩ other iff v ∈ self and v reduces to zero modulo other
        let residues: Vec<SparseVec<F>> = self.basis.iter().map(|b| other.reduce(b)).collect();
        let m = Matrix::from_columns(self.ambient, self.dim(), &residues);
        let k = m.kernel();
        let basis = self.basis_matrix();
        Self::span(self.ambient, k.rows.iter().map(|c| basis.transpose().apply(c)))
    }

    /// Image of the subspace under `m` (a map from `F^ambient`).
    pub fn map(&self, m: &Matrix<F>) -> Subspace<F> {
        assert_eq!(m.ncols(), self.ambient);
        Self::span(m.nrows(), self.basis.iter().map(|b| m.apply(b)))
    }

    /// `{ v ∈ domain : m v ∈ target }`; `domain` defaults to everything.
    pub fn preimage(m: &Matrix<F>, target: &Subspace<F>, domain: Option<&Subspace<F>>) -> Subspace<F> {
        assert_eq!(m.nrows(), target.ambient);
        let full;
        let domain = match domain {
            Some(d) => d,
            None => {
                full = Self::full(m.ncols());
                &full
            }
        };
        if target.is_full() {
            return domain.clone();
        }
        let residues: Vec<SparseVec<F>> = domain.basis.iter().map(|b| target.reduce(&m.apply(b))).collect();
        let r = Matrix::from_columns(m.nrows(), domain.dim(), &residues);
        let k = r.kernel();
        let bt = domain.basis_matrix().transpose();
        Self::span(m.ncols(), k.rows.iter().map(|c| bt.apply(c)))
    }

    /// Canonical complement inside `self` of a subspace `sub ⊆ self`: the vectors of
    /// `self` vanishing at the pivots of `sub`, in echelon form.
    pub fn complement_in(&self, sub: &Subspace<F>) -> Subspace<F> {
        let cols: Vec<usize> = sub.pivots.clone();
        let residues: Vec<SparseVec<F>> = self.basis.iter().map(|b| sub.reduce(b)).collect();
        let s = Self::span(self.ambient, residues);
        debug_assert_eq!(s.dim() + sub.dim(), self.dim());
        debug_assert!(s.basis.iter().all(|b| cols.iter().all(|&c| vector::get(b, c).is_zero())));
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use crate::field::Rational;

    fn q(v: i64) -> Rational {
        Rational::integer(v)
    }

    #[test]
    fn intersection_of_planes() {
        // span(e0,e1) ∩ span(e1,e2) = span(e1)
        let a = Subspace::<Rational>::coordinate(3, [0, 1]);
        let b = Subspace::coordinate(3, [1, 2]);
        assert_eq!(a.intersect(&b), Subspace::coordinate(3, [1]));
    }

    #[test]
    fn preimage_of_line() {
        // m = [1 1], preimage of 0 is span(1,-1)
        let m = Matrix::<Rational>::from_i64_rows(&[&[1, 1]]);
        let p = Subspace::preimage(&m, &Subspace::zero(1), None);
        assert_eq!(p.basis(), &[vec![(0, q(1)), (1, q(-1))]]);
    }

    #[test]
    fn coords_roundtrip() {
        let s = Subspace::span(3, [vec![(0, q(2)), (2, q(2))], vec![(1, q(1))]]);
        let v = vec![(0, q(3)), (1, q(5)), (2, q(3))];
        assert_eq!(s.coords(&v), Some(vec![(0, q(3)), (1, q(5))]));
        assert_eq!(s.coords(&[(2, q(1))]), None);
    }

    #[test]
    fn complement_has_right_dimension() {
        let full = Subspace::<Rational>::full(3);
        let sub = Subspace::span(3, [vec![(0, q(1)), (1, q(1))]]);
        let c = full.complement_in(&sub);
        assert_eq!(c.dim(), 2);
        assert_eq!(c.sum(&sub), full);
    }
}
