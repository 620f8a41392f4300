//! Exact matrices.
//!
//! A `Matrix` is a linear map `F^cols -> F^rows` acting on column vectors, so
//! composition `g ∘ f` is `g.mul(&f)`. Storage is row-major and sparse: each row
//! keeps its nonzero entries sorted by column. The dense view (`get`,
//! `from_rows`, `to_rows`) has exactly `rows × cols` entries.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::vector::{self, Accumulator, SparseVec};
use crate::field::Field;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec<F>>,
}

/// Reduced row echelon data: the nonzero rows and their pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon<F: Field> {
    pub cols: usize,
    pub rows: Vec<SparseVec<F>>,
    pub pivots: Vec<usize>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        Matrix { rows: n, cols: n, data: (0..n).map(|i| vec![(i, F::one())]).collect() }
    }

    pub fn scalar(n: usize, s: F) -> Self {
        if s.is_zero() {
            return Self::zeros(n, n);
        }
        Matrix { rows: n, cols: n, data: (0..n).map(|i| vec![(i, s.clone())]).collect() }
    }

    /// Build from dense rows; all rows must have length `cols`.
    pub fn from_rows(rows: usize, cols: usize, dense: Vec<Vec<F>>) -> Self {
        assert_eq!(dense.len(), rows, "row count mismatch");
        let data = dense
            .into_iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "row length mismatch");
                vector::from_dense(&r)
            })
            .collect();
        Matrix { rows, cols, data }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let dense = rows.iter().map(|r| r.iter().map(|&v| F::from_i64(v)).collect()).collect();
        Self::from_rows(rows.len(), cols, dense)
    }

    /// Build from sparse rows (each sorted, zero-free).
    pub fn from_sparse_rows(rows: usize, cols: usize, data: Vec<SparseVec<F>>) -> Self {
        assert_eq!(data.len(), rows);
        debug_assert!(data.iter().all(|r| r.windows(2).all(|w| w[0].0 < w[1].0)
            && r.iter().all(|(c, v)| *c < cols && !v.is_zero())));
        Matrix { rows, cols, data }
    }

    /// Build from sparse columns (each sorted, zero-free).
    pub fn from_columns(rows: usize, cols: usize, columns: &[SparseVec<F>]) -> Self {
        assert_eq!(columns.len(), cols);
        let mut data = vec![Vec::new(); rows];
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col {
                if !v.is_zero() {
                    data[*i].push((j, v.clone()));
                }
            }
        }
        Matrix { rows, cols, data }
    }

    /// Accumulate `(row, col, value)` triplets, summing duplicates.
    pub fn from_triplets(rows: usize, cols: usize, entries: impl IntoIterator<Item = (usize, usize, F)>) -> Self {
        let mut map: Vec<BTreeMap<usize, F>> = vec![BTreeMap::new(); rows];
        for (i, j, v) in entries {
            assert!(i < rows && j < cols, "entry out of range");
            let e = map[i].entry(j).or_insert_with(F::zero);
            *e = e.clone() + v;
        }
        let data = map
            .into_iter()
            .map(|m| m.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        Matrix { rows, cols, data }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[(usize, F)] {
        &self.data[i]
    }

    pub fn rows_iter(&self) -> impl Iterator<Item = &SparseVec<F>> {
        self.data.iter()
    }

    pub fn into_sparse_rows(self) -> Vec<SparseVec<F>> {
        self.data
    }

    pub fn get(&self, i: usize, j: usize) -> F {
        vector::get(&self.data[i], j)
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        let row = &mut self.data[i];
        match row.binary_search_by_key(&j, |(k, _)| *k) {
            Ok(p) => {
                if v.is_zero() {
                    row.remove(p);
                } else {
                    row[p].1 = v;
                }
            }
            Err(p) => {
                if !v.is_zero() {
                    row.insert(p, (j, v));
                }
            }
        }
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        self.data.iter().map(|r| vector::to_dense(r, self.cols)).collect()
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && self.data.iter().enumerate().all(|(i, r)| r.len() == 1 && r[0].0 == i && r[0].1.is_one())
    }

    pub fn transpose(&self) -> Self {
        let mut data = vec![Vec::new(); self.cols];
        for (i, r) in self.data.iter().enumerate() {
            for (j, v) in r {
                data[*j].push((i, v.clone()));
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    /// Column `j` as a sparse vector.
    pub fn column(&self, j: usize) -> SparseVec<F> {
        self.data
            .iter()
            .enumerate()
            .filter_map(|(i, r)| {
                let v = vector::get(r, j);
                (!v.is_zero()).then_some((i, v))
            })
            .collect()
    }

    /// All columns as sparse vectors.
    pub fn columns(&self) -> Vec<SparseVec<F>> {
        self.transpose().data
    }

    /// `self · other`.
    pub fn mul(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut acc = Accumulator::new(other.cols);
        let data = self
            .data
            .iter()
            .map(|r| {
                for (k, v) in r {
                    acc.add_scaled(v, &other.data[*k]);
                }
                acc.take()
            })
            .collect();
        Matrix { rows: self.rows, cols: other.cols, data }
    }

    /// `self · v` for a sparse column vector.
    pub fn apply(&self, v: &[(usize, F)]) -> SparseVec<F> {
        let mut out = Vec::new();
        for (i, r) in self.data.iter().enumerate() {
            let mut s = F::zero();
            let (mut a, mut b) = (0, 0);
            while a < r.len() && b < v.len() {
                match r[a].0.cmp(&v[b].0) {
                    core::cmp::Ordering::Less => a += 1,
                    core::cmp::Ordering::Greater => b += 1,
                    core::cmp::Ordering::Equal => {
                        s = s + r[a].1.clone() * v[b].1.clone();
                        a += 1;
                        b += 1;
                    }
                }
            }
            if !s.is_zero() {
                out.push((i, s));
            }
        }
        out
    }

    /// `v^T · self`, i.e. a row vector combination of rows.
    pub fn combine_rows(&self, coeffs: &[(usize, F)]) -> SparseVec<F> {
        let mut acc = Accumulator::new(self.cols);
        for (i, c) in coeffs {
            acc.add_scaled(c, &self.data[*i]);
        }
        acc.take()
    }

    pub fn add(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in sum");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| vector::add(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in difference");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| vector::sub(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &F) -> Matrix<F> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|r| vector::scale(r, s)).collect() }
    }

    pub fn neg(&self) -> Matrix<F> {
        self.scale(&-F::one())
    }

    /// Kronecker product; row `(i, k)` maps to `i * other.rows + k`.
    pub fn kron(&self, other: &Matrix<F>) -> Matrix<F> {
        let mut data = Vec::with_capacity(self.rows * other.rows);
        for r in &self.data {
            for s in &other.data {
                let mut row = Vec::with_capacity(r.len() * s.len());
                for (j, a) in r {
                    for (l, b) in s {
                        row.push((j * other.cols + l, a.clone() * b.clone()));
                    }
                }
                data.push(row);
            }
        }
        Matrix { rows: self.rows * other.rows, cols: self.cols * other.cols, data }
    }

    pub fn vstack(blocks: &[&Matrix<F>]) -> Matrix<F> {
        let cols = blocks.first().map_or(0, |b| b.cols);
        let mut data = Vec::new();
        for b in blocks {
            assert_eq!(b.cols, cols, "column mismatch in vstack");
            data.extend(b.data.iter().cloned());
        }
        Matrix { rows: data.len(), cols, data }
    }

    pub fn hstack(blocks: &[&Matrix<F>]) -> Matrix<F> {
        let rows = blocks.first().map_or(0, |b| b.rows);
        let mut data = vec![Vec::new(); rows];
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "row mismatch in hstack");
            for (i, r) in b.data.iter().enumerate() {
                data[i].extend(vector::shifted(r, off));
            }
            off += b.cols;
        }
        Matrix { rows, cols: off, data }
    }

    pub fn block_diag(blocks: &[&Matrix<F>]) -> Matrix<F> {
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut data = Vec::new();
        let mut off = 0;
        for b in blocks {
            data.extend(b.data.iter().map(|r| vector::shifted(r, off)));
            off += b.cols;
        }
        Matrix { rows: data.len(), cols, data }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix<F> {
        Matrix { rows: idx.len(), cols: self.cols, data: idx.iter().map(|&i| self.data[i].clone()).collect() }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix<F> {
        let mut pos = vec![usize::MAX; self.cols];
        for (new, &old) in idx.iter().enumerate() {
            pos[old] = new;
        }
        let data = self
            .data
            .iter()
            .map(|r| {
                let mut row: SparseVec<F> =
                    r.iter().filter(|(j, _)| pos[*j] != usize::MAX).map(|(j, v)| (pos[*j], v.clone())).collect();
                row.sort_unstable_by_key(|(j, _)| *j);
                row
            })
            .collect();
        Matrix { rows: self.rows, cols: idx.len(), data }
    }

    /// Echelon data of the row space.
    pub fn echelon(&self) -> Echelon<F> {
        echelonize(self.cols, self.data.iter().cloned())
    }

    /// Reduced row echelon form (same shape, zero rows last) and rank.
    pub fn rref(&self) -> (Matrix<F>, usize) {
        let e = self.echelon();
        let rank = e.rows.len();
        let mut data = e.rows;
        data.resize(self.rows, Vec::new());
        (Matrix { rows: self.rows, cols: self.cols, data }, rank)
    }

    pub fn rank(&self) -> usize {
        // the smaller side is cheaper to eliminate
        if self.rows <= self.cols {
            self.echelon().rows.len()
        } else {
            self.transpose().echelon().rows.len()
        }
    }

    /// Basis of `{ v : self · v = 0 }` as rows in reduced echelon form.
    pub fn kernel(&self) -> Echelon<F> {
        let e = self.echelon();
        let mut is_pivot = vec![false; self.cols];
        for &p in &e.pivots {
            is_pivot[p] = true;
        }
        let mut vecs: BTreeMap<usize, SparseVec<F>> = BTreeMap::new();
        for j in 0..self.cols {
            if !is_pivot[j] {
                vecs.insert(j, vec![(j, F::one())]);
            }
        }
        for (r, &p) in e.rows.iter().zip(&e.pivots) {
            for (j, v) in r {
                if *j != p {
                    vecs.get_mut(j).expect("non-pivot entry").push((p, -v.clone()));
                }
            }
        }
        let rows = vecs.into_values().map(|mut v| {
            v.sort_unstable_by_key(|(j, _)| *j);
            v
        });
        echelonize(self.cols, rows)
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Inverse of a square invertible matrix.
    pub fn inverse(&self) -> Option<Matrix<F>> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = Matrix::hstack(&[self, &Matrix::identity(n)]);
        let e = aug.echelon();
        if e.rows.len() < n || e.pivots.iter().take(n).enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        let data = e.rows.into_iter().map(|r| r.into_iter().filter(|(j, _)| *j >= n).map(|(j, v)| (j - n, v)).collect()).collect();
        Some(Matrix { rows: n, cols: n, data })
    }
}

/// Incremental elimination into reduced row echelon form.
pub fn echelonize<F: Field>(cols: usize, rows: impl IntoIterator<Item = SparseVec<F>>) -> Echelon<F> {
    let mut pivots: BTreeMap<usize, SparseVec<F>> = BTreeMap::new();
    for mut r in rows {
        loop {
            let Some((c, v)) = r.first().cloned() else { break };
            match pivots.get(&c) {
                Some(p) => r = vector::axpy(&r, &-v, p),
                None => {
                    let inv = v.inv();
                    let r = vector::scale(&r, &inv);
                    pivots.insert(c, r);
                    break;
                }
            }
        }
    }
    // back substitution, highest pivot first
    let keys: Vec<usize> = pivots.keys().rev().copied().collect();
    for &c in &keys {
        let row = pivots.get(&c).expect("pivot").clone();
        let hits: Vec<(usize, F)> =
            row.iter().filter(|(j, _)| *j != c && pivots.contains_key(j)).cloned().collect();
        if hits.is_empty() {
            continue;
        }
        let mut acc = Accumulator::new(cols);
        acc.add_scaled(&F::one(), &row);
        for (j, v) in &hits {
            acc.add_scaled(&-v.clone(), &pivots[j]);
        }
        pivots.insert(c, acc.take());
    }
    let (pivots, rows): (Vec<usize>, Vec<SparseVec<F>>) = pivots.into_iter().unzip();
    Echelon { cols, rows, pivots }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in self.to_rows() {
            write!(f, "  ")?;
            for (k, v) in r.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{v}")?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use crate::field::Rational;

    type M = Matrix<Rational>;

    #[test]
    fn rref_identity_and_zero() {
        let (r, k) = M::identity(2).rref();
        assert_eq!((r, k), (M::identity(2), 2));
        let (r, k) = M::zeros(3, 2).rref();
        assert_eq!((r, k), (M::zeros(3, 2), 0));
    }

    #[test]
    fn rref_rank_one() {
        // [[1,2],[2,4]] -> subtract 2*row0 from row1 -> [[1,2],[0,0]]
        let m = M::from_i64_rows(&[&[1, 2], &[2, 4]]);
        let (r, k) = m.rref();
        assert_eq!(k, 1);
        assert_eq!(r, M::from_i64_rows(&[&[1, 2], &[0, 0]]));
    }

    #[test]
    fn rref_is_reduced() {
        let m = M::from_i64_rows(&[&[0, 2, 4, 1], &[1, 1, 1, 0], &[1, 3, 5, 1]]);
        let (r, k) = m.rref();
        assert_eq!(k, 2);
        assert_eq!(r, M::from_rows(3, 4, vec![
            vec![Rational::one(), Rational::zero(), Rational::integer(-1), Rational::new(-1, 2)],
            vec![Rational::zero(), Rational::one(), Rational::integer(2), Rational::new(1, 2)],
            vec![Rational::zero(); 4],
        ]));
    }

    #[test]
    fn kernel_of_sum_map() {
        // [1 1] has kernel spanned by (1,-1)
        let m = M::from_i64_rows(&[&[1, 1]]);
        let k = m.kernel();
        assert_eq!(k.rows, vec![vec![(0, Rational::one()), (1, Rational::integer(-1))]]);
    }

    #[test]
    fn inverse_roundtrip() {
        let m = M::from_i64_rows(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(M::from_i64_rows(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn kron_shape_and_entries() {
        let a = M::from_i64_rows(&[&[1, 2]]);
        let b = M::from_i64_rows(&[&[0, 1], &[1, 0]]);
        let k = a.kron(&b);
        assert_eq!(k, M::from_i64_rows(&[&[0, 1, 0, 2], &[1, 0, 2, 0]]));
    }
}
