//! Bounded non-negatively graded cochain complexes, chain maps and cohomology.

use alloc::vec;
use alloc::vec::Vec;

use super::matrix::Matrix;
use super::subspace::Subspace;
use super::vector::SparseVec;
use crate::field::Field;
use crate::Error;

/// A cochain complex `C^0 → C^1 → … → C^top`.
///
/// `diffs[n]` is the matrix of `d^n : C^n → C^{n+1}` for `n < top`. When a complex
/// is the brutal truncation of an infinite object, `exact_through` records the
/// last degree in which its cohomology is meaningful.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainComplex<F: Field> {
    dims: Vec<usize>,
    diffs: Vec<Matrix<F>>,
    exact_through: Option<usize>,
}

impl<F: Field> CochainComplex<F> {
    /// Build a complex, checking shapes and `d ∘ d = 0`.
    pub fn new(dims: Vec<usize>, diffs: Vec<Matrix<F>>) -> Result<Self, Error> {
        let dims = if dims.is_empty() { vec![0] } else { dims };
        if diffs.len() + 1 != dims.len() {
            return Err(Error::Invalid(alloc::format!(
                "{} degrees need {} differentials, got {}",
                dims.len(),
                dims.len() - 1,
                diffs.len()
            )));
        }
        for (n, d) in diffs.iter().enumerate() {
            if d.nrows() != dims[n + 1] || d.ncols() != dims[n] {
                return Err(Error::DimensionMismatch { what: "differential", degree: n });
            }
        }
        for n in 1..diffs.len() {
            if !diffs[n].mul(&diffs[n - 1]).is_zero() {
                return Err(Error::NotAComplex { degree: n - 1 });
            }
        }
        Ok(CochainComplex { dims, diffs, exact_through: None })
    }

    /// Trusted constructor for internal builders whose output is a complex by construction.
    pub(crate) fn from_parts(dims: Vec<usize>, diffs: Vec<Matrix<F>>, exact_through: Option<usize>) -> Self {
        debug_assert_eq!(diffs.len() + 1, dims.len());
        debug_assert!((1..diffs.len()).all(|n| diffs[n].mul(&diffs[n - 1]).is_zero()));
        CochainComplex { dims, diffs, exact_through }
    }

    pub fn zero() -> Self {
        CochainComplex { dims: vec![0], diffs: Vec::new(), exact_through: None }
    }

    /// `F^dim` placed in a single degree.
    pub fn concentrated(degree: usize, dim: usize) -> Self {
        let mut dims = vec![0; degree + 1];
        dims[degree] = dim;
        let diffs = (0..degree).map(|n| Matrix::zeros(dims[n + 1], dims[n])).collect();
        CochainComplex { dims, diffs, exact_through: None }
    }

    /// The tensor unit: `F` in degree 0.
    pub fn unit() -> Self {
        Self::concentrated(0, 1)
    }

    /// Complex with zero differentials and the given dimensions.
    pub fn graded(dims: Vec<usize>) -> Self {
        let dims = if dims.is_empty() { vec![0] } else { dims };
        let diffs = (0..dims.len() - 1).map(|n| Matrix::zeros(dims[n + 1], dims[n])).collect();
        CochainComplex { dims, diffs, exact_through: None }
    }

    pub fn top_degree(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims.get(n).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// `d^n`, or a zero matrix outside the stored range.
    pub fn diff(&self, n: usize) -> Matrix<F> {
        match self.diffs.get(n) {
            Some(d) => d.clone(),
            None => Matrix::zeros(self.dim(n + 1), self.dim(n)),
        }
    }

    pub fn diff_ref(&self, n: usize) -> Option<&Matrix<F>> {
        self.diffs.get(n)
    }

    pub fn exact_through(&self) -> Option<usize> {
        self.exact_through
    }

    /// Last degree with trustworthy cohomology.
    pub fn reliable_top(&self) -> usize {
        match self.exact_through {
            Some(e) => e.min(self.top_degree()),
            None => self.top_degree(),
        }
    }

    pub fn with_exact_through(mut self, e: Option<usize>) -> Self {
        self.exact_through = e;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    /// Brutal truncation: drop degrees above `top`. Cohomology stays exact below `top`.
    pub fn brutal(&self, top: usize) -> Self {
        if top >= self.top_degree() {
            return self.clone();
        }
        let e = top.saturating_sub(1);
        CochainComplex {
            dims: self.dims[..=top].to_vec(),
            diffs: self.diffs[..top].to_vec(),
            exact_through: Some(self.exact_through.map_or(e, |x| x.min(e))),
        }
    }

    /// Extend with zero spaces up to `top`.
    pub fn pad(&self, top: usize) -> Self {
        if top <= self.top_degree() {
            return self.clone();
        }
        let mut dims = self.dims.clone();
        dims.resize(top + 1, 0);
        let mut diffs = self.diffs.clone();
        for n in self.top_degree()..top {
            diffs.push(Matrix::zeros(dims[n + 1], dims[n]));
        }
        CochainComplex { dims, diffs, exact_through: self.exact_through }
    }

    pub fn cohomology(&self, n: usize) -> Cohomology<F> {
        let cycles = if n < self.diffs.len() {
            Subspace::kernel(&self.diffs[n])
        } else {
            Subspace::full(self.dim(n))
        };
        let boundaries = if n > 0 && n <= self.diffs.len() {
            Subspace::image(&self.diffs[n - 1])
        } else {
            Subspace::zero(self.dim(n))
        };
        let reps = cycles.complement_in(&boundaries);
        Cohomology { degree: n, cycles, boundaries, reps }
    }

    /// `dim H^n` for `n = 0..=reliable_top`.
    pub fn betti(&self) -> Vec<usize> {
        (0..=self.reliable_top()).map(|n| self.cohomology(n).dim()).collect()
    }

    pub fn is_acyclic(&self) -> bool {
        self.betti().iter().all(|&b| b == 0)
    }

    /// `a ⊕ b`, with the basis of `a` first in each degree.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let top = self.top_degree().max(other.top_degree());
        let a = self.pad(top);
        let b = other.pad(top);
        let dims = (0..=top).map(|n| a.dim(n) + b.dim(n)).collect();
        let diffs = (0..top).map(|n| Matrix::block_diag(&[&a.diffs[n], &b.diffs[n]])).collect();
        CochainComplex { dims, diffs, exact_through: min_exact(self.exact_through, other.exact_through) }
    }

    /// The tensor product with Koszul signs; see [`TensorLayout`] for the basis order.
    pub fn tensor(&self, other: &Self) -> Self {
        let layout = TensorLayout::new(self.dims(), other.dims());
        let top = layout.top();
        let mut diffs = Vec::with_capacity(top);
        for n in 0..top {
            let mut entries = Vec::new();
            for i in 0..=n {
                let j = n - i;
                let (da, db) = (self.dim(i), other.dim(j));
                if da == 0 || db == 0 {
                    continue;
                }
                // dx ⊗ y
                if let Some(d) = self.diffs.get(i) {
                    for (r, row) in d.rows_iter().enumerate() {
                        for (c, v) in row {
                            for y in 0..db {
                                entries.push((layout.pos(i + 1, j, r, y), layout.pos(i, j, *c, y), v.clone()));
                            }
                        }
                    }
                }
                // (-1)^i x ⊗ dy
                if let Some(d) = other.diffs.get(j) {
                    let s = F::sign(i);
                    for (r, row) in d.rows_iter().enumerate() {
                        for (c, v) in row {
                            for x in 0..da {
                                entries.push((layout.pos(i, j + 1, x, r), layout.pos(i, j, x, *c), s.clone() * v.clone()));
                            }
                        }
                    }
                }
            }
            diffs.push(Matrix::from_triplets(layout.dim(n + 1), layout.dim(n), entries));
        }
        let dims = (0..=top).map(|n| layout.dim(n)).collect();
        CochainComplex { dims, diffs, exact_through: min_exact(self.exact_through, other.exact_through) }
    }

    /// Left-nested tensor product `((c0 ⊗ c1) ⊗ c2) ⊗ …`; the empty product is the unit.
    pub fn tensor_all(factors: &[&Self]) -> Self {
        let mut acc = Self::unit();
        for (k, f) in factors.iter().enumerate() {
            acc = if k == 0 { (*f).clone() } else { acc.tensor(f) };
        }
        acc
    }

    /// [`tensor_all`](Self::tensor_all) followed by brutal truncation at `top`, without
    /// building the degrees above `top`.
    pub fn tensor_all_upto(factors: &[&Self], top: usize) -> Self {
        let mut acc = Self::unit();
        for (k, f) in factors.iter().enumerate() {
            let f = f.brutal(top);
            acc = if k == 0 { f } else { acc.tensor(&f).brutal(top) };
        }
        acc
    }
}

fn min_exact(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

/// Basis bookkeeping for `A ⊗ B`: in degree `n` the basis is ordered
/// lexicographically by `(i, index in A^i, index in B^{n-i})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorLayout {
    a: Vec<usize>,
    b: Vec<usize>,
    offsets: Vec<Vec<usize>>,
    dims: Vec<usize>,
}

impl TensorLayout {
    pub fn new(a: &[usize], b: &[usize]) -> Self {
        let top = (a.len() - 1) + (b.len() - 1);
        let mut offsets = vec![Vec::new(); top + 1];
        let mut dims = vec![0; top + 1];
        for n in 0..=top {
            let mut off = 0;
            for i in 0..=n {
                offsets[n].push(off);
                let j = n - i;
                off += a.get(i).copied().unwrap_or(0) * b.get(j).copied().unwrap_or(0);
            }
            dims[n] = off;
        }
        TensorLayout { a: a.to_vec(), b: b.to_vec(), offsets, dims }
    }

    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims.get(n).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Position in degree `i + j` of `x ⊗ y`, `x ∈ A^i`, `y ∈ B^j`.
    pub fn pos(&self, i: usize, j: usize, ia: usize, ib: usize) -> usize {
        self.offsets[i + j][i] + ia * self.b.get(j).copied().unwrap_or(0) + ib
    }

    /// Inverse of [`pos`](Self::pos): `(i, ia, ib)` for a basis position in degree `n`.
    pub fn split(&self, n: usize, k: usize) -> (usize, usize, usize) {
        let i = match self.offsets[n].binary_search(&k) {
            Ok(mut i) => {
                // skip empty blocks sharing the same offset
                while i + 1 < self.offsets[n].len() && self.offsets[n][i + 1] == k {
                    i += 1;
                }
                i
            }
            Err(i) => i - 1,
        };
        let r = k - self.offsets[n][i];
        let db = self.b.get(n - i).copied().unwrap_or(0);
        (i, r / db, r % db)
    }

    pub fn a_dims(&self) -> &[usize] {
        &self.a
    }

    pub fn b_dims(&self) -> &[usize] {
        &self.b
    }
}

/// Basis bookkeeping for a left-nested tensor product `((C_1 ⊗ C_2) ⊗ …) ⊗ C_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiTensorLayout {
    factors: Vec<Vec<usize>>,
    steps: Vec<TensorLayout>,
    dims: Vec<usize>,
}

impl MultiTensorLayout {
    pub fn new(factors: &[&[usize]]) -> Self {
        let mut steps = Vec::new();
        let mut dims: Vec<usize> = vec![1];
        for (j, f) in factors.iter().enumerate() {
            if j == 0 {
                dims = f.to_vec();
                continue;
            }
            let l = TensorLayout::new(&dims, f);
            dims = l.dims().to_vec();
            steps.push(l);
        }
        MultiTensorLayout { factors: factors.iter().map(|f| f.to_vec()).collect(), steps, dims }
    }

    pub fn arity(&self) -> usize {
        self.factors.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims.get(n).copied().unwrap_or(0)
    }

    /// Position (in degree `Σ deg`) of `x_1 ⊗ … ⊗ x_k` given `(deg_j, index_j)` per factor.
    /// With no factors this is the unit: degree 0, position 0.
    pub fn pos(&self, parts: &[(usize, usize)]) -> usize {
        debug_assert_eq!(parts.len(), self.factors.len());
        let Some(&(mut deg, mut idx)) = parts.first() else { return 0 };
        for (l, &(d, i)) in self.steps.iter().zip(&parts[1..]) {
            idx = l.pos(deg, d, idx, i);
            deg += d;
        }
        idx
    }

    /// Inverse of [`pos`](Self::pos).
    pub fn split(&self, n: usize, k: usize) -> Vec<(usize, usize)> {
        if self.factors.is_empty() {
            return Vec::new();
        }
        let mut out = vec![(0, 0); self.factors.len()];
        let (mut deg, mut idx) = (n, k);
        for (j, l) in self.steps.iter().enumerate().rev() {
            let (i, ia, ib) = l.split(deg, idx);
            out[j + 1] = (deg - i, ib);
            deg = i;
            idx = ia;
        }
        out[0] = (deg, idx);
        out
    }
}

/// Cohomology in one degree with a canonical basis of representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cohomology<F: Field> {
    pub degree: usize,
    pub cycles: Subspace<F>,
    pub boundaries: Subspace<F>,
    /// Canonical complement of the boundaries inside the cycles.
    pub reps: Subspace<F>,
}

impl<F: Field> Cohomology<F> {
    pub fn dim(&self) -> usize {
        self.reps.dim()
    }

    /// Representatives as rows of a `dim × C^n` matrix.
    pub fn representatives(&self) -> Matrix<F> {
        self.reps.basis_matrix()
    }

    pub fn representative(&self, k: usize) -> &SparseVec<F> {
        &self.reps.basis()[k]
    }

    /// Coordinates of the class of a cocycle in the representative basis.
    pub fn class_of(&self, v: &[(usize, F)]) -> Result<SparseVec<F>, Error> {
        if !self.cycles.contains(v) {
            return Err(Error::NotACocycle { degree: self.degree });
        }
        let r = self.boundaries.reduce(v);
        Ok(self.reps.coords(&r).expect("residue of a cocycle lies in the complement"))
    }

    pub fn is_boundary(&self, v: &[(usize, F)]) -> bool {
        self.boundaries.contains(v)
    }
}

/// A degree-wise family of matrices `source^n → target^n` commuting with `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap<F: Field> {
    pub source: CochainComplex<F>,
    pub target: CochainComplex<F>,
    components: Vec<Matrix<F>>,
}

impl<F: Field> ChainMap<F> {
    pub fn new(source: CochainComplex<F>, target: CochainComplex<F>, components: Vec<Matrix<F>>) -> Result<Self, Error> {
        let top = source.top_degree().max(target.top_degree());
        let mut comps = components;
        if comps.len() > top + 1 {
            return Err(Error::Invalid(alloc::format!("{} components for top degree {top}", comps.len())));
        }
        for n in comps.len()..=top {
            comps.push(Matrix::zeros(target.dim(n), source.dim(n)));
        }
        for (n, c) in comps.iter().enumerate() {
            if c.nrows() != target.dim(n) || c.ncols() != source.dim(n) {
                return Err(Error::DimensionMismatch { what: "chain map component", degree: n });
            }
        }
        let f = ChainMap { source, target, components: comps };
        if let Some(n) = f.first_noncommuting_degree() {
            return Err(Error::NotAChainMap { degree: n });
        }
        Ok(f)
    }

    pub(crate) fn from_parts(source: CochainComplex<F>, target: CochainComplex<F>, components: Vec<Matrix<F>>) -> Self {
        let top = source.top_degree().max(target.top_degree());
        let mut comps = components;
        for n in comps.len()..=top {
            comps.push(Matrix::zeros(target.dim(n), source.dim(n)));
        }
        let f = ChainMap { source, target, components: comps };
        debug_assert_eq!(f.first_noncommuting_degree(), None);
        f
    }

    pub fn identity(c: &CochainComplex<F>) -> Self {
        let comps = (0..=c.top_degree()).map(|n| Matrix::identity(c.dim(n))).collect();
        ChainMap { source: c.clone(), target: c.clone(), components: comps }
    }

    pub fn zero(source: &CochainComplex<F>, target: &CochainComplex<F>) -> Self {
        Self::from_parts(source.clone(), target.clone(), Vec::new())
    }

    pub fn component(&self, n: usize) -> Matrix<F> {
        match self.components.get(n) {
            Some(c) => c.clone(),
            None => Matrix::zeros(self.target.dim(n), self.source.dim(n)),
        }
    }

    pub fn component_ref(&self, n: usize) -> &Matrix<F> {
        &self.components[n]
    }

    pub fn components(&self) -> &[Matrix<F>] {
        &self.components
    }

    /// Degree where `d f = f d` fails, if any.
    pub fn first_noncommuting_degree(&self) -> Option<usize> {
        let top = self.source.top_degree().max(self.target.top_degree());
        (0..top).find(|&n| {
            let lhs = self.target.diff(n).mul(&self.component(n));
            let rhs = self.component(n + 1).mul(&self.source.diff(n));
            lhs != rhs
        })
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &ChainMap<F>) -> Result<ChainMap<F>, Error> {
        if first.target.dims() != self.source.dims() && first.target.pad(self.source.top_degree()).dims() != self.source.pad(first.target.top_degree()).dims() {
            return Err(Error::DimensionMismatch { what: "composition", degree: 0 });
        }
        let top = first.source.top_degree().max(self.target.top_degree());
        let comps = (0..=top).map(|n| self.component(n).mul(&first.component(n))).collect();
        Ok(ChainMap::from_parts(first.source.clone(), self.target.clone(), comps))
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }

    /// Matrix of `H^n(f)` in the canonical representative bases.
    pub fn induced(&self, n: usize) -> Matrix<F> {
        let hs = self.source.cohomology(n);
        let ht = self.target.cohomology(n);
        self.induced_between(&hs, &ht)
    }

    pub fn induced_between(&self, hs: &Cohomology<F>, ht: &Cohomology<F>) -> Matrix<F> {
        let f = &self.components[hs.degree];
        let cols: Vec<SparseVec<F>> = hs
            .reps
            .basis()
            .iter()
            .map(|v| ht.class_of(&f.apply(v)).expect("chain map sends cocycles to cocycles"))
            .collect();
        Matrix::from_columns(ht.dim(), hs.dim(), &cols)
    }

    /// Degrees in which a quasi-isomorphism is checked: both sides reliable.
    pub fn checked_top(&self) -> usize {
        self.source.reliable_top().min(self.target.reliable_top())
    }

    /// Whether `H^n(f)` is an isomorphism in every reliable degree.
    pub fn is_quasi_iso(&self) -> bool {
        self.first_non_iso_degree().is_none()
    }

    pub fn first_non_iso_degree(&self) -> Option<usize> {
        (0..=self.checked_top()).find(|&n| {
            let hs = self.source.cohomology(n);
            let ht = self.target.cohomology(n);
            hs.dim() != ht.dim() || !self.induced_between(&hs, &ht).is_invertible()
        })
    }

    /// `f ⊗ g` between tensor products.
    pub fn tensor(&self, other: &ChainMap<F>) -> ChainMap<F> {
        let src = self.source.tensor(&other.source);
        let tgt = self.target.tensor(&other.target);
        let ls = TensorLayout::new(self.source.dims(), other.source.dims());
        let lt = TensorLayout::new(self.target.dims(), other.target.dims());
        let top = src.top_degree().max(tgt.top_degree());
        let mut comps = Vec::new();
        for n in 0..=top {
            let mut entries = Vec::new();
            for i in 0..=n {
                let j = n - i;
                if self.source.dim(i) == 0 || other.source.dim(j) == 0 || self.target.dim(i) == 0 || other.target.dim(j) == 0 {
                    continue;
                }
                let f = self.component(i);
                let g = other.component(j);
                for (r1, row1) in f.rows_iter().enumerate() {
                    for (c1, v1) in row1 {
                        for (r2, row2) in g.rows_iter().enumerate() {
                            for (c2, v2) in row2 {
                                entries.push((lt.pos(i, j, r1, r2), ls.pos(i, j, *c1, *c2), v1.clone() * v2.clone()));
                            }
                        }
                    }
                }
            }
            comps.push(Matrix::from_triplets(tgt.dim(n), src.dim(n), entries));
        }
        ChainMap::from_parts(src, tgt, comps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use crate::field::Rational;

    type C = CochainComplex<Rational>;
    type M = Matrix<Rational>;

    fn q(v: i64) -> Rational {
        Rational::integer(v)
    }

    fn id_line() -> C {
        C::new(vec![1, 1], vec![M::identity(1)]).unwrap()
    }

    #[test]
    fn acyclic_two_term() {
        assert_eq!(id_line().cohomology(0).dim(), 0);
        assert_eq!(id_line().cohomology(1).dim(), 0);
    }

    #[test]
    fn point_complex() {
        assert_eq!(C::unit().cohomology(0).dim(), 1);
    }

    #[test]
    fn kernel_representative() {
        let c = C::new(vec![2, 1], vec![M::from_i64_rows(&[&[1, 1]])]).unwrap();
        let h = c.cohomology(0);
        assert_eq!(h.dim(), 1);
        assert_eq!(h.representatives(), M::from_rows(1, 2, vec![vec![q(1), q(-1)]]));
    }

    #[test]
    fn rejects_non_complex() {
        let d = M::identity(1);
        assert_eq!(C::new(vec![1, 1, 1], vec![d.clone(), d]), Err(Error::NotAComplex { degree: 0 }));
    }

    #[test]
    fn identity_and_zero_quasi_isos() {
        let c = C::new(vec![2, 1], vec![M::from_i64_rows(&[&[1, 1]])]).unwrap();
        assert!(ChainMap::identity(&c).is_quasi_iso());
        assert!(ChainMap::zero(&id_line(), &id_line()).is_quasi_iso());
    }

    #[test]
    fn inclusion_into_sum_with_acyclic() {
        // Q → Q ⊕ (Q →id Q), degree 0 component = (1, 0)
        let target = C::unit().direct_sum(&id_line());
        let f = ChainMap::new(
            C::unit(),
            target,
            vec![M::from_i64_rows(&[&[1], &[0]]), M::zeros(1, 0)],
        )
        .unwrap();
        assert!(f.is_quasi_iso());
    }

    #[test]
    fn tensor_of_acyclic_lines() {
        let t = id_line().tensor(&id_line());
        assert_eq!(t.dims(), &[1, 2, 1]);
        assert_eq!(t.betti(), vec![0, 0, 0]);
    }

    #[test]
    fn koszul_sign_on_odd_factor() {
        // a = Q in degree 1, b = (Q →id Q); d(x ⊗ y0) = -x ⊗ y1
        let a = C::concentrated(1, 1);
        let t = a.tensor(&id_line());
        let l = TensorLayout::new(a.dims(), id_line().dims());
        let d = t.diff(1);
        assert_eq!(d.get(l.pos(1, 1, 0, 0), l.pos(1, 0, 0, 0)), q(-1));
    }

    #[test]
    fn unit_tensor_is_identity() {
        let b = C::new(vec![2, 1], vec![M::from_i64_rows(&[&[1, 1]])]).unwrap();
        assert_eq!(C::unit().tensor(&b), b);
    }

    #[test]
    fn multi_layout_split_inverts_pos() {
        let l = MultiTensorLayout::new(&[&[1, 2], &[2, 0, 1], &[1, 1]]);
        assert_eq!(l.dims(), CochainComplex::<Rational>::tensor_all(&[
            &CochainComplex::graded(vec![1, 2]),
            &CochainComplex::graded(vec![2, 0, 1]),
            &CochainComplex::graded(vec![1, 1]),
        ]).dims());
        for n in 0..l.dims().len() {
            for k in 0..l.dim(n) {
                let parts = l.split(n, k);
                assert_eq!(parts.iter().map(|p| p.0).sum::<usize>(), n);
                assert_eq!(l.pos(&parts), k);
            }
        }
    }

    #[test]
    fn layout_split_inverts_pos() {
        let l = TensorLayout::new(&[2, 0, 3], &[1, 2]);
        for n in 0..=l.top() {
            for k in 0..l.dim(n) {
                let (i, ia, ib) = l.split(n, k);
                assert_eq!(l.pos(i, n - i, ia, ib), k);
            }
        }
    }
}
