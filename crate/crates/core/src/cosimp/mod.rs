//! Truncated cosimplicial cochain complexes and their simple functors.
//!
//! Conventions used throughout the crate:
//! - the horizontal differential of the conormalized complex is `δ = Σ (-1)^i d^i`;
//! - the total differential on `N^p ⊗ (degree q)` is `D = δ + (-1)^p d_v`;
//! - for an injective monotone `φ : [p] → [n]` with missing values
//!   `m_1 < … < m_r`, the induced map is `d^{m_r} ∘ … ∘ d^{m_1}`;
//! - for a codegeneracy composite collapsing the indices `j_1 < … < j_k`, the map is
//!   `s^{j_1} ∘ … ∘ s^{j_k}`.

mod bicosimp;
mod kunneth;

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

pub use bicosimp::{BicosimplicialComplex, Mu};
pub use kunneth::{aw_kunneth, aw_multi, aw_operation, outer, shuffle, Kunneth, ShuffleMap};

use crate::combi;
use crate::field::Field;
use crate::homalg::{ChainMap, CochainComplex, Matrix, SparseVec, Subspace};
use crate::Error;

/// A degree-wise family of matrices between two complexes (one matrix per cochain degree).
pub type LevelMap<F> = Vec<Matrix<F>>;

/// A cosimplicial cochain complex with levels `0..=trunc`.
///
/// All levels are padded to a common top cochain degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosimplicialComplex<F: Field> {
    levels: Vec<CochainComplex<F>>,
    cofaces: Vec<Vec<LevelMap<F>>>,
    codegeneracies: Vec<Vec<LevelMap<F>>>,
}

fn apply_map<F: Field>(m: &LevelMap<F>, q: usize, v: &[(usize, F)]) -> SparseVec<F> {
    m[q].apply(v)
}

fn compose<F: Field>(second: &LevelMap<F>, first: &LevelMap<F>) -> LevelMap<F> {
    second.iter().zip(first).map(|(a, b)| a.mul(b)).collect()
}

impl<F: Field> CosimplicialComplex<F> {
    /// Build and validate: shapes, chain-map conditions and the cosimplicial identities.
    ///
    /// `cofaces[p][i]` maps level `p` to `p + 1` (`0 ≤ i ≤ p + 1`, `p < trunc`);
    /// `codegeneracies[p][i]` maps level `p` to `p - 1` (`0 ≤ i < p`).
    pub fn new(
        levels: Vec<CochainComplex<F>>,
        cofaces: Vec<Vec<LevelMap<F>>>,
        codegeneracies: Vec<Vec<LevelMap<F>>>,
    ) -> Result<Self, Error> {
        let v = Self::assemble(levels, cofaces, codegeneracies)?;
        v.validate()?;
        Ok(v)
    }

    pub(crate) fn assemble(
        levels: Vec<CochainComplex<F>>,
        mut cofaces: Vec<Vec<LevelMap<F>>>,
        mut codegeneracies: Vec<Vec<LevelMap<F>>>,
    ) -> Result<Self, Error> {
        if levels.is_empty() {
            return Err(Error::Invalid("a cosimplicial complex needs level 0".into()));
        }
        let trunc = levels.len() - 1;
        let top = levels.iter().map(|l| l.top_degree()).max().unwrap_or(0);
        let levels: Vec<CochainComplex<F>> = levels.iter().map(|l| l.pad(top)).collect();
        if codegeneracies.len() == trunc {
            codegeneracies.insert(0, Vec::new());
        }
        if cofaces.len() != trunc || codegeneracies.len() != trunc + 1 {
            return Err(Error::Invalid(format!(
                "truncation {trunc} needs {trunc} coface families and {} codegeneracy families",
                trunc + 1
            )));
        }
        let pad_map = |m: &mut LevelMap<F>, src: &CochainComplex<F>, tgt: &CochainComplex<F>, what| {
            if m.len() > top + 1 {
                return Err(Error::DimensionMismatch { what, degree: m.len() - 1 });
            }
            for q in m.len()..=top {
                m.push(Matrix::zeros(tgt.dim(q), src.dim(q)));
            }
            for q in 0..=top {
                if m[q].nrows() != tgt.dim(q) || m[q].ncols() != src.dim(q) {
                    return Err(Error::DimensionMismatch { what, degree: q });
                }
            }
            Ok(())
        };
        for p in 0..trunc {
            if cofaces[p].len() != p + 2 {
                return Err(Error::Invalid(format!("level {p} needs {} cofaces", p + 2)));
            }
            for m in &mut cofaces[p] {
                pad_map(m, &levels[p], &levels[p + 1], "coface")?;
            }
        }
        for p in 0..=trunc {
            if codegeneracies[p].len() != p {
                return Err(Error::Invalid(format!("level {p} needs {p} codegeneracies")));
            }
            for m in &mut codegeneracies[p] {
                pad_map(m, &levels[p], &levels[p - 1], "codegeneracy")?;
            }
        }
        Ok(CosimplicialComplex { levels, cofaces, codegeneracies })
    }

    /// The constant cosimplicial object on `a` (all structure maps identities).
    pub fn constant(a: &CochainComplex<F>, trunc: usize) -> Self {
        let id: LevelMap<F> = (0..=a.top_degree()).map(|q| Matrix::identity(a.dim(q))).collect();
        CosimplicialComplex {
            levels: vec![a.clone(); trunc + 1],
            cofaces: (0..trunc).map(|p| vec![id.clone(); p + 2]).collect(),
            codegeneracies: (0..=trunc).map(|p| vec![id.clone(); p]).collect(),
        }
    }

    pub fn trunc(&self) -> usize {
        self.levels.len() - 1
    }

    /// Common top cochain degree of the levels.
    pub fn vertical_top(&self) -> usize {
        self.levels[0].top_degree()
    }

    pub fn level(&self, p: usize) -> &CochainComplex<F> {
        &self.levels[p]
    }

    pub fn coface(&self, p: usize, i: usize) -> &LevelMap<F> {
        &self.cofaces[p][i]
    }

    pub fn codegeneracy(&self, p: usize, i: usize) -> &LevelMap<F> {
        &self.codegeneracies[p][i]
    }

    /// Keep only levels `0..=trunc`.
    pub fn truncated(&self, trunc: usize) -> Self {
        let t = trunc.min(self.trunc());
        CosimplicialComplex {
            levels: self.levels[..=t].to_vec(),
            cofaces: self.cofaces[..t].to_vec(),
            codegeneracies: self.codegeneracies[..=t].to_vec(),
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        let trunc = self.trunc();
        let fail = |identity: &str, level| Err(Error::CosimplicialIdentity { identity: identity.into(), level });
        let commutes = |src: &CochainComplex<F>, tgt: &CochainComplex<F>, m: &LevelMap<F>| {
            (0..src.top_degree()).all(|q| tgt.diff(q).mul(&m[q]) == m[q + 1].mul(&src.diff(q)))
        };
        for p in 0..trunc {
            for (i, m) in self.cofaces[p].iter().enumerate() {
                if !commutes(&self.levels[p], &self.levels[p + 1], m) {
                    return fail(&format!("coface d^{i} is not a chain map"), p);
                }
            }
        }
        for p in 1..=trunc {
            for (i, m) in self.codegeneracies[p].iter().enumerate() {
                if !commutes(&self.levels[p], &self.levels[p - 1], m) {
                    return fail(&format!("codegeneracy s^{i} is not a chain map"), p);
                }
            }
        }
        // d^j d^i = d^i d^{j-1}, i < j, from level p
        for p in 0..trunc.saturating_sub(1) {
            for j in 1..=p + 2 {
                for i in 0..j {
                    let lhs = compose(&self.cofaces[p + 1][j], &self.cofaces[p][i]);
                    let rhs = compose(&self.cofaces[p + 1][i], &self.cofaces[p][j - 1]);
                    if lhs != rhs {
                        return fail(&format!("d^{j} d^{i} = d^{i} d^{}", j - 1), p);
                    }
                }
            }
        }
        // s^j s^i = s^i s^{j+1}, i ≤ j, from level p
        for p in 2..=trunc {
            for j in 0..p - 1 {
                for i in 0..=j {
                    let lhs = compose(&self.codegeneracies[p - 1][j], &self.codegeneracies[p][i]);
                    let rhs = compose(&self.codegeneracies[p - 1][i], &self.codegeneracies[p][j + 1]);
                    if lhs != rhs {
                        return fail(&format!("s^{j} s^{i} = s^{i} s^{}", j + 1), p);
                    }
                }
            }
        }
        // s^j d^i on level p
        for p in 0..trunc {
            for j in 0..=p {
                for i in 0..=p + 1 {
                    let lhs = compose(&self.codegeneracies[p + 1][j], &self.cofaces[p][i]);
                    let ok = if i < j {
                        lhs == compose(&self.cofaces[p - 1][i], &self.codegeneracies[p][j - 1])
                    } else if i == j || i == j + 1 {
                        lhs.iter().all(|m| m.is_identity() || (m.nrows() == 0 && m.ncols() == 0))
                    } else {
                        lhs == compose(&self.cofaces[p - 1][i - 1], &self.codegeneracies[p][j])
                    };
                    if !ok {
                        return fail(&format!("s^{j} d^{i}"), p);
                    }
                }
            }
        }
        Ok(())
    }

    /// The map induced by an injective monotone `[p] → [n]` given by its sorted image.
    pub fn coface_composite(&self, image: &[usize], n: usize) -> LevelMap<F> {
        let p = image.len() - 1;
        let missing = combi::complement(n + 1, image);
        let mut acc: LevelMap<F> =
            (0..=self.vertical_top()).map(|q| Matrix::identity(self.levels[p].dim(q))).collect();
        for (k, &m) in missing.iter().enumerate() {
            acc = compose(&self.cofaces[p + k][m], &acc);
        }
        acc
    }

    /// Apply the coface composite for `image ⊆ [n]` to a vector in cochain degree `q`.
    pub fn apply_coface_composite(&self, image: &[usize], n: usize, q: usize, v: &[(usize, F)]) -> SparseVec<F> {
        let p = image.len() - 1;
        let missing = combi::complement(n + 1, image);
        let mut cur = v.to_vec();
        for (k, &m) in missing.iter().enumerate() {
            cur = apply_map(&self.cofaces[p + k][m], q, &cur);
        }
        cur
    }

    /// `s^{j_1} ∘ … ∘ s^{j_k}` applied from level `n`, for sorted distinct `js`.
    pub fn codegeneracy_composite(&self, js: &[usize], n: usize) -> LevelMap<F> {
        let mut acc: LevelMap<F> =
            (0..=self.vertical_top()).map(|q| Matrix::identity(self.levels[n].dim(q))).collect();
        let mut level = n;
        for &j in js.iter().rev() {
            acc = compose(&self.codegeneracies[level][j], &acc);
            level -= 1;
        }
        acc
    }

    /// Level-wise direct sum.
    pub fn direct_sum(&self, other: &Self) -> Result<Self, Error> {
        let t = self.trunc().min(other.trunc());
        let levels = (0..=t).map(|p| self.levels[p].direct_sum(&other.levels[p])).collect();
        let top = self.vertical_top().max(other.vertical_top());
        let sum = |a: &LevelMap<F>, b: &LevelMap<F>, sa: &CochainComplex<F>, sb: &CochainComplex<F>, ta: &CochainComplex<F>, tb: &CochainComplex<F>| {
            (0..=top)
                .map(|q| {
                    let ma = a.get(q).cloned().unwrap_or_else(|| Matrix::zeros(ta.dim(q), sa.dim(q)));
                    let mb = b.get(q).cloned().unwrap_or_else(|| Matrix::zeros(tb.dim(q), sb.dim(q)));
                    Matrix::block_diag(&[&ma, &mb])
                })
                .collect::<LevelMap<F>>()
        };
        let cofaces = (0..t)
            .map(|p| {
                (0..p + 2)
                    .map(|i| sum(&self.cofaces[p][i], &other.cofaces[p][i], &self.levels[p], &other.levels[p], &self.levels[p + 1], &other.levels[p + 1]))
                    .collect()
            })
            .collect();
        let codegs = (0..=t)
            .map(|p| {
                (0..p)
                    .map(|i| sum(&self.codegeneracies[p][i], &other.codegeneracies[p][i], &self.levels[p], &other.levels[p], &self.levels[p - 1], &other.levels[p - 1]))
                    .collect()
            })
            .collect();
        Self::assemble(levels, cofaces, codegs)
    }

    /// Level-wise tensor product `v ⊗ w` with diagonal structure maps.
    pub fn level_tensor(&self, other: &Self) -> Self {
        Self::tensor_all(&[self, other])
    }

    /// Left-nested level-wise tensor product of several cosimplicial complexes.
    pub fn tensor_all(factors: &[&Self]) -> Self {
        assert!(!factors.is_empty(), "empty level-wise tensor product");
        let t = factors.iter().map(|f| f.trunc()).min().unwrap_or(0);
        let levels: Vec<CochainComplex<F>> =
            (0..=t).map(|p| CochainComplex::tensor_all(&factors.iter().map(|f| &f.levels[p]).collect::<Vec<_>>())).collect();
        let tensor_maps = |src: usize, tgt: usize, pick: &dyn Fn(&Self) -> &LevelMap<F>| -> LevelMap<F> {
            let mut acc: Option<ChainMap<F>> = None;
            for f in factors {
                let m = ChainMap::from_parts(f.levels[src].clone(), f.levels[tgt].clone(), pick(f).clone());
                acc = Some(match acc {
                    None => m,
                    Some(a) => a.tensor(&m),
                });
            }
            acc.expect("nonempty").components().to_vec()
        };
        let cofaces = (0..t)
            .map(|p| (0..p + 2).map(|i| tensor_maps(p, p + 1, &|f: &Self| &f.cofaces[p][i])).collect())
            .collect();
        let codegs = (0..=t)
            .map(|p| (0..p).map(|i| tensor_maps(p, p - 1, &|f: &Self| &f.codegeneracies[p][i])).collect())
            .collect();
        Self::assemble(levels, cofaces, codegs).expect("tensor of valid cosimplicial complexes")
    }

    /// The conormalized double complex.
    pub fn conormalize(&self) -> Result<Conormalized<F>, Error> {
        let trunc = self.trunc();
        let top = self.vertical_top();
        let mut bases = Vec::with_capacity(trunc + 1);
        for p in 0..=trunc {
            let row: Vec<Subspace<F>> = (0..=top)
                .map(|q| {
                    if p == 0 {
                        Subspace::full(self.levels[0].dim(q))
                    } else {
                        let stacked: Vec<&Matrix<F>> = self.codegeneracies[p].iter().map(|s| &s[q]).collect();
                        Subspace::kernel(&Matrix::vstack(&stacked))
                    }
                })
                .collect();
            bases.push(row);
        }
        let mut horiz = Vec::with_capacity(trunc);
        for p in 0..trunc {
            let mut row = Vec::with_capacity(top + 1);
            for q in 0..=top {
                let cols: Result<Vec<SparseVec<F>>, Error> = bases[p][q]
                    .basis()
                    .iter()
                    .map(|b| {
                        let mut acc: SparseVec<F> = Vec::new();
                        for (i, d) in self.cofaces[p].iter().enumerate() {
                            acc = crate::homalg::vector::axpy(&acc, &F::sign(i), &d[q].apply(b));
                        }
                        bases[p + 1][q].coords(&acc).ok_or_else(|| {
                            Error::Invalid(format!(
                                "δ does not preserve the codegeneracy kernels at level {p}, degree {q}"
                            ))
                        })
                    })
                    .collect();
                row.push(Matrix::from_columns(bases[p + 1][q].dim(), bases[p][q].dim(), &cols?));
            }
            horiz.push(row);
        }
        let mut vert = Vec::with_capacity(trunc + 1);
        for p in 0..=trunc {
            let mut row = Vec::with_capacity(top);
            for q in 0..top {
                let d = self.levels[p].diff(q);
                let cols: Vec<SparseVec<F>> = bases[p][q]
                    .basis()
                    .iter()
                    .map(|b| bases[p][q + 1].coords(&d.apply(b)).expect("codegeneracies are chain maps"))
                    .collect();
                row.push(Matrix::from_columns(bases[p][q + 1].dim(), bases[p][q].dim(), &cols));
            }
            vert.push(row);
        }
        Ok(Conormalized { bases, horiz, vert })
    }

    fn require(&self, n_max: usize) -> Result<(), Error> {
        if self.trunc() < n_max + 1 {
            return Err(Error::InsufficientTruncation { needed: n_max + 1, available: self.trunc() });
        }
        Ok(())
    }

    /// Total complex of the conormalization through degree `n_max`.
    ///
    /// The result has degrees `0..=n_max + 1` and is exact through `n_max`.
    pub fn tot_simple(&self, n_max: usize) -> Result<Total<F>, Error> {
        self.require(n_max)?;
        let norm = self.conormalize()?;
        Ok(Total::build(norm, n_max))
    }

    /// Total complex of the unnormalized cochains, for cross-validation on small inputs.
    pub fn tot_raw(&self, n_max: usize) -> Result<CochainComplex<F>, Error> {
        self.require(n_max)?;
        let top = self.vertical_top();
        let norm = Conormalized {
            bases: (0..=self.trunc())
                .map(|p| (0..=top).map(|q| Subspace::full(self.levels[p].dim(q))).collect())
                .collect(),
            horiz: (0..self.trunc())
                .map(|p| {
                    (0..=top)
                        .map(|q| {
                            let mut acc = Matrix::zeros(self.levels[p + 1].dim(q), self.levels[p].dim(q));
                            for (i, d) in self.cofaces[p].iter().enumerate() {
                                acc = acc.add(&d[q].scale(&F::sign(i)));
                            }
                            acc
                        })
                        .collect()
                })
                .collect(),
            vert: (0..=self.trunc()).map(|p| (0..top).map(|q| self.levels[p].diff(q)).collect()).collect(),
        };
        Ok(Total::build(norm, n_max).complex)
    }

    /// `λ : a → s(c a)`, the inclusion into the `p = 0` column.
    pub fn lambda(a: &CochainComplex<F>, n_max: usize) -> ChainMap<F> {
        let c = Self::constant(a, n_max + 1);
        let tot = c.tot_simple(n_max).expect("constant object has enough levels");
        let comps = (0..=n_max + 1).map(|n| {
            let mut entries = Vec::new();
            for k in 0..a.dim(n) {
                entries.push((tot.pos(0, n, k), k, F::one()));
            }
            Matrix::from_triplets(tot.complex.dim(n), a.dim(n), entries)
        });
        let mut comps: Vec<Matrix<F>> = comps.collect();
        for n in n_max + 2..=a.top_degree() {
            comps.push(Matrix::zeros(0, a.dim(n)));
        }
        ChainMap::from_parts(a.clone(), tot.complex, comps)
    }

    /// Projections onto the conormalized part along the images of `d^1, …, d^p`.
    pub fn normalization_projections(&self, norm: &Conormalized<F>, p: usize) -> Vec<Matrix<F>> {
        (0..=self.vertical_top())
            .map(|q| {
                let dim = self.levels[p].dim(q);
                let n = &norm.bases[p][q];
                if p == 0 || n.dim() == dim {
                    // N is everything; coordinates are read at pivots
                    let rows: Vec<SparseVec<F>> = (0..dim).map(|c| n.coords(&crate::homalg::vector::unit(c)).expect("full")).collect();
                    return Matrix::from_columns(n.dim(), dim, &rows);
                }
                let degenerate = Subspace::span(
                    dim,
                    (1..=p).flat_map(|i| self.cofaces[p - 1][i][q].columns()),
                );
                debug_assert_eq!(degenerate.dim() + n.dim(), dim);
                let all = Matrix::vstack(&[&n.basis_matrix(), &degenerate.basis_matrix()]);
                let inv = all.inverse().expect("N and the degenerate part are complementary");
                // v = c^T · all  ⇒  c^T = v^T · all^{-1}
                let idx: Vec<usize> = (0..n.dim()).collect();
                inv.select_cols(&idx).transpose()
            })
            .collect()
    }
}

/// The conormalized double complex: `N^{p,q}` as subspaces of level `p`, degree `q`,
/// with horizontal and vertical differentials in echelon coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conormalized<F: Field> {
    pub bases: Vec<Vec<Subspace<F>>>,
    pub horiz: Vec<Vec<Matrix<F>>>,
    pub vert: Vec<Vec<Matrix<F>>>,
}

impl<F: Field> Conormalized<F> {
    pub fn dim(&self, p: usize, q: usize) -> usize {
        self.bases.get(p).and_then(|r| r.get(q)).map_or(0, |s| s.dim())
    }

    pub fn trunc(&self) -> usize {
        self.bases.len() - 1
    }

    pub fn vertical_top(&self) -> usize {
        self.bases[0].len() - 1
    }
}

/// A total complex together with its block layout.
///
/// In degree `n` the basis lists the blocks `(p, n - p)` for increasing `p`, each
/// block ordered by its echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Total<F: Field> {
    pub complex: CochainComplex<F>,
    pub n_max: usize,
    pub norm: Conormalized<F>,
    offsets: Vec<Vec<usize>>,
}

impl<F: Field> Total<F> {
    pub(crate) fn build(norm: Conormalized<F>, n_max: usize) -> Self {
        let top_n = n_max + 1;
        let trunc = norm.trunc();
        let vtop = norm.vertical_top();
        let mut offsets = Vec::with_capacity(top_n + 1);
        let mut dims = Vec::with_capacity(top_n + 1);
        for n in 0..=top_n {
            let mut off = 0;
            let mut row = Vec::with_capacity(n + 1);
            for p in 0..=n {
                row.push(off);
                if p <= trunc && n - p <= vtop {
                    off += norm.dim(p, n - p);
                }
            }
            offsets.push(row);
            dims.push(off);
        }
        let mut diffs = Vec::with_capacity(top_n);
        for n in 0..top_n {
            let mut entries = Vec::new();
            for p in 0..=n.min(trunc) {
                let q = n - p;
                if q > vtop {
                    continue;
                }
                if p < trunc {
                    for (r, row) in norm.horiz[p][q].rows_iter().enumerate() {
                        for (c, v) in row {
                            entries.push((offsets[n + 1][p + 1] + r, offsets[n][p] + c, v.clone()));
                        }
                    }
                }
                if q < vtop {
                    let s = F::sign(p);
                    for (r, row) in norm.vert[p][q].rows_iter().enumerate() {
                        for (c, v) in row {
                            entries.push((offsets[n + 1][p] + r, offsets[n][p] + c, s.clone() * v.clone()));
                        }
                    }
                }
            }
            diffs.push(Matrix::from_triplets(dims[n + 1], dims[n], entries));
        }
        let complex = CochainComplex::from_parts(dims, diffs, Some(n_max));
        Total { complex, n_max, norm, offsets }
    }

    /// Position of the `k`-th basis vector of `N^{p,q}` in total degree `p + q`.
    pub fn pos(&self, p: usize, q: usize, k: usize) -> usize {
        self.offsets[p + q][p] + k
    }

    /// Inverse of [`pos`](Self::pos).
    pub fn split(&self, n: usize, idx: usize) -> (usize, usize, usize) {
        let row = &self.offsets[n];
        let mut p = row.partition_point(|&o| o <= idx) - 1;
        while self.norm.dim(p, n - p) == 0 || idx - row[p] >= self.norm.dim(p, n - p) {
            p -= 1;
        }
        (p, n - p, idx - row[p])
    }

    /// Raw vector (in level `p`, degree `q`) of a basis element of the total complex.
    pub fn raw(&self, n: usize, idx: usize) -> (usize, usize, &SparseVec<F>) {
        let (p, q, k) = self.split(n, idx);
        (p, q, &self.norm.bases[p][q].basis()[k])
    }

    /// Total-complex coordinates of a raw vector lying in `N^{p,q}`.
    pub fn from_raw(&self, p: usize, q: usize, v: &[(usize, F)]) -> Option<SparseVec<F>> {
        let c = self.norm.bases[p][q].coords(v)?;
        let off = self.offsets[p + q][p];
        Some(c.into_iter().map(|(k, x)| (off + k, x)).collect())
    }

    pub fn degree_top(&self) -> usize {
        self.n_max + 1
    }
}

/// Level-wise chain maps `f_p : v_p → w_p` commuting with all structure maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosimplicialMap<F: Field> {
    pub components: Vec<LevelMap<F>>,
}

impl<F: Field> CosimplicialMap<F> {
    pub fn new(src: &CosimplicialComplex<F>, tgt: &CosimplicialComplex<F>, components: Vec<LevelMap<F>>) -> Result<Self, Error> {
        let t = src.trunc().min(tgt.trunc());
        if components.len() < t + 1 {
            return Err(Error::Invalid("cosimplicial map is missing levels".into()));
        }
        let top = src.vertical_top().max(tgt.vertical_top());
        let mut comps = Vec::new();
        for (p, c) in components.into_iter().take(t + 1).enumerate() {
            let mut c = c;
            for q in c.len()..=top {
                c.push(Matrix::zeros(tgt.level(p).dim(q), src.level(p).dim(q)));
            }
            ChainMap::new(src.level(p).pad(top), tgt.level(p).pad(top), c.clone())?;
            comps.push(c);
        }
        for p in 0..t {
            for i in 0..p + 2 {
                for q in 0..=top.min(src.vertical_top()).min(tgt.vertical_top()) {
                    if tgt.coface(p, i)[q].mul(&comps[p][q]) != comps[p + 1][q].mul(&src.coface(p, i)[q]) {
                        return Err(Error::Invalid(format!("map does not commute with d^{i} at level {p}")));
                    }
                }
            }
        }
        for p in 1..=t {
            for i in 0..p {
                for q in 0..=top.min(src.vertical_top()).min(tgt.vertical_top()) {
                    if tgt.codegeneracy(p, i)[q].mul(&comps[p][q]) != comps[p - 1][q].mul(&src.codegeneracy(p, i)[q]) {
                        return Err(Error::Invalid(format!("map does not commute with s^{i} at level {p}")));
                    }
                }
            }
        }
        Ok(CosimplicialMap { components: comps })
    }

    /// Induced map on total complexes.
    pub fn tot(&self, src: &Total<F>, tgt: &Total<F>) -> ChainMap<F> {
        let top = src.degree_top().min(tgt.degree_top());
        let comps = (0..=top)
            .map(|n| {
                let cols: Vec<SparseVec<F>> = (0..src.complex.dim(n))
                    .map(|idx| {
                        let (p, q, v) = src.raw(n, idx);
                        let image = self.components[p][q].apply(v);
                        tgt.from_raw(p, q, &image).expect("cosimplicial maps preserve conormalization")
                    })
                    .collect();
                Matrix::from_columns(tgt.complex.dim(n), src.complex.dim(n), &cols)
            })
            .collect();
        ChainMap::from_parts(src.complex.clone(), tgt.complex.clone(), comps)
    }
}

#[cfg(test)]
mod tests;
