//! Bicosimplicial cochain complexes, the diagonal, and the comparison map μ.

use alloc::format;
use alloc::vec::Vec;

use super::{compose, CosimplicialComplex, CosimplicialMap, LevelMap, Total};
use crate::field::Field;
use crate::homalg::{ChainMap, CochainComplex, Matrix, SparseVec};
use crate::Error;

/// Levels `Z^{p,q}` for `0 ≤ p, q ≤ trunc`, with horizontal (`p`) and vertical (`q`)
/// cosimplicial structure maps that commute with each other.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BicosimplicialComplex<F: Field> {
    levels: Vec<Vec<CochainComplex<F>>>,
    hcofaces: Vec<Vec<Vec<LevelMap<F>>>>,
    hcodeg: Vec<Vec<Vec<LevelMap<F>>>>,
    vcofaces: Vec<Vec<Vec<LevelMap<F>>>>,
    vcodeg: Vec<Vec<Vec<LevelMap<F>>>>,
}

/// The comparison map `s(s Z) → s(diag Z)` and the complexes it connects.
#[derive(Clone, Debug)]
pub struct Mu<F: Field> {
    pub map: ChainMap<F>,
    /// The cosimplicial complex `p ↦ s(Z^{p,•})`.
    pub rows: CosimplicialComplex<F>,
    pub row_tots: Vec<Total<F>>,
    pub source: Total<F>,
    pub diagonal: CosimplicialComplex<F>,
    pub target: Total<F>,
}

fn tensor_map<F: Field>(
    a: (&CochainComplex<F>, &CochainComplex<F>, &LevelMap<F>),
    b: (&CochainComplex<F>, &CochainComplex<F>, &LevelMap<F>),
) -> LevelMap<F> {
    let f = ChainMap::from_parts(a.0.clone(), a.1.clone(), a.2.clone());
    let g = ChainMap::from_parts(b.0.clone(), b.1.clone(), b.2.clone());
    f.tensor(&g).components().to_vec()
}

fn identity_map<F: Field>(c: &CochainComplex<F>) -> LevelMap<F> {
    (0..=c.top_degree()).map(|q| Matrix::identity(c.dim(q))).collect()
}

impl<F: Field> BicosimplicialComplex<F> {
    /// `Z^{p,q} = v_p ⊗ w_q`.
    pub fn external_tensor(v: &CosimplicialComplex<F>, w: &CosimplicialComplex<F>) -> Self {
        let t = v.trunc().min(w.trunc());
        let levels: Vec<Vec<CochainComplex<F>>> =
            (0..=t).map(|p| (0..=t).map(|q| v.level(p).tensor(w.level(q))).collect()).collect();
        let mut hcofaces = Vec::new();
        let mut hcodeg = Vec::new();
        let mut vcofaces = Vec::new();
        let mut vcodeg = Vec::new();
        for p in 0..=t {
            let mut hc = Vec::new();
            let mut hs = Vec::new();
            let mut vc = Vec::new();
            let mut vs = Vec::new();
            for q in 0..=t {
                let idw = identity_map(w.level(q));
                let idv = identity_map(v.level(p));
                hc.push(if p < t {
                    (0..p + 2)
                        .map(|i| tensor_map((v.level(p), v.level(p + 1), v.coface(p, i)), (w.level(q), w.level(q), &idw)))
                        .collect()
                } else {
                    Vec::new()
                });
                hs.push(
                    (0..p)
                        .map(|i| tensor_map((v.level(p), v.level(p - 1), v.codegeneracy(p, i)), (w.level(q), w.level(q), &idw)))
                        .collect(),
                );
                vc.push(if q < t {
                    (0..q + 2)
                        .map(|i| tensor_map((v.level(p), v.level(p), &idv), (w.level(q), w.level(q + 1), w.coface(q, i))))
                        .collect()
                } else {
                    Vec::new()
                });
                vs.push(
                    (0..q)
                        .map(|i| tensor_map((v.level(p), v.level(p), &idv), (w.level(q), w.level(q - 1), w.codegeneracy(q, i))))
                        .collect(),
                );
            }
            hcofaces.push(hc);
            hcodeg.push(hs);
            vcofaces.push(vc);
            vcodeg.push(vs);
        }
        BicosimplicialComplex { levels, hcofaces, hcodeg, vcofaces, vcodeg }.padded()
    }

    /// Build from raw data and validate every row, column and the commutation of
    /// horizontal with vertical structure maps.
    pub fn new(
        levels: Vec<Vec<CochainComplex<F>>>,
        hcofaces: Vec<Vec<Vec<LevelMap<F>>>>,
        hcodeg: Vec<Vec<Vec<LevelMap<F>>>>,
        vcofaces: Vec<Vec<Vec<LevelMap<F>>>>,
        vcodeg: Vec<Vec<Vec<LevelMap<F>>>>,
    ) -> Result<Self, Error> {
        let z = BicosimplicialComplex { levels, hcofaces, hcodeg, vcofaces, vcodeg }.padded();
        z.validate()?;
        Ok(z)
    }

    fn padded(mut self) -> Self {
        let top = self.levels.iter().flatten().map(|c| c.top_degree()).max().unwrap_or(0);
        for row in &mut self.levels {
            for c in row.iter_mut() {
                *c = c.pad(top);
            }
        }
        let levels = &self.levels;
        let fix = |maps: &mut Vec<Vec<Vec<LevelMap<F>>>>, dp: isize, dq: isize| {
            for (p, row) in maps.iter_mut().enumerate() {
                for (q, fam) in row.iter_mut().enumerate() {
                    if fam.is_empty() {
                        continue;
                    }
                    let src = &levels[p][q];
                    let tgt = &levels[(p as isize + dp) as usize][(q as isize + dq) as usize];
                    for m in fam.iter_mut() {
                        for k in m.len()..=top {
                            m.push(Matrix::zeros(tgt.dim(k), src.dim(k)));
                        }
                    }
                }
            }
        };
        let mut hc = core::mem::take(&mut self.hcofaces);
        let mut hs = core::mem::take(&mut self.hcodeg);
        let mut vc = core::mem::take(&mut self.vcofaces);
        let mut vs = core::mem::take(&mut self.vcodeg);
        fix(&mut hc, 1, 0);
        fix(&mut hs, -1, 0);
        fix(&mut vc, 0, 1);
        fix(&mut vs, 0, -1);
        self.hcofaces = hc;
        self.hcodeg = hs;
        self.vcofaces = vc;
        self.vcodeg = vs;
        self
    }

    pub fn trunc(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, p: usize, q: usize) -> &CochainComplex<F> {
        &self.levels[p][q]
    }

    pub fn validate(&self) -> Result<(), Error> {
        let t = self.trunc();
        for p in 0..=t {
            self.row(p).validate()?;
        }
        for q in 0..=t {
            self.column(q).validate()?;
        }
        // horizontal maps are cosimplicial maps between consecutive rows
        for p in 0..=t {
            for q in 0..t {
                for i in 0..self.hcofaces[p][q].len() {
                    for j in 0..q + 2 {
                        let lhs = compose(&self.vcofaces[p + 1][q][j], &self.hcofaces[p][q][i]);
                        let rhs = compose(&self.hcofaces[p][q + 1][i], &self.vcofaces[p][q][j]);
                        if lhs != rhs {
                            return Err(Error::CosimplicialIdentity {
                                identity: format!("horizontal d^{i} commutes with vertical d^{j} at column {q}"),
                                level: p,
                            });
                        }
                    }
                }
                for i in 0..self.hcodeg[p][q].len() {
                    for j in 0..q + 2 {
                        let lhs = compose(&self.vcofaces[p - 1][q][j], &self.hcodeg[p][q][i]);
                        let rhs = compose(&self.hcodeg[p][q + 1][i], &self.vcofaces[p][q][j]);
                        if lhs != rhs {
                            return Err(Error::CosimplicialIdentity {
                                identity: format!("horizontal s^{i} commutes with vertical d^{j} at column {q}"),
                                level: p,
                            });
                        }
                    }
                }
            }
            for q in 1..=t {
                for i in 0..self.hcofaces[p][q].len() {
                    for j in 0..q {
                        let lhs = compose(&self.vcodeg[p + 1][q][j], &self.hcofaces[p][q][i]);
                        let rhs = compose(&self.hcofaces[p][q - 1][i], &self.vcodeg[p][q][j]);
                        if lhs != rhs {
                            return Err(Error::CosimplicialIdentity {
                                identity: format!("horizontal d^{i} commutes with vertical s^{j} at column {q}"),
                                level: p,
                            });
                        }
                    }
                }
                for i in 0..self.hcodeg[p][q].len() {
                    for j in 0..q {
                        let lhs = compose(&self.vcodeg[p - 1][q][j], &self.hcodeg[p][q][i]);
                        let rhs = compose(&self.hcodeg[p][q - 1][i], &self.vcodeg[p][q][j]);
                        if lhs != rhs {
                            return Err(Error::CosimplicialIdentity {
                                identity: format!("horizontal s^{i} commutes with vertical s^{j} at column {q}"),
                                level: p,
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Row `p`: the cosimplicial complex `q ↦ Z^{p,q}`.
    pub fn row(&self, p: usize) -> CosimplicialComplex<F> {
        let t = self.trunc();
        CosimplicialComplex::assemble(
            self.levels[p].clone(),
            (0..t).map(|q| self.vcofaces[p][q].clone()).collect(),
            (0..=t).map(|q| self.vcodeg[p][q].clone()).collect(),
        )
        .expect("rows are well-shaped")
    }

    /// Column `q`: the cosimplicial complex `p ↦ Z^{p,q}`.
    pub fn column(&self, q: usize) -> CosimplicialComplex<F> {
        let t = self.trunc();
        CosimplicialComplex::assemble(
            (0..=t).map(|p| self.levels[p][q].clone()).collect(),
            (0..t).map(|p| self.hcofaces[p][q].clone()).collect(),
            (0..=t).map(|p| self.hcodeg[p][q].clone()).collect(),
        )
        .expect("columns are well-shaped")
    }

    /// The diagonal `n ↦ Z^{n,n}` with `d^i = d^i_h d^i_v` and `s^i = s^i_h s^i_v`.
    pub fn diagonal(&self) -> CosimplicialComplex<F> {
        let t = self.trunc();
        CosimplicialComplex::assemble(
            (0..=t).map(|n| self.levels[n][n].clone()).collect(),
            (0..t)
                .map(|n| (0..n + 2).map(|i| compose(&self.hcofaces[n][n + 1][i], &self.vcofaces[n][n][i])).collect())
                .collect(),
            (0..=t)
                .map(|n| (0..n).map(|i| compose(&self.hcodeg[n][n - 1][i], &self.vcodeg[n][n][i])).collect())
                .collect(),
        )
        .expect("diagonal is well-shaped")
    }

    /// The cosimplicial complex `p ↦ s(row p)` with induced horizontal maps.
    pub fn tot_rows(&self, n_max: usize) -> Result<(CosimplicialComplex<F>, Vec<Total<F>>), Error> {
        let t = self.trunc();
        let rows: Vec<CosimplicialComplex<F>> = (0..=t).map(|p| self.row(p)).collect();
        let tots: Vec<Total<F>> = rows.iter().map(|r| r.tot_simple(n_max)).collect::<Result<_, _>>()?;
        let induced = |src: usize, tgt: usize, maps: &Vec<Vec<LevelMap<F>>>, i: usize| -> LevelMap<F> {
            let comps: Vec<LevelMap<F>> = (0..=t).map(|q| maps[q][i].clone()).collect();
            let f = CosimplicialMap { components: comps };
            f.tot(&tots[src], &tots[tgt]).components().to_vec()
        };
        let cofaces = (0..t)
            .map(|p| (0..p + 2).map(|i| induced(p, p + 1, &self.hcofaces[p], i)).collect())
            .collect();
        let codegs = (0..=t)
            .map(|p| (0..p).map(|i| induced(p, p - 1, &self.hcodeg[p], i)).collect())
            .collect();
        let levels = tots.iter().map(|x| x.complex.clone()).collect();
        let outer = CosimplicialComplex::assemble(levels, cofaces, codegs)?;
        Ok((outer, tots))
    }

    /// Apply the horizontal coface composite with image `{0, …, p}` in `[p + k]`
    /// and the vertical one with image `{p, …, p + k}`.
    fn front_back(&self, p: usize, q: usize, deg: usize, v: &[(usize, F)]) -> SparseVec<F> {
        let n = p + q;
        let mut cur = v.to_vec();
        for lvl in p..n {
            cur = self.hcofaces[lvl][q][lvl + 1][deg].apply(&cur);
        }
        for (k, lvl) in (q..n).enumerate() {
            cur = self.vcofaces[n][lvl][k][deg].apply(&cur);
        }
        cur
    }

    /// The Alexander–Whitney-type comparison `s(s Z) → s(diag Z)`.
    ///
    /// A class `x ∈ Z^{p,q}` sits in outer level `p` and inner level `q`; its image is
    /// `d_h^{front}(p → p+q) d_v^{back}(q → p+q) x` in `Z^{p+q,p+q}`.
    pub fn mu(&self, n_max: usize) -> Result<Mu<F>, Error> {
        let (rows, row_tots) = self.tot_rows(n_max)?;
        let source = rows.tot_simple(n_max)?;
        let diagonal = self.diagonal();
        let target = diagonal.tot_simple(n_max)?;
        let top = n_max + 1;
        let mut comps = Vec::with_capacity(top + 1);
        for n in 0..=top {
            let mut cols = Vec::with_capacity(source.complex.dim(n));
            for idx in 0..source.complex.dim(n) {
                let (p, r, b) = source.raw(n, idx);
                let inner = &row_tots[p];
                // group by inner level: only the sum over each block is conormalized
                let mut blocks: alloc::collections::BTreeMap<(usize, usize), SparseVec<F>> = Default::default();
                for (k, c) in b {
                    let (q, deg, raw) = inner.raw(r, *k);
                    let image = self.front_back(p, q, deg, raw);
                    let e = blocks.entry((q, deg)).or_default();
                    *e = crate::homalg::vector::axpy(e, c, &image);
                }
                let mut acc: SparseVec<F> = Vec::new();
                for ((q, deg), image) in blocks {
                    let coords = target
                        .from_raw(p + q, deg, &image)
                        .ok_or_else(|| Error::Invalid("μ image is not conormalized".into()))?;
                    acc = crate::homalg::vector::add(&acc, &coords);
                }
                cols.push(acc);
            }
            comps.push(Matrix::from_columns(target.complex.dim(n), source.complex.dim(n), &cols));
        }
        let map = ChainMap::from_parts(source.complex.clone(), target.complex.clone(), comps);
        Ok(Mu { map, rows, row_tots, source, diagonal, target })
    }
}
