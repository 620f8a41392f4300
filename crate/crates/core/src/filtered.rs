//! Filtered cochain complexes: tensor products, décalage, spectral sequence
//! pages, `E_r`-quasi-isomorphisms and the `σ_r` filtrations on the simple.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::cosimp::{CosimplicialComplex, Total};
use crate::field::Field;
use crate::homalg::{ChainMap, CochainComplex, Matrix, SparseVec, Subspace, TensorLayout};
use crate::site::{Open, Sheaf};
use crate::Error;

/// A complex with a finite decreasing filtration by subcomplexes.
///
/// `F^k` is everything for `k ≤ min` and zero for `k ≥ max`; in between it is stored
/// degree-wise as `steps[k - min][n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredComplex<F: Field> {
    complex: CochainComplex<F>,
    min: i64,
    steps: Vec<Vec<Subspace<F>>>,
}

fn same<F: Field>(a: &Subspace<F>, b: &Subspace<F>) -> bool {
    a.dim() == b.dim() && a.is_subspace_of(b)
}

impl<F: Field> FilteredComplex<F> {
    /// Validate and build. `steps[0]` must be everything; the filtration ends with zero
    /// at `min + steps.len()`.
    pub fn new(complex: CochainComplex<F>, min: i64, steps: Vec<Vec<Subspace<F>>>) -> Result<Self, Error> {
        let f = FilteredComplex { complex, min, steps };
        f.validate()?;
        Ok(f)
    }

    /// `F^0` = everything, `F^1 = 0`.
    pub fn trivial(complex: &CochainComplex<F>) -> Self {
        let full = (0..=complex.top_degree()).map(|n| Subspace::full(complex.dim(n))).collect();
        FilteredComplex { complex: complex.clone(), min: 0, steps: alloc::vec![full] }
    }

    /// The bête filtration: `F^k` is the part in degrees `≥ k`.
    pub fn bete(complex: &CochainComplex<F>) -> Self {
        let top = complex.top_degree();
        let steps = (0..=top)
            .map(|k| {
                (0..=top)
                    .map(|n| if n >= k { Subspace::full(complex.dim(n)) } else { Subspace::zero(complex.dim(n)) })
                    .collect()
            })
            .collect();
        FilteredComplex { complex: complex.clone(), min: 0, steps }
    }

    /// Filtration of a total complex by cosimplicial degree: `F^k = ⊕_{p ≥ k} N^{p,•}`.
    pub fn columns(total: &Total<F>) -> Self {
        let c = &total.complex;
        let top = c.top_degree();
        let steps = (0..=top)
            .map(|k| {
                (0..=top)
                    .map(|n| {
                        let idx = (0..c.dim(n)).filter(|&i| total.split(n, i).0 >= k);
                        Subspace::coordinate(c.dim(n), idx)
                    })
                    .collect()
            })
            .collect();
        FilteredComplex { complex: c.clone(), min: 0, steps }
    }

    pub fn complex(&self) -> &CochainComplex<F> {
        &self.complex
    }

    pub fn min(&self) -> i64 {
        self.min
    }

    /// First index at which the filtration vanishes.
    pub fn max(&self) -> i64 {
        self.min + self.steps.len() as i64
    }

    pub fn length(&self) -> usize {
        self.steps.len()
    }

    /// `F^k` in degree `n`.
    pub fn level(&self, k: i64, n: usize) -> Subspace<F> {
        let dim = self.complex.dim(n);
        if k <= self.min {
            Subspace::full(dim)
        } else if k >= self.max() || n > self.complex.top_degree() {
            Subspace::zero(dim)
        } else {
            self.steps[(k - self.min) as usize][n].clone()
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        let c = &self.complex;
        let top = c.top_degree();
        if self.steps.is_empty() {
            return Err(Error::Invalid("a filtration needs at least one step".into()));
        }
        for (s, step) in self.steps.iter().enumerate() {
            if step.len() != top + 1 {
                return Err(Error::DimensionMismatch { what: "filtration step", degree: s });
            }
            for n in 0..=top {
                if step[n].ambient() != c.dim(n) {
                    return Err(Error::DimensionMismatch { what: "filtration subspace", degree: n });
                }
            }
        }
        for n in 0..=top {
            if !self.steps[0][n].is_full() {
                return Err(Error::Invalid("the lowest filtration step must be everything".into()));
            }
        }
        for k in self.min..self.max() {
            for n in 0..=top {
                let f = self.level(k, n);
                if !self.level(k + 1, n).is_subspace_of(&f) {
                    return Err(Error::Invalid(alloc::format!("filtration increases at step {k}, degree {n}")));
                }
                if n < top && !f.map(&c.diff(n)).is_subspace_of(&self.level(k, n + 1)) {
                    return Err(Error::Invalid(alloc::format!("step {k} is not a subcomplex in degree {n}")));
                }
            }
        }
        Ok(())
    }

    /// Same complex and the same subspaces `F^k` for every `k`, in degrees `≤ through`.
    pub fn agrees_through(&self, other: &Self, through: usize) -> bool {
        if self.complex != other.complex {
            return false;
        }
        let lo = self.min.min(other.min);
        let hi = self.max().max(other.max());
        (lo..=hi).all(|k| (0..=through).all(|n| same(&self.level(k, n), &other.level(k, n))))
    }

    /// Degree-wise direct sum of filtered complexes (blocks in the given order).
    pub fn direct_sum(parts: &[&Self], top: usize) -> Self {
        let complex = parts.iter().fold(CochainComplex::zero().pad(top), |acc, p| acc.direct_sum(&p.complex));
        let min = parts.iter().map(|p| p.min).min().unwrap_or(0);
        let max = parts.iter().map(|p| p.max()).max().unwrap_or(1).max(min + 1);
        let steps = (min..max)
            .map(|k| {
                (0..=top)
                    .map(|n| {
                        let mut gens = Vec::new();
                        let mut off = 0;
                        for p in parts {
                            for b in p.level(k, n).basis() {
                                gens.push(b.iter().map(|(i, x)| (i + off, x.clone())).collect());
                            }
                            off += p.complex.dim(n);
                        }
                        Subspace::span(complex.dim(n), gens)
                    })
                    .collect()
            })
            .collect();
        FilteredComplex { complex, min, steps }
    }

    /// Is `f : self → other` filtration-preserving? Reports the first offending `(k, n)`.
    pub fn check_preserved(&self, other: &Self, f: &ChainMap<F>) -> Result<(), Error> {
        let lo = self.min.min(other.min);
        let hi = self.max().max(other.max());
        for k in lo..=hi {
            for n in 0..=self.complex.top_degree() {
                let img = self.level(k, n).map(&f.component(n));
                if !img.is_subspace_of(&other.level(k, n)) {
                    return Err(Error::NotFiltrationPreserving { level: k, degree: n });
                }
            }
        }
        Ok(())
    }
}

/// `(F ⊗ G)^k (A ⊗ B)^n = ⊕_{i+j=n} Σ_{s+t=k} F^s A^i ⊗ G^t B^j`.
pub fn filtered_tensor<F: Field>(a: &FilteredComplex<F>, b: &FilteredComplex<F>) -> FilteredComplex<F> {
    let complex = a.complex.tensor(&b.complex);
    let layout = TensorLayout::new(a.complex.dims(), b.complex.dims());
    let top = complex.top_degree();
    let min = a.min + b.min;
    let max = a.max() + b.max() - 1;
    let steps = (min..max)
        .map(|k| {
            (0..=top)
                .map(|n| {
                    let mut gens: Vec<SparseVec<F>> = Vec::new();
                    for i in 0..=n.min(a.complex.top_degree()) {
                        let j = n - i;
                        if j > b.complex.top_degree() {
                            continue;
                        }
                        for s in a.min..a.max() {
                            let fa = a.level(s, i);
                            let gb = b.level(k - s, j);
                            for x in fa.basis() {
                                for y in gb.basis() {
                                    let mut v: SparseVec<F> = Vec::new();
                                    for (ia, ca) in x {
                                        for (ib, cb) in y {
                                            v.push((layout.pos(i, j, *ia, *ib), ca.clone() * cb.clone()));
                                        }
                                    }
                                    v.sort_unstable_by_key(|e| e.0);
                                    gens.push(v);
                                }
                            }
                        }
                    }
                    Subspace::span(complex.dim(n), gens)
                })
                .collect()
        })
        .collect();
    FilteredComplex { complex, min, steps }
}

/// `(Dec F)^p` in degree `n` is `{ v ∈ F^{p+n} : dv ∈ F^{p+n+1} }`.
pub fn decalage<F: Field>(a: &FilteredComplex<F>) -> FilteredComplex<F> {
    let c = &a.complex;
    let top = c.top_degree() as i64;
    let min = a.min - top - 1;
    let max = a.max();
    let steps = (min..max)
        .map(|p| {
            (0..=c.top_degree())
                .map(|n| {
                    let k = p + n as i64;
                    Subspace::preimage(&c.diff(n), &a.level(k + 1, n + 1), Some(&a.level(k, n)))
                })
                .collect()
        })
        .collect();
    FilteredComplex { complex: c.clone(), min, steps }
}

/// One entry `E_r^{p,q}` of a spectral sequence page, with `n = p + q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PageEntry<F: Field> {
    /// `Z_r^{p,q}`.
    pub cycles: Subspace<F>,
    /// `Z_{r-1}^{p+1,q-1} + B_{r-1}^{p,q}`.
    pub denominator: Subspace<F>,
    /// Representatives of a basis of the quotient.
    pub reps: Subspace<F>,
}

impl<F: Field> PageEntry<F> {
    pub fn dim(&self) -> usize {
        self.reps.dim()
    }

    /// Coordinates of the class of `v ∈ Z_r^{p,q}`.
    pub fn class_of(&self, v: &[(usize, F)]) -> Option<SparseVec<F>> {
        self.reps.coords(&self.denominator.reduce(v))
    }
}

/// The page `E_r` of the spectral sequence of a filtered complex, indexed by
/// filtration degree `p` and total degree `n`; `d_r : (p, n) → (p + r, n + 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralPage<F: Field> {
    pub r: usize,
    pub entries: BTreeMap<(i64, usize), PageEntry<F>>,
    pub differentials: BTreeMap<(i64, usize), Matrix<F>>,
}

impl<F: Field> SpectralPage<F> {
    /// `dim E_r^{p, n-p}` (zero outside the stored range).
    pub fn dim(&self, p: i64, n: usize) -> usize {
        self.entries.get(&(p, n)).map_or(0, |e| e.dim())
    }

    /// Nonzero entries as `((p, q), dim)`.
    pub fn dims(&self) -> Vec<((i64, i64), usize)> {
        self.entries
            .iter()
            .filter(|(_, e)| e.dim() > 0)
            .map(|(&(p, n), e)| ((p, n as i64 - p), e.dim()))
            .collect()
    }

    pub fn differential(&self, p: i64, n: usize) -> Option<&Matrix<F>> {
        self.differentials.get(&(p, n))
    }
}

/// `Z_r^p` in degree `n`: `{ x ∈ F^p : dx ∈ F^{p+r} }`; for `r ≤ 0` just `F^p`.
fn cycles<F: Field>(a: &FilteredComplex<F>, r: i64, p: i64, n: usize) -> Subspace<F> {
    let fp = a.level(p, n);
    if r <= 0 {
        return fp;
    }
    Subspace::preimage(&a.complex.diff(n), &a.level(p + r, n + 1), Some(&fp))
}

fn entry<F: Field>(a: &FilteredComplex<F>, r: i64, p: i64, n: usize) -> PageEntry<F> {
    let z = cycles(a, r, p, n);
    let mut den = cycles(a, r - 1, p + 1, n);
    if n > 0 {
        den = den.sum(&cycles(a, r - 1, p - r + 1, n - 1).map(&a.complex.diff(n - 1)));
    }
    let reps = z.complement_in(&den);
    PageEntry { cycles: z, denominator: den, reps }
}

/// `E_r^{p,q} = Z_r^{p,q} / (Z_{r-1}^{p+1,q-1} + B_{r-1}^{p,q})` with the induced `d_r`.
pub fn er_page<F: Field>(a: &FilteredComplex<F>, r: usize) -> SpectralPage<F> {
    let top = a.complex.top_degree();
    let ri = r as i64;
    let mut entries = BTreeMap::new();
    for p in a.min..a.max() {
        for n in 0..=top {
            entries.insert((p, n), entry(a, ri, p, n));
        }
    }
    let mut differentials = BTreeMap::new();
    for (&(p, n), e) in &entries {
        let d = a.complex.diff(n);
        let tgt = entries.get(&(p + ri, n + 1));
        let rows = tgt.map_or(0, |t| t.dim());
        let cols: Vec<SparseVec<F>> = e
            .reps
            .basis()
            .iter()
            .map(|x| match tgt {
                Some(t) => t.class_of(&d.apply(x)).expect("d maps Z_r^p into Z_r^{p+r}"),
                None => Vec::new(),
            })
            .collect();
        differentials.insert((p, n), Matrix::from_columns(rows, e.dim(), &cols));
    }
    SpectralPage { r, entries, differentials }
}

/// The page at which the spectral sequence has degenerated.
pub fn stable_page<F: Field>(a: &FilteredComplex<F>) -> SpectralPage<F> {
    er_page(a, a.length() + 1)
}

/// Does the filtration-preserving map `f` induce an isomorphism on `E_{r+1}`?
pub fn is_er_quasi_iso<F: Field>(src: &FilteredComplex<F>, tgt: &FilteredComplex<F>, f: &ChainMap<F>, r: usize) -> Result<bool, Error> {
    src.check_preserved(tgt, f)?;
    let a = er_page(src, r + 1);
    let b = er_page(tgt, r + 1);
    let lo = src.min.min(tgt.min);
    let hi = src.max().max(tgt.max());
    let top = src.complex.top_degree().max(tgt.complex.top_degree());
    for p in lo..hi {
        for n in 0..=top {
            let (da, db) = (a.dim(p, n), b.dim(p, n));
            if da != db {
                return Ok(false);
            }
            if da == 0 {
                continue;
            }
            let (ea, eb) = (&a.entries[&(p, n)], &b.entries[&(p, n)]);
            let fm = f.component(n);
            let cols: Vec<SparseVec<F>> = ea
                .reps
                .basis()
                .iter()
                .map(|x| eb.class_of(&fm.apply(x)).expect("filtered maps send Z_r to Z_r"))
                .collect();
            if Matrix::from_columns(db, da, &cols).inverse().is_none() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A cosimplicial complex with a filtration on every level preserved by all
/// structure maps.
#[derive(Clone, Debug)]
pub struct FilteredCosimplicial<F: Field> {
    pub cosimplicial: CosimplicialComplex<F>,
    pub levels: Vec<FilteredComplex<F>>,
}

impl<F: Field> FilteredCosimplicial<F> {
    pub fn new(cosimplicial: CosimplicialComplex<F>, levels: Vec<FilteredComplex<F>>) -> Result<Self, Error> {
        let trunc = cosimplicial.trunc();
        if levels.len() != trunc + 1 {
            return Err(Error::LevelMismatch(levels.len(), trunc + 1));
        }
        for p in 0..=trunc {
            if levels[p].complex() != cosimplicial.level(p) {
                return Err(Error::DimensionMismatch { what: "filtered level", degree: p });
            }
        }
        let lift = |src: usize, tgt: usize, m: &crate::cosimp::LevelMap<F>| {
            ChainMap::from_parts(cosimplicial.level(src).clone(), cosimplicial.level(tgt).clone(), m.clone())
        };
        for p in 0..trunc {
            for i in 0..=p + 1 {
                levels[p].check_preserved(&levels[p + 1], &lift(p, p + 1, cosimplicial.coface(p, i)))?;
            }
        }
        for p in 1..=trunc {
            for i in 0..p {
                levels[p].check_preserved(&levels[p - 1], &lift(p, p - 1, cosimplicial.codegeneracy(p, i)))?;
            }
        }
        Ok(FilteredCosimplicial { cosimplicial, levels })
    }

    /// Constant cosimplicial object on a filtered complex.
    pub fn constant(a: &FilteredComplex<F>, trunc: usize) -> Self {
        FilteredCosimplicial { cosimplicial: CosimplicialComplex::constant(a.complex(), trunc), levels: alloc::vec![a.clone(); trunc + 1] }
    }

    /// Level-wise décalage.
    pub fn decalage(&self) -> Self {
        FilteredCosimplicial { cosimplicial: self.cosimplicial.clone(), levels: self.levels.iter().map(decalage).collect() }
    }

    /// `Γ(u, G^•F)` with the filtration induced from a filtration of each value of `f`
    /// (subcomplexes preserved by restrictions).
    pub fn godement(f: &Sheaf<F>, filtrations: &[FilteredComplex<F>], u: &Open, trunc: usize) -> Result<Self, Error> {
        let site = f.site();
        let v = crate::godement::godement_sections(f, u, trunc);
        let top = v.vertical_top();
        let levels = (0..=trunc)
            .map(|p| {
                let parts: Vec<&FilteredComplex<F>> =
                    site.multichains(u, p).iter().map(|c| &filtrations[*c.last().expect("chain")]).collect();
                FilteredComplex::direct_sum(&parts, top)
            })
            .collect();
        Self::new(v, levels)
    }
}

/// The `σ_r` filtration on the simple of a filtered cosimplicial complex, through
/// degree `n_max`.
///
/// The simple is realized by its Whitney model, the conormalized total complex, in
/// which cosimplicial degree `p` is the form degree. In total degree `n`,
/// `σ_r^k = ⊕_{p + j = n} N^{p,j} ∩ F^{k - r p} V^{p,j}`.
pub fn sigma_r_filtration<F: Field>(v: &FilteredCosimplicial<F>, r: usize, n_max: usize) -> Result<(Total<F>, FilteredComplex<F>), Error> {
    let total = v.cosimplicial.tot_simple(n_max)?;
    let c = &total.complex;
    let top = c.top_degree();
    let levels = &v.levels;
    let ri = r as i64;
    let min = levels.iter().map(|l| l.min).min().unwrap_or(0);
    let max = (0..=top.min(levels.len() - 1)).map(|p| levels[p].max() + ri * p as i64).max().unwrap_or(1);
    let steps = (min..max)
        .map(|k| {
            (0..=top)
                .map(|n| {
                    let mut gens: Vec<SparseVec<F>> = Vec::new();
                    for p in 0..=n.min(levels.len() - 1) {
                        let j = n - p;
                        let Some(np) = total.norm.bases.get(p).and_then(|row| row.get(j)) else { continue };
                        let part = np.intersect(&levels[p].level(k - ri * p as i64, j));
                        for b in part.basis() {
                            gens.push(total.from_raw(p, j, b).expect("inside the conormalization"));
                        }
                    }
                    Subspace::span(c.dim(n), gens)
                })
                .collect()
        })
        .collect();
    let f = FilteredComplex { complex: c.clone(), min, steps };
    Ok((total, f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use alloc::vec;

    type Q = Rational;

    fn line() -> CochainComplex<Q> {
        CochainComplex::unit()
    }

    fn interval() -> CochainComplex<Q> {
        CochainComplex::new(vec![1, 1], vec![Matrix::identity(1)]).unwrap()
    }

    fn two_step_line(k: i64) -> FilteredComplex<Q> {
        // F^{≤k} = Q, F^{k+1} = 0
        FilteredComplex::new(line(), k, vec![vec![Subspace::full(1)]]).unwrap()
    }

    #[test]
    fn tensor_of_trivial_filtrations_is_trivial() {
        let a = FilteredComplex::trivial(&interval());
        let t = filtered_tensor(&a, &FilteredComplex::trivial(&line()));
        assert!(t.agrees_through(&a, 1));
        let b = FilteredComplex::bete(&interval());
        let t = filtered_tensor(&b, &FilteredComplex::trivial(&line()));
        assert!(t.agrees_through(&b, 1));
    }

    #[test]
    fn tensor_of_weighted_lines_adds_weights() {
        let t = filtered_tensor(&two_step_line(1), &two_step_line(2));
        assert!(t.level(3, 0).is_full());
        assert!(t.level(4, 0).is_zero());
        t.validate().unwrap();
    }

    #[test]
    fn decalage_of_zero_differential_shifts_by_degree() {
        let c = CochainComplex::<Q>::graded(vec![1, 2, 1]);
        let a = FilteredComplex::trivial(&c);
        let d = decalage(&a);
        d.validate().unwrap();
        for n in 0..=2usize {
            let n_i = n as i64;
            assert!(d.level(-n_i, n).is_full());
            assert!(d.level(-n_i + 1, n).is_zero());
        }
    }

    #[test]
    fn decalage_of_bete_interval() {
        // Q → Q with the bête filtration: F^p = degrees ≥ p.
        let a = FilteredComplex::bete(&interval());
        let d = decalage(&a);
        // degree 0: v ∈ F^p and dv ∈ F^{p+1}; degree 1: v ∈ F^{p+1}
        assert!(d.level(0, 0).is_full());
        assert!(d.level(1, 0).is_zero());
        assert!(d.level(0, 1).is_full());
        assert!(d.level(1, 1).is_zero());
        assert!(decalage(&FilteredComplex::trivial(&CochainComplex::<Q>::zero())).level(0, 0).is_zero());
    }

    #[test]
    fn trivial_filtration_pages() {
        let c = CochainComplex::<Q>::new(vec![1, 2, 1], vec![Matrix::from_i64_rows(&[&[1], &[0]]), Matrix::from_i64_rows(&[&[0, 1]])]).unwrap();
        let a = FilteredComplex::trivial(&c);
        let e0 = er_page(&a, 0);
        for n in 0..=2 {
            assert_eq!(e0.dim(0, n), c.dim(n));
        }
        let e1 = er_page(&a, 1);
        for n in 0..=2 {
            assert_eq!(e1.dim(0, n), c.cohomology(n).dim());
        }
    }

    #[test]
    fn bete_filtration_e1_is_the_complex() {
        let a = FilteredComplex::bete(&interval());
        let e1 = er_page(&a, 1);
        assert_eq!(e1.dim(0, 0), 1);
        assert_eq!(e1.dim(1, 1), 1);
        assert_eq!(e1.differential(0, 0).unwrap(), &Matrix::identity(1));
        let e2 = er_page(&a, 2);
        assert_eq!(e2.dims(), vec![]);
    }

    #[test]
    fn identity_is_an_er_quasi_iso() {
        let a = FilteredComplex::bete(&interval());
        let id = ChainMap::identity(a.complex());
        for r in 0..3 {
            assert!(is_er_quasi_iso(&a, &a, &id, r).unwrap());
        }
        let zero = ChainMap::zero(a.complex(), a.complex());
        assert!(!is_er_quasi_iso(&a, &a, &zero, 0).unwrap());
    }

    #[test]
    fn weight_shift_is_detected() {
        // identity of Q from weight 1 to weight 2: filtration-preserving, iso on
        // cohomology, not on E_1
        let src = two_step_line(1);
        let tgt = two_step_line(2);
        let id = ChainMap::identity(&line());
        assert!(!is_er_quasi_iso(&src, &tgt, &id, 0).unwrap());
        assert_eq!(is_er_quasi_iso(&tgt, &src, &id, 0).unwrap_err(), Error::NotFiltrationPreserving { level: 2, degree: 0 });
    }

    #[test]
    fn acyclic_collapse_becomes_an_iso_later() {
        let src = FilteredComplex::bete(&interval());
        let zero = CochainComplex::<Q>::zero().pad(1);
        let tgt = FilteredComplex::trivial(&zero);
        let f = ChainMap::zero(src.complex(), &zero);
        assert!(!is_er_quasi_iso(&src, &tgt, &f, 0).unwrap());
        assert!(is_er_quasi_iso(&src, &tgt, &f, 1).unwrap());
    }

    #[test]
    fn sigma_zero_on_constant_is_the_given_filtration() {
        let a = FilteredComplex::bete(&interval());
        let v = FilteredCosimplicial::constant(&a, 3);
        let (_, s) = sigma_r_filtration(&v, 0, 1).unwrap();
        for k in 0..=2 {
            for n in 0..=1 {
                assert_eq!(s.level(k, n).dim(), a.level(k, n).dim());
            }
        }
    }

    #[test]
    fn decalage_commutes_with_sigma_on_constant() {
        let a = FilteredComplex::bete(&interval());
        let v = FilteredCosimplicial::constant(&a, 3);
        for r in 0..2 {
            let (_, lhs) = sigma_r_filtration(&v, r + 1, 1).unwrap();
            let (_, rhs) = sigma_r_filtration(&v.decalage(), r, 1).unwrap();
            assert!(decalage(&lhs).agrees_through(&rhs, 1));
        }
    }

    #[test]
    fn decalage_commutes_with_sigma_on_random_inputs() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        for _ in 0..3 {
            let v = crate::random::filtered_cosimplicial::<Q, _>(&mut rng, 3, 2, 1, 2, 3);
            let dv = v.decalage();
            for r in 0..2 {
                let (_, lhs) = sigma_r_filtration(&v, r + 1, 2).unwrap();
                let (_, rhs) = sigma_r_filtration(&dv, r, 2).unwrap();
                assert!(decalage(&lhs).agrees_through(&rhs, 2), "r = {r}");
            }
        }
    }

    #[test]
    fn next_page_is_cohomology_of_the_previous() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        for _ in 0..10 {
            let a = crate::random::filtered_complex::<Q, _>(&mut rng, 3, 3, 3);
            for r in 0..4 {
                let e = er_page(&a, r);
                let next = er_page(&a, r + 1);
                for (&(p, n), entry) in &e.entries {
                    let out = e.differential(p, n).unwrap();
                    let rank_out = out.rank();
                    let rank_in = if n == 0 { 0 } else { e.differential(p - r as i64, n - 1).map_or(0, |m| m.rank()) };
                    assert_eq!(next.dim(p, n), entry.dim() - rank_out - rank_in, "r = {r}, (p, n) = ({p}, {n})");
                }
            }
        }
    }
}
