//! Whitney elementary forms and the Dupont projection.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::forms::PolyForm;
use crate::combi;
use crate::field::Field;
use crate::homalg::Matrix;

/// `ω_{i_0…i_k} = k! Σ_j (-1)^j x_{i_j} dx_{i_0} ∧ … (omit j) … ∧ dx_{i_k}` on `Δ^level`.
pub fn whitney_form<F: Field>(level: usize, face: &[usize]) -> PolyForm<F> {
    let k = face.len() - 1;
    let mut acc = PolyForm::zero(level);
    for j in 0..=k {
        let mut t = PolyForm::x(level, face[j]);
        for (m, &i) in face.iter().enumerate() {
            if m != j {
                t = t.wedge(&PolyForm::dx(level, i)).expect("same level");
            }
        }
        acc = acc.add(&t.scale(&F::sign(j)));
    }
    acc.scale(&F::factorial(k))
}

/// Whitney forms on `Δ^level`: degree `k` is indexed by the `(k+1)`-subsets of
/// `{0..level}` in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WhitneyBasis {
    level: usize,
    faces: Vec<Vec<Vec<usize>>>,
}

impl WhitneyBasis {
    pub fn new(level: usize) -> Self {
        let faces = (0..=level).map(|k| combi::subsets(level + 1, k + 1)).collect();
        WhitneyBasis { level, faces }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn dim(&self, k: usize) -> usize {
        self.faces.get(k).map_or(0, |f| f.len())
    }

    pub fn faces(&self, k: usize) -> &[Vec<usize>] {
        &self.faces[k]
    }

    pub fn index(&self, face: &[usize]) -> Option<usize> {
        self.faces.get(face.len().checked_sub(1)?)?.iter().position(|f| f == face)
    }

    pub fn form<F: Field>(&self, k: usize, idx: usize) -> PolyForm<F> {
        whitney_form(self.level, &self.faces[k][idx])
    }

    /// `i : coordinates ↦ Σ c_I ω_I`.
    pub fn include<F: Field>(&self, coords: &WhitneyCoords<F>) -> PolyForm<F> {
        let mut acc = PolyForm::zero(self.level);
        for (k, cs) in coords.coeffs.iter().enumerate() {
            for (i, c) in cs.iter().enumerate() {
                if !c.is_zero() {
                    acc = acc.add(&self.form::<F>(k, i).scale(c));
                }
            }
        }
        acc
    }

    /// The differential in Whitney coordinates, degree `k → k + 1`.
    pub fn differential<F: Field>(&self, k: usize) -> Matrix<F> {
        let rows = self.dim(k + 1);
        let cols: Vec<_> = (0..self.dim(k))
            .map(|i| {
                let p = dupont_project(&self.form::<F>(k, i).d());
                p.coeffs.get(k + 1).map_or_else(Vec::new, |c| crate::homalg::vector::from_dense(c))
            })
            .collect();
        Matrix::from_columns(rows, self.dim(k), &cols)
    }
}

/// Coefficients over the Whitney basis, per form degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WhitneyCoords<F: Field> {
    pub level: usize,
    pub coeffs: Vec<Vec<F>>,
}

/// `p(f) = Σ_I (∫_{Δ_I} f) ω_I`, integrating the pullback of `f` to each face.
pub fn dupont_project<F: Field>(f: &PolyForm<F>) -> WhitneyCoords<F> {
    let n = f.level();
    let basis = WhitneyBasis::new(n);
    let coeffs = (0..=n)
        .map(|k| {
            let part = f.homogeneous(k);
            basis
                .faces(k)
                .iter()
                .map(|face| if part.is_zero() { F::zero() } else { part.pullback(face).integrate() })
                .collect()
        })
        .collect();
    WhitneyCoords { level: n, coeffs }
}

/// `c(φ_1, …, φ_k) = ∫_{Δ^n} ω_{φ_1} ∧ … ∧ ω_{φ_k}` for all tuples of faces with
/// `|φ_j| = p_j + 1` and `n = Σ p_j`; only nonzero entries are kept.
pub fn product_coefficients<F: Field>(ps: &[usize]) -> Vec<(Vec<Vec<usize>>, F)> {
    let n: usize = ps.iter().sum();
    let forms: Vec<Vec<(Vec<usize>, PolyForm<F>)>> = ps
        .iter()
        .map(|&p| combi::subsets(n + 1, p + 1).into_iter().map(|s| (s.clone(), whitney_form(n, &s))).collect())
        .collect();
    let mut out = Vec::new();
    let mut stack: Vec<(Vec<Vec<usize>>, PolyForm<F>)> = alloc::vec![(Vec::new(), PolyForm::one(n))];
    for choices in &forms {
        let mut next = Vec::new();
        for (faces, acc) in &stack {
            for (s, w) in choices {
                let prod = acc.wedge(w).expect("same level");
                if prod.is_zero() {
                    continue;
                }
                let mut f = faces.clone();
                f.push(s.clone());
                next.push((f, prod));
            }
        }
        stack = next;
    }
    for (faces, form) in stack {
        debug_assert!(form.poly_degree() <= ps.len());
        let c = form.integrate();
        if !c.is_zero() {
            out.push((faces, c));
        }
    }
    out
}

/// Memo of [`product_coefficients`] keyed by the level pattern.
#[derive(Clone, Debug, Default)]
pub struct CoefficientCache<F: Field> {
    tables: BTreeMap<Vec<usize>, Vec<(Vec<Vec<usize>>, F)>>,
}

impl<F: Field> CoefficientCache<F> {
    pub fn new() -> Self {
        CoefficientCache { tables: BTreeMap::new() }
    }

    pub fn get(&mut self, ps: &[usize]) -> &[(Vec<Vec<usize>>, F)] {
        self.tables.entry(ps.to_vec()).or_insert_with(|| product_coefficients(ps))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use alloc::vec;

    type Q = Rational;

    #[test]
    fn projection_of_inclusion_is_identity() {
        for n in 0..=3 {
            let b = WhitneyBasis::new(n);
            for k in 0..=n {
                for i in 0..b.dim(k) {
                    let p = dupont_project(&b.form::<Q>(k, i));
                    for (kk, cs) in p.coeffs.iter().enumerate() {
                        for (j, c) in cs.iter().enumerate() {
                            let want = if kk == k && j == i { Q::from(1) } else { Q::from(0) };
                            assert_eq!(*c, want, "level {n} degree {k} form {i}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn partition_of_unity() {
        let p = dupont_project(&PolyForm::<Q>::one(2));
        assert_eq!(p.coeffs[0], vec![Q::from(1); 3]);
        let b = WhitneyBasis::new(2);
        assert_eq!(b.include(&p), PolyForm::one(2));
    }

    #[test]
    fn edge_form_squares_to_zero() {
        let w = whitney_form::<Q>(1, &[0, 1]);
        assert!(w.wedge(&w).unwrap().is_zero());
    }

    #[test]
    fn x0_dx1_projects_to_half_edge() {
        let f = PolyForm::<Q>::x(1, 0).wedge(&PolyForm::dx(1, 1)).unwrap();
        let p = dupont_project(&f);
        assert_eq!(p.coeffs[1], vec![Q::new(1, 2)]);
    }

    #[test]
    fn coefficients_of_two_edges() {
        // ∫_{Δ^2} ω_{ab} ∧ ω_{cd} over pairs of edges
        let t = product_coefficients::<Q>(&[1, 1]);
        let get = |a: &[usize], b: &[usize]| {
            t.iter().find(|(f, _)| f[0] == a && f[1] == b).map_or(Q::from(0), |(_, c)| c.clone())
        };
        assert_eq!(get(&[0, 1], &[1, 2]), -get(&[1, 2], &[0, 1]));
        assert!(get(&[0, 1], &[0, 1]).is_zero());
        assert!(!get(&[0, 1], &[1, 2]).is_zero());
    }
}
