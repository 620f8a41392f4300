//! Polynomial differential forms on the standard simplices.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::field::Field;
use crate::Error;

/// A polynomial form on `Δ^n` in the canonical representative that eliminates
/// `x_0 = 1 - Σ x_i` and `dx_0 = -Σ dx_i`.
///
/// Terms are keyed by the exponents of `x_1, …, x_n` and a bit mask of the
/// factors `dx_1, …, dx_n` (bit `i - 1` for `dx_i`), wedged in increasing order.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyForm<F: Field> {
    level: usize,
    terms: BTreeMap<(Vec<u32>, u32), F>,
}

/// Sign of `dx_A ∧ dx_B` against the sorted wedge of `A ∪ B` (`None` when they share a factor).
fn wedge_sign(a: u32, b: u32) -> Option<bool> {
    if a & b != 0 {
        return None;
    }
    let mut inv = 0u32;
    let mut bb = b;
    while bb != 0 {
        let j = bb.trailing_zeros();
        inv += (a >> (j + 1)).count_ones();
        bb &= bb - 1;
    }
    Some(inv % 2 == 1)
}

/// `∫_{Δ^k} x_0^{a_0} ⋯ x_k^{a_k} dx_1 ∧ … ∧ dx_k = a_0! ⋯ a_k! / (Σ a_i + k)!`,
/// with the convention `∫_{Δ^k} dx_1 ∧ … ∧ dx_k = 1/k!`.
pub fn monomial_integral<F: Field>(exponents: &[u32]) -> F {
    assert!(!exponents.is_empty(), "exponents a_0..a_k with k ≥ 0");
    let k = exponents.len() - 1;
    let total: usize = exponents.iter().map(|&a| a as usize).sum::<usize>() + k;
    let num = exponents.iter().fold(F::one(), |acc, &a| acc * F::factorial(a as usize));
    num * F::factorial(total).inv()
}

impl<F: Field> PolyForm<F> {
    pub fn zero(level: usize) -> Self {
        assert!(level < 32, "simplex level too large");
        PolyForm { level, terms: BTreeMap::new() }
    }

    pub fn constant(level: usize, c: F) -> Self {
        let mut f = Self::zero(level);
        f.add_term(vec![0; level], 0, c);
        f
    }

    pub fn one(level: usize) -> Self {
        Self::constant(level, F::one())
    }

    /// The barycentric coordinate `x_i`, `0 ≤ i ≤ level`.
    pub fn x(level: usize, i: usize) -> Self {
        assert!(i <= level);
        if i == 0 {
            let mut f = Self::one(level);
            for j in 1..=level {
                f = f.sub(&Self::x(level, j));
            }
            return f;
        }
        let mut e = vec![0; level];
        e[i - 1] = 1;
        let mut f = Self::zero(level);
        f.add_term(e, 0, F::one());
        f
    }

    /// The one-form `dx_i`, `0 ≤ i ≤ level`.
    pub fn dx(level: usize, i: usize) -> Self {
        assert!(i <= level);
        let mut f = Self::zero(level);
        if i == 0 {
            for j in 1..=level {
                f.add_term(vec![0; level], 1 << (j - 1), -F::one());
            }
        } else {
            f.add_term(vec![0; level], 1 << (i - 1), F::one());
        }
        f
    }

    /// `x^{a} dx_{I}` in canonical variables (`exps` for `x_1..x_n`, `I ⊆ {1..n}` increasing).
    pub fn monomial(level: usize, exps: &[u32], dxs: &[usize], c: F) -> Self {
        assert_eq!(exps.len(), level);
        let mut mask = 0u32;
        for w in dxs.windows(2) {
            assert!(w[0] < w[1], "dx indices must increase");
        }
        for &i in dxs {
            assert!((1..=level).contains(&i), "canonical dx indices are 1..=level");
            mask |= 1 << (i - 1);
        }
        let mut f = Self::zero(level);
        f.add_term(exps.to_vec(), mask, c);
        f
    }

    fn add_term(&mut self, e: Vec<u32>, mask: u32, c: F) {
        if c.is_zero() {
            return;
        }
        let key = (e, mask);
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v = v.clone() + c;
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms as `(exponents of x_1..x_n, dx indices, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], Vec<usize>, &F)> {
        self.terms.iter().map(|((e, m), c)| {
            let idx = (0..32).filter(|b| m & (1 << b) != 0).map(|b| b as usize + 1).collect();
            (e.as_slice(), idx, c)
        })
    }

    /// Form degrees present.
    pub fn form_degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(|(_, m)| m.count_ones() as usize).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// The part of form degree `k`.
    pub fn homogeneous(&self, k: usize) -> Self {
        let terms = self.terms.iter().filter(|((_, m), _)| m.count_ones() as usize == k).map(|(a, b)| (a.clone(), b.clone())).collect();
        PolyForm { level: self.level, terms }
    }

    /// Maximal total polynomial degree in the canonical representative.
    pub fn poly_degree(&self) -> usize {
        self.terms.keys().map(|(e, _)| e.iter().sum::<u32>() as usize).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.level, other.level, "forms on different simplices");
        let mut f = self.clone();
        for ((e, m), c) in &other.terms {
            f.add_term(e.clone(), *m, c.clone());
        }
        f
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.level);
        }
        PolyForm { level: self.level, terms: self.terms.iter().map(|(k, v)| (k.clone(), v.clone() * c.clone())).collect() }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-F::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Graded-commutative product.
    pub fn wedge(&self, other: &Self) -> Result<Self, Error> {
        if self.level != other.level {
            return Err(Error::LevelMismatch(self.level, other.level));
        }
        let mut f = Self::zero(self.level);
        for ((e1, m1), c1) in &self.terms {
            for ((e2, m2), c2) in &other.terms {
                let Some(odd) = wedge_sign(*m1, *m2) else { continue };
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let c = c1.clone() * c2.clone();
                f.add_term(e, m1 | m2, if odd { -c } else { c });
            }
        }
        Ok(f)
    }

    /// Exterior derivative.
    pub fn d(&self) -> Self {
        let mut f = Self::zero(self.level);
        for ((e, m), c) in &self.terms {
            for j in 0..self.level {
                if e[j] == 0 || m & (1 << j) != 0 {
                    continue;
                }
                let mut e2 = e.clone();
                e2[j] -= 1;
                let odd = (m & ((1u32 << j) - 1)).count_ones() % 2 == 1;
                let v = c.clone() * F::from_i64(e[j] as i64);
                f.add_term(e2, m | (1 << j), if odd { -v } else { v });
            }
        }
        f
    }

    /// `∫_{Δ^n}` of the top-degree part, oriented by `dx_1 ∧ … ∧ dx_n`.
    pub fn integrate(&self) -> F {
        let full = if self.level == 0 { 0 } else { (1u32 << self.level) - 1 };
        let mut acc = F::zero();
        for ((e, m), c) in &self.terms {
            if *m == full {
                let mut a = vec![0u32];
                a.extend_from_slice(e);
                acc = acc + c.clone() * monomial_integral::<F>(&a);
            }
        }
        acc
    }

    /// Pullback along the face `Δ^k → Δ^n` with vertices `face = (i_0 < … < i_k)`.
    pub fn pullback(&self, face: &[usize]) -> Self {
        let k = face.len() - 1;
        assert!(face.iter().all(|&i| i <= self.level));
        let sub_x = |j: usize| match face.iter().position(|&i| i == j) {
            Some(m) => PolyForm::x(k, m),
            None => PolyForm::zero(k),
        };
        let sub_dx = |j: usize| match face.iter().position(|&i| i == j) {
            Some(m) => PolyForm::dx(k, m),
            None => PolyForm::zero(k),
        };
        let xs: Vec<PolyForm<F>> = (1..=self.level).map(sub_x).collect();
        let dxs: Vec<PolyForm<F>> = (1..=self.level).map(sub_dx).collect();
        let mut out = PolyForm::zero(k);
        for ((e, m), c) in &self.terms {
            let mut t = PolyForm::constant(k, c.clone());
            for (j, &a) in e.iter().enumerate() {
                for _ in 0..a {
                    t = t.wedge(&xs[j]).expect("same level");
                }
            }
            for j in 0..self.level {
                if m & (1 << j) != 0 {
                    t = t.wedge(&dxs[j]).expect("same level");
                }
            }
            out = out.add(&t);
        }
        out
    }
}

impl<F: Field> fmt::Debug for PolyForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((e, m), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c:?})")?;
            for (j, a) in e.iter().enumerate() {
                if *a > 0 {
                    write!(f, "·x{}^{a}", j + 1)?;
                }
            }
            for j in 0..32 {
                if m & (1 << j) != 0 {
                    write!(f, "·dx{}", j + 1)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    type Q = Rational;

    #[test]
    fn integrals() {
        assert_eq!(monomial_integral::<Q>(&[0, 0, 0]), Q::new(1, 2));
        assert_eq!(monomial_integral::<Q>(&[1, 0]), Q::new(1, 2));
        assert_eq!(monomial_integral::<Q>(&[1, 1, 0]), Q::new(1, 24));
    }

    #[test]
    fn relations() {
        let n = 2;
        let mut s = PolyForm::<Q>::zero(n);
        let mut ds = PolyForm::<Q>::zero(n);
        for i in 0..=n {
            s = s.add(&PolyForm::x(n, i));
            ds = ds.add(&PolyForm::dx(n, i));
        }
        assert_eq!(s, PolyForm::one(n));
        assert!(ds.is_zero());
        let dx1 = PolyForm::<Q>::dx(n, 1);
        assert!(dx1.wedge(&dx1).unwrap().is_zero());
        let f = PolyForm::<Q>::x(n, 0).wedge(&dx1).unwrap();
        assert_eq!(PolyForm::one(n).wedge(&f).unwrap(), f);
        assert!(PolyForm::<Q>::one(1).wedge(&PolyForm::one(2)).is_err());
    }

    #[test]
    fn d_squares_to_zero_and_leibniz() {
        let n = 3;
        let a = PolyForm::<Q>::x(n, 0).wedge(&PolyForm::x(n, 2)).unwrap().wedge(&PolyForm::dx(n, 1)).unwrap();
        let b = PolyForm::<Q>::x(n, 3).wedge(&PolyForm::x(n, 3)).unwrap();
        assert!(a.d().d().is_zero());
        let lhs = a.wedge(&b).unwrap().d();
        let rhs = a.d().wedge(&b).unwrap().add(&a.neg().wedge(&b.d()).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn pullback_to_edge() {
        // x_0 dx_1 restricted to the edge {0, 1} of Δ^2 integrates to 1/2
        let f = PolyForm::<Q>::x(2, 0).wedge(&PolyForm::dx(2, 1)).unwrap();
        assert_eq!(f.pullback(&[0, 1]).integrate(), Q::new(1, 2));
        assert!(f.pullback(&[0, 2]).is_zero());
    }
}
