//! Sparse vectors: sorted `(index, value)` lists without explicit zeros.

use alloc::vec;
use alloc::vec::Vec;

use crate::field::Field;

pub type SparseVec<F> = Vec<(usize, F)>;

/// `x + alpha * y`.
pub fn axpy<F: Field>(x: &[(usize, F)], alpha: &F, y: &[(usize, F)]) -> SparseVec<F> {
    if alpha.is_zero() {
        return x.to_vec();
    }
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        if j == y.len() || (i < x.len() && x[i].0 < y[j].0) {
            out.push(x[i].clone());
            i += 1;
        } else if i == x.len() || y[j].0 < x[i].0 {
            out.push((y[j].0, alpha.clone() * y[j].1.clone()));
            j += 1;
        } else {
            let v = x[i].1.clone() + alpha.clone() * y[j].1.clone();
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn add<F: Field>(x: &[(usize, F)], y: &[(usize, F)]) -> SparseVec<F> {
    axpy(x, &F::one(), y)
}

pub fn sub<F: Field>(x: &[(usize, F)], y: &[(usize, F)]) -> SparseVec<F> {
    axpy(x, &-F::one(), y)
}

pub fn scale<F: Field>(x: &[(usize, F)], alpha: &F) -> SparseVec<F> {
    if alpha.is_zero() {
        return Vec::new();
    }
    x.iter().map(|(i, v)| (*i, alpha.clone() * v.clone())).collect()
}

pub fn get<F: Field>(x: &[(usize, F)], i: usize) -> F {
    match x.binary_search_by_key(&i, |(k, _)| *k) {
        Ok(p) => x[p].1.clone(),
        Err(_) => F::zero(),
    }
}

pub fn from_dense<F: Field>(v: &[F]) -> SparseVec<F> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn to_dense<F: Field>(x: &[(usize, F)], len: usize) -> Vec<F> {
    let mut out = vec![F::zero(); len];
    for (i, v) in x {
        out[*i] = v.clone();
    }
    out
}

pub fn unit<F: Field>(i: usize) -> SparseVec<F> {
    vec![(i, F::one())]
}

/// Shift every index by `offset`.
pub fn shifted<F: Field>(x: &[(usize, F)], offset: usize) -> SparseVec<F> {
    x.iter().map(|(i, v)| (i + offset, v.clone())).collect()
}

/// Dense scratch accumulator for summing many sparse contributions.
pub struct Accumulator<F: Field> {
    vals: Vec<F>,
    seen: Vec<bool>,
    touched: Vec<usize>,
}

impl<F: Field> Accumulator<F> {
    pub fn new(len: usize) -> Self {
        Accumulator { vals: vec![F::zero(); len], seen: vec![false; len], touched: Vec::new() }
    }

    pub fn add(&mut self, i: usize, v: F) {
        if !self.seen[i] {
            self.seen[i] = true;
            self.touched.push(i);
            self.vals[i] = v;
        } else {
            let cur = core::mem::replace(&mut self.vals[i], F::zero());
            self.vals[i] = cur + v;
        }
    }

    pub fn add_scaled(&mut self, alpha: &F, x: &[(usize, F)]) {
        for (i, v) in x {
            self.add(*i, alpha.clone() * v.clone());
        }
    }

    /// Drain into a sparse vector and reset.
    pub fn take(&mut self) -> SparseVec<F> {
        self.touched.sort_unstable();
        let mut out = Vec::with_capacity(self.touched.len());
        for &i in &self.touched {
            self.seen[i] = false;
            let v = core::mem::replace(&mut self.vals[i], F::zero());
            if !v.is_zero() {
                out.push((i, v));
            }
        }
        self.touched.clear();
        out
    }
}
