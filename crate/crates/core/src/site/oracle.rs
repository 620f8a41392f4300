//! Simplicial cohomology of the order complex, computed with dense elimination
//! and the front-face/back-face cup product. Shares no code with the sheaf engine.

use alloc::vec;
use alloc::vec::Vec;

use super::poset::PosetSite;
use crate::field::Field;

/// Cohomology ring of the order complex with constant coefficients.
#[derive(Clone, Debug)]
pub struct OrderComplexRing<F: Field> {
    /// Strict chains `x_0 < … < x_p` per dimension `p`, lexicographic.
    pub simplices: Vec<Vec<Vec<usize>>>,
    pub betti: Vec<usize>,
    /// Cocycle representatives per degree, as dense vectors on `simplices[p]`.
    pub reps: Vec<Vec<Vec<F>>>,
    /// `products[i][j][a][b]` = coordinates of `rep_i_a ∪ rep_j_b` in degree `i + j`.
    pub products: Vec<Vec<Vec<Vec<Vec<F>>>>>,
    boundaries: Vec<Vec<Vec<F>>>,
}

fn strict_chains(site: &PosetSite, top: usize) -> Vec<Vec<Vec<usize>>> {
    let n = site.len();
    let mut out: Vec<Vec<Vec<usize>>> = vec![(0..n).map(|x| vec![x]).collect()];
    for p in 1..=top {
        let mut next = Vec::new();
        for c in &out[p - 1] {
            let last = *c.last().expect("nonempty chain");
            for y in 0..n {
                if y != last && site.leq(last, y) {
                    let mut d = c.clone();
                    d.push(y);
                    next.push(d);
                }
            }
        }
        next.sort();
        out.push(next);
    }
    out
}

/// Row-reduce in place; returns pivot columns.
fn reduce<F: Field>(rows: &mut Vec<Vec<F>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(k) = (r..rows.len()).find(|&k| !rows[k][c].is_zero()) else { continue };
        rows.swap(r, k);
        let inv = rows[r][c].inv();
        for x in rows[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for k in 0..rows.len() {
            if k != r && !rows[k][c].is_zero() {
                let f = rows[k][c].clone();
                for j in 0..ncols {
                    let v = rows[r][j].clone() * f.clone();
                    rows[k][j] = rows[k][j].clone() - v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

fn null_space<F: Field>(m: &[Vec<F>], ncols: usize) -> Vec<Vec<F>> {
    let mut rows = m.to_vec();
    let pivots = reduce(&mut rows, ncols);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![F::zero(); ncols];
        v[free] = F::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -rows[r][free].clone();
        }
        out.push(v);
    }
    out
}

fn rank<F: Field>(vs: &[Vec<F>], ncols: usize) -> usize {
    let mut rows = vs.to_vec();
    reduce(&mut rows, ncols).len()
}

/// Solve `Σ c_i cols_i = target`; `None` if inconsistent.
fn solve<F: Field>(cols: &[Vec<F>], target: &[F]) -> Option<Vec<F>> {
    let n = target.len();
    let k = cols.len();
    let mut rows: Vec<Vec<F>> = (0..n)
        .map(|i| {
            let mut r: Vec<F> = cols.iter().map(|c| c[i].clone()).collect();
            r.push(target[i].clone());
            r
        })
        .collect();
    let pivots = reduce(&mut rows, k + 1);
    if pivots.contains(&k) {
        return None;
    }
    let mut sol = vec![F::zero(); k];
    for (r, &pc) in pivots.iter().enumerate() {
        sol[pc] = rows[r][k].clone();
    }
    Some(sol)
}

impl<F: Field> OrderComplexRing<F> {
    /// Compute through cohomological degree `top`.
    pub fn compute(site: &PosetSite, top: usize) -> Self {
        let simplices = strict_chains(site, top + 1);
        let index = |p: usize, c: &[usize]| simplices[p].binary_search_by(|s| s.as_slice().cmp(c)).expect("face of a chain");
        // coboundary δ^p as rows indexed by (p+1)-simplices
        let coboundary = |p: usize| -> Vec<Vec<F>> {
            simplices[p + 1]
                .iter()
                .map(|s| {
                    let mut row = vec![F::zero(); simplices[p].len()];
                    for i in 0..s.len() {
                        let mut face = s.clone();
                        face.remove(i);
                        let j = index(p, &face);
                        row[j] = row[j].clone() + F::sign(i);
                    }
                    row
                })
                .collect()
        };
        let mut betti = Vec::new();
        let mut reps = Vec::new();
        let mut boundaries = Vec::new();
        for p in 0..=top {
            let n = simplices[p].len();
            let cycles = null_space(&coboundary(p), n);
            let bounds: Vec<Vec<F>> = if p == 0 {
                Vec::new()
            } else {
                let d = coboundary(p - 1);
                (0..simplices[p - 1].len()).map(|c| d.iter().map(|row| row[c].clone()).collect()).collect()
            };
            let mut acc = bounds.clone();
            let mut base = rank(&acc, n);
            let mut rs = Vec::new();
            for z in cycles {
                acc.push(z.clone());
                let r = rank(&acc, n);
                if r > base {
                    base = r;
                    rs.push(z);
                } else {
                    acc.pop();
                }
            }
            betti.push(rs.len());
            reps.push(rs);
            boundaries.push(bounds);
        }
        let mut ring = OrderComplexRing { simplices, betti, reps, products: Vec::new(), boundaries };
        let mut products = Vec::new();
        for i in 0..=top {
            let mut row = Vec::new();
            for j in 0..=top {
                let table = if i + j > top {
                    Vec::new()
                } else {
                    (0..ring.betti[i])
                        .map(|a| {
                            (0..ring.betti[j])
                                .map(|b| {
                                    let c = ring.cup(i, &ring.reps[i][a], j, &ring.reps[j][b]);
                                    ring.class_coords(i + j, &c).expect("cup of cocycles is a cocycle")
                                })
                                .collect()
                        })
                        .collect()
                };
                row.push(table);
            }
            products.push(row);
        }
        ring.products = products;
        ring
    }

    /// `(f ∪ g)(x_0 … x_{p+q}) = f(x_0 … x_p) g(x_p … x_{p+q})`.
    pub fn cup(&self, p: usize, f: &[F], q: usize, g: &[F]) -> Vec<F> {
        let find = |d: usize, c: &[usize]| self.simplices[d].binary_search_by(|s| s.as_slice().cmp(c)).expect("face");
        self.simplices[p + q]
            .iter()
            .map(|s| f[find(p, &s[..=p])].clone() * g[find(q, &s[p..])].clone())
            .collect()
    }

    /// Coordinates of the class of a cocycle in the representative basis.
    pub fn class_coords(&self, p: usize, z: &[F]) -> Option<Vec<F>> {
        let mut cols = self.reps[p].clone();
        cols.extend(self.boundaries[p].iter().cloned());
        let sol = solve(&cols, z)?;
        Some(sol[..self.betti[p]].to_vec())
    }
}

/// Betti numbers and cup products of the order complex of `site` through degree `top`.
pub fn order_complex_oracle<F: Field>(site: &PosetSite, top: usize) -> OrderComplexRing<F> {
    OrderComplexRing::compute(site, top)
}
