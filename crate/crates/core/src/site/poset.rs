//! Finite posets whose up-sets are the opens.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::Error;

/// A finite poset. Elements are indexed `0..len()`; the opens are the up-closed
/// subsets and the minimal open of `x` is `U_x = { y : y ≥ x }`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PosetSite {
    names: Vec<String>,
    covers: Vec<(usize, usize)>,
    leq: Vec<Vec<bool>>,
}

/// An up-closed subset, stored as a sorted list of element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Open(Vec<usize>);

impl Open {
    pub fn elements(&self) -> &[usize] {
        &self.0
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }
}

impl PosetSite {
    /// Build from element names and generating relations `(lower, upper)`.
    ///
    /// The order is the reflexive-transitive closure; a cycle is rejected. The
    /// stored covers are the Hasse diagram of the closure.
    pub fn new(names: Vec<String>, relations: &[(usize, usize)]) -> Result<Self, Error> {
        let n = names.len();
        let distinct: BTreeSet<&String> = names.iter().collect();
        if distinct.len() != n {
            return Err(Error::Invalid("duplicate element names".into()));
        }
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in relations {
            if a >= n || b >= n {
                return Err(Error::Invalid(format!("relation ({a}, {b}) refers to a missing element")));
            }
            leq[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if leq[i][j] && leq[j][i] {
                    return Err(Error::Invalid(format!(
                        "order is not antisymmetric: {} and {} are mutually related",
                        names[i], names[j]
                    )));
                }
            }
        }
        let mut covers = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b && leq[a][b] && !(0..n).any(|c| c != a && c != b && leq[a][c] && leq[c][b]) {
                    covers.push((a, b));
                }
            }
        }
        Ok(PosetSite { names, covers, leq })
    }

    pub fn from_names(names: &[&str], relations: &[(&str, &str)]) -> Result<Self, Error> {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let idx = |s: &str| names.iter().position(|n| n == s).ok_or_else(|| Error::Invalid(format!("unknown element {s}")));
        let rel = relations.iter().map(|(a, b)| Ok((idx(a)?, idx(b)?))).collect::<Result<Vec<_>, Error>>()?;
        Self::new(names, &rel)
    }

    pub fn point() -> Self {
        Self::from_names(&["p"], &[]).expect("valid")
    }

    /// The chain `a < b`.
    pub fn two_chain() -> Self {
        Self::from_names(&["a", "b"], &[("a", "b")]).expect("valid")
    }

    /// The minimal finite model of the circle: `{a, b} < {c, d}`.
    pub fn pseudocircle() -> Self {
        Self::from_names(&["a", "b", "c", "d"], &[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")]).expect("valid")
    }

    /// A six-point model of the 2-sphere: `{a, b} < {c, d} < {e, f}`.
    pub fn sphere() -> Self {
        Self::from_names(
            &["a", "b", "c", "d", "e", "f"],
            &[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "e"), ("c", "f"), ("d", "e"), ("d", "f")],
        )
        .expect("valid")
    }

    /// The sixteen-point torus: the product of two pseudocircles.
    pub fn torus() -> Self {
        Self::pseudocircle().product(&Self::pseudocircle())
    }

    /// Product order; element `(x, y)` gets index `x * other.len() + y` and name `x.y`.
    pub fn product(&self, other: &Self) -> Self {
        let (n, m) = (self.len(), other.len());
        let mut names = Vec::with_capacity(n * m);
        for x in 0..n {
            for y in 0..m {
                names.push(format!("{}.{}", self.names[x], other.names[y]));
            }
        }
        let mut rel = Vec::new();
        for &(a, b) in &self.covers {
            for y in 0..m {
                rel.push((a * m + y, b * m + y));
            }
        }
        for &(a, b) in &other.covers {
            for x in 0..n {
                rel.push((x * m + a, x * m + b));
            }
        }
        Self::new(names, &rel).expect("product of posets is a poset")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Hasse diagram `(lower, upper)`, sorted.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x][y]
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq[x][y]
    }

    /// All pairs `x ≤ y` including equalities.
    pub fn relations(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n).flat_map(|x| (0..n).filter(move |&y| self.leq[x][y]).map(move |y| (x, y))).collect()
    }

    /// The minimal open `U_x`.
    pub fn up_set(&self, x: usize) -> Open {
        Open((0..self.len()).filter(|&y| self.leq[x][y]).collect())
    }

    pub fn whole(&self) -> Open {
        Open((0..self.len()).collect())
    }

    pub fn empty_open(&self) -> Open {
        Open(Vec::new())
    }

    /// Validate up-closure.
    pub fn open(&self, elements: &[usize]) -> Result<Open, Error> {
        let mut v: Vec<usize> = elements.to_vec();
        v.sort_unstable();
        v.dedup();
        for &x in &v {
            if x >= self.len() {
                return Err(Error::Invalid(format!("element index {x} out of range")));
            }
            for y in 0..self.len() {
                if self.leq[x][y] && v.binary_search(&y).is_err() {
                    return Err(Error::NotUpClosed { inside: self.names[x].clone(), missing: self.names[y].clone() });
                }
            }
        }
        Ok(Open(v))
    }

    pub fn open_by_names(&self, names: &[&str]) -> Result<Open, Error> {
        let idx = names
            .iter()
            .map(|s| self.index_of(s).ok_or_else(|| Error::Invalid(format!("unknown element {s}"))))
            .collect::<Result<Vec<_>, _>>()?;
        self.open(&idx)
    }

    /// Up-closure of a set of elements.
    pub fn generated_open(&self, elements: &[usize]) -> Open {
        let mut v: Vec<usize> = (0..self.len()).filter(|&y| elements.iter().any(|&x| self.leq[x][y])).collect();
        v.sort_unstable();
        Open(v)
    }

    /// Every open, sorted.
    pub fn all_opens(&self) -> Vec<Open> {
        let n = self.len();
        let mut out = BTreeSet::new();
        // an up-set is the up-closure of its minimal elements, an antichain
        for mask in 0u64..(1u64 << n.min(20)) {
            let set: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let anti = set.iter().all(|&a| set.iter().all(|&b| a == b || !self.leq[a][b]));
            if anti {
                out.insert(self.generated_open(&set));
            }
        }
        out.into_iter().collect()
    }

    /// Strict chains `x_0 < … < x_p` with `x_0 ∈ u`, in lexicographic order.
    pub fn strict_chains(&self, u: &Open, p: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(p + 1);
        for &x in u.elements() {
            cur.push(x);
            self.extend_chains(&mut cur, p, true, &mut out);
            cur.pop();
        }
        out
    }

    /// Weakly increasing chains `x_0 ≤ … ≤ x_p` with `x_0 ∈ u`, lexicographic.
    pub fn multichains(&self, u: &Open, p: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(p + 1);
        for &x in u.elements() {
            cur.push(x);
            self.extend_chains(&mut cur, p, false, &mut out);
            cur.pop();
        }
        out
    }

    fn extend_chains(&self, cur: &mut Vec<usize>, p: usize, strict: bool, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p + 1 {
            out.push(cur.clone());
            return;
        }
        let last = *cur.last().expect("nonempty");
        for y in 0..self.len() {
            if self.leq[last][y] && (!strict || y != last) {
                cur.push(y);
                self.extend_chains(cur, p, strict, out);
                cur.pop();
            }
        }
    }

    /// Longest strict chain length minus one (the dimension of the order complex).
    pub fn height(&self) -> usize {
        let n = self.len();
        let mut best = vec![0usize; n];
        // process by number of elements below
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&x| (0..n).filter(|&y| self.leq[y][x]).count());
        for &x in &order {
            best[x] = (0..n).filter(|&y| self.lt(y, x)).map(|y| best[y] + 1).max().unwrap_or(0);
        }
        best.into_iter().max().unwrap_or(0)
    }
}

/// A monotone map between finite posets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneMap {
    pub source: PosetSite,
    pub target: PosetSite,
    map: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(source: PosetSite, target: PosetSite, map: Vec<usize>) -> Result<Self, Error> {
        if map.len() != source.len() || map.iter().any(|&y| y >= target.len()) {
            return Err(Error::Invalid("map does not match the element counts".into()));
        }
        for &(a, b) in source.covers() {
            if !target.leq(map[a], map[b]) {
                return Err(Error::NotMonotone { lo: source.name(a).into(), hi: source.name(b).into() });
            }
        }
        Ok(MonotoneMap { source, target, map })
    }

    pub fn identity(site: &PosetSite) -> Self {
        MonotoneMap { source: site.clone(), target: site.clone(), map: (0..site.len()).collect() }
    }

    /// The unique map to the one-point poset.
    pub fn to_point(site: &PosetSite) -> Self {
        MonotoneMap { source: site.clone(), target: PosetSite::point(), map: vec![0; site.len()] }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.map
    }

    /// `φ^{-1}(u)`, an open of the source.
    pub fn preimage(&self, u: &Open) -> Open {
        Open((0..self.source.len()).filter(|&x| u.contains(self.map[x])).collect())
    }

    /// `ψ ∘ φ` for `ψ = after`.
    pub fn then(&self, after: &MonotoneMap) -> Result<MonotoneMap, Error> {
        if self.target != after.source {
            return Err(Error::Invalid("composable maps need matching posets".into()));
        }
        Ok(MonotoneMap {
            source: self.source.clone(),
            target: after.target.clone(),
            map: self.map.iter().map(|&y| after.map[y]).collect(),
        })
    }
}
