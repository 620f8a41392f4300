//! Small combinatorial enumerations: subsets, shuffles, permutations.

use alloc::vec;
use alloc::vec::Vec;

/// All `k`-element subsets of `0..n`, each sorted, in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - k + i {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Complement of a sorted subset of `0..n`.
pub fn complement(n: usize, s: &[usize]) -> Vec<usize> {
    let mut mark = vec![false; n];
    for &i in s {
        mark[i] = true;
    }
    (0..n).filter(|&i| !mark[i]).collect()
}

/// Sign of the shuffle permutation that lists `mu` then `nu`.
pub fn shuffle_sign(mu: &[usize], nu: &[usize]) -> bool {
    // parity of inversions: pairs (a in mu, b in nu) with a > b
    let mut inv = 0usize;
    for &a in mu {
        inv += nu.iter().filter(|&&b| b < a).count();
    }
    inv % 2 == 1
}

/// All permutations of `0..n` in lexicographic order, as one-line images.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else { return out };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}

/// True for odd permutations.
pub fn perm_is_odd(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    let mut odd = false;
    for s in 0..p.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            i = p[i];
            len += 1;
        }
        if len % 2 == 0 {
            odd = !odd;
        }
    }
    odd
}

pub fn perm_inverse(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &v) in p.iter().enumerate() {
        inv[v] = i;
    }
    inv
}

/// `(a ∘ b)(i) = a(b(i))`.
pub fn perm_compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&i| a[i]).collect()
}

/// Rank of a permutation in the lexicographic order of [`permutations`].
pub fn perm_rank(p: &[usize]) -> usize {
    let n = p.len();
    let mut rank = 0;
    let mut fact = vec![1usize; n + 1];
    for i in 1..=n {
        fact[i] = fact[i - 1] * i;
    }
    for i in 0..n {
        let smaller = p[i + 1..].iter().filter(|&&v| v < p[i]).count();
        rank += smaller * fact[n - 1 - i];
    }
    rank
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r = 1usize;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Compositions of `total` into `parts` nonnegative summands, lexicographic.
pub fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_counts() {
        for n in 0..6 {
            for k in 0..=n {
                assert_eq!(subsets(n, k).len(), binomial(n, k));
            }
        }
        assert_eq!(subsets(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
    }

    #[test]
    fn permutation_ranks() {
        let ps = permutations(4);
        assert_eq!(ps.len(), 24);
        for (k, p) in ps.iter().enumerate() {
            assert_eq!(perm_rank(p), k);
            assert_eq!(perm_compose(p, &perm_inverse(p)), (0..4).collect::<Vec<_>>());
        }
        assert!(perm_is_odd(&[1, 0, 2]));
        assert!(!perm_is_odd(&[1, 2, 0]));
    }

    #[test]
    fn shuffle_signs() {
        assert!(!shuffle_sign(&[0], &[1]));
        assert!(shuffle_sign(&[1], &[0]));
        assert!(!shuffle_sign(&[1, 2], &[0]));
    }
}
