//! Brute-force oracles, independent of the library's elimination code.

#![allow(dead_code)]

use clgroup::{BigInt, IntMatrix, Poset};

pub fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

pub fn matrix(rows: &[Vec<i64>], cols: usize) -> IntMatrix {
    IntMatrix::from_rows(cols, rows.iter().map(|r| r.iter().map(|&x| big(x)).collect()).collect())
        .unwrap()
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Determinant by the Leibniz permutation expansion.
pub fn leibniz_det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = 0i128;
    permute(&mut perm, 0, &mut |p| {
        let mut inversions = 0;
        for i in 0..n {
            for j in i + 1..n {
                if p[i] > p[j] {
                    inversions += 1;
                }
            }
        }
        let prod: i128 = (0..n).map(|i| m[i][p[i]]).product();
        total += if inversions % 2 == 0 { prod } else { -prod };
    });
    total
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// gcd of all k×k minors by enumeration; 1 for k = 0, 0 when no minor is nonzero.
pub fn brute_minor_gcd(a: &[Vec<i64>], cols: usize, k: usize) -> i128 {
    if k == 0 {
        return 1;
    }
    let mut g = 0;
    for rs in subsets(a.len(), k) {
        for cs in subsets(cols, k) {
            let sub: Vec<Vec<i128>> = rs
                .iter()
                .map(|&i| cs.iter().map(|&j| a[i][j] as i128).collect())
                .collect();
            g = gcd(g, leibniz_det(&sub));
        }
    }
    g
}

/// Rank as the largest k with a nonzero k-minor.
pub fn brute_rank(a: &[Vec<i64>], cols: usize) -> usize {
    (0..=a.len().min(cols))
        .rev()
        .find(|&k| brute_minor_gcd(a, cols, k) != 0)
        .unwrap()
}

/// Searches `A·x = b` over coefficients in `[-bound, bound]`.
pub fn bounded_solution_exists(a: &[Vec<i64>], cols: usize, b: &[i64], bound: i64) -> bool {
    let mut x = vec![-bound; cols];
    loop {
        let ok = a
            .iter()
            .zip(b)
            .all(|(row, &bi)| row.iter().zip(&x).map(|(p, q)| p * q).sum::<i64>() == bi);
        if ok {
            return true;
        }
        let mut i = 0;
        loop {
            if i == cols {
                return false;
            }
            if x[i] < bound {
                x[i] += 1;
                break;
            }
            x[i] = -bound;
            i += 1;
        }
    }
}

/// All maximal chains of P̂ as vertex counts, by exhaustive path enumeration
/// over the comparability relation (not the stored covers).
pub fn brute_is_pure(p: &Poset) -> bool {
    let n = p.len();
    let mut less = vec![vec![false; n]; n];
    for &(i, j) in p.covers() {
        less[i][j] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if less[i][k] && less[k][j] {
                    less[i][j] = true;
                }
            }
        }
    }
    let covers = |i: usize, j: usize| less[i][j] && !(0..n).any(|k| less[i][k] && less[k][j]);
    let mut lengths = std::collections::BTreeSet::new();
    fn walk(
        v: usize,
        len: usize,
        n: usize,
        covers: &dyn Fn(usize, usize) -> bool,
        out: &mut std::collections::BTreeSet<usize>,
    ) {
        let ups: Vec<usize> = (0..n).filter(|&w| covers(v, w)).collect();
        if ups.is_empty() {
            out.insert(len);
        }
        for w in ups {
            walk(w, len + 1, n, covers, out);
        }
    }
    for start in (0..n).filter(|&j| !(0..n).any(|i| less[i][j])) {
        walk(start, 1, n, &covers, &mut lengths);
    }
    lengths.len() <= 1
}

/// Poset on `n` elements from a bitmask over pairs `i < j`.
pub fn poset_from_mask(n: usize, mask: u64) -> Poset {
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut rels = Vec::new();
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            if mask >> (bit % 64) & 1 == 1 {
                rels.push((names[i].clone(), names[j].clone()));
            }
            bit += 1;
        }
    }
    Poset::build(&names, &rels).unwrap()
}
