//! Brute-force oracle: statistics read straight off their definitions with
//! nested scans, and S_n built by recursive insertion. Shares no code with
//! the library's enumeration or statistics.

#![allow(dead_code)]

use std::collections::BTreeSet;

/// All permutations of 1..=n (as plain vectors), built by inserting `n` into
/// every slot of each permutation of 1..n-1.
pub fn all_perms(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in all_perms(n - 1) {
        for slot in 0..=p.len() {
            let mut q = p.clone();
            q.insert(slot, n);
            out.push(q);
        }
    }
    out
}

fn at(p: &[usize], i: usize) -> usize {
    p[i - 1]
}

pub fn suc(p: &[usize]) -> BTreeSet<usize> {
    let n = p.len();
    (1..n).filter(|&i| at(p, i) + 1 == at(p, i + 1)).collect()
}

pub fn fix_bar(p: &[usize]) -> BTreeSet<usize> {
    let n = p.len();
    (1..n).filter(|&i| at(p, i) == i).collect()
}

pub fn naj_suc(p: &[usize]) -> BTreeSet<usize> {
    let n = p.len();
    (1..=n.saturating_sub(2))
        .filter(|&i| (i + 2..=n).any(|j| at(p, j) == at(p, i) + 1))
        .collect()
}

pub fn pred(p: &[usize]) -> BTreeSet<usize> {
    let n = p.len();
    (2..=n).filter(|&i| (1..i).any(|j| at(p, j) == at(p, i) + 1)).collect()
}

pub fn drop_bar(p: &[usize]) -> BTreeSet<usize> {
    let n = p.len();
    (1..n).filter(|&i| at(p, i) < i).map(|i| at(p, i)).collect()
}

pub fn exc_bar(p: &[usize]) -> BTreeSet<usize> {
    let n = p.len();
    (1..n).filter(|&i| at(p, i) > i).map(|i| at(p, i)).collect()
}

pub fn set(xs: &sucfix::IntSet) -> BTreeSet<usize> {
    xs.iter().collect()
}

/// Number of permutations of S_n with no succession, and with no barred
/// fixed point, by direct scan (computed independently and frozen in
/// tests as `EMPTY_COUNTS`).
pub fn empty_counts(n: usize) -> (u64, u64) {
    let mut no_suc = 0;
    let mut no_fix = 0;
    for p in all_perms(n) {
        no_suc += suc(&p).is_empty() as u64;
        no_fix += fix_bar(&p).is_empty() as u64;
    }
    (no_suc, no_fix)
}

/// |{sigma in S_n : Suc(sigma) = {}}| for n = 1..=9, from a separate
/// brute-force enumeration.
pub const EMPTY_COUNTS: [u64; 9] = [1, 1, 3, 11, 53, 309, 2119, 16687, 148329];

/// Random permutation of 1..=n (Fisher-Yates via rand).
pub fn random_perm(n: usize, rng: &mut impl rand::Rng) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut v: Vec<usize> = (1..=n).collect();
    v.shuffle(rng);
    v
}
