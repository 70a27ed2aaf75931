//! The six set-valued statistics related by the bijection.
//!
//! Index-valued: successions, barred fixed points, non-adjacent successions,
//! predecessors. Value-valued: barred drops and barred excedances. All of
//! them exclude index `n` where the definitions say so, and all scans run in
//! O(n) using the position-of-value table.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::Permutation;

/// Sorted, duplicate-free set of positive integers.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntSet(Vec<usize>);

/// Set of 1-based positions.
pub type IndexSet = IntSet;
/// Set of permutation values.
pub type ValueSet = IntSet;

impl IntSet {
    pub fn new() -> Self {
        IntSet(Vec::new())
    }

    /// Sorts and deduplicates.
    pub fn from_unsorted(mut xs: Vec<usize>) -> Self {
        xs.sort_unstable();
        xs.dedup();
        IntSet(xs)
    }

    /// Members must be pushed in strictly increasing order.
    fn push(&mut self, x: usize) {
        debug_assert!(self.0.last().is_none_or(|&l| l < x));
        self.0.push(x);
    }

    /// Decodes a bitmask where bit `k - 1` marks member `k`.
    pub fn from_mask(mask: u64) -> Self {
        IntSet((0..64).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect())
    }

    /// Bitmask with bit `k - 1` set for each member `k`. Members above 64
    /// do not fit.
    pub fn to_mask(&self) -> Option<u64> {
        self.0.iter().try_fold(0u64, |acc, &k| {
            if (1..=64).contains(&k) {
                Some(acc | 1 << (k - 1))
            } else {
                None
            }
        })
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn is_disjoint(&self, other: &IntSet) -> bool {
        !self.0.iter().any(|x| other.contains(*x))
    }

    /// Semicolon-joined members, empty for the empty set.
    pub fn to_csv_cell(&self) -> String {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        parts.join(";")
    }
}

impl FromIterator<usize> for IntSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        IntSet::from_unsorted(iter.into_iter().collect())
    }
}

impl fmt::Display for IntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

/// `{ i <= n-1 : p_{i+1} = p_i + 1 }`
pub fn successions(p: &Permutation) -> IndexSet {
    let v = p.values();
    let mut out = IntSet::new();
    for i in 1..p.len() {
        if v[i] == v[i - 1] + 1 {
            out.push(i);
        }
    }
    out
}

/// `{ i <= n-1 : p_i = i }`; index `n` is never included.
pub fn fixed_points_bar(p: &Permutation) -> IndexSet {
    let mut out = IntSet::new();
    for i in 1..p.len() {
        if p.get(i) == i {
            out.push(i);
        }
    }
    out
}

/// `{ i <= n-2 : value p_i + 1 sits at a position >= i + 2 }`
pub fn non_adjacent_successions(p: &Permutation) -> IndexSet {
    successor_classes(p, &p.positions()).1
}

/// `{ i >= 2 : value p_i + 1 sits at a position < i }`
pub fn predecessors(p: &Permutation) -> IndexSet {
    successor_classes(p, &p.positions()).2
}

/// `{ p_i : i <= n-1, p_i < i }`
pub fn drop_values_bar(p: &Permutation) -> ValueSet {
    excursion_values(p).1
}

/// `{ p_i : i <= n-1, p_i > i }`
pub fn excedance_values_bar(p: &Permutation) -> ValueSet {
    excursion_values(p).2
}

/// Splits every position whose value is not `n` by where the successor value
/// sits: right after it, further right, or to the left.
fn successor_classes(p: &Permutation, pos: &[usize]) -> (IndexSet, IndexSet, IndexSet) {
    let n = p.len();
    let (mut suc, mut naj, mut pred) = (IntSet::new(), IntSet::new(), IntSet::new());
    for (i, &v) in p.values().iter().enumerate() {
        let i = i + 1;
        if v == n {
            continue;
        }
        let j = pos[v + 1];
        if j == i + 1 {
            suc.push(i);
        } else if j > i {
            naj.push(i);
        } else {
            pred.push(i);
        }
    }
    (suc, naj, pred)
}

/// Classifies positions `1..n-1` as fixed, drop or excedance; the last two
/// are reported by value.
fn excursion_values(p: &Permutation) -> (IndexSet, ValueSet, ValueSet) {
    let n = p.len();
    let mut fix = IntSet::new();
    // Values come out unsorted; use a presence table instead of sorting.
    let mut drop_seen = vec![false; n + 1];
    let mut exc_seen = vec![false; n + 1];
    for i in 1..n {
        let v = p.get(i);
        match v.cmp(&i) {
            std::cmp::Ordering::Equal => fix.push(i),
            std::cmp::Ordering::Less => drop_seen[v] = true,
            std::cmp::Ordering::Greater => exc_seen[v] = true,
        }
    }
    let collect = |seen: Vec<bool>| -> IntSet {
        IntSet(seen.iter().enumerate().filter(|(_, &s)| s).map(|(v, _)| v).collect())
    };
    (fix, collect(drop_seen), collect(exc_seen))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Statistic {
    Suc,
    FixBar,
    NajSuc,
    Pred,
    DropBar,
    ExcBar,
}

impl Statistic {
    pub const ALL: [Statistic; 6] = [
        Statistic::Suc,
        Statistic::FixBar,
        Statistic::NajSuc,
        Statistic::Pred,
        Statistic::DropBar,
        Statistic::ExcBar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Statistic::Suc => "suc",
            Statistic::FixBar => "fix_bar",
            Statistic::NajSuc => "naj_suc",
            Statistic::Pred => "pred",
            Statistic::DropBar => "drop_bar",
            Statistic::ExcBar => "exc_bar",
        }
    }

    pub fn compute(self, p: &Permutation) -> IntSet {
        match self {
            Statistic::Suc => successions(p),
            Statistic::FixBar => fixed_points_bar(p),
            Statistic::NajSuc => non_adjacent_successions(p),
            Statistic::Pred => predecessors(p),
            Statistic::DropBar => drop_values_bar(p),
            Statistic::ExcBar => excedance_values_bar(p),
        }
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown statistic `{0}` (expected one of suc, fix_bar, naj_suc, pred, drop_bar, exc_bar)")]
pub struct UnknownStatistic(pub String);

impl FromStr for Statistic {
    type Err = UnknownStatistic;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Statistic::ALL
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| UnknownStatistic(s.to_string()))
    }
}

/// All six statistics of one permutation, computed from a single
/// position table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatProfile {
    pub suc: IndexSet,
    pub fix_bar: IndexSet,
    pub naj_suc: IndexSet,
    pub pred: IndexSet,
    pub drop_bar: ValueSet,
    pub exc_bar: ValueSet,
}

impl StatProfile {
    pub fn of(p: &Permutation) -> Self {
        let pos = p.positions();
        let (suc, naj_suc, pred) = successor_classes(p, &pos);
        let (fix_bar, drop_bar, exc_bar) = excursion_values(p);
        StatProfile { suc, fix_bar, naj_suc, pred, drop_bar, exc_bar }
    }

    pub fn get(&self, stat: Statistic) -> &IntSet {
        match stat {
            Statistic::Suc => &self.suc,
            Statistic::FixBar => &self.fix_bar,
            Statistic::NajSuc => &self.naj_suc,
            Statistic::Pred => &self.pred,
            Statistic::DropBar => &self.drop_bar,
            Statistic::ExcBar => &self.exc_bar,
        }
    }
}

/// Bitmask form of all six statistics (bit `k - 1` marks member `k`), in
/// [`Statistic::ALL`] order. Requires `n <= 64`; used by the counting tables.
pub(crate) fn stat_masks(p: &Permutation, pos: &mut [usize]) -> [u64; 6] {
    let v = p.values();
    let n = v.len();
    debug_assert!(n <= 64);
    for (i, &x) in v.iter().enumerate() {
        pos[x] = i + 1;
    }
    let mut m = [0u64; 6];
    for (i0, &x) in v.iter().enumerate() {
        let i = i0 + 1;
        let bit = 1u64 << (i - 1);
        if x != n {
            let j = pos[x + 1];
            if j == i + 1 {
                m[0] |= bit;
            } else if j > i {
                m[2] |= bit;
            } else {
                m[3] |= bit;
            }
        }
        if i < n {
            let vbit = 1u64 << (x - 1);
            match x.cmp(&i) {
                std::cmp::Ordering::Equal => m[1] |= bit,
                std::cmp::Ordering::Less => m[4] |= vbit,
                std::cmp::Ordering::Greater => m[5] |= vbit,
            }
        }
    }
    m
}
