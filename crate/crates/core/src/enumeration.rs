//! Exhaustive iteration over `S_n` and the verification harness built on it.
//!
//! Permutations are generated in lexicographic order. Parallel runs split
//! `S_n` into `n` shards by the first entry; shard `k` covers the
//! lexicographic block starting with `k`, so concatenating shards in order
//! reproduces the sequential order. Verifiers stop at the first failure.

use std::collections::{BTreeMap, HashMap};
use std::ops::ControlFlow;
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bijection::{phi, phi_inverse, phi_with_trace, Step2Violation};
use crate::perm::Permutation;
use crate::stats::{stat_masks, IntSet, StatProfile, Statistic};

/// Largest `n` accepted by the pointwise verifiers (12! = 479,001,600).
pub const MAX_VERIFY_N: usize = 12;
/// Largest `n` accepted by anything that builds a distribution table.
pub const MAX_TABLE_N: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("size {n} out of range: expected 1..={max}")]
    SizeOutOfRange { n: usize, max: usize },
}

fn check_size(n: usize, max: usize) -> Result<(), EnumError> {
    if (1..=max).contains(&n) {
        Ok(())
    } else {
        Err(EnumError::SizeOutOfRange { n, max })
    }
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Steps `v` to its lexicographic successor. Returns false, leaving `v`
/// untouched, when `v` is already the last arrangement.
fn next_lex(v: &mut [usize]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = v.iter().rposition(|&x| x > v[i]).expect("v[i+1] > v[i]");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// Lexicographic iterator over `S_n`.
#[derive(Debug, Clone)]
pub struct Permutations {
    next: Option<Vec<usize>>,
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        if next_lex(&mut succ) {
            self.next = Some(succ);
        }
        Some(Permutation::from_vec_unchecked(cur))
    }
}

pub fn enumerate_permutations(n: usize) -> Result<Permutations, EnumError> {
    check_size(n, MAX_VERIFY_N)?;
    Ok(Permutations { next: Some((1..=n).collect()) })
}

/// Visits the permutations of shard `first` (those starting with `first`)
/// in lexicographic order until `visit` breaks or `stop` is raised.
fn scan_shard<F>(n: usize, first: usize, stop: &AtomicBool, mut visit: F)
where
    F: FnMut(&Permutation) -> ControlFlow<()>,
{
    let mut v: Vec<usize> = std::iter::once(first)
        .chain((1..=n).filter(|&x| x != first))
        .collect();
    loop {
        if stop.load(Ordering::Relaxed) {
            return;
        }
        let p = Permutation::from_vec_unchecked(v.clone());
        if visit(&p).is_break() {
            stop.store(true, Ordering::Relaxed);
            return;
        }
        if !next_lex(&mut v[1..]) {
            return;
        }
    }
}

struct Shard<S> {
    state: S,
    examined: u64,
    failure: Option<Counterexample>,
}

/// Runs `visit` over all of `S_n` with `jobs` worker threads, one shard per
/// first entry. Shards come back in order of their first entry.
fn run_sharded<S, I, F>(n: usize, jobs: usize, init: I, visit: F) -> Vec<Shard<S>>
where
    S: Send,
    I: Fn() -> S + Sync,
    F: Fn(&mut S, &Permutation) -> Result<(), Counterexample> + Sync,
{
    let stop = AtomicBool::new(false);
    let one = |first: usize| {
        let mut shard = Shard { state: init(), examined: 0, failure: None };
        scan_shard(n, first, &stop, |p| {
            shard.examined += 1;
            match visit(&mut shard.state, p) {
                Ok(()) => ControlFlow::Continue(()),
                Err(c) => {
                    shard.failure = Some(c);
                    ControlFlow::Break(())
                }
            }
        });
        shard
    };
    if jobs <= 1 {
        return (1..=n).map(one).collect();
    }
    use rayon::prelude::*;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    pool.install(|| (1..=n).into_par_iter().map(one).collect())
}

/// Which verifier produced a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verifier {
    /// Pointwise set equalities between `sigma` and `phi(sigma)`, plus the
    /// round trip through `phi_inverse`.
    Relations,
    /// The pointwise identities on `sigma_hat` from the construction.
    Pfee,
    /// Equality of the succession and barred-fixed-point count tables.
    Counting,
    /// Equality of the joint triple distributions on both sides.
    Triple,
}

impl Verifier {
    pub const ALL: [Verifier; 4] =
        [Verifier::Relations, Verifier::Pfee, Verifier::Counting, Verifier::Triple];

    pub fn name(self) -> &'static str {
        match self {
            Verifier::Relations => "relations",
            Verifier::Pfee => "pfee",
            Verifier::Counting => "counting",
            Verifier::Triple => "triple",
        }
    }

    pub fn checks(self) -> &'static [&'static str] {
        match self {
            Verifier::Relations => &["fix_bar_eq_suc", "drop_bar_eq_naj_suc", "exc_bar_eq_pred", "round_trip"],
            Verifier::Pfee => &["pfee_fixed", "pfee_drop", "pfee_exc"],
            Verifier::Counting => &["suc_table_eq_fix_bar_table"],
            Verifier::Triple => &["triple_table_eq"],
        }
    }

    pub fn max_n(self) -> usize {
        match self {
            Verifier::Relations | Verifier::Pfee => MAX_VERIFY_N,
            Verifier::Counting | Verifier::Triple => MAX_TABLE_N,
        }
    }
}

/// A witness that some check failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Counterexample {
    /// `expected` is the statistic of `sigma`, `actual` the one of `tau`.
    Relation {
        check: String,
        sigma: Permutation,
        tau: Permutation,
        expected: IntSet,
        actual: IntSet,
    },
    RoundTrip {
        check: String,
        sigma: Permutation,
        tau: Permutation,
        recovered: Permutation,
    },
    Step2 {
        check: String,
        sigma: Permutation,
        violation: Step2Violation,
    },
    /// A table key whose counts differ; `key` holds one set per statistic.
    Count {
        check: String,
        key: Vec<IntSet>,
        left: u64,
        right: u64,
    },
}

impl Counterexample {
    pub fn check(&self) -> &str {
        match self {
            Counterexample::Relation { check, .. }
            | Counterexample::RoundTrip { check, .. }
            | Counterexample::Step2 { check, .. }
            | Counterexample::Count { check, .. } => check,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub n: usize,
    pub verifier: Verifier,
    pub jobs: usize,
    pub checks: Vec<CheckOutcome>,
    pub passed: bool,
    pub counterexample: Option<Counterexample>,
    pub permutations_examined: u64,
    #[serde(with = "duration_ms")]
    pub elapsed: Duration,
}

mod duration_ms {
    use std::time::Duration;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(d.as_secs_f64() * 1e3)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        let ms = f64::deserialize(d)?;
        Ok(Duration::from_secs_f64(ms.max(0.0) / 1e3))
    }
}

impl VerificationReport {
    fn build(
        verifier: Verifier,
        n: usize,
        jobs: usize,
        examined: u64,
        counterexample: Option<Counterexample>,
        started: Instant,
    ) -> Self {
        let failed = counterexample.as_ref().map(Counterexample::check);
        let checks = verifier
            .checks()
            .iter()
            .map(|&name| CheckOutcome { name: name.to_string(), passed: failed != Some(name) })
            .collect();
        VerificationReport {
            n,
            verifier,
            jobs,
            checks,
            passed: counterexample.is_none(),
            counterexample,
            permutations_examined: examined,
            elapsed: started.elapsed(),
        }
    }

    /// The report without its timing, for comparing runs.
    pub fn without_elapsed(&self) -> Self {
        VerificationReport { elapsed: Duration::ZERO, ..self.clone() }
    }
}

/// Merges pointwise shards: the first failing shard (in enumeration order)
/// supplies the counterexample.
fn merge_pointwise(shards: Vec<Shard<()>>) -> (u64, Option<Counterexample>) {
    let examined = shards.iter().map(|s| s.examined).sum();
    let failure = shards.into_iter().find_map(|s| s.failure);
    (examined, failure)
}

fn relations_visit(sigma: &Permutation) -> Result<(), Counterexample> {
    let tau = phi(sigma);
    let src = StatProfile::of(sigma);
    let dst = StatProfile::of(&tau);
    let pairs = [
        ("fix_bar_eq_suc", &src.fix_bar, &dst.suc),
        ("drop_bar_eq_naj_suc", &src.drop_bar, &dst.naj_suc),
        ("exc_bar_eq_pred", &src.exc_bar, &dst.pred),
    ];
    for (check, expected, actual) in pairs {
        if expected != actual {
            return Err(Counterexample::Relation {
                check: check.to_string(),
                sigma: sigma.clone(),
                tau,
                expected: expected.clone(),
                actual: actual.clone(),
            });
        }
    }
    let recovered = phi_inverse(&tau);
    if &recovered != sigma {
        return Err(Counterexample::RoundTrip {
            check: "round_trip".to_string(),
            sigma: sigma.clone(),
            tau,
            recovered,
        });
    }
    Ok(())
}

fn pfee_visit(sigma: &Permutation) -> Result<(), Counterexample> {
    use crate::bijection::Step2Kind;
    phi_with_trace(sigma).check_step2_identities().map_err(|violation| {
        let check = match violation.kind {
            Step2Kind::Fixed => "pfee_fixed",
            Step2Kind::Drop => "pfee_drop",
            Step2Kind::Excedance => "pfee_exc",
        };
        Counterexample::Step2 { check: check.to_string(), sigma: sigma.clone(), violation }
    })
}

type MaskCounts<K> = HashMap<K, u64>;

/// Counts of a per-permutation key on the source and the target side.
fn paired_counts<K, F>(n: usize, jobs: usize, key: F) -> (u64, MaskCounts<K>, MaskCounts<K>)
where
    K: Eq + std::hash::Hash + Send,
    F: Fn(&[u64; 6]) -> (K, K) + Sync,
{
    let shards = run_sharded(
        n,
        jobs,
        || (vec![0usize; n + 1], MaskCounts::<K>::new(), MaskCounts::<K>::new()),
        |(pos, left, right), p| {
            let (l, r) = key(&stat_masks(p, pos));
            *left.entry(l).or_insert(0) += 1;
            *right.entry(r).or_insert(0) += 1;
            Ok(())
        },
    );
    let mut examined = 0;
    let (mut left, mut right) = (MaskCounts::new(), MaskCounts::new());
    for s in shards {
        examined += s.examined;
        let (_, l, r) = s.state;
        for (k, c) in l {
            *left.entry(k).or_insert(0) += c;
        }
        for (k, c) in r {
            *right.entry(k).or_insert(0) += c;
        }
    }
    (examined, left, right)
}

/// First key, in sorted order, whose counts differ between the two maps.
fn first_mismatch<K: Ord + Eq + std::hash::Hash + Copy>(
    left: &MaskCounts<K>,
    right: &MaskCounts<K>,
) -> Option<(K, u64, u64)> {
    let mut keys: Vec<K> = left.keys().chain(right.keys()).copied().collect();
    keys.sort_unstable();
    keys.dedup();
    keys.into_iter().find_map(|k| {
        let (l, r) = (left.get(&k).copied().unwrap_or(0), right.get(&k).copied().unwrap_or(0));
        (l != r).then_some((k, l, r))
    })
}

const SUC: usize = 0;
const FIX_BAR: usize = 1;
const NAJ_SUC: usize = 2;
const PRED: usize = 3;
const DROP_BAR: usize = 4;
const EXC_BAR: usize = 5;

/// Runs one verifier over all of `S_n` with `jobs` threads (1 = sequential).
pub fn verify(verifier: Verifier, n: usize, jobs: usize) -> Result<VerificationReport, EnumError> {
    check_size(n, verifier.max_n())?;
    let started = Instant::now();
    let jobs = jobs.max(1);
    let (examined, failure) = match verifier {
        Verifier::Relations => merge_pointwise(run_sharded(n, jobs, || (), |_, p| relations_visit(p))),
        Verifier::Pfee => merge_pointwise(run_sharded(n, jobs, || (), |_, p| pfee_visit(p))),
        Verifier::Counting => {
            let (examined, suc, fix) = paired_counts(n, jobs, |m| (m[SUC], m[FIX_BAR]));
            let failure = first_mismatch(&suc, &fix).map(|(k, l, r)| Counterexample::Count {
                check: "suc_table_eq_fix_bar_table".to_string(),
                key: vec![IntSet::from_mask(k)],
                left: l,
                right: r,
            });
            (examined, failure)
        }
        Verifier::Triple => {
            let (examined, src, dst) = paired_counts(n, jobs, |m| {
                ((m[FIX_BAR], m[DROP_BAR], m[EXC_BAR]), (m[SUC], m[NAJ_SUC], m[PRED]))
            });
            let failure = first_mismatch(&src, &dst).map(|((a, b, c), l, r)| Counterexample::Count {
                check: "triple_table_eq".to_string(),
                key: vec![IntSet::from_mask(a), IntSet::from_mask(b), IntSet::from_mask(c)],
                left: l,
                right: r,
            });
            (examined, failure)
        }
    };
    Ok(VerificationReport::build(verifier, n, jobs, examined, failure, started))
}

pub fn verify_relations(n: usize) -> Result<VerificationReport, EnumError> {
    verify(Verifier::Relations, n, 1)
}

pub fn verify_pfee(n: usize) -> Result<VerificationReport, EnumError> {
    verify(Verifier::Pfee, n, 1)
}

pub fn verify_counting(n: usize) -> Result<VerificationReport, EnumError> {
    verify(Verifier::Counting, n, 1)
}

pub fn verify_triple_distribution(n: usize) -> Result<VerificationReport, EnumError> {
    verify(Verifier::Triple, n, 1)
}

/// How many permutations of `S_n` take each value of one statistic.
/// Values with zero count are absent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistributionTable {
    pub n: usize,
    pub statistic: Statistic,
    pub counts: BTreeMap<IntSet, u64>,
}

#[derive(Serialize, Deserialize)]
struct TableRow {
    subset: IntSet,
    count: u64,
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    n: usize,
    statistic: Statistic,
    total: u64,
    rows: Vec<TableRow>,
}

impl Serialize for DistributionTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        TableJson {
            n: self.n,
            statistic: self.statistic,
            total: self.total(),
            rows: self
                .counts
                .iter()
                .map(|(k, &count)| TableRow { subset: k.clone(), count })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DistributionTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let t = TableJson::deserialize(d)?;
        Ok(DistributionTable {
            n: t.n,
            statistic: t.statistic,
            counts: t.rows.into_iter().map(|r| (r.subset, r.count)).collect(),
        })
    }
}

impl DistributionTable {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn count(&self, subset: &IntSet) -> u64 {
        self.counts.get(subset).copied().unwrap_or(0)
    }

    /// `subset,count` rows sorted by subset; the subset cell joins members
    /// with `;` and is empty for the empty set.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("subset,count\n");
        for (k, c) in &self.counts {
            out.push_str(&k.to_csv_cell());
            out.push(',');
            out.push_str(&c.to_string());
            out.push('\n');
        }
        out
    }
}

pub fn distribution_table(n: usize, statistic: Statistic) -> Result<DistributionTable, EnumError> {
    distribution_table_with_jobs(n, statistic, 1)
}

pub fn distribution_table_with_jobs(
    n: usize,
    statistic: Statistic,
    jobs: usize,
) -> Result<DistributionTable, EnumError> {
    check_size(n, MAX_TABLE_N)?;
    let idx = Statistic::ALL.iter().position(|&s| s == statistic).unwrap();
    let (_, counts, _) = paired_counts(n, jobs.max(1), |m| (m[idx], m[idx]));
    Ok(DistributionTable {
        n,
        statistic,
        counts: counts.into_iter().map(|(k, c)| (IntSet::from_mask(k), c)).collect(),
    })
}
