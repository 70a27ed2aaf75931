//! The statistic-preserving bijection `phi` on `S_n` and its inverse.
//!
//! `phi` is the composition
//!
//! ```text
//! sigma --reverse_complement--> sigma_bar --rotate_left--> sigma_hat
//!       --canonical_cycle_form, flatten--> tau_bar --inverse--> tau_bar_inv
//!       --reverse_complement--> tau
//! ```
//!
//! and it carries barred fixed points to successions, barred drop values to
//! non-adjacent successions and barred excedance values to predecessors.
//!
//! The canonical cycle form writes the cycle containing `n` first with `n`
//! last, then the remaining cycles each starting at their minimum, ordered
//! by decreasing minimum. Erasing the parentheses loses nothing: the first
//! cycle ends at `n`, and every later cycle starts at a left-to-right
//! minimum of the suffix after `n`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::{Cycle, ParseError, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycleFormError {
    #[error("cycle form is empty")]
    Empty,
    #[error("cycle {0} is empty")]
    EmptyCycle(usize),
    #[error("cycle elements do not partition 1..={n}: {detail}")]
    NotAPartition { n: usize, detail: String },
    #[error("first cycle must end with the largest element {n}")]
    FirstCycleMustEndWithMax { n: usize },
    #[error("cycle {0} does not start with its smallest element")]
    NotMinimumFirst(usize),
    #[error("cycle {0} does not have a smaller minimum than the cycle before it")]
    MinimaNotDecreasing(usize),
    #[error("word is not a permutation: {0}")]
    NotAPermutation(#[from] ParseError),
}

/// A permutation written in canonical cycle form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<usize>>", into = "Vec<Vec<usize>>")]
pub struct CanonicalCycleForm {
    cycles: Vec<Cycle>,
    n: usize,
}

impl CanonicalCycleForm {
    /// Validates an explicit list of cycles against the canonical layout.
    pub fn new(cycles: Vec<Vec<usize>>) -> Result<Self, CycleFormError> {
        if cycles.is_empty() {
            return Err(CycleFormError::Empty);
        }
        if let Some(i) = cycles.iter().position(Vec::is_empty) {
            return Err(CycleFormError::EmptyCycle(i + 1));
        }
        let n: usize = cycles.iter().map(Vec::len).sum();
        let mut seen = vec![false; n + 1];
        for &x in cycles.iter().flatten() {
            if x == 0 || x > n {
                return Err(CycleFormError::NotAPartition {
                    n,
                    detail: format!("element {x} out of range"),
                });
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(CycleFormError::NotAPartition {
                    n,
                    detail: format!("element {x} repeated"),
                });
            }
        }
        if cycles[0].last() != Some(&n) {
            return Err(CycleFormError::FirstCycleMustEndWithMax { n });
        }
        let mut prev_min = usize::MAX;
        for (i, c) in cycles.iter().enumerate().skip(1) {
            let min = *c.iter().min().unwrap();
            if c[0] != min {
                return Err(CycleFormError::NotMinimumFirst(i + 1));
            }
            if min >= prev_min {
                return Err(CycleFormError::MinimaNotDecreasing(i + 1));
            }
            prev_min = min;
        }
        Ok(CanonicalCycleForm {
            cycles: cycles.into_iter().map(Cycle::from_vec).collect(),
            n,
        })
    }

    pub fn cycles(&self) -> &[Cycle] {
        &self.cycles
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// The permutation whose cycles these are.
    pub(crate) fn apply_cycles(&self) -> Permutation {
        let mut values = vec![0; self.n];
        for c in &self.cycles {
            let e = c.elements();
            for (j, &x) in e.iter().enumerate() {
                values[x - 1] = e[(j + 1) % e.len()];
            }
        }
        Permutation::from_vec_unchecked(values)
    }
}

impl TryFrom<Vec<Vec<usize>>> for CanonicalCycleForm {
    type Error = CycleFormError;

    fn try_from(cycles: Vec<Vec<usize>>) -> Result<Self, Self::Error> {
        CanonicalCycleForm::new(cycles)
    }
}

impl From<CanonicalCycleForm> for Vec<Vec<usize>> {
    fn from(c: CanonicalCycleForm) -> Self {
        c.cycles.into_iter().map(|c| c.elements().to_vec()).collect()
    }
}

impl fmt::Display for CanonicalCycleForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cycles {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

pub fn canonical_cycle_form(p: &Permutation) -> CanonicalCycleForm {
    let n = p.len();
    // `cycles()` lists each cycle from its minimum, by increasing minimum.
    let mut rest = Vec::new();
    let mut first = None;
    for mut c in p.cycles() {
        if let Some(at) = c.elements().iter().position(|&x| x == n) {
            c.rotate_to((at + 1) % c.len());
            first = Some(c);
        } else {
            rest.push(c);
        }
    }
    let mut cycles = Vec::with_capacity(rest.len() + 1);
    cycles.push(first.expect("some cycle contains n"));
    cycles.extend(rest.into_iter().rev());
    CanonicalCycleForm { cycles, n }
}

/// Erases the parentheses of a canonical cycle form.
pub fn flatten(c: &CanonicalCycleForm) -> Permutation {
    let mut values = Vec::with_capacity(c.n);
    for cycle in &c.cycles {
        values.extend_from_slice(cycle.elements());
    }
    Permutation::from_vec_unchecked(values)
}

/// Restores the parentheses: the first cycle runs up to and including `n`,
/// and each left-to-right minimum of the remaining suffix opens a new cycle.
pub fn unflatten(w: &Permutation) -> CanonicalCycleForm {
    let n = w.len();
    let v = w.values();
    let split = v.iter().position(|&x| x == n).expect("n occurs in w") + 1;
    let mut cycles = vec![Cycle::from_vec(v[..split].to_vec())];
    let mut current: Vec<usize> = Vec::new();
    for &x in &v[split..] {
        // Openers are the running minima, so `x` is a left-to-right minimum
        // iff it is below the current opener.
        if current.first().is_some_and(|&m| x < m) {
            cycles.push(Cycle::from_vec(std::mem::take(&mut current)));
        }
        current.push(x);
    }
    if !current.is_empty() {
        cycles.push(Cycle::from_vec(current));
    }
    CanonicalCycleForm { cycles, n }
}

/// [`unflatten`] for an arbitrary integer word, rejecting anything that is
/// not a permutation of `1..=len`.
pub fn unflatten_word(word: &[usize]) -> Result<CanonicalCycleForm, CycleFormError> {
    let w = Permutation::new(word.to_vec())?;
    let c = unflatten(&w);
    debug_assert!(CanonicalCycleForm::new(c.clone().into()).is_ok());
    Ok(c)
}

/// Every intermediate stage of `phi`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineTrace {
    pub sigma: Permutation,
    pub sigma_bar: Permutation,
    pub sigma_hat: Permutation,
    pub cycle_form: CanonicalCycleForm,
    pub tau_bar: Permutation,
    pub tau_bar_inv: Permutation,
    pub tau: Permutation,
}

/// Which of the three pointwise identities on `sigma_hat` failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Step2Kind {
    /// `k` fixed, `K = n+1-k`: expects `sigma_hat(K-1) = K`.
    Fixed,
    /// drop at `r`, `R = n+1-r`: expects `sigma_hat(R-1) > R`.
    Drop,
    /// excedance at `s`, `S = n+1-s`: expects `sigma_hat(S-1) < S`.
    Excedance,
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
#[error("{kind:?} identity fails at index {index}: sigma_hat({at}) = {found}, complement index {complement}")]
pub struct Step2Violation {
    pub kind: Step2Kind,
    /// Index of `sigma` the identity was derived from.
    pub index: usize,
    /// `n + 1 - index`.
    pub complement: usize,
    /// Position of `sigma_hat` that was inspected (`complement - 1`).
    pub at: usize,
    pub found: usize,
}

impl PipelineTrace {
    /// Checks, for every index `i <= n-1` of `sigma`, the identity on
    /// `sigma_hat` that its type (fixed point, drop, excedance) predicts.
    pub fn check_step2_identities(&self) -> Result<(), Step2Violation> {
        let n = self.sigma.len();
        for i in 1..n {
            let c = n + 1 - i;
            let found = self.sigma_hat.get(c - 1);
            let v = self.sigma.get(i);
            let (kind, ok) = match v.cmp(&i) {
                std::cmp::Ordering::Equal => (Step2Kind::Fixed, found == c),
                std::cmp::Ordering::Less => (Step2Kind::Drop, found > c),
                std::cmp::Ordering::Greater => (Step2Kind::Excedance, found < c),
            };
            if !ok {
                return Err(Step2Violation { kind, index: i, complement: c, at: c - 1, found });
            }
        }
        Ok(())
    }
}

pub fn phi(sigma: &Permutation) -> Permutation {
    let sigma_hat = sigma.reverse_complement().rotate_left();
    let tau_bar = flatten(&canonical_cycle_form(&sigma_hat));
    tau_bar.inverse().reverse_complement()
}

pub fn phi_with_trace(sigma: &Permutation) -> PipelineTrace {
    let sigma_bar = sigma.reverse_complement();
    let sigma_hat = sigma_bar.rotate_left();
    let cycle_form = canonical_cycle_form(&sigma_hat);
    let tau_bar = flatten(&cycle_form);
    let tau_bar_inv = tau_bar.inverse();
    let tau = tau_bar_inv.reverse_complement();
    let trace = PipelineTrace {
        sigma: sigma.clone(),
        sigma_bar,
        sigma_hat,
        cycle_form,
        tau_bar,
        tau_bar_inv,
        tau,
    };
    debug_assert_eq!(trace.check_step2_identities(), Ok(()));
    trace
}

pub fn phi_inverse(tau: &Permutation) -> Permutation {
    let tau_bar = tau.reverse_complement().inverse();
    let sigma_hat = unflatten(&tau_bar).apply_cycles();
    sigma_hat.rotate_right().reverse_complement()
}
