//! Permutation statistics around successions and fixed points.
//!
//! The central piece is [`phi`], a bijection on `S_n` under which
//!
//! * barred fixed points of `sigma` become successions of `phi(sigma)`,
//! * barred drop values become non-adjacent successions,
//! * barred excedance values become predecessors.
//!
//! [`enumeration`] checks these identities, and the resulting equality of
//! counting tables, exhaustively over small symmetric groups.

pub mod bijection;
pub mod cli;
pub mod enumeration;
pub mod perm;
pub mod stats;

pub use bijection::{
    canonical_cycle_form, flatten, phi, phi_inverse, phi_with_trace, unflatten, unflatten_word,
    CanonicalCycleForm, CycleFormError, PipelineTrace, Step2Kind, Step2Violation,
};
pub use enumeration::{
    distribution_table, enumerate_permutations, verify, verify_counting, verify_pfee,
    verify_relations, verify_triple_distribution, Counterexample, DistributionTable, EnumError,
    VerificationReport, Verifier,
};
pub use perm::{format_permutation, parse_permutation, Cycle, ParseError, Permutation};
pub use stats::{
    drop_values_bar, excedance_values_bar, fixed_points_bar, non_adjacent_successions,
    predecessors, successions, IndexSet, IntSet, StatProfile, Statistic, ValueSet,
};
