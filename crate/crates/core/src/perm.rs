//! The permutation value type and the primitive transforms the bijection is
//! built from.
//!
//! Every index and value exposed by this module is 1-based: a permutation of
//! size `n` is a rearrangement of `1..=n`, and `get(i)` returns the value at
//! position `i` for `1 <= i <= n`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty permutation")]
    Empty,
    #[error("invalid token `{0}`: expected a positive integer")]
    InvalidToken(String),
    #[error("duplicate value `{0}`")]
    Duplicate(usize),
    #[error("value `{value}` is outside 1..={n}")]
    OutOfRange { value: i64, n: usize },
}

/// A permutation of `{1, .., n}` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    values: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from its one-line values, checking that they are
    /// a rearrangement of `1..=len`.
    pub fn new(values: Vec<usize>) -> Result<Self, ParseError> {
        let n = values.len();
        if n == 0 {
            return Err(ParseError::Empty);
        }
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 || v > n {
                return Err(ParseError::OutOfRange { value: v as i64, n });
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(ParseError::Duplicate(v));
            }
        }
        Ok(Permutation { values })
    }

    /// Trusted constructor for values produced by the transforms below.
    pub(crate) fn from_vec_unchecked(values: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(values.clone()).is_ok());
        Permutation { values }
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "permutations have at least one element");
        Permutation { values: (1..=n).collect() }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Value at 1-based position `i`.
    #[inline]
    pub fn get(&self, i: usize) -> usize {
        self.values[i - 1]
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn into_values(self) -> Vec<usize> {
        self.values
    }

    /// `pos[v]` is the 1-based position of value `v`; `pos[0]` is unused.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.len() + 1];
        for (i, &v) in self.values.iter().enumerate() {
            pos[v] = i + 1;
        }
        pos
    }

    /// The permutation `q` with `q(p(i)) = i`.
    pub fn inverse(&self) -> Permutation {
        let mut out = vec![0; self.len()];
        for (i, &v) in self.values.iter().enumerate() {
            out[v - 1] = i + 1;
        }
        Permutation { values: out }
    }

    /// `q_i = n + 1 - p_{n-i+1}`: reversal followed by complement.
    pub fn reverse_complement(&self) -> Permutation {
        let n = self.len();
        let values = self.values.iter().rev().map(|&v| n + 1 - v).collect();
        Permutation { values }
    }

    /// `q_i = p_{i+1}` for `i < n` and `q_n = p_1`.
    pub fn rotate_left(&self) -> Permutation {
        let mut values = self.values.clone();
        values.rotate_left(1);
        Permutation { values }
    }

    /// Inverse of [`Permutation::rotate_left`].
    pub fn rotate_right(&self) -> Permutation {
        let mut values = self.values.clone();
        values.rotate_right(1);
        Permutation { values }
    }

    /// Disjoint cycles of the permutation, each started at its smallest
    /// element and listed by increasing minimum.
    pub fn cycles(&self) -> Vec<Cycle> {
        let n = self.len();
        let mut seen = vec![false; n + 1];
        let mut out = Vec::new();
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            let mut elems = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                elems.push(x);
                x = self.get(x);
            }
            out.push(Cycle { elements: elems });
        }
        out
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = ParseError;

    fn try_from(values: Vec<usize>) -> Result<Self, Self::Error> {
        Permutation::new(values)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.values
    }
}

impl FromStr for Permutation {
    type Err = ParseError;

    /// Parses integers separated by any mix of whitespace and commas.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let tokens: Vec<&str> = text
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .collect();
        if tokens.is_empty() {
            return Err(ParseError::Empty);
        }
        let n = tokens.len();
        let mut values = Vec::with_capacity(n);
        for tok in tokens {
            let v: i64 = tok
                .parse()
                .map_err(|_| ParseError::InvalidToken(tok.to_string()))?;
            if v < 1 || v as u64 > n as u64 {
                return Err(ParseError::OutOfRange { value: v, n });
            }
            values.push(v as usize);
        }
        Permutation::new(values)
    }
}

/// Space-separated one-line notation.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_word(f, &self.values, " ")
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{self}]")
    }
}

pub fn parse_permutation(text: &str) -> Result<Permutation, ParseError> {
    text.parse()
}

pub fn format_permutation(p: &Permutation) -> String {
    p.to_string()
}

/// One cycle `(a_1 a_2 .. a_k)` of a permutation: `a_j` maps to `a_{j+1}` and
/// `a_k` maps back to `a_1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cycle {
    elements: Vec<usize>,
}

impl Cycle {
    pub(crate) fn from_vec(elements: Vec<usize>) -> Self {
        debug_assert!(!elements.is_empty());
        Cycle { elements }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn min(&self) -> usize {
        *self.elements.iter().min().expect("cycles are nonempty")
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.contains(&x)
    }

    /// Rotates the cycle in place so that it starts at index `at`.
    pub(crate) fn rotate_to(&mut self, at: usize) {
        self.elements.rotate_left(at);
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        write_word(f, &self.elements, " ")?;
        f.write_str(")")
    }
}

fn write_word(f: &mut fmt::Formatter<'_>, xs: &[usize], sep: &str) -> fmt::Result {
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            f.write_str(sep)?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}
