//! Timed words: ultimately periodic words over ℕ and finite words over ℝ≥0.

mod enumerate;
mod finite;
mod format;
mod lasso;

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::syntax::Atom;

pub use enumerate::{enumerate_lasso_words, nonempty_subsets, LassoEnumerator};
pub use finite::FiniteWord;
pub use format::{parse_word, AnyWord, WordFormatError};
pub use lasso::DiscreteLassoWord;

/// The propositions holding at one position.
pub type PropSet = BTreeSet<Atom>;

/// One position of a timed word.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Event<T> {
    pub props: PropSet,
    pub t: T,
}

impl<T> Event<T> {
    pub fn new(props: PropSet, t: T) -> Self {
        Event { props, t }
    }

    /// Event with the named propositions.
    pub fn named<'a>(names: impl IntoIterator<Item = &'a str>, t: T) -> Self {
        Event { props: names.into_iter().map(Atom::new).collect(), t }
    }
}

/// `v/V`: at most `v` events in any closed window of length `V`, that is
/// `t_{k+v} - t_k > V` for every position `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct VariabilityBound {
    pub v: u64,
    #[serde(rename = "V")]
    pub big_v: u64,
}

impl VariabilityBound {
    /// Panics when `big_v == 0`.
    pub fn new(v: u64, big_v: u64) -> Self {
        assert!(big_v >= 1, "variability window must be positive");
        VariabilityBound { v, big_v }
    }
}

impl fmt::Display for VariabilityBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.v, self.big_v)
    }
}

/// Result of a variability check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VariabilityCheck {
    pub bounded: bool,
    /// Least position `k` with `t_{k+v} - t_k <= V`.
    pub witness: Option<usize>,
}

impl VariabilityCheck {
    fn from_witness(witness: Option<usize>) -> Self {
        VariabilityCheck { bounded: witness.is_none(), witness }
    }
}

/// First violated well-formedness condition of a word.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordViolation {
    #[error("the word has no events")]
    Empty,
    #[error("the loop has no events")]
    EmptyLoop,
    #[error("the loop period must be positive")]
    ZeroPeriod,
    #[error("first timestamp is {0}, expected 0")]
    NonzeroStart(String),
    #[error("timestamps not strictly increasing at position {index}: {prev} then {next}")]
    NotIncreasing { index: usize, prev: String, next: String },
    #[error("position {0} carries no proposition")]
    EmptyProps(usize),
    #[error("loop offset {offset} is not below the period {period}")]
    OffsetOutOfRange { offset: u64, period: u64 },
}
