//! Metric Temporal Logic toolkit.
//!
//! The crate decides discrete-time satisfiability and bounded variability of
//! MTL formulas, evaluates formulas over timed words (ultimately periodic
//! words over ℕ, and finite words with exact rational timestamps over ℝ≥0),
//! and implements the counter-machine gadgets used to reason about
//! bounded variability over dense time.
//!
//! Module map:
//!
//! * [`syntax`]: formulas, intervals, parsing, printing, normal forms.
//! * [`words`]: timed words, variability checks, enumeration, file format.
//! * [`semantics`]: exact evaluators and the brute-force satisfiability oracle.
//! * [`decision`]: the MTL → LTL → generalized Büchi pipeline and the
//!   bounded-variability procedures built on it.
//! * [`machines`]: nondeterministic counter machines, reductions and encodings.
//! * [`corpus`]: deterministic formula corpora used by the cross-checks.
//!
//! Timestamps are generic over [`TimeValue`]; the concrete aliases below pick
//! `u64` for discrete time and arbitrary-precision rationals for dense time.

pub mod corpus;
pub mod decision;
pub mod machines;
pub mod semantics;
pub mod syntax;
pub mod time;
pub mod words;

pub use time::TimeValue;

/// Discrete time domain ℕ.
pub type DiscreteTime = u64;
/// Dense time domain ℝ≥0, represented exactly.
pub type DenseTime = num_rational::BigRational;
/// A finite timed word over dense time.
pub type DenseFiniteWord = words::FiniteWord<DenseTime>;
/// Finite timed word with machine-word rationals, handy for quick experiments.
pub type SmallDenseFiniteWord = words::FiniteWord<num_rational::Rational64>;
/// Interval sets over dense time.
pub type DenseIntervalSet = semantics::IntervalSet<DenseTime>;

pub use decision::{
    decide_bv, fastpath_bv, ltl_sat, model_check_lasso, mtl_sat_discrete, mtl_valid_discrete,
    reduce_sat_to_bv, translate_to_ltl, BvResult, BvVerdict, DecisionError, SatResult,
    SatVerdict, SolveOptions,
};
pub use semantics::{brute_force_sat, eval_dense_existential, eval_discrete};
pub use syntax::{parse_formula, print_formula, Alphabet, Atom, Formula, Interval};
pub use words::{DiscreteLassoWord, FiniteWord, VariabilityBound};
