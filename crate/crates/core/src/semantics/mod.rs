//! Exact evaluation of formulas over timed words.
//!
//! * Pointwise semantics over ultimately periodic words in ℕ
//!   ([`eval_discrete`]), with a compiled evaluator for bulk use.
//! * Continuous semantics of the event-anchored existential fragment over
//!   finite dense words ([`eval_dense_existential`]).
//! * A brute-force satisfiability oracle over enumerated lasso words.

mod brute;
mod dense;
mod discrete;
mod intervals;

pub use brute::{brute_force_sat, BruteForceBounds, BruteForceOutcome};
pub use dense::{eval_dense_existential, satisfaction_set, DenseFragmentError};
pub use discrete::{eval_discrete, eval_discrete_all, DiscreteEvaluator, LassoShape};
pub use intervals::{IntervalSet, Span};
