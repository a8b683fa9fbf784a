//! Discrete-time satisfiability and bounded variability.
//!
//! The pipeline translates a formula to LTL over ε-padded steps
//! ([`translate_to_ltl`]), explores the tableau automaton of the result
//! ([`BuchiAutomaton`]), checks emptiness, and maps an accepting lasso back
//! to a timed word that is re-checked with the evaluator.

mod bv;
mod ltl;
mod model_check;
mod tableau;
mod translate;

use serde::Serialize;
use thiserror::Error;

use crate::semantics::eval_discrete;
use crate::syntax::{Alphabet, Atom, Formula};
use crate::words::{DiscreteLassoWord, Event, PropSet};

pub use bv::{
    build_bound_formula, build_carousel, carousel_atom, carousel_timing, decide_bv, decide_bv_carousel,
    fastpath_bv, reduce_sat_to_bv, BoundStyle, BvResult, BvVerdict, FastPathResult, FastPathRoute,
    FastVerdict,
};
pub use ltl::{AtomId, LtlArena, LtlId, LtlNode};
pub use model_check::model_check_lasso;
pub use tableau::{expand, BuchiAutomaton, Cover, Edge, Graph};
pub use translate::{fresh_eps_name, translate_to_ltl, LtlTranslation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecisionError {
    #[error("state budget of {states} tableau states exceeded")]
    Budget { states: usize },
    #[error("proposition {0:?} is reserved by this construction but occurs in the formula")]
    NameClash(String),
    #[error("internal error: {0}")]
    Internal(String),
}

/// Knobs shared by the decision procedures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOptions {
    /// Cap on explored automaton states.
    pub max_states: usize,
    /// Propositions a model may use, besides the formula's own atoms.
    pub alphabet: Option<Alphabet>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { max_states: 200_000, alphabet: None }
    }
}

impl SolveOptions {
    pub fn with_budget(max_states: usize) -> Self {
        SolveOptions { max_states, ..Self::default() }
    }

    /// `alphabet ∪ atoms(f)`, or `{p}` when both are empty.
    pub fn effective_alphabet(&self, f: &Formula) -> Alphabet {
        let mut a = self.alphabet.clone().unwrap_or_default();
        a.extend(f.atoms());
        if a.is_empty() {
            a.insert(Atom::new("p"));
        }
        a
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SatVerdict {
    #[serde(rename = "SAT")]
    Sat,
    #[serde(rename = "UNSAT")]
    Unsat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatResult {
    pub verdict: SatVerdict,
    /// A model, present iff satisfiable; it satisfies the formula at 0.
    pub model: Option<DiscreteLassoWord>,
    /// Automaton states explored.
    pub states: usize,
    /// DAG size of the LTL translation including side constraints.
    pub ltl_size: usize,
}

impl SatResult {
    pub fn is_sat(&self) -> bool {
        self.verdict == SatVerdict::Sat
    }
}

/// A step: the literals fixed by the automaton transition.
pub type Step = Vec<(AtomId, bool)>;

/// Outcome of [`ltl_sat`]: an ultimately periodic step sequence if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LtlSatResult {
    pub lasso: Option<(Vec<Step>, Vec<Step>)>,
    pub states: usize,
}

/// Satisfiability of an LTL formula, with a lasso-shaped model.
pub fn ltl_sat(arena: &LtlArena, root: LtlId, opts: &SolveOptions) -> Result<LtlSatResult, DecisionError> {
    let aut = BuchiAutomaton::build(arena, root, opts.max_states)?;
    let steps = |edges: Vec<usize>| edges.into_iter().map(|e| aut.graph.edges[e].lits.clone()).collect();
    let lasso = aut.graph.accepting_lasso().map(|(stem, cycle)| (steps(stem), steps(cycle)));
    Ok(LtlSatResult { lasso, states: aut.num_states() })
}

/// Strip `ε` steps: events sit at the indices of non-`ε` steps.
fn steps_to_word(tr: &LtlTranslation, stem: &[Step], cycle: &[Step]) -> Result<DiscreteLassoWord, DecisionError> {
    let letter = |step: &Step| -> Option<PropSet> {
        if step.contains(&(tr.eps, true)) {
            return None;
        }
        Some(
            tr.alphabet
                .iter()
                .filter(|(_, id)| step.contains(&(*id, true)))
                .map(|(a, _)| a.clone())
                .collect(),
        )
    };
    let events = |steps: &[Step]| -> Vec<Event<u64>> {
        steps
            .iter()
            .enumerate()
            .filter_map(|(i, s)| letter(s).map(|props| Event::new(props, i as u64)))
            .collect()
    };
    DiscreteLassoWord::new(events(stem), events(cycle), cycle.len() as u64, stem.len() as u64)
        .map_err(|v| DecisionError::Internal(format!("extracted step sequence is not a timed word: {v}")))
}

/// Satisfiability over discrete time with a verified model.
pub fn mtl_sat_discrete(f: &Formula, opts: &SolveOptions) -> Result<SatResult, DecisionError> {
    let alphabet = opts.effective_alphabet(f);
    let mut tr = translate_to_ltl(f, &alphabet);
    let root = tr.formula();
    let ltl_size = tr.size();
    let res = ltl_sat(&tr.arena, root, opts)?;
    let Some((stem, cycle)) = res.lasso else {
        return Ok(SatResult { verdict: SatVerdict::Unsat, model: None, states: res.states, ltl_size });
    };
    let model = steps_to_word(&tr, &stem, &cycle)?;
    if !eval_discrete(&model, 0, f) {
        return Err(DecisionError::Internal(format!("extracted model does not satisfy {f}:\n{model}")));
    }
    Ok(SatResult { verdict: SatVerdict::Sat, model: Some(model), states: res.states, ltl_size })
}

/// Validity over discrete time: `¬f` is unsatisfiable.
pub fn mtl_valid_discrete(f: &Formula, opts: &SolveOptions) -> Result<bool, DecisionError> {
    let mut opts = opts.clone();
    opts.alphabet = Some(opts.effective_alphabet(f));
    Ok(!mtl_sat_discrete(&Formula::not(f.clone()), &opts)?.is_sat())
}
