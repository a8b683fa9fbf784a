use std::collections::HashMap;

use super::tableau::{expand, Cover, Graph};
use super::{translate_to_ltl, DecisionError, LtlId, SolveOptions};
use crate::syntax::Formula;
use crate::words::{DiscreteLassoWord, PropSet};

/// Does `w` satisfy `f` at position 0?
///
/// The word becomes a single lasso-shaped path of ε-padded steps; its
/// product with the tableau of `¬τ(f)` is empty iff `w ⊨ f`. Independent
/// of the evaluator, so the two can check each other.
pub fn model_check_lasso(w: &DiscreteLassoWord, f: &Formula, opts: &SolveOptions) -> Result<bool, DecisionError> {
    w.validate().map_err(|v| DecisionError::Internal(format!("invalid word: {v}")))?;
    let mut alphabet = f.atoms();
    for k in 0..w.canonical_len() {
        alphabet.extend(w.props(k).iter().cloned());
    }
    let mut tr = translate_to_ltl(f, &alphabet);
    let root = tr.arena.neg(tr.body);
    let arena = &tr.arena;

    let stem_steps = w.loop_start() as usize;
    let total = stem_steps + w.period() as usize;
    let mut letters: Vec<Option<&PropSet>> = vec![None; total];
    for e in w.stem() {
        letters[e.t as usize] = Some(&e.props);
    }
    for e in w.cycle() {
        letters[stem_steps + e.t as usize] = Some(&e.props);
    }
    let succ = |pos: usize| if pos + 1 < total { pos + 1 } else { stem_steps };
    let holds = |pos: usize, atom, value: bool| {
        let truth = match letters[pos] {
            None => atom == tr.eps,
            Some(props) => atom != tr.eps && props.contains(arena.atom_name(atom)),
        };
        truth == value
    };

    let mut covers: HashMap<Vec<LtlId>, Vec<Cover>> = HashMap::new();
    let graph = Graph::explore((vec![root], 0usize), opts.max_states, |(obligations, pos)| {
        let options = covers.entry(obligations.clone()).or_insert_with(|| expand(arena, obligations));
        options
            .iter()
            .filter(|c| c.lits.iter().all(|&(a, v)| holds(*pos, a, v)))
            .map(|c| ((c.next.clone(), succ(*pos)), c.lits.clone(), c.pending.clone()))
            .collect()
    })?;
    Ok(graph.accepting_lasso().is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::eval_discrete;
    use crate::syntax::parse_formula_any;
    use crate::words::Event;

    #[test]
    fn loop_examples() {
        let w = DiscreteLassoWord::periodic(vec![Event::named(["p"], 0)], 1).unwrap();
        let o = SolveOptions::default();
        assert!(model_check_lasso(&w, &parse_formula_any("G p").unwrap(), &o).unwrap());
        assert!(!model_check_lasso(&w, &parse_formula_any("F !p").unwrap(), &o).unwrap());
    }

    #[test]
    fn agrees_with_evaluator_on_a_sparse_word() {
        let w = DiscreteLassoWord::new(
            vec![Event::named(["p"], 0), Event::named(["q"], 2)],
            vec![Event::named(["p", "q"], 1)],
            3,
            4,
        )
        .unwrap();
        let o = SolveOptions::default();
        for text in ["F[2,2] q", "X[2,2] q", "X[1,1] q", "G F(0,3] (p & q)", "p U[1,5] (p & q)", "C{2}[4,5] true"] {
            let f = parse_formula_any(text).unwrap();
            assert_eq!(model_check_lasso(&w, &f, &o).unwrap(), eval_discrete(&w, 0, &f), "{text}");
        }
    }
}
