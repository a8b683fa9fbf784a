use super::discrete::{DiscreteEvaluator, LassoShape};
use crate::syntax::{Alphabet, Formula};
use crate::words::{nonempty_subsets, DiscreteLassoWord, LassoEnumerator, PropSet};

/// Size limits for [`brute_force_sat`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BruteForceBounds {
    pub max_stem: usize,
    pub max_loop: usize,
    pub max_gap: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BruteForceOutcome {
    Found(DiscreteLassoWord),
    Exhausted,
}

impl BruteForceOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self, BruteForceOutcome::Found(_))
    }
}

/// Proposition sets that differ on the atoms of `f`, one representative per
/// class. Sets that agree on those atoms are interchangeable for `f`.
fn representative_propsets(f: &Formula, alphabet: &Alphabet) -> Vec<PropSet> {
    let used: Alphabet = f.atoms().intersection(alphabet).cloned().collect();
    let mut reps = nonempty_subsets(&used);
    if let Some(other) = alphabet.iter().find(|a| !used.contains(*a)) {
        reps.push(PropSet::from([other.clone()]));
    }
    reps
}

/// First enumerated lasso word over `alphabet` satisfying `f` at position 0.
///
/// Words are enumerated in [`LassoEnumerator`] order, restricted to one
/// proposition set per class of sets indistinguishable by `f`.
pub fn brute_force_sat(f: &Formula, alphabet: &Alphabet, bounds: BruteForceBounds) -> BruteForceOutcome {
    let ev = DiscreteEvaluator::new(f);
    let propsets = representative_propsets(f, alphabet);
    let valuation: Vec<Vec<bool>> =
        propsets.iter().map(|s| ev.atoms().iter().map(|a| s.contains(a)).collect()).collect();
    let mut words = LassoEnumerator::with_propsets(propsets, bounds.max_stem, bounds.max_loop, bounds.max_gap);
    let (mut gaps, mut props, mut scratch) = (Vec::new(), Vec::new(), Vec::new());
    loop {
        let Some((stem_len, letters)) = words.next_raw() else {
            return BruteForceOutcome::Exhausted;
        };
        let letters = letters.to_vec();
        gaps.clear();
        props.clear();
        for &l in &letters {
            let (p, g) = words.decode(l);
            props.push(p);
            gaps.push(g);
        }
        let shape = LassoShape { stem_len, gaps: &gaps, props: &props, valuation: &valuation };
        if ev.eval_shape_at0(&shape, &mut scratch) {
            return BruteForceOutcome::Found(words.build(stem_len, &letters));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::eval_discrete;
    use crate::syntax::{alphabet, parse_formula_any};

    const B: BruteForceBounds = BruteForceBounds { max_stem: 2, max_loop: 2, max_gap: 3 };

    #[test]
    fn examples() {
        let pq = alphabet(["p", "q"]);
        assert_eq!(brute_force_sat(&Formula::False, &pq, B), BruteForceOutcome::Exhausted);
        let BruteForceOutcome::Found(w) = brute_force_sat(&Formula::atom("p"), &alphabet(["p"]), B) else {
            panic!()
        };
        assert_eq!((w.stem_len(), w.loop_len(), w.period()), (0, 1, 1));
        let f = parse_formula_any("F[2,2] p").unwrap();
        let BruteForceOutcome::Found(w) = brute_force_sat(&f, &pq, B) else { panic!() };
        assert!(eval_discrete(&w, 0, &f));
        assert!((0..4).any(|k| w.time(k) == 2 && w.props(k).contains("p")));
    }

    #[test]
    fn filler_set_used_when_atoms_must_be_false() {
        let f = parse_formula_any("G !p & !p").unwrap();
        assert!(brute_force_sat(&f, &alphabet(["p", "q"]), B).is_found());
        assert!(!brute_force_sat(&f, &alphabet(["p"]), B).is_found());
    }
}
