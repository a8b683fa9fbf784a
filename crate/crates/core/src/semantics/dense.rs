use thiserror::Error;

use super::intervals::IntervalSet;
use crate::syntax::Formula;
use crate::time::TimeValue;
use crate::words::FiniteWord;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DenseFragmentError {
    #[error("operator `{0}` is outside the existential fragment (atoms, negated atoms, &, |, F, true, false)")]
    Unsupported(String),
}

/// The set of instants of `[0, ∞)` where `f` holds under the continuous
/// semantics, with no events after the last one of `w`.
///
/// Atoms hold exactly at the events carrying them, so every set is built
/// from event timestamps by boolean operations and back-shifts.
pub fn satisfaction_set<T: TimeValue>(w: &FiniteWord<T>, f: &Formula) -> Result<IntervalSet<T>, DenseFragmentError> {
    let atom_set = |name: &crate::syntax::Atom| {
        IntervalSet::points(w.events().iter().filter(|e| e.props.contains(name)).map(|e| e.t.clone()))
    };
    Ok(match f {
        Formula::True => IntervalSet::everything(),
        Formula::False => IntervalSet::empty(),
        Formula::Atom(a) => atom_set(a),
        Formula::Not(inner) => match &**inner {
            Formula::Atom(a) => atom_set(a).complement(),
            _ => return Err(DenseFragmentError::Unsupported("! on a non-atom".into())),
        },
        Formula::And(a, b) => satisfaction_set(w, a)?.intersection(&satisfaction_set(w, b)?),
        Formula::Or(a, b) => satisfaction_set(w, a)?.union(&satisfaction_set(w, b)?),
        Formula::Eventually(j, a) => satisfaction_set(w, a)?.back_shift(j),
        other => {
            let op = crate::syntax::print_formula(other);
            return Err(DenseFragmentError::Unsupported(op));
        }
    })
}

/// Continuous-semantics truth of an existential formula at instant `anchor`.
pub fn eval_dense_existential<T: TimeValue>(
    w: &FiniteWord<T>,
    anchor: &T,
    f: &Formula,
) -> Result<bool, DenseFragmentError> {
    Ok(satisfaction_set(w, f)?.contains(anchor))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula_any;
    use crate::words::Event;
    use num_rational::Rational64;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn examples() {
        let w = FiniteWord::new(vec![Event::named(["p"], r(0, 1)), Event::named(["z"], r(3, 2))]).unwrap();
        let f = |s: &str| parse_formula_any(s).unwrap();
        assert_eq!(eval_dense_existential(&w, &r(0, 1), &f("F(1,2) z")), Ok(true));
        assert_eq!(eval_dense_existential(&w, &r(0, 1), &f("F(0,1) z")), Ok(false));
        assert_eq!(eval_dense_existential(&w, &r(0, 1), &f("p & F(1,2) (z & !p)")), Ok(true));
        assert_eq!(eval_dense_existential(&w, &r(1, 1), &f("!p & F[0,1) z")), Ok(true));
        assert!(eval_dense_existential(&w, &r(0, 1), &f("G p")).is_err());
        assert!(eval_dense_existential(&w, &r(0, 1), &f("!(p & z)")).is_err());
    }
}
