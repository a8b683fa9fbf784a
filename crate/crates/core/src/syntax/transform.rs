//! Normal forms, fragment classification and syntactic measures.

use thiserror::Error;

use super::formula::{Alphabet, Atom, Formula};
use super::interval::Interval;

/// Negation normal form: negations only on atoms, `→` and `↔` removed.
///
/// Temporal negations use the pointwise dualities: `¬(a U_J b) = ¬a R_J ¬b`,
/// `¬◇_J a = □_J ¬a`, and for next and counting
/// `¬◦_J a = ◦ ¬a ∨ ⋁ ◦_K ⊤` where the `K` partition `(0,∞) \ J`.
/// `AU_J` coincides with `U_J` pointwise, so it negates to `R_J` as well.
pub fn to_nnf(f: &Formula) -> Formula {
    nnf(f, false)
}

fn nnf(f: &Formula, neg: bool) -> Formula {
    use Formula::*;
    match (f, neg) {
        (True, false) | (False, true) => True,
        (True, true) | (False, false) => False,
        (Atom(_), false) => f.clone(),
        (Atom(_), true) => Formula::not(f.clone()),
        (Not(a), _) => nnf(a, !neg),
        (And(a, b), false) | (Or(a, b), true) => Formula::and(nnf(a, neg), nnf(b, neg)),
        (Or(a, b), false) | (And(a, b), true) => Formula::or(nnf(a, neg), nnf(b, neg)),
        (Implies(a, b), false) => Formula::or(nnf(a, true), nnf(b, false)),
        (Implies(a, b), true) => Formula::and(nnf(a, false), nnf(b, true)),
        (Iff(a, b), _) => {
            let lowered = Formula::and(
                Formula::implies((**a).clone(), (**b).clone()),
                Formula::implies((**b).clone(), (**a).clone()),
            );
            nnf(&lowered, neg)
        }
        (Until(j, a, b), false) => Formula::until(*j, nnf(a, false), nnf(b, false)),
        (ActionUntil(j, a, b), false) => Formula::action_until(*j, nnf(a, false), nnf(b, false)),
        (Until(j, a, b) | ActionUntil(j, a, b), true) => Formula::release(*j, nnf(a, true), nnf(b, true)),
        (Release(j, a, b), false) => Formula::release(*j, nnf(a, false), nnf(b, false)),
        (Release(j, a, b), true) => Formula::until(*j, nnf(a, true), nnf(b, true)),
        (Eventually(j, a), false) | (Globally(j, a), true) => Formula::eventually(*j, nnf(a, neg)),
        (Globally(j, a), false) | (Eventually(j, a), true) => Formula::globally(*j, nnf(a, neg)),
        (Next(j, a), false) => Formula::next(*j, nnf(a, false)),
        (Next(j, a), true) => Formula::disjunction(
            std::iter::once(Formula::next(Interval::UNBOUNDED, nnf(a, true)))
                .chain(j.positive_complement().into_iter().map(|k| Formula::next(k, True))),
        ),
        (Count(n, j, a), false) => Formula::count(*n, *j, nnf(a, false)),
        (Count(n, j, a), true) => Formula::disjunction(
            std::iter::once(Formula::count(*n, Interval::UNBOUNDED, nnf(a, true)))
                .chain(j.positive_complement().into_iter().map(|k| Formula::count(*n, k, True))),
        ),
    }
}

/// Syntactic fragments a formula belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize)]
pub struct FragmentClass {
    /// NNF uses only `◇`, `◦`, `∧`, `∨`, literals, `⊤`, `⊥`.
    pub is_fx: bool,
    /// NNF uses only `□`, `◦`, `∧`, `∨`, literals, `⊤`, `⊥`.
    pub is_gx: bool,
    /// No singular interval.
    pub is_mitl: bool,
    /// Every interval is bounded.
    pub is_bmtl: bool,
}

/// Classify `f`. The FX/GX flags are read off the negation normal form; the
/// interval flags off the intervals as written, because the next/counting
/// dualities introduce unbounded complement pieces that say nothing about
/// the formula itself.
pub fn classify_fragment(f: &Formula) -> FragmentClass {
    let n = to_nnf(f);
    let mut fx = true;
    let mut gx = true;
    n.walk(&mut |g| match g {
        Formula::True | Formula::False | Formula::Atom(_) | Formula::Not(_) => {}
        Formula::And(..) | Formula::Or(..) | Formula::Next(..) => {}
        Formula::Eventually(..) => gx = false,
        Formula::Globally(..) => fx = false,
        _ => {
            fx = false;
            gx = false;
        }
    });
    let intervals = f.intervals();
    FragmentClass {
        is_fx: fx,
        is_gx: gx,
        is_mitl: intervals.iter().all(|j| !j.is_singular()),
        is_bmtl: intervals.iter().all(Interval::is_finite),
    }
}

/// Product of the multiset of finite, nonzero interval endpoints; 1 when
/// there are none. Saturates at `u64::MAX`.
pub fn constant_product(f: &Formula) -> u64 {
    f.intervals()
        .iter()
        .flat_map(|j| j.finite_endpoints())
        .filter(|&c| c != 0)
        .fold(1u64, |acc, c| acc.saturating_mul(c))
}

/// A gap cap that never changes satisfiability: any gap larger than the
/// largest constant `K` can be shrunk to `K + 1` without changing which
/// interval any distance falls into. This is at least [`constant_product`].
pub fn gap_bound(f: &Formula) -> u64 {
    let k = f.max_constant().unwrap_or(0);
    constant_product(f).max(k.saturating_add(1))
}

/// Name of the marker proposition introduced by [`restrict_time`].
pub const RESTRICT_ATOM: &str = "e";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RestrictError {
    #[error("proposition {0:?} is already in the alphabet")]
    NameClash(String),
}

/// `φ[T] = φ_e ∧ φ' ∧ φ_𝒫`, which confines the propositions of `alphabet`
/// to the time span `[0, T]`.
///
/// * `φ_e = e ∧ U_{=T}(e, e ∧ □_{>0} ¬e)`: `e` marks exactly the events in
///   `[0, T]`, and an event sits at `T`. For `T = 0` the until is dropped.
/// * `φ'` is the NNF of `f` with every atom `q` replaced by `e ⇒ q`.
/// * `φ_𝒫 = □(¬e ⇒ ⋀_{p∈𝒫} ¬p)`.
///
/// Models need some proposition outside `𝒫 ∪ {e}` to label events past `T`.
pub fn restrict_time(f: &Formula, t: u64, alphabet: &Alphabet) -> Result<Formula, RestrictError> {
    if alphabet.contains(RESTRICT_ATOM) {
        return Err(RestrictError::NameClash(RESTRICT_ATOM.to_string()));
    }
    let e = Formula::Atom(Atom::new(RESTRICT_ATOM));
    let e_stops = Formula::and(
        e.clone(),
        Formula::globally(Interval::greater_than(0), Formula::not(e.clone())),
    );
    let phi_e = if t == 0 {
        e_stops
    } else {
        Formula::and(e.clone(), Formula::until(Interval::singular(t), e.clone(), e_stops))
    };
    let phi_prime = to_nnf(f).map_atoms(&mut |q| Formula::implies(e.clone(), Formula::Atom(q.clone())));
    let phi_p = Formula::globally(
        Interval::UNBOUNDED,
        Formula::implies(
            Formula::not(e),
            Formula::conjunction(alphabet.iter().map(|p| Formula::not(Formula::Atom(p.clone())))),
        ),
    );
    Ok(Formula::and(Formula::and(phi_e, phi_prime), phi_p))
}
