//! Bounded variability: bound formulas, the decision `BV(v, V)`, the
//! satisfiability reduction and the fragment-based fast path.

use serde::Serialize;

use super::{mtl_sat_discrete, DecisionError, SolveOptions};
use crate::syntax::{classify_fragment, gap_bound, Alphabet, Formula, Interval};
use crate::words::{DiscreteLassoWord, Event, VariabilityBound};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundStyle {
    /// `C{v}(V,∞) ⊤ ∧ □ C{v}(V,∞) ⊤`, exact.
    Counting,
    /// Carousel atoms plus a timing conjunct, exact on the carousel labeling.
    Carousel,
    /// Every gap above `⌈V/v⌉`, stricter than the bound.
    Gx,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BvVerdict {
    #[serde(rename = "BOUNDED")]
    Bounded,
    #[serde(rename = "UNBOUNDED")]
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BvResult {
    pub verdict: BvVerdict,
    /// A model of the formula violating the bound, iff unbounded.
    pub counterexample: Option<DiscreteLassoWord>,
    /// Least `k` with `t_{k+v} - t_k <= V` in the counterexample.
    pub witness: Option<usize>,
    pub states: usize,
}

/// Carousel proposition `k` (1-based).
pub fn carousel_atom(k: u64) -> String {
    format!("car{k}")
}

fn anchored(f: Formula) -> Formula {
    Formula::always_from_now(f)
}

fn never() -> Formula {
    Formula::globally(Interval::UNBOUNDED, Formula::False)
}

/// `B_v`: position `i` carries exactly carousel atom `1 + (i mod v)`.
pub fn build_carousel(v: u64) -> Formula {
    assert!(v >= 1, "the carousel needs v >= 1");
    let p = |k: u64| Formula::atom(&carousel_atom(k));
    let succ = |k: u64| 1 + (k % v);
    let mut parts = vec![p(1)];
    for k in 1..=v {
        parts.push(anchored(Formula::iff(p(k), Formula::next(Interval::UNBOUNDED, p(succ(k))))));
        if v > 1 {
            let others = Formula::conjunction((1..=v).filter(|&h| h != k).map(|h| Formula::not(p(h))));
            parts.push(anchored(Formula::implies(p(k), others)));
        }
    }
    Formula::conjunction(parts)
}

/// `⋀_k □̂(p_k ⇒ U_{>V}(¬p_k, p_k))`: the next position carrying the same
/// carousel atom, `v` positions ahead, lies more than `V` away.
pub fn carousel_timing(v: u64, big_v: u64) -> Formula {
    let p = |k: u64| Formula::atom(&carousel_atom(k));
    Formula::conjunction((1..=v).map(|k| {
        anchored(Formula::implies(
            p(k),
            Formula::until(Interval::greater_than(big_v), Formula::not(p(k)), p(k)),
        ))
    }))
}

/// A formula constraining the variability of its models. For `v = 0` every
/// style gives `□⊥`, which no infinite word satisfies.
pub fn build_bound_formula(b: VariabilityBound, style: BoundStyle) -> Formula {
    if b.v == 0 {
        return never();
    }
    match style {
        BoundStyle::Counting => {
            let v = u32::try_from(b.v).expect("variability count exceeds u32");
            anchored(Formula::count(v, Interval::greater_than(b.big_v), Formula::True))
        }
        BoundStyle::Carousel => Formula::and(build_carousel(b.v), carousel_timing(b.v, b.big_v)),
        BoundStyle::Gx => {
            let nu = b.big_v.div_ceil(b.v);
            let close = Interval::new(0, Some(nu), true, false).expect("nu >= 1");
            anchored(Formula::globally(close, Formula::False))
        }
    }
}

fn counterexample(model: DiscreteLassoWord, b: VariabilityBound, states: usize) -> Result<BvResult, DecisionError> {
    let check = model.check_variability(b);
    if check.bounded {
        return Err(DecisionError::Internal(format!("counterexample respects {b}:\n{model}")));
    }
    Ok(BvResult { verdict: BvVerdict::Unbounded, counterexample: Some(model), witness: check.witness, states })
}

fn bounded(states: usize) -> BvResult {
    BvResult { verdict: BvVerdict::Bounded, counterexample: None, witness: None, states }
}

/// `BV(v, V)`: is every model of `f` of variability bounded by `v/V`?
/// Decided as unsatisfiability of `f ∧ ¬B` with the counting-style bound.
pub fn decide_bv(f: &Formula, b: VariabilityBound, opts: &SolveOptions) -> Result<BvResult, DecisionError> {
    let mut opts = opts.clone();
    opts.alphabet = Some(opts.effective_alphabet(f));
    let query = Formula::and(f.clone(), Formula::not(build_bound_formula(b, BoundStyle::Counting)));
    let r = mtl_sat_discrete(&query, &opts)?;
    match r.model {
        None => Ok(bounded(r.states)),
        Some(model) => counterexample(model, b, r.states),
    }
}

/// `BV(v, V)` through the carousel: unsatisfiability of
/// `f ∧ B_v ∧ ¬timing`, with every event carrying a proposition of `f`'s
/// alphabet so that carousel atoms never label an event alone.
pub fn decide_bv_carousel(f: &Formula, b: VariabilityBound, opts: &SolveOptions) -> Result<BvResult, DecisionError> {
    if b.v == 0 {
        return decide_bv(f, b, opts);
    }
    let props = opts.effective_alphabet(f);
    let carousel: Alphabet = (1..=b.v).map(|k| carousel_atom(k).into()).collect();
    if let Some(clash) = props.intersection(&carousel).next() {
        return Err(DecisionError::NameClash(clash.to_string()));
    }
    let query = Formula::conjunction([
        f.clone(),
        build_carousel(b.v),
        Formula::not(carousel_timing(b.v, b.big_v)),
        anchored(Formula::some_prop(&props)),
    ]);
    let opts = SolveOptions { alphabet: Some(props.union(&carousel).cloned().collect()), ..opts.clone() };
    let r = mtl_sat_discrete(&query, &opts)?;
    let Some(model) = r.model else {
        return Ok(bounded(r.states));
    };
    let strip = |events: &[Event<u64>]| -> Vec<Event<u64>> {
        events
            .iter()
            .map(|e| Event::new(e.props.difference(&carousel).cloned().collect(), e.t))
            .collect()
    };
    let model = DiscreteLassoWord::new(strip(model.stem()), strip(model.cycle()), model.period(), model.loop_start())
        .map_err(|v| DecisionError::Internal(format!("stripped counterexample is invalid: {v}")))?;
    counterexample(model, b, r.states)
}

/// The bounded-variability instance equivalent to unsatisfiability:
/// `f` is satisfiable iff it is not bounded by `0/δ_f`, with `δ_f` the
/// [`gap_bound`]. With `v = 0` no infinite word is bounded, so the window
/// only records the gap cap under which models are searched.
pub fn reduce_sat_to_bv(f: &Formula) -> VariabilityBound {
    VariabilityBound::new(0, gap_bound(f))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FastVerdict {
    #[serde(rename = "BOUNDED")]
    Bounded,
    #[serde(rename = "UNKNOWN")]
    Unknown,
}

/// Which conjunct selection settled a fast-path query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FastPathRoute {
    Fx,
    Gx,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FastPathResult {
    pub verdict: FastVerdict,
    pub route: Option<FastPathRoute>,
    /// The conjunction `ψ` whose implication of the bound was checked last.
    pub psi: Option<Formula>,
    /// Automaton states explored over all attempts.
    pub states: usize,
}

/// Sound, incomplete check of `BV(v, V)` on a sub-conjunction.
///
/// Writes `f = φ' ∧ ψ` with `ψ` the top-level conjuncts in FX, and checks
/// validity of `¬ψ ∨ B` with the GX-style bound, a GX formula. When no FX
/// conjunct settles it, the GX conjuncts are tried the same way. Budget
/// overruns yield `Unknown`.
pub fn fastpath_bv(f: &Formula, b: VariabilityBound, opts: &SolveOptions) -> FastPathResult {
    let mut out = FastPathResult { verdict: FastVerdict::Unknown, route: None, psi: None, states: 0 };
    if b.v == 0 {
        return out;
    }
    let mut opts = opts.clone();
    opts.alphabet = Some(opts.effective_alphabet(f));
    let bound = build_bound_formula(b, BoundStyle::Gx);
    let conjuncts = f.conjuncts();
    let routes = [
        (FastPathRoute::Fx, (|c| classify_fragment(c).is_fx) as fn(&Formula) -> bool),
        (FastPathRoute::Gx, |c| classify_fragment(c).is_gx),
    ];
    for (route, select) in routes {
        let chosen: Vec<Formula> = conjuncts.iter().copied().filter(|c| select(c)).cloned().collect();
        if chosen.is_empty() {
            continue;
        }
        let psi = Formula::conjunction(chosen);
        if route == FastPathRoute::Fx {
            debug_assert!(classify_fragment(&Formula::or(Formula::not(psi.clone()), bound.clone())).is_gx);
        }
        let query = Formula::and(psi.clone(), Formula::not(bound.clone()));
        out.psi = Some(psi);
        match mtl_sat_discrete(&query, &opts) {
            Ok(r) => {
                out.states += r.states;
                if !r.is_sat() {
                    out.verdict = FastVerdict::Bounded;
                    out.route = Some(route);
                    return out;
                }
            }
            Err(DecisionError::Budget { states }) => out.states += states,
            Err(_) => {}
        }
    }
    out
}
