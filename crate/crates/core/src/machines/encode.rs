use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use super::{Computation, Config, Instr, Machine};
use crate::syntax::{Formula, Interval};
use crate::words::{Event, FiniteWord};
use crate::{DenseFiniteWord, DenseTime};

/// Time units per configuration in [`encode_computation`].
pub const SLOT_PERIOD: u64 = 5;

/// `p_k`: the machine is at `ℓ_k`.
pub fn location_atom(k: usize) -> String {
    format!("p{k}")
}

/// `z_j`: one occurrence per unit of counter `v_j`.
pub fn counter_atom(j: usize) -> String {
    format!("z{j}")
}

fn p(k: usize) -> Formula {
    Formula::atom(&location_atom(k))
}

fn z(j: usize) -> Formula {
    Formula::atom(&counter_atom(j))
}

fn always(f: Formula) -> Formula {
    Formula::always_from_now(f)
}

fn in_one(f: Formula) -> Formula {
    Formula::eventually(Interval::singular(1), f)
}

fn within_unit() -> Interval {
    Interval::open(0, 1).expect("(0,1)")
}

/// `□_{(0,1)}(z_d ⇔ ◇_{=1} z_d)`: counter `d` is copied to the next unit.
fn copy(d: usize) -> Formula {
    Formula::globally(within_unit(), Formula::iff(z(d), in_one(z(d))))
}

/// `Γ_M` over the unit-interval layout: configuration `t` over `[t, t+1)`
/// with `p_k` at `t` and `x_j` occurrences of `z_j` inside.
///
/// Conjuncts in order: `p_0`; location exclusion; location succession;
/// `z` exclusion; the initial configuration; one block per instruction.
/// Increments follow the copy-and-add schema; decrements remove the last
/// occurrence symmetrically; branches copy every counter and move to a
/// target (nonzero) or the next label (zero); halt copies the final
/// configuration forever.
pub fn encode_machine(m: &Machine) -> Formula {
    let locs = m.len();
    let n = m.counters();
    let no_location = || Formula::conjunction((0..locs).map(|i| Formula::not(p(i))));
    let mut parts = vec![p(0)];
    for k in 0..locs {
        let others = (0..locs).filter(|&j| j != k).map(|j| Formula::not(p(j)));
        let no_z = (0..n).map(|d| Formula::not(z(d)));
        parts.push(always(Formula::implies(p(k), Formula::conjunction(others.chain(no_z)))));
    }
    for k in 0..locs {
        let next = Formula::disjunction((0..locs).map(|j| Formula::until(Interval::singular(1), no_location(), p(j))));
        parts.push(always(Formula::implies(p(k), next)));
    }
    for j in 0..n {
        let others = (0..n).filter(|&h| h != j).map(|h| Formula::not(z(h)));
        if n > 1 {
            parts.push(always(Formula::implies(z(j), Formula::conjunction(others))));
        }
    }
    let unit = Interval::closed(0, 1).expect("[0,1]");
    parts.push(Formula::conjunction((0..n).map(|j| Formula::globally(unit, Formula::not(z(j))))));
    for (k, &instr) in m.program().iter().enumerate() {
        let body = match instr {
            Instr::Inc { counter: c } => {
                let tail = Formula::until(
                    Interval::greater_than(0),
                    Formula::and(Formula::not(z(c)), in_one(Formula::not(z(c)))),
                    p(k + 1),
                );
                let fresh = Formula::conjunction([Formula::not(z(c)), in_one(z(c)), tail]);
                Formula::conjunction(
                    std::iter::once(in_one(p(k + 1)))
                        .chain((0..n).filter(|&d| d != c).map(copy))
                        .chain([
                            Formula::globally(within_unit(), Formula::implies(z(c), in_one(z(c)))),
                            Formula::until(within_unit(), Formula::implies(in_one(z(c)), z(c)), fresh),
                        ]),
                )
            }
            Instr::Dec { counter: c } => {
                let tail = Formula::until(
                    Interval::greater_than(0),
                    Formula::and(Formula::not(z(c)), in_one(Formula::not(z(c)))),
                    p(k + 1),
                );
                let dropped = Formula::conjunction([z(c), in_one(Formula::not(z(c))), tail]);
                Formula::conjunction(
                    std::iter::once(in_one(p(k + 1)))
                        .chain((0..n).filter(|&d| d != c).map(copy))
                        .chain([
                            Formula::globally(within_unit(), Formula::implies(in_one(z(c)), z(c))),
                            Formula::until(within_unit(), Formula::implies(z(c), in_one(z(c))), dropped),
                        ]),
                )
            }
            Instr::Branch { counter: c, then_label, else_label } => {
                let nonzero = Formula::eventually(within_unit(), z(c));
                let jump = Formula::or(in_one(p(then_label)), in_one(p(else_label)));
                let fall = if k + 1 < locs { in_one(p(k + 1)) } else { Formula::False };
                Formula::conjunction(
                    [Formula::implies(nonzero.clone(), jump), Formula::implies(Formula::not(nonzero), fall)]
                        .into_iter()
                        .chain((0..n).map(copy)),
                )
            }
            Instr::Halt => Formula::conjunction(std::iter::once(in_one(p(k))).chain((0..n).map(copy))),
        };
        parts.push(always(Formula::implies(p(k), body)));
    }
    Formula::conjunction(parts)
}

/// `Ξ_β = ◇((⋁_k p_k) ∧ ◇_{(1,2)}(z0 ∧ ◇_{(0,1)}(z0 ∧ ⋯)))` with `β + 1`
/// nested `z0` diamonds, over `locations` location propositions. The first
/// hop spans `(1,2)` to reach the `z0` slot of [`encode_computation`].
pub fn encode_overflow(beta: u64, locations: usize) -> Formula {
    let mut chain = z(0);
    for _ in 0..beta {
        chain = Formula::and(z(0), Formula::eventually(within_unit(), chain));
    }
    let first = Interval::open(1, 2).expect("(1,2)");
    let at_config = Formula::and(
        Formula::disjunction((0..locations).map(p)),
        Formula::eventually(first, chain),
    );
    Formula::eventually(Interval::UNBOUNDED, at_config)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EncodeError {
    #[error("the slot layout encodes exactly two counters, the computation has {0}")]
    Arity(usize),
}

fn rational(n: impl Into<BigInt>, d: impl Into<BigInt>) -> DenseTime {
    DenseTime::new(n.into(), d.into())
}

/// Configuration `t` over `[5t, 5t+5)`: `p_k` at `5t`, `z0` at
/// `5t + 1 + j/(x0+1)` and `z1` at `5t + 3 + j/(x1+1)` for `j = 1..x`.
pub fn encode_computation(chi: &Computation) -> Result<DenseFiniteWord, EncodeError> {
    let mut events = Vec::new();
    for (t, c) in chi.configs.iter().enumerate() {
        if c.counters.len() != 2 {
            return Err(EncodeError::Arity(c.counters.len()));
        }
        let base = SLOT_PERIOD * t as u64;
        events.push(Event::named([location_atom(c.location).as_str()], rational(base, 1)));
        for (j, offset) in [(0usize, 1u64), (1, 3)] {
            let x = c.counters[j];
            for i in 1..=x {
                let t = rational(BigInt::from(base + offset) * (x + 1) + i, x + 1);
                events.push(Event::named([counter_atom(j).as_str()], t));
            }
        }
    }
    Ok(FiniteWord::new(events).expect("slot layout is strictly increasing"))
}

/// Why a dense word is not the encoding of a computation.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
pub enum ConformanceViolation {
    #[error("event at {time} carries {props:?}; expected one location or counter proposition")]
    BadLabel { time: String, props: Vec<String> },
    #[error("{prop} at {time} lies outside its slot")]
    WrongSlot { time: String, prop: String },
    #[error("configuration {slot} has no location event")]
    MissingLocation { slot: u64 },
    #[error("location p{location} does not exist")]
    UnknownLocation { location: usize },
    #[error("z{counter} occurrences in configuration {slot} are not evenly spaced for value {count}")]
    Misplaced { slot: u64, counter: usize, count: u64 },
    #[error("configuration 0 is {found}, expected the initial configuration")]
    BadStart { found: String },
    #[error("configuration {slot}: {from} to {to} is not a transition")]
    IllegalStep { slot: u64, from: String, to: String },
    #[error("the machine has {0} counters; the slot layout encodes two")]
    Arity(usize),
}

/// Inverse of [`encode_computation`] for words of `m`, listing every
/// violation found.
pub fn decode_word(w: &DenseFiniteWord, m: &Machine) -> Result<Computation, Vec<ConformanceViolation>> {
    if m.counters() != 2 {
        return Err(vec![ConformanceViolation::Arity(m.counters())]);
    }
    let mut violations = Vec::new();
    let mut locations: BTreeMap<u64, usize> = BTreeMap::new();
    let mut counts: BTreeMap<(u64, usize), Vec<DenseTime>> = BTreeMap::new();
    let period = BigInt::from(SLOT_PERIOD);
    for e in w.events() {
        let time = e.t.to_string();
        let names: Vec<String> = e.props.iter().map(|a| a.to_string()).collect();
        let [name] = &names[..] else {
            violations.push(ConformanceViolation::BadLabel { time, props: names });
            continue;
        };
        let q = e.t.numer().div_floor(&(e.t.denom() * &period));
        let rest = &e.t - DenseTime::from_integer(&q * &period);
        let slot = q.to_u64().unwrap_or(u64::MAX);
        let index = |prefix: char| name.strip_prefix(prefix).and_then(|d| d.parse::<usize>().ok());
        let in_open_unit = |lo: i64| rest > DenseTime::from_integer(lo.into()) && rest < DenseTime::from_integer((lo + 1).into());
        match (index('p'), index('z')) {
            (Some(k), _) if name.starts_with('p') => {
                if !rest.is_zero() {
                    violations.push(ConformanceViolation::WrongSlot { time, prop: name.clone() });
                } else if k >= m.len() {
                    violations.push(ConformanceViolation::UnknownLocation { location: k });
                } else if locations.insert(slot, k).is_some() {
                    violations.push(ConformanceViolation::BadLabel { time, props: names });
                }
            }
            (_, Some(j)) if j < 2 => {
                if in_open_unit(if j == 0 { 1 } else { 3 }) {
                    counts.entry((slot, j)).or_default().push(rest);
                } else {
                    violations.push(ConformanceViolation::WrongSlot { time, prop: name.clone() });
                }
            }
            _ => violations.push(ConformanceViolation::BadLabel { time, props: names }),
        }
    }
    let last_slot = locations.keys().chain(counts.keys().map(|(s, _)| s)).max().copied().unwrap_or(0);
    let mut configs = Vec::new();
    for slot in 0..=last_slot {
        let Some(&location) = locations.get(&slot) else {
            violations.push(ConformanceViolation::MissingLocation { slot });
            continue;
        };
        let mut x = [0u64; 2];
        for (j, base) in [(0usize, 1i64), (1, 3)] {
            let seen = counts.get(&(slot, j)).cloned().unwrap_or_default();
            let count = seen.len() as u64;
            let expected: Vec<DenseTime> =
                (1..=count).map(|i| rational(BigInt::from(base) * (count + 1) + i, count + 1)).collect();
            if seen != expected {
                violations.push(ConformanceViolation::Misplaced { slot, counter: j, count });
            }
            x[j] = count;
        }
        configs.push(Config { location, counters: x.to_vec() });
    }
    if let Some(first) = configs.first() {
        if *first != m.initial() {
            violations.push(ConformanceViolation::BadStart { found: first.to_string() });
        }
    }
    if violations.is_empty() {
        for (i, pair) in configs.windows(2).enumerate() {
            if !m.step(&pair[0]).contains(&pair[1]) {
                violations.push(ConformanceViolation::IllegalStep {
                    slot: i as u64 + 1,
                    from: pair[0].to_string(),
                    to: pair[1].to_string(),
                });
            }
        }
    }
    if violations.is_empty() {
        Ok(Computation { configs })
    } else {
        Err(violations)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machines::parse_machine;
    use crate::semantics::eval_dense_existential;

    fn cfg(location: usize, x0: u64, x1: u64) -> Config {
        Config { location, counters: vec![x0, x1] }
    }

    #[test]
    fn layout() {
        let chi = Computation { configs: vec![cfg(0, 0, 0), cfg(1, 1, 0)] };
        let w = encode_computation(&chi).unwrap();
        let shown: Vec<String> = w.events().iter().map(|e| format!("{}@{}", e.props.iter().next().unwrap(), e.t)).collect();
        assert_eq!(shown, ["p0@0", "p1@5", "z0@13/2"]);
        let idle = encode_computation(&Computation { configs: vec![cfg(0, 0, 0), cfg(0, 0, 0)] }).unwrap();
        assert_eq!(idle.len(), 2);
        let three = encode_computation(&Computation { configs: vec![cfg(0, 0, 0), cfg(1, 3, 2)] }).unwrap();
        assert_eq!(three.max_window_count(&DenseTime::from_integer(1.into())), 3);
    }

    #[test]
    fn overflow_formula() {
        assert_eq!(encode_overflow(0, 2).to_string(), "F ((p0 | p1) & F(1,2) z0)");
        let f2 = encode_overflow(2, 1);
        assert_eq!(f2.atoms().len(), 2);
        assert_eq!(f2.to_string().matches("z0").count(), 3);
        let zero = DenseTime::zero();
        for x in 0..4u64 {
            let w = encode_computation(&Computation { configs: vec![cfg(0, 0, 0), cfg(1, x, 1)] }).unwrap();
            for beta in 0..4 {
                assert_eq!(eval_dense_existential(&w, &zero, &encode_overflow(beta, 2)).unwrap(), x > beta);
            }
        }
    }

    #[test]
    fn machine_formula_shape() {
        let m = parse_machine("L0: inc v1\nL1: halt").unwrap();
        let g = encode_machine(&m);
        let conjuncts = g.conjuncts();
        assert_eq!(*conjuncts[0], Formula::atom("p0"));
        assert!(conjuncts.iter().any(|c| c.to_string() == "G[0,1] !z0 & G[0,1] !z1"
            || c.to_string() == "G[0,1] !z0"));
        let text = g.to_string();
        assert!(text.contains("F[1,1] p1"), "{text}");
        assert!(text.contains("G(0,1) (z1 -> F[1,1] z1)"), "{text}");
    }

    #[test]
    fn decode_round_trip_and_violations() {
        let m = parse_machine("L0: inc v0\nL1: inc v1\nL2: if v0 > 0 goto L0, L3\nL3: halt").unwrap();
        let chi = Computation { configs: vec![cfg(0, 0, 0), cfg(1, 1, 0), cfg(2, 1, 1), cfg(0, 1, 1), cfg(1, 2, 1)] };
        chi.validate(&m).unwrap();
        let w = encode_computation(&chi).unwrap();
        assert_eq!(decode_word(&w, &m).unwrap(), chi);

        let mut events = w.events().to_vec();
        events.push(Event::named(["z0"], DenseTime::from_integer(26.into())));
        let bad = FiniteWord::new(events).unwrap();
        assert!(decode_word(&bad, &m).unwrap_err().iter().any(|v| matches!(v, ConformanceViolation::WrongSlot { .. })));

        let jump = Computation { configs: vec![cfg(0, 0, 0), cfg(0, 2, 0)] };
        let errs = decode_word(&encode_computation(&jump).unwrap(), &m).unwrap_err();
        assert!(matches!(errs[..], [ConformanceViolation::IllegalStep { slot: 1, .. }]));
    }
}
