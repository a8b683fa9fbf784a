//! MTL over ℕ to LTL over ε-padded step sequences.
//!
//! A timed word over ℕ is read as a step sequence with one step per time
//! unit: step `t_k` carries `σ_k`, every other step carries only `ε`. A
//! formula at position `k` becomes a formula at step `t_k`. Metric bounds
//! unroll into chains of `X`; steps strictly between the current position
//! and a witness only constrain event steps, hence `ε ∨ τ(φ₁)` there.

use std::collections::HashMap;

use super::ltl::{AtomId, LtlArena, LtlId, LtlNode};
use crate::syntax::{to_nnf, Alphabet, Atom, Formula, Interval};

/// Result of [`translate_to_ltl`].
#[derive(Debug, Clone)]
pub struct LtlTranslation {
    pub arena: LtlArena,
    /// `τ(φ)`.
    pub body: LtlId,
    /// Well-formedness of padded words: step 0 is an event, `ε` holds
    /// exactly when no proposition of the alphabet does, and events recur.
    pub side: LtlId,
    pub eps: AtomId,
    /// Alphabet atoms in arena order.
    pub alphabet: Vec<(Atom, AtomId)>,
}

impl LtlTranslation {
    /// `τ(φ) ∧ side constraints`.
    pub fn formula(&mut self) -> LtlId {
        self.arena.and(self.body, self.side)
    }

    /// DAG size of `τ(φ)` alone.
    pub fn body_size(&self) -> usize {
        self.arena.dag_size(&[self.body])
    }

    /// DAG size of `τ(φ)` with the side constraints.
    pub fn size(&self) -> usize {
        self.arena.dag_size(&[self.body, self.side])
    }
}

/// A name for the padding proposition that does not occur in `alphabet`.
pub fn fresh_eps_name(alphabet: &Alphabet) -> String {
    let mut name = String::from("eps");
    while alphabet.contains(name.as_str()) {
        name.push('_');
    }
    name
}

struct Translator {
    arena: LtlArena,
    eps: LtlId,
    not_eps: LtlId,
    eps_id: AtomId,
    memo: HashMap<Formula, LtlId>,
}

impl Translator {
    /// Whether `id` can only hold at an event step, given the side
    /// constraints.
    fn implies_event(&self, id: LtlId) -> bool {
        match self.arena.node(id) {
            LtlNode::False => true,
            LtlNode::Lit(a, p) => (a == self.eps_id) != p,
            LtlNode::And(a, b) => self.implies_event(a) || self.implies_event(b),
            LtlNode::Or(a, b) => self.implies_event(a) && self.implies_event(b),
            _ => false,
        }
    }

    fn at_event(&mut self, id: LtlId) -> LtlId {
        if self.implies_event(id) {
            id
        } else {
            self.arena.and(self.not_eps, id)
        }
    }

    fn or_silent(&mut self, id: LtlId) -> LtlId {
        self.arena.or(self.eps, id)
    }

    /// Some step at distance `d ∈ J`, `d ≥ 1`, satisfies `b`, and every step
    /// strictly before it satisfies `a`.
    fn chain(&mut self, j: Interval, a: LtlId, b: LtlId) -> LtlId {
        let Some((lo, hi)) = j.positive_integer_bounds() else {
            return self.arena.ff();
        };
        let mut acc = match hi {
            Some(hi) => {
                let mut acc = b;
                for _ in (lo..hi).rev() {
                    let step = self.arena.next(acc);
                    let cont = self.arena.and(a, step);
                    acc = self.arena.or(b, cont);
                }
                acc
            }
            None => self.arena.until(a, b),
        };
        for _ in 1..lo {
            let step = self.arena.next(acc);
            acc = self.arena.and(a, step);
        }
        self.arena.next(acc)
    }

    /// `C{n}_J x`: the `n`-th next event lies at a distance in `J` and
    /// satisfies `x`.
    fn count(&mut self, n: u32, j: Interval, x: LtlId) -> LtlId {
        let Some((lo, hi)) = j.positive_integer_bounds() else {
            return self.arena.ff();
        };
        let x = self.at_event(x);
        let mut memo: HashMap<(u32, u64), LtlId> = HashMap::new();
        let m = self.count_from(n, 1, lo, hi, j, x, &mut memo);
        self.arena.next(m)
    }

    /// Obligation at a step `d` after the start with `c` events still to
    /// pass, the last of which must satisfy `x`.
    #[allow(clippy::too_many_arguments)]
    fn count_from(
        &mut self,
        c: u32,
        d: u64,
        lo: u64,
        hi: Option<u64>,
        j: Interval,
        x: LtlId,
        memo: &mut HashMap<(u32, u64), LtlId>,
    ) -> LtlId {
        // Past `lo` with no upper bound the distance no longer matters.
        let key_d = if hi.is_none() { d.min(lo) } else { d };
        if let Some(&id) = memo.get(&(c, key_d)) {
            return id;
        }
        let id = if hi.is_none() && d >= lo {
            let event = if c == 1 {
                x
            } else {
                let rest = self.count_from(c - 1, d + 1, lo, hi, j, x, memo);
                let rest = self.arena.next(rest);
                self.arena.and(self.not_eps, rest)
            };
            self.arena.until(self.eps, event)
        } else {
            let more = hi.map_or(true, |h| d < h);
            let silent = if more {
                let rest = self.count_from(c, d + 1, lo, hi, j, x, memo);
                let rest = self.arena.next(rest);
                self.arena.and(self.eps, rest)
            } else {
                self.arena.ff()
            };
            let event = if c == 1 {
                if j.contains(d) {
                    x
                } else {
                    self.arena.ff()
                }
            } else if more {
                let rest = self.count_from(c - 1, d + 1, lo, hi, j, x, memo);
                let rest = self.arena.next(rest);
                self.arena.and(self.not_eps, rest)
            } else {
                self.arena.ff()
            };
            self.arena.or(silent, event)
        };
        memo.insert((c, key_d), id);
        id
    }

    fn tr(&mut self, f: &Formula) -> LtlId {
        if let Some(&id) = self.memo.get(f) {
            return id;
        }
        use Formula as F;
        let id = match f {
            F::True => self.arena.tt(),
            F::False => self.arena.ff(),
            F::Atom(a) => self.arena.atom(a.as_str()),
            F::Not(a) => {
                let x = self.tr(a);
                self.arena.neg(x)
            }
            F::And(a, b) => {
                let (x, y) = (self.tr(a), self.tr(b));
                self.arena.and(x, y)
            }
            F::Or(a, b) => {
                let (x, y) = (self.tr(a), self.tr(b));
                self.arena.or(x, y)
            }
            F::Implies(a, b) => {
                let (x, y) = (self.tr(a), self.tr(b));
                let nx = self.arena.neg(x);
                self.arena.or(nx, y)
            }
            F::Iff(a, b) => {
                let (x, y) = (self.tr(a), self.tr(b));
                self.arena.iff(x, y)
            }
            F::Until(j, a, b) | F::ActionUntil(j, a, b) => {
                let (x, y) = (self.tr(a), self.tr(b));
                let a_step = self.or_silent(x);
                let b_step = self.at_event(y);
                self.chain(*j, a_step, b_step)
            }
            F::Release(j, a, b) => {
                let (x, y) = (self.tr(a), self.tr(b));
                let (nx, ny) = (self.arena.neg(x), self.arena.neg(y));
                let a_step = self.or_silent(nx);
                let b_step = self.at_event(ny);
                let u = self.chain(*j, a_step, b_step);
                self.arena.neg(u)
            }
            F::Eventually(j, a) => {
                let x = self.tr(a);
                let b_step = self.at_event(x);
                let t = self.arena.tt();
                self.chain(*j, t, b_step)
            }
            F::Globally(j, a) => {
                let x = self.tr(a);
                let nx = self.arena.neg(x);
                let b_step = self.at_event(nx);
                let t = self.arena.tt();
                let u = self.chain(*j, t, b_step);
                self.arena.neg(u)
            }
            F::Next(j, a) => {
                let x = self.tr(a);
                let b_step = self.at_event(x);
                self.chain(*j, self.eps, b_step)
            }
            F::Count(n, j, a) => {
                let x = self.tr(a);
                self.count(*n, *j, x)
            }
        };
        self.memo.insert(f.clone(), id);
        id
    }
}

/// Translate `f` (over `alphabet ∪ atoms(f)`) into LTL over padded steps.
pub fn translate_to_ltl(f: &Formula, alphabet: &Alphabet) -> LtlTranslation {
    let mut sigma = alphabet.clone();
    sigma.extend(f.atoms());
    let mut arena = LtlArena::new();
    let mut atoms = Vec::new();
    for a in &sigma {
        atoms.push((a.clone(), arena.atom_id(a.as_str())));
    }
    let eps_id = arena.atom_id(&fresh_eps_name(&sigma));
    let eps = arena.lit(eps_id, true);
    let not_eps = arena.lit(eps_id, false);
    let mut t = Translator { arena, eps, not_eps, eps_id, memo: HashMap::new() };
    let body = t.tr(&to_nnf(f));
    let mut arena = t.arena;
    let alpha_lits: Vec<LtlId> = atoms.iter().map(|(_, id)| arena.lit(*id, true)).collect();
    let alpha = arena.or_all(alpha_lits);
    let no_alpha = arena.neg(alpha);
    let padding = arena.iff(eps, no_alpha);
    let g_padding = arena.globally(padding);
    let f_event = arena.eventually(not_eps);
    let gf_event = arena.globally(f_event);
    let side = arena.and_all([not_eps, g_padding, gf_event]);
    LtlTranslation { arena, body, side, eps: eps_id, alphabet: atoms }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{alphabet, parse_formula_any};

    fn tau(text: &str) -> String {
        let f = parse_formula_any(text).unwrap();
        let t = translate_to_ltl(&f, &alphabet(["p"]));
        t.arena.display(t.body).to_string()
    }

    #[test]
    fn unrolled_eventually() {
        assert_eq!(tau("F[2,3] p"), "X X (p | X p)");
        assert_eq!(tau("F[1,inf) p"), "X F p");
        assert_eq!(tau("F p"), "X F p");
        assert_eq!(tau("F[0,0] p"), "false");
    }

    #[test]
    fn next_pads_with_eps() {
        assert_eq!(tau("X[2,3] p"), "X (eps & X (p | eps & X p))");
        assert_eq!(tau("X p"), "X (eps U p)");
    }

    #[test]
    fn until_allows_silent_steps() {
        let f = parse_formula_any("q U[1,2] p").unwrap();
        let t = translate_to_ltl(&f, &alphabet(["p", "q"]));
        assert_eq!(t.arena.display(t.body).to_string(), "X (p | (eps | q) & X p)");
    }

    #[test]
    fn counting_chain() {
        assert_eq!(tau("C{2}[2,2] p"), "X (!eps & X p)");
        assert_eq!(tau("C{1}(0,inf) p"), "X (eps U p)");
    }
}
