use std::collections::HashMap;

use crate::syntax::{Atom, Formula, Interval};
use crate::words::DiscreteLassoWord;

#[derive(Debug, Clone)]
enum Node {
    True,
    False,
    Atom(usize),
    Not(usize),
    And(usize, usize),
    Or(usize, usize),
    Implies(usize, usize),
    Iff(usize, usize),
    Until(Interval, usize, usize),
    Release(Interval, usize, usize),
    Eventually(Interval, usize),
    Globally(Interval, usize),
    Next(Interval, usize),
    Count(u32, Interval, usize),
}

/// A lasso word given as raw positions: `gaps[i]` is the distance from
/// canonical position `i` to its successor and `valuation[props[i]][a]`
/// tells whether atom `a` (in [`DiscreteEvaluator::atoms`] order) holds.
#[derive(Debug, Clone, Copy)]
pub struct LassoShape<'a> {
    pub stem_len: usize,
    pub gaps: &'a [u64],
    pub props: &'a [usize],
    pub valuation: &'a [Vec<bool>],
}

impl LassoShape<'_> {
    fn len(&self) -> usize {
        self.gaps.len()
    }

    fn succ(&self, i: usize) -> usize {
        if i + 1 < self.gaps.len() {
            i + 1
        } else {
            self.stem_len
        }
    }
}

/// A formula compiled for repeated pointwise evaluation.
///
/// Positions `i` and `i + loop_len` (for `i` past the stem) start identical
/// suffixes up to a time shift, so one truth value per canonical position
/// and subformula determines the semantics exactly.
#[derive(Debug, Clone)]
pub struct DiscreteEvaluator {
    nodes: Vec<Node>,
    atoms: Vec<Atom>,
}

impl DiscreteEvaluator {
    pub fn new(f: &Formula) -> Self {
        let mut ev = DiscreteEvaluator { nodes: Vec::new(), atoms: Vec::new() };
        let mut seen = HashMap::new();
        let mut atom_ids = HashMap::new();
        ev.compile(f, &mut seen, &mut atom_ids);
        ev
    }

    /// Atoms in the order expected by [`LassoShape::valuation`].
    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    fn compile<'f>(
        &mut self,
        f: &'f Formula,
        seen: &mut HashMap<&'f Formula, usize>,
        atom_ids: &mut HashMap<Atom, usize>,
    ) -> usize {
        if let Some(&id) = seen.get(f) {
            return id;
        }
        let mut c = |g: &'f Formula, ev: &mut Self| ev.compile(g, seen, atom_ids);
        use Formula as F;
        let node = match f {
            F::True => Node::True,
            F::False => Node::False,
            F::Atom(a) => {
                let next = self.atoms.len();
                let id = *atom_ids.entry(a.clone()).or_insert(next);
                if id == next {
                    self.atoms.push(a.clone());
                }
                Node::Atom(id)
            }
            F::Not(a) => Node::Not(c(a, self)),
            F::And(a, b) => Node::And(c(a, self), c(b, self)),
            F::Or(a, b) => Node::Or(c(a, self), c(b, self)),
            F::Implies(a, b) => Node::Implies(c(a, self), c(b, self)),
            F::Iff(a, b) => Node::Iff(c(a, self), c(b, self)),
            // AU and U coincide pointwise: every position carries a reading.
            F::Until(j, a, b) | F::ActionUntil(j, a, b) => Node::Until(*j, c(a, self), c(b, self)),
            F::Release(j, a, b) => Node::Release(*j, c(a, self), c(b, self)),
            F::Eventually(j, a) => Node::Eventually(*j, c(a, self)),
            F::Globally(j, a) => Node::Globally(*j, c(a, self)),
            F::Next(j, a) => Node::Next(*j, c(a, self)),
            F::Count(n, j, a) => Node::Count(*n, *j, c(a, self)),
        };
        self.nodes.push(node);
        let id = self.nodes.len() - 1;
        seen.insert(f, id);
        id
    }

    /// Truth of the whole formula at every canonical position.
    pub fn eval_shape(&self, shape: &LassoShape<'_>, scratch: &mut Vec<bool>) -> Vec<bool> {
        self.fill(shape, scratch);
        let n = shape.len();
        let root = self.nodes.len() - 1;
        scratch[root * n..(root + 1) * n].to_vec()
    }

    /// Truth of the whole formula at position 0.
    pub fn eval_shape_at0(&self, shape: &LassoShape<'_>, scratch: &mut Vec<bool>) -> bool {
        self.fill(shape, scratch);
        scratch[(self.nodes.len() - 1) * shape.len()]
    }

    /// Truth at every canonical position of `w`.
    pub fn eval_word(&self, w: &DiscreteLassoWord) -> Vec<bool> {
        let n = w.canonical_len();
        let gaps: Vec<u64> = (0..n).map(|i| w.gap(i)).collect();
        let props: Vec<usize> = (0..n).collect();
        let valuation: Vec<Vec<bool>> =
            (0..n).map(|i| self.atoms.iter().map(|a| w.props(i).contains(a)).collect()).collect();
        let shape = LassoShape { stem_len: w.stem_len(), gaps: &gaps, props: &props, valuation: &valuation };
        self.eval_shape(&shape, &mut Vec::new())
    }

    fn fill(&self, shape: &LassoShape<'_>, t: &mut Vec<bool>) {
        let n = shape.len();
        t.clear();
        t.resize(self.nodes.len() * n, false);
        for (id, node) in self.nodes.iter().enumerate() {
            let base = id * n;
            for k in 0..n {
                let v = |c: usize, i: usize| t[c * n + i];
                let value = match *node {
                    Node::True => true,
                    Node::False => false,
                    Node::Atom(a) => shape.valuation[shape.props[k]][a],
                    Node::Not(a) => !v(a, k),
                    Node::And(a, b) => v(a, k) && v(b, k),
                    Node::Or(a, b) => v(a, k) || v(b, k),
                    Node::Implies(a, b) => !v(a, k) || v(b, k),
                    Node::Iff(a, b) => v(a, k) == v(b, k),
                    Node::Until(j, a, b) => until(shape, k, j, |i| v(a, i), |i| v(b, i)),
                    Node::Release(j, a, b) => !until(shape, k, j, |i| !v(a, i), |i| !v(b, i)),
                    Node::Eventually(j, a) => until(shape, k, j, |_| true, |i| v(a, i)),
                    Node::Globally(j, a) => !until(shape, k, j, |_| true, |i| !v(a, i)),
                    Node::Next(j, a) => j.contains(shape.gaps[k]) && v(a, shape.succ(k)),
                    Node::Count(c, j, a) => {
                        let (mut h, mut d) = (k, 0u64);
                        for _ in 0..c {
                            d += shape.gaps[h];
                            h = shape.succ(h);
                        }
                        j.contains(d) && v(a, h)
                    }
                };
                t[base + k] = value;
            }
        }
    }
}

/// `∃h > k. t_h - t_k ∈ J ∧ b(h) ∧ ∀m ∈ (k, h). a(m)` on canonical positions.
fn until(shape: &LassoShape<'_>, k: usize, j: Interval, a: impl Fn(usize) -> bool, b: impl Fn(usize) -> bool) -> bool {
    let loop_len = shape.len() - shape.stem_len;
    let mut h = shape.succ(k);
    let mut d = shape.gaps[k];
    // Steps taken inside the loop once every later distance lies in J.
    let mut settled = 0;
    loop {
        if b(h) && j.contains(d) {
            return true;
        }
        if !a(h) {
            return false;
        }
        match j.hi() {
            Some(hi) if d >= hi => return false,
            None if d >= j.lo() && h >= shape.stem_len => {
                // From here on only the untimed part matters; one full loop
                // visits every position that could ever be a witness.
                settled += 1;
                if settled > loop_len {
                    return false;
                }
            }
            _ => {}
        }
        d += shape.gaps[h];
        h = shape.succ(h);
    }
}

/// Pointwise truth of `f` at position `k` of `w`.
pub fn eval_discrete(w: &DiscreteLassoWord, k: usize, f: &Formula) -> bool {
    debug_assert!(w.validate().is_ok(), "evaluating an ill-formed word");
    DiscreteEvaluator::new(f).eval_word(w)[w.canonical(k)]
}

/// Pointwise truth of `f` at every canonical position of `w`.
pub fn eval_discrete_all(w: &DiscreteLassoWord, f: &Formula) -> Vec<bool> {
    DiscreteEvaluator::new(f).eval_word(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula_any;
    use crate::words::Event;

    fn p(text: &str) -> Formula {
        parse_formula_any(text).unwrap()
    }

    fn ev(name: &str, t: u64) -> Event<u64> {
        Event::named([name], t)
    }

    fn square_wave() -> DiscreteLassoWord {
        DiscreteLassoWord::new(vec![ev("p", 0), ev("q", 3)], vec![ev("p", 0), ev("q", 3)], 10, 10).unwrap()
    }

    #[test]
    fn examples() {
        let all_p = DiscreteLassoWord::periodic(vec![ev("p", 0)], 1).unwrap();
        assert!(eval_discrete(&all_p, 0, &p("G p")));
        assert!(!eval_discrete(&all_p, 0, &p("F !p")));
        assert!(eval_discrete(&square_wave(), 0, &p("C{3}(10,inf) true")));
        assert!(!eval_discrete(&square_wave(), 0, &p("C{2}(10,inf) true")));
        let gap2 = DiscreteLassoWord::new(vec![ev("p", 0)], vec![ev("p", 0)], 2, 2).unwrap();
        assert!(!eval_discrete(&gap2, 0, &p("X[1,1] p")));
        assert!(eval_discrete(&gap2, 0, &p("X[2,2] p")));
    }

    #[test]
    fn strict_future() {
        let w = DiscreteLassoWord::new(vec![ev("q", 0)], vec![ev("p", 0)], 1, 1).unwrap();
        assert!(eval_discrete(&w, 0, &p("G p")));
        assert!(!eval_discrete(&w, 0, &p("p & G p")));
        assert!(eval_discrete(&w, 0, &p("q U[1,1] p")));
        assert!(!eval_discrete(&w, 0, &p("F[2,inf) q")));
    }

    #[test]
    fn until_in_loop() {
        // p at 0, then q at 1, r at 2 repeating with period 2
        let w = DiscreteLassoWord::new(vec![ev("p", 0)], vec![ev("q", 0), ev("r", 1)], 2, 1).unwrap();
        assert!(eval_discrete(&w, 0, &p("G F r")));
        assert!(eval_discrete(&w, 0, &p("F[6,6] r")));
        assert!(!eval_discrete(&w, 0, &p("F[6,6] q")));
        assert!(eval_discrete(&w, 1, &p("(q | r) U(5,inf) r")));
        assert!(!eval_discrete(&w, 1, &p("q U(5,inf) r")));
        assert_eq!(eval_discrete_all(&w, &p("X r")), [false, true, false]);
    }
}
