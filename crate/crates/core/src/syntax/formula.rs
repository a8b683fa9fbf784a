use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::interval::Interval;

/// An atomic proposition name.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Atom(Arc<str>);

impl Atom {
    pub fn new(name: &str) -> Self {
        Atom(Arc::from(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Atom {
    fn from(s: &str) -> Self {
        Atom::new(s)
    }
}

impl From<String> for Atom {
    fn from(s: String) -> Self {
        Atom(Arc::from(s))
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::borrow::Borrow<str> for Atom {
    fn borrow(&self) -> &str {
        &self.0
    }
}

/// A finite set of atomic propositions.
pub type Alphabet = BTreeSet<Atom>;

/// Build an alphabet from names.
pub fn alphabet<'a>(names: impl IntoIterator<Item = &'a str>) -> Alphabet {
    names.into_iter().map(Atom::new).collect()
}

/// MTL abstract syntax.
///
/// Derived temporal operators are first-class nodes; [`Formula::expand_derived`]
/// rewrites them into `U`, `R` and boolean connectives when a primitive view
/// is needed. `Release` is the dual of `Until` and only appears in negation
/// normal forms or when written explicitly.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Formula {
    True,
    False,
    Atom(Atom),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Until(Interval, Box<Formula>, Box<Formula>),
    Release(Interval, Box<Formula>, Box<Formula>),
    ActionUntil(Interval, Box<Formula>, Box<Formula>),
    Eventually(Interval, Box<Formula>),
    Globally(Interval, Box<Formula>),
    Next(Interval, Box<Formula>),
    /// `C{n}_J φ`: the n-th next position lies at a distance in `J` and
    /// satisfies `φ`. `n >= 1`.
    Count(u32, Interval, Box<Formula>),
}

impl Formula {
    pub fn atom(name: &str) -> Self {
        Formula::Atom(Atom::new(name))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn until(j: Interval, a: Formula, b: Formula) -> Self {
        Formula::Until(j, Box::new(a), Box::new(b))
    }

    pub fn release(j: Interval, a: Formula, b: Formula) -> Self {
        Formula::Release(j, Box::new(a), Box::new(b))
    }

    pub fn action_until(j: Interval, a: Formula, b: Formula) -> Self {
        Formula::ActionUntil(j, Box::new(a), Box::new(b))
    }

    pub fn eventually(j: Interval, a: Formula) -> Self {
        Formula::Eventually(j, Box::new(a))
    }

    pub fn globally(j: Interval, a: Formula) -> Self {
        Formula::Globally(j, Box::new(a))
    }

    pub fn next(j: Interval, a: Formula) -> Self {
        Formula::Next(j, Box::new(a))
    }

    pub fn count(n: u32, j: Interval, a: Formula) -> Self {
        assert!(n >= 1, "counting modality needs n >= 1");
        Formula::Count(n, j, Box::new(a))
    }

    /// Conjunction of all items, `true` when empty. Left-nested.
    pub fn conjunction(items: impl IntoIterator<Item = Formula>) -> Self {
        items.into_iter().reduce(Formula::and).unwrap_or(Formula::True)
    }

    /// Disjunction of all items, `false` when empty. Left-nested.
    pub fn disjunction(items: impl IntoIterator<Item = Formula>) -> Self {
        items.into_iter().reduce(Formula::or).unwrap_or(Formula::False)
    }

    /// `α`: some proposition of the alphabet holds.
    pub fn some_prop(alphabet: &Alphabet) -> Self {
        Formula::disjunction(alphabet.iter().cloned().map(Formula::Atom))
    }

    /// `φ ∧ □φ`: `φ` now and at every later position.
    pub fn always_from_now(f: Formula) -> Self {
        Formula::and(f.clone(), Formula::globally(Interval::UNBOUNDED, f))
    }

    /// Direct children, left to right.
    pub fn children(&self) -> Vec<&Formula> {
        use Formula::*;
        match self {
            True | False | Atom(_) => vec![],
            Not(a) | Eventually(_, a) | Globally(_, a) | Next(_, a) | Count(_, _, a) => vec![a],
            And(a, b) | Or(a, b) | Implies(a, b) | Iff(a, b) => vec![a, b],
            Until(_, a, b) | Release(_, a, b) | ActionUntil(_, a, b) => vec![a, b],
        }
    }

    /// The interval decorating this node, if it is temporal.
    pub fn interval(&self) -> Option<Interval> {
        use Formula::*;
        match self {
            Until(j, ..) | Release(j, ..) | ActionUntil(j, ..) => Some(*j),
            Eventually(j, _) | Globally(j, _) | Next(j, _) | Count(_, j, _) => Some(*j),
            _ => None,
        }
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        1 + self.children().into_iter().map(Formula::size).sum::<usize>()
    }

    /// Size with constants measured in binary: one per node plus the bit
    /// length of every finite interval endpoint and counting index.
    pub fn succinct_size(&self) -> usize {
        fn bits(c: u64) -> usize {
            (64 - c.leading_zeros()).max(1) as usize
        }
        let own = match self {
            Formula::Count(n, j, _) => bits(u64::from(*n)) + j.finite_endpoints().map(bits).sum::<usize>(),
            other => other
                .interval()
                .filter(|j| !j.is_unbounded())
                .map(|j| j.finite_endpoints().map(bits).sum())
                .unwrap_or(0),
        };
        1 + own + self.children().into_iter().map(Formula::succinct_size).sum::<usize>()
    }

    /// Preorder walk.
    pub fn walk<'a>(&'a self, visit: &mut impl FnMut(&'a Formula)) {
        visit(self);
        for c in self.children() {
            c.walk(visit);
        }
    }

    /// Atoms occurring in the formula.
    pub fn atoms(&self) -> Alphabet {
        let mut out = Alphabet::new();
        self.walk(&mut |f| {
            if let Formula::Atom(a) = f {
                out.insert(a.clone());
            }
        });
        out
    }

    /// Every interval in preorder.
    pub fn intervals(&self) -> Vec<Interval> {
        let mut out = Vec::new();
        self.walk(&mut |f| out.extend(f.interval()));
        out
    }

    /// Largest finite interval endpoint, if any interval carries one other
    /// than the implicit `[0, ∞)`.
    pub fn max_constant(&self) -> Option<u64> {
        self.intervals().iter().flat_map(|j| j.finite_endpoints()).max()
    }

    /// Replace each atom by the formula returned from `map`.
    pub fn map_atoms(&self, map: &mut impl FnMut(&Atom) -> Formula) -> Formula {
        use Formula::*;
        let mut go = |f: &Formula| f.map_atoms(map);
        match self {
            True => True,
            False => False,
            Atom(a) => map(a),
            Not(a) => Not(Box::new(go(a))),
            And(a, b) => {
                let a = go(a);
                Formula::and(a, b.map_atoms(map))
            }
            Or(a, b) => {
                let a = go(a);
                Formula::or(a, b.map_atoms(map))
            }
            Implies(a, b) => {
                let a = go(a);
                Formula::implies(a, b.map_atoms(map))
            }
            Iff(a, b) => {
                let a = go(a);
                Formula::iff(a, b.map_atoms(map))
            }
            Until(j, a, b) => {
                let a = go(a);
                Formula::until(*j, a, b.map_atoms(map))
            }
            Release(j, a, b) => {
                let a = go(a);
                Formula::release(*j, a, b.map_atoms(map))
            }
            ActionUntil(j, a, b) => {
                let a = go(a);
                Formula::action_until(*j, a, b.map_atoms(map))
            }
            Eventually(j, a) => Formula::eventually(*j, go(a)),
            Globally(j, a) => Formula::globally(*j, go(a)),
            Next(j, a) => Formula::next(*j, go(a)),
            Count(n, j, a) => Formula::count(*n, *j, go(a)),
        }
    }

    /// Top-level conjuncts, flattening nested `∧`.
    pub fn conjuncts(&self) -> Vec<&Formula> {
        match self {
            Formula::And(a, b) => {
                let mut out = a.conjuncts();
                out.extend(b.conjuncts());
                out
            }
            other => vec![other],
        }
    }

    /// Rewrite `◇`, `□`, `AU`, `◦` and `C` into `U`, `R` and boolean
    /// connectives following their definitions over the pointwise semantics.
    ///
    /// `◦_J φ` becomes `AU_J(⊥, φ)`, itself `U_J(α ⇒ ⊥, φ)`; `C{n}_J φ` has no
    /// primitive counterpart and is kept, with its argument expanded.
    pub fn expand_derived(&self, alphabet: &Alphabet) -> Formula {
        use Formula::*;
        let go = |f: &Formula| f.expand_derived(alphabet);
        let alpha = || Formula::some_prop(alphabet);
        match self {
            True | False | Atom(_) => self.clone(),
            Not(a) => Formula::not(go(a)),
            And(a, b) => Formula::and(go(a), go(b)),
            Or(a, b) => Formula::or(go(a), go(b)),
            Implies(a, b) => Formula::implies(go(a), go(b)),
            Iff(a, b) => Formula::iff(go(a), go(b)),
            Until(j, a, b) => Formula::until(*j, go(a), go(b)),
            Release(j, a, b) => Formula::release(*j, go(a), go(b)),
            ActionUntil(j, a, b) => Formula::until(*j, Formula::implies(alpha(), go(a)), go(b)),
            Eventually(j, a) => Formula::until(*j, True, go(a)),
            Globally(j, a) => Formula::not(Formula::until(*j, True, Formula::not(go(a)))),
            Next(j, a) => Formula::until(*j, Formula::implies(alpha(), False), go(a)),
            Count(n, j, a) => Formula::count(*n, *j, go(a)),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::print::print_formula(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        let f = Formula::eventually(
            Interval::closed(1, 3).unwrap(),
            Formula::and(Formula::atom("p"), Formula::atom("q")),
        );
        assert_eq!(f.size(), 4);
        // 4 nodes + bits(1) + bits(3)
        assert_eq!(f.succinct_size(), 4 + 1 + 2);
        assert_eq!(f.max_constant(), Some(3));
        assert_eq!(f.atoms(), alphabet(["p", "q"]));
    }

    #[test]
    fn conjuncts_flatten() {
        let f = Formula::and(
            Formula::and(Formula::atom("a"), Formula::atom("b")),
            Formula::atom("c"),
        );
        assert_eq!(f.conjuncts().len(), 3);
    }
}
