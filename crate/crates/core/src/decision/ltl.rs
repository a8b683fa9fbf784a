//! Hash-consed propositional LTL over step sequences.

use std::collections::HashMap;
use std::fmt;

/// Handle into an [`LtlArena`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LtlId(u32);

impl LtlId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Index of a proposition in the arena's atom table.
pub type AtomId = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LtlNode {
    True,
    False,
    /// Atom, possibly negated.
    Lit(AtomId, bool),
    And(LtlId, LtlId),
    Or(LtlId, LtlId),
    Next(LtlId),
    /// Non-strict until: the right side now, or the left side now and the
    /// until again at the next step.
    Until(LtlId, LtlId),
    /// Dual of [`LtlNode::Until`].
    Release(LtlId, LtlId),
}

/// Formulas are simplified on construction and shared structurally, so the
/// arena size is the DAG size of everything built in it.
#[derive(Debug, Clone)]
pub struct LtlArena {
    nodes: Vec<LtlNode>,
    index: HashMap<LtlNode, LtlId>,
    negation: HashMap<LtlId, LtlId>,
    atoms: Vec<String>,
}

impl Default for LtlArena {
    fn default() -> Self {
        Self::new()
    }
}

impl LtlArena {
    pub fn new() -> Self {
        let mut a = LtlArena { nodes: Vec::new(), index: HashMap::new(), negation: HashMap::new(), atoms: Vec::new() };
        a.intern(LtlNode::True);
        a.intern(LtlNode::False);
        a
    }

    fn intern(&mut self, n: LtlNode) -> LtlId {
        if let Some(&id) = self.index.get(&n) {
            return id;
        }
        let id = LtlId(self.nodes.len() as u32);
        self.nodes.push(n);
        self.index.insert(n, id);
        id
    }

    pub fn node(&self, id: LtlId) -> LtlNode {
        self.nodes[id.index()]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn atom_names(&self) -> &[String] {
        &self.atoms
    }

    pub fn atom_name(&self, a: AtomId) -> &str {
        &self.atoms[a as usize]
    }

    /// Register (or look up) a proposition.
    pub fn atom_id(&mut self, name: &str) -> AtomId {
        match self.atoms.iter().position(|a| a == name) {
            Some(i) => i as AtomId,
            None => {
                self.atoms.push(name.to_string());
                (self.atoms.len() - 1) as AtomId
            }
        }
    }

    pub fn lookup_atom(&self, name: &str) -> Option<AtomId> {
        self.atoms.iter().position(|a| a == name).map(|i| i as AtomId)
    }

    pub fn tt(&self) -> LtlId {
        LtlId(0)
    }

    pub fn ff(&self) -> LtlId {
        LtlId(1)
    }

    pub fn lit(&mut self, a: AtomId, positive: bool) -> LtlId {
        self.intern(LtlNode::Lit(a, positive))
    }

    pub fn atom(&mut self, name: &str) -> LtlId {
        let a = self.atom_id(name);
        self.lit(a, true)
    }

    pub fn and(&mut self, a: LtlId, b: LtlId) -> LtlId {
        let (t, f) = (self.tt(), self.ff());
        if a == f || b == f {
            return f;
        }
        if a == t || a == b {
            return b;
        }
        if b == t {
            return a;
        }
        if self.are_complementary_lits(a, b) {
            return f;
        }
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        self.intern(LtlNode::And(a, b))
    }

    pub fn or(&mut self, a: LtlId, b: LtlId) -> LtlId {
        let (t, f) = (self.tt(), self.ff());
        if a == t || b == t {
            return t;
        }
        if a == f || a == b {
            return b;
        }
        if b == f {
            return a;
        }
        if self.are_complementary_lits(a, b) {
            return t;
        }
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        self.intern(LtlNode::Or(a, b))
    }

    fn are_complementary_lits(&self, a: LtlId, b: LtlId) -> bool {
        matches!((self.node(a), self.node(b)), (LtlNode::Lit(x, p), LtlNode::Lit(y, q)) if x == y && p != q)
    }

    pub fn and_all(&mut self, items: impl IntoIterator<Item = LtlId>) -> LtlId {
        let mut acc = self.tt();
        for i in items {
            acc = self.and(acc, i);
        }
        acc
    }

    pub fn or_all(&mut self, items: impl IntoIterator<Item = LtlId>) -> LtlId {
        let mut acc = self.ff();
        for i in items {
            acc = self.or(acc, i);
        }
        acc
    }

    pub fn next(&mut self, a: LtlId) -> LtlId {
        if a == self.tt() || a == self.ff() {
            return a;
        }
        self.intern(LtlNode::Next(a))
    }

    pub fn next_n(&mut self, n: u64, a: LtlId) -> LtlId {
        (0..n).fold(a, |acc, _| self.next(acc))
    }

    pub fn until(&mut self, a: LtlId, b: LtlId) -> LtlId {
        let (t, f) = (self.tt(), self.ff());
        if b == t || b == f || a == f || a == b {
            return b;
        }
        self.intern(LtlNode::Until(a, b))
    }

    pub fn release(&mut self, a: LtlId, b: LtlId) -> LtlId {
        let (t, f) = (self.tt(), self.ff());
        if b == t || b == f || a == t || a == b {
            return b;
        }
        self.intern(LtlNode::Release(a, b))
    }

    /// `F a = true U a`
    pub fn eventually(&mut self, a: LtlId) -> LtlId {
        let t = self.tt();
        self.until(t, a)
    }

    /// `G a = false R a`
    pub fn globally(&mut self, a: LtlId) -> LtlId {
        let f = self.ff();
        self.release(f, a)
    }

    pub fn iff(&mut self, a: LtlId, b: LtlId) -> LtlId {
        let (na, nb) = (self.neg(a), self.neg(b));
        let both = self.and(a, b);
        let neither = self.and(na, nb);
        self.or(both, neither)
    }

    /// Negation pushed to the literals.
    pub fn neg(&mut self, a: LtlId) -> LtlId {
        if let Some(&n) = self.negation.get(&a) {
            return n;
        }
        let n = match self.node(a) {
            LtlNode::True => self.ff(),
            LtlNode::False => self.tt(),
            LtlNode::Lit(x, p) => self.lit(x, !p),
            LtlNode::And(x, y) => {
                let (nx, ny) = (self.neg(x), self.neg(y));
                self.or(nx, ny)
            }
            LtlNode::Or(x, y) => {
                let (nx, ny) = (self.neg(x), self.neg(y));
                self.and(nx, ny)
            }
            LtlNode::Next(x) => {
                let nx = self.neg(x);
                self.next(nx)
            }
            LtlNode::Until(x, y) => {
                let (nx, ny) = (self.neg(x), self.neg(y));
                self.release(nx, ny)
            }
            LtlNode::Release(x, y) => {
                let (nx, ny) = (self.neg(x), self.neg(y));
                self.until(nx, ny)
            }
        };
        self.negation.insert(a, n);
        self.negation.insert(n, a);
        n
    }

    fn children(&self, id: LtlId) -> Vec<LtlId> {
        match self.node(id) {
            LtlNode::True | LtlNode::False | LtlNode::Lit(..) => vec![],
            LtlNode::Next(a) => vec![a],
            LtlNode::And(a, b) | LtlNode::Or(a, b) | LtlNode::Until(a, b) | LtlNode::Release(a, b) => vec![a, b],
        }
    }

    /// Number of distinct subformulas of `roots`.
    pub fn dag_size(&self, roots: &[LtlId]) -> usize {
        let mut seen = vec![false; self.nodes.len()];
        let mut stack: Vec<LtlId> = roots.to_vec();
        let mut count = 0;
        while let Some(id) = stack.pop() {
            if std::mem::replace(&mut seen[id.index()], true) {
                continue;
            }
            count += 1;
            stack.extend(self.children(id));
        }
        count
    }

    /// Concrete syntax with `X`, `U`, `R`, `&`, `|`, `!`, `true`, `false`;
    /// `G`/`F` are printed for `false R` and `true U`.
    pub fn display(&self, id: LtlId) -> LtlDisplay<'_> {
        LtlDisplay { arena: self, id }
    }

    fn level(&self, id: LtlId) -> u8 {
        // 1: binary temporal, 2: |, 3: &, 4: prefix and atoms
        match self.node(id) {
            LtlNode::Until(a, _) if a == self.tt() => 4,
            LtlNode::Release(a, _) if a == self.ff() => 4,
            LtlNode::Until(..) | LtlNode::Release(..) => 1,
            LtlNode::Or(..) => 2,
            LtlNode::And(..) => 3,
            _ => 4,
        }
    }

    fn write(&self, out: &mut String, id: LtlId, parent: u8) {
        let wrap = self.level(id) < parent;
        if wrap {
            out.push('(');
        }
        match self.node(id) {
            LtlNode::True => out.push_str("true"),
            LtlNode::False => out.push_str("false"),
            LtlNode::Lit(a, p) => {
                if !p {
                    out.push('!');
                }
                out.push_str(self.atom_name(a));
            }
            LtlNode::Next(a) => {
                out.push_str("X ");
                self.write(out, a, 4);
            }
            LtlNode::Until(a, b) if a == self.tt() => {
                out.push_str("F ");
                self.write(out, b, 4);
            }
            LtlNode::Release(a, b) if a == self.ff() => {
                out.push_str("G ");
                self.write(out, b, 4);
            }
            LtlNode::And(a, b) => {
                self.write(out, a, 3);
                out.push_str(" & ");
                self.write(out, b, 4);
            }
            LtlNode::Or(a, b) => {
                self.write(out, a, 2);
                out.push_str(" | ");
                self.write(out, b, 3);
            }
            LtlNode::Until(a, b) | LtlNode::Release(a, b) => {
                let op = if matches!(self.node(id), LtlNode::Until(..)) { " U " } else { " R " };
                self.write(out, a, 2);
                out.push_str(op);
                self.write(out, b, 1);
            }
        }
        if wrap {
            out.push(')');
        }
    }
}

pub struct LtlDisplay<'a> {
    arena: &'a LtlArena,
    id: LtlId,
}

impl fmt::Display for LtlDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.arena.write(&mut s, self.id, 0);
        f.write_str(&s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplification_and_sharing() {
        let mut a = LtlArena::new();
        let p = a.atom("p");
        let np = a.neg(p);
        assert_eq!(a.and(p, np), a.ff());
        let x1 = a.next(p);
        let x2 = a.next(p);
        assert_eq!(x1, x2);
        let fp = a.eventually(p);
        let gfp = a.globally(fp);
        assert_eq!(a.display(gfp).to_string(), "G F p");
        let n = a.neg(gfp);
        assert_eq!(a.display(n).to_string(), "F G !p");
        assert_eq!(a.neg(n), gfp);
        assert_eq!(a.dag_size(&[gfp]), 5);
    }

    #[test]
    fn printing_parenthesizes() {
        let mut a = LtlArena::new();
        let (p, q) = (a.atom("p"), a.atom("q"));
        let o = a.or(p, q);
        let x = a.next(o);
        let xx = a.next(x);
        assert_eq!(a.display(xx).to_string(), "X X (p | q)");
        let u = a.until(p, q);
        let n = a.and(u, p);
        assert_eq!(a.display(n).to_string(), "p & (p U q)");
    }
}
