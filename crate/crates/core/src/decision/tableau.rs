//! Tableau construction of transition-based generalized Büchi automata and
//! their emptiness check.
//!
//! A state is the set of obligations for the current step. Expanding it
//! yields covers: a consistent set of literals for the step, the
//! obligations for the next step, and the untils whose fulfilment was
//! postponed. A run is accepting when no until is postponed forever, i.e.
//! for every until some transition taken infinitely often does not postpone
//! it.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use super::ltl::{AtomId, LtlArena, LtlId, LtlNode};
use super::DecisionError;

/// One way of satisfying a state's obligations at the current step.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cover {
    /// Literals the step must satisfy; other atoms are free.
    pub lits: Vec<(AtomId, bool)>,
    pub next: Vec<LtlId>,
    pub pending: Vec<LtlId>,
}

#[derive(Clone)]
struct Partial {
    todo: Vec<LtlId>,
    done: BTreeSet<LtlId>,
    lits: BTreeMap<AtomId, bool>,
    next: BTreeSet<LtlId>,
    pending: BTreeSet<LtlId>,
}

/// All covers of `obligations`, deduplicated, in a fixed order.
pub fn expand(arena: &LtlArena, obligations: &[LtlId]) -> Vec<Cover> {
    let mut out = BTreeSet::new();
    let mut order = Vec::new();
    let mut stack = vec![Partial {
        todo: obligations.iter().rev().copied().collect(),
        done: BTreeSet::new(),
        lits: BTreeMap::new(),
        next: BTreeSet::new(),
        pending: BTreeSet::new(),
    }];
    'partials: while let Some(mut p) = stack.pop() {
        while let Some(g) = p.todo.pop() {
            if !p.done.insert(g) {
                continue;
            }
            match arena.node(g) {
                LtlNode::True => {}
                LtlNode::False => continue 'partials,
                LtlNode::Lit(a, v) => {
                    if *p.lits.entry(a).or_insert(v) != v {
                        continue 'partials;
                    }
                }
                LtlNode::And(x, y) => p.todo.extend([y, x]),
                LtlNode::Or(x, y) => {
                    let mut right = p.clone();
                    right.todo.push(y);
                    stack.push(right);
                    p.todo.push(x);
                }
                LtlNode::Next(x) => {
                    p.next.insert(x);
                }
                LtlNode::Until(x, y) => {
                    let mut later = p.clone();
                    later.todo.push(x);
                    later.next.insert(g);
                    later.pending.insert(g);
                    stack.push(later);
                    p.todo.push(y);
                }
                LtlNode::Release(x, y) => {
                    let mut later = p.clone();
                    later.todo.push(y);
                    later.next.insert(g);
                    stack.push(later);
                    p.todo.extend([y, x]);
                }
            }
        }
        let cover = Cover {
            lits: p.lits.into_iter().collect(),
            next: p.next.into_iter().collect(),
            pending: p.pending.into_iter().collect(),
        };
        if out.insert(cover.clone()) {
            order.push(cover);
        }
    }
    order
}

/// A transition of an explored automaton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub lits: Vec<(AtomId, bool)>,
    pub pending: Vec<LtlId>,
}

/// An explored graph with transition-based generalized Büchi acceptance:
/// for every until, some transition not postponing it must recur.
#[derive(Debug, Clone)]
pub struct Graph<K> {
    pub states: Vec<K>,
    pub edges: Vec<Edge>,
    pub out: Vec<Vec<usize>>,
}

impl<K: Clone + Eq + std::hash::Hash> Graph<K> {
    /// Breadth-first exploration from `init`. `successors` lists
    /// `(target, lits, pending)` triples. Fails once more than `max_states`
    /// states are discovered.
    pub fn explore(
        init: K,
        max_states: usize,
        mut successors: impl FnMut(&K) -> Vec<(K, Vec<(AtomId, bool)>, Vec<LtlId>)>,
    ) -> Result<Self, DecisionError> {
        let mut g = Graph { states: vec![init.clone()], edges: Vec::new(), out: vec![Vec::new()] };
        let mut ids: HashMap<K, usize> = HashMap::from([(init, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(s) = queue.pop_front() {
            let key = g.states[s].clone();
            for (target, lits, pending) in successors(&key) {
                let to = match ids.get(&target) {
                    Some(&t) => t,
                    None => {
                        if g.states.len() >= max_states {
                            return Err(DecisionError::Budget { states: max_states });
                        }
                        let t = g.states.len();
                        ids.insert(target.clone(), t);
                        g.states.push(target);
                        g.out.push(Vec::new());
                        queue.push_back(t);
                        t
                    }
                };
                g.out[s].push(g.edges.len());
                g.edges.push(Edge { from: s, to, lits, pending });
            }
        }
        Ok(g)
    }

    /// Strongly connected components (Tarjan, iterative). Returns the
    /// component index of every state.
    fn components(&self) -> (Vec<usize>, usize) {
        let n = self.states.len();
        let (mut index, mut low) = (vec![usize::MAX; n], vec![0; n]);
        let mut on_stack = vec![false; n];
        let mut comp = vec![usize::MAX; n];
        let (mut counter, mut ncomp) = (0, 0);
        let mut stack = Vec::new();
        for root in 0..n {
            if index[root] != usize::MAX {
                continue;
            }
            let mut call: Vec<(usize, usize)> = vec![(root, 0)];
            index[root] = counter;
            low[root] = counter;
            counter += 1;
            stack.push(root);
            on_stack[root] = true;
            while let Some(&mut (v, ref mut i)) = call.last_mut() {
                if *i < self.out[v].len() {
                    let w = self.edges[self.out[v][*i]].to;
                    *i += 1;
                    if index[w] == usize::MAX {
                        index[w] = counter;
                        low[w] = counter;
                        counter += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        call.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                } else {
                    call.pop();
                    if let Some(&(u, _)) = call.last() {
                        low[u] = low[u].min(low[v]);
                    }
                    if low[v] == index[v] {
                        while let Some(w) = stack.pop() {
                            on_stack[w] = false;
                            comp[w] = ncomp;
                            if w == v {
                                break;
                            }
                        }
                        ncomp += 1;
                    }
                }
            }
        }
        (comp, ncomp)
    }

    /// Edges of each component that stay inside it.
    fn internal_edges(&self, comp: &[usize], ncomp: usize) -> Vec<Vec<usize>> {
        let mut internal = vec![Vec::new(); ncomp];
        for (i, e) in self.edges.iter().enumerate() {
            if comp[e.from] == comp[e.to] {
                internal[comp[e.from]].push(i);
            }
        }
        internal
    }

    fn accepting(&self, edges: &[usize]) -> bool {
        if edges.is_empty() {
            return false;
        }
        let postponed: BTreeSet<LtlId> = edges.iter().flat_map(|&e| self.edges[e].pending.iter().copied()).collect();
        postponed.iter().all(|u| edges.iter().any(|&e| !self.edges[e].pending.contains(u)))
    }

    /// Shortest edge path from `from` to `to` using only edges accepted by
    /// `allowed`. Empty when `from == to`.
    fn path(&self, from: usize, to: usize, allowed: impl Fn(usize) -> bool) -> Option<Vec<usize>> {
        if from == to {
            return Some(Vec::new());
        }
        let mut parent: HashMap<usize, usize> = HashMap::new();
        let mut queue = VecDeque::from([from]);
        let mut seen = BTreeSet::from([from]);
        while let Some(s) = queue.pop_front() {
            for &e in &self.out[s] {
                let t = self.edges[e].to;
                if !allowed(e) || !seen.insert(t) {
                    continue;
                }
                parent.insert(t, e);
                if t == to {
                    let mut path = vec![e];
                    let mut cur = s;
                    while cur != from {
                        let pe = parent[&cur];
                        path.push(pe);
                        cur = self.edges[pe].from;
                    }
                    path.reverse();
                    return Some(path);
                }
                queue.push_back(t);
            }
        }
        None
    }

    /// An accepting lasso `(stem, cycle)` as edge indices, or `None` when the
    /// language is empty. The accepting component closest to the initial
    /// state (ties by state index) is chosen; paths are shortest paths.
    pub fn accepting_lasso(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let (comp, ncomp) = self.components();
        let internal = self.internal_edges(&comp, ncomp);
        let good: Vec<bool> = (0..ncomp).map(|c| self.accepting(&internal[c])).collect();
        // BFS from the initial state to the first state of an accepting component.
        let mut dist = vec![usize::MAX; self.states.len()];
        dist[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        let mut entry = None;
        while let Some(s) = queue.pop_front() {
            if good[comp[s]] {
                entry = Some(s);
                break;
            }
            for &e in &self.out[s] {
                let t = self.edges[e].to;
                if dist[t] == usize::MAX {
                    dist[t] = dist[s] + 1;
                    queue.push_back(t);
                }
            }
        }
        let entry = entry?;
        let stem = self.path(0, entry, |_| true)?;
        let c = comp[entry];
        let inside = |e: usize| comp[self.edges[e].from] == c && comp[self.edges[e].to] == c;
        let postponed: BTreeSet<LtlId> =
            internal[c].iter().flat_map(|&e| self.edges[e].pending.iter().copied()).collect();
        let mut cycle = Vec::new();
        let mut cur = entry;
        for u in postponed {
            // Already discharged by an edge on the cycle so far?
            if cycle.iter().any(|&e: &usize| !self.edges[e].pending.contains(&u)) {
                continue;
            }
            let &fix = internal[c].iter().find(|&&e| !self.edges[e].pending.contains(&u))?;
            cycle.extend(self.path(cur, self.edges[fix].from, inside)?);
            cycle.push(fix);
            cur = self.edges[fix].to;
        }
        if cycle.is_empty() {
            let &first = self.out[entry].iter().find(|&&e| inside(e))?;
            cycle.push(first);
            cur = self.edges[first].to;
        }
        cycle.extend(self.path(cur, entry, inside)?);
        Some((stem, cycle))
    }

    /// Drop states from which no cycle is reachable, and edges into them.
    pub fn prune_dead(&self) -> Graph<K> {
        let n = self.states.len();
        let mut alive = vec![true; n];
        let mut changed = true;
        while changed {
            changed = false;
            for s in 0..n {
                if alive[s] && !self.out[s].iter().any(|&e| alive[self.edges[e].to]) {
                    alive[s] = false;
                    changed = true;
                }
            }
        }
        let mut remap = vec![usize::MAX; n];
        let mut g = Graph { states: Vec::new(), edges: Vec::new(), out: Vec::new() };
        // Keep the initial state even if dead so the automaton stays well-formed.
        for s in 0..n {
            if alive[s] || s == 0 {
                remap[s] = g.states.len();
                g.states.push(self.states[s].clone());
                g.out.push(Vec::new());
            }
        }
        for e in &self.edges {
            if alive[e.to] && remap[e.from] != usize::MAX {
                let from = remap[e.from];
                g.out[from].push(g.edges.len());
                g.edges.push(Edge { from, to: remap[e.to], ..e.clone() });
            }
        }
        g
    }
}

/// Generalized Büchi automaton of an LTL formula.
#[derive(Debug, Clone)]
pub struct BuchiAutomaton {
    pub graph: Graph<Vec<LtlId>>,
    /// One acceptance set per until: transitions that do not postpone it.
    pub acceptance: Vec<LtlId>,
}

impl BuchiAutomaton {
    /// Explore the tableau of `root`.
    pub fn build(arena: &LtlArena, root: LtlId, max_states: usize) -> Result<Self, DecisionError> {
        let graph = Graph::explore(vec![root], max_states, |s: &Vec<LtlId>| {
            expand(arena, s).into_iter().map(|c| (c.next, c.lits, c.pending)).collect()
        })?;
        let acceptance: BTreeSet<LtlId> = graph.edges.iter().flat_map(|e| e.pending.iter().copied()).collect();
        Ok(BuchiAutomaton { graph, acceptance: acceptance.into_iter().collect() })
    }

    pub fn num_states(&self) -> usize {
        self.graph.states.len()
    }

    /// The automaton without states that cannot reach a cycle.
    pub fn pruned(&self) -> Self {
        let graph = self.graph.prune_dead();
        BuchiAutomaton { graph, acceptance: self.acceptance.clone() }
    }

    /// HOA v1 text with transition-based acceptance.
    pub fn to_hoa(&self, arena: &LtlArena, name: &str) -> String {
        let mut s = String::new();
        let m = self.acceptance.len();
        let _ = writeln!(s, "HOA: v1");
        let _ = writeln!(s, "name: \"{}\"", name.replace('"', "'"));
        let _ = writeln!(s, "States: {}", self.graph.states.len());
        let _ = writeln!(s, "Start: 0");
        let names: Vec<String> = arena.atom_names().iter().map(|a| format!("\"{a}\"")).collect();
        let _ = writeln!(s, "AP: {} {}", names.len(), names.join(" "));
        if m == 0 {
            let _ = writeln!(s, "acc-name: all");
            let _ = writeln!(s, "Acceptance: 0 t");
        } else {
            let inf: Vec<String> = (0..m).map(|i| format!("Inf({i})")).collect();
            let _ = writeln!(s, "acc-name: generalized-Buchi {m}");
            let _ = writeln!(s, "Acceptance: {m} {}", inf.join("&"));
        }
        let _ = writeln!(s, "--BODY--");
        for (i, _) in self.graph.states.iter().enumerate() {
            let _ = writeln!(s, "State: {i}");
            for &e in &self.graph.out[i] {
                let edge = &self.graph.edges[e];
                let label = if edge.lits.is_empty() {
                    "t".to_string()
                } else {
                    edge.lits
                        .iter()
                        .map(|&(a, p)| if p { a.to_string() } else { format!("!{a}") })
                        .collect::<Vec<_>>()
                        .join("&")
                };
                let sets: Vec<String> = self
                    .acceptance
                    .iter()
                    .enumerate()
                    .filter(|(_, u)| !edge.pending.contains(u))
                    .map(|(k, _)| k.to_string())
                    .collect();
                if m == 0 || sets.is_empty() {
                    let _ = writeln!(s, "[{label}] {}", edge.to);
                } else {
                    let _ = writeln!(s, "[{label}] {} {{{}}}", edge.to, sets.join(" "));
                }
            }
        }
        let _ = writeln!(s, "--END--");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sat(arena: &LtlArena, root: LtlId) -> bool {
        BuchiAutomaton::build(arena, root, 10_000).unwrap().graph.accepting_lasso().is_some()
    }

    #[test]
    fn basic_emptiness() {
        let mut a = LtlArena::new();
        let p = a.atom("p");
        let fp = a.eventually(p);
        let gfp = a.globally(fp);
        assert!(sat(&a, gfp));
        let np = a.neg(p);
        let contradiction = a.and(p, np);
        assert!(!sat(&a, contradiction));
        let e = a.atom("eps");
        let fe = a.eventually(e);
        let ne = a.neg(e);
        let gne = a.globally(ne);
        let both = a.and(fe, gne);
        assert!(!sat(&a, both));
        // G (p U false) style: an until that is never fulfilled
        let q = a.atom("q");
        let gp = a.globally(p);
        let nq = a.neg(q);
        let gnq = a.globally(nq);
        let pu = a.until(p, q);
        let never = a.and_all([gp, gnq, pu]);
        assert!(!sat(&a, never));
    }

    #[test]
    fn hoa_export_mentions_every_state() {
        let mut a = LtlArena::new();
        let p = a.atom("p");
        let fp = a.eventually(p);
        let gfp = a.globally(fp);
        let aut = BuchiAutomaton::build(&a, gfp, 100).unwrap().pruned();
        let hoa = aut.to_hoa(&a, "G F p");
        assert!(hoa.starts_with("HOA: v1"));
        assert!(hoa.contains("Acceptance: 1 Inf(0)"));
        assert_eq!(hoa.matches("State:").count(), aut.num_states());
    }
}
