use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::Serialize;

use super::{Computation, Config, Instr, Machine};

/// Limits for exploring the computation tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExploreBudget {
    /// Steps per computation.
    pub max_steps: usize,
    /// Computations (root-to-leaf paths) enumerated.
    pub max_computations: usize,
}

impl ExploreBudget {
    pub fn steps(max_steps: usize) -> Self {
        ExploreBudget { max_steps, max_computations: 10_000 }
    }
}

/// Result of [`explore`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Exploration {
    /// Maximal computations within the budget, depth-first with the `then`
    /// branch first. A computation ends when it halts, blocks, or runs out
    /// of steps.
    pub computations: Vec<Computation>,
    /// Indices into `computations` of those that halt.
    pub halting: Vec<usize>,
    pub reachable: BTreeSet<Config>,
    /// Largest value of each counter over all explored configurations.
    pub max_counters: Vec<u64>,
    /// Some computation was cut by the step budget or the computation cap
    /// was reached.
    pub exhausted: bool,
}

/// Enumerate computations of `m` within `budget`.
pub fn explore(m: &Machine, budget: ExploreBudget) -> Exploration {
    let mut out = Exploration {
        computations: Vec::new(),
        halting: Vec::new(),
        reachable: BTreeSet::new(),
        max_counters: vec![0; m.counters()],
        exhausted: false,
    };
    // Each frame holds the successors still to try at that depth.
    let mut path = vec![m.initial()];
    let mut pending: Vec<Vec<Config>> = Vec::new();
    let mut descend = true;
    loop {
        let top = path.last().expect("path is never empty").clone();
        if descend {
            out.reachable.insert(top.clone());
            for (mx, x) in out.max_counters.iter_mut().zip(&top.counters) {
                *mx = (*mx).max(*x);
            }
            let mut succ = m.step(&top);
            if succ.is_empty() || path.len() > budget.max_steps {
                if !succ.is_empty() {
                    out.exhausted = true;
                }
                if m.program()[top.location] == Instr::Halt {
                    out.halting.push(out.computations.len());
                }
                out.computations.push(Computation { configs: path.clone() });
                if out.computations.len() >= budget.max_computations {
                    out.exhausted = out.exhausted || !pending.iter().all(Vec::is_empty);
                    return out;
                }
                descend = false;
                continue;
            }
            succ.reverse();
            let next = succ.pop().expect("nonempty");
            pending.push(succ);
            path.push(next);
            continue;
        }
        // Backtrack to the deepest frame with an untried successor.
        path.pop();
        match pending.last_mut() {
            None => return out,
            Some(frame) => match frame.pop() {
                Some(next) => {
                    path.push(next);
                    descend = true;
                }
                None => {
                    pending.pop();
                }
            },
        }
        if path.is_empty() {
            return out;
        }
    }
}

/// Breadth-first search over configurations for the first one satisfying
/// `goal`, at most `max_steps` steps from the initial configuration.
/// Returns the path to it and whether the search saw every configuration
/// reachable at all.
fn bfs(m: &Machine, max_steps: usize, goal: impl Fn(&Config) -> bool) -> (Option<Computation>, bool) {
    let init = m.initial();
    let mut parent: HashMap<Config, Option<Config>> = HashMap::from([(init.clone(), None)]);
    let mut queue = VecDeque::from([(init, 0usize)]);
    let mut complete = true;
    while let Some((c, depth)) = queue.pop_front() {
        if goal(&c) {
            let mut configs = vec![c.clone()];
            let mut cur = c;
            while let Some(Some(p)) = parent.get(&cur) {
                configs.push(p.clone());
                cur = p.clone();
            }
            configs.reverse();
            return (Some(Computation { configs }), false);
        }
        for s in m.step(&c) {
            if parent.contains_key(&s) {
                continue;
            }
            if depth == max_steps {
                complete = false;
                continue;
            }
            parent.insert(s.clone(), Some(c.clone()));
            queue.push_back((s, depth + 1));
        }
    }
    (None, complete)
}

/// Does some computation reach `halt` within `max_steps` steps?
pub fn halts_within(m: &Machine, max_steps: usize) -> bool {
    let h = m.halt_label();
    bfs(m, max_steps, |c| c.location == h).0.is_some()
}

/// Does some computation drive `v0` above `beta` within `max_steps` steps?
pub fn overflows_within(m: &Machine, beta: u64, max_steps: usize) -> bool {
    bfs(m, max_steps, |c| c.counters[0] > beta).0.is_some()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum BoundedCounterOutcome {
    /// A shortest computation ending with `v0 > β`.
    Overflow(Computation),
    /// `complete`: every reachable configuration was seen, so `v0` never
    /// exceeds `β`.
    NoOverflowWithinBudget { complete: bool },
}

/// Does `v0` exceed `beta` in some computation of at most `max_steps` steps?
pub fn check_bounded_counter(m: &Machine, beta: u64, max_steps: usize) -> BoundedCounterOutcome {
    match bfs(m, max_steps, |c| c.counters[0] > beta) {
        (Some(witness), _) => BoundedCounterOutcome::Overflow(witness),
        (None, complete) => BoundedCounterOutcome::NoOverflowWithinBudget { complete },
    }
}
