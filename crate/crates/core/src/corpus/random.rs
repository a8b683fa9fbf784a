use rand::seq::SliceRandom;
use rand::Rng;

use crate::syntax::{Atom, Formula, Interval};
use crate::words::{DiscreteLassoWord, Event, PropSet};

/// Shape limits for [`random_lasso_word`].
#[derive(Debug, Clone)]
pub struct RandomWordConfig {
    pub atoms: Vec<String>,
    pub max_stem: usize,
    pub max_loop: usize,
    pub max_gap: u64,
}

impl Default for RandomWordConfig {
    fn default() -> Self {
        RandomWordConfig { atoms: vec!["p".into(), "q".into()], max_stem: 4, max_loop: 4, max_gap: 4 }
    }
}

fn random_props(rng: &mut impl Rng, atoms: &[String]) -> PropSet {
    loop {
        let set: PropSet = atoms.iter().filter(|_| rng.gen_bool(0.5)).map(|a| Atom::new(a)).collect();
        if !set.is_empty() {
            return set;
        }
    }
}

/// A uniformly shaped random lasso word: stem and loop lengths, gaps in
/// `1..=max_gap` and nonempty proposition sets drawn independently.
pub fn random_lasso_word(rng: &mut impl Rng, config: &RandomWordConfig) -> DiscreteLassoWord {
    assert!(config.max_loop >= 1 && config.max_gap >= 1 && !config.atoms.is_empty());
    let stem_len = rng.gen_range(0..=config.max_stem);
    let loop_len = rng.gen_range(1..=config.max_loop);
    let mut gap = || rng.gen_range(1..=config.max_gap);
    let mut t = 0;
    let mut stem_times = Vec::with_capacity(stem_len);
    for _ in 0..stem_len {
        stem_times.push(t);
        t += gap();
    }
    let loop_start = t;
    let mut offsets = Vec::with_capacity(loop_len);
    let mut offset = 0;
    for _ in 0..loop_len {
        offsets.push(offset);
        offset += gap();
    }
    let stem = stem_times.into_iter().map(|t| Event::new(random_props(rng, &config.atoms), t)).collect();
    let cycle = offsets.into_iter().map(|t| Event::new(random_props(rng, &config.atoms), t)).collect();
    DiscreteLassoWord::new(stem, cycle, offset, loop_start).expect("generated word is well formed")
}

/// A random formula with exactly `size` nodes.
pub fn random_formula(rng: &mut impl Rng, atoms: &[String], intervals: &[Interval], size: usize) -> Formula {
    assert!(size >= 1 && !atoms.is_empty() && !intervals.is_empty());
    if size == 1 {
        return match rng.gen_range(0..atoms.len() + 2) {
            i if i < atoms.len() => Formula::atom(&atoms[i]),
            i if i == atoms.len() => Formula::True,
            _ => Formula::False,
        };
    }
    let j = *intervals.choose(rng).expect("nonempty menu");
    if size == 2 || rng.gen_bool(0.4) {
        let a = random_formula(rng, atoms, intervals, size - 1);
        return match rng.gen_range(0..5) {
            0 => Formula::not(a),
            1 => Formula::eventually(j, a),
            2 => Formula::globally(j, a),
            3 => Formula::next(j, a),
            _ => Formula::count(rng.gen_range(1..=3), j, a),
        };
    }
    let left = rng.gen_range(1..size - 1);
    let a = random_formula(rng, atoms, intervals, left);
    let b = random_formula(rng, atoms, intervals, size - 1 - left);
    match rng.gen_range(0..8) {
        0 => Formula::and(a, b),
        1 => Formula::or(a, b),
        2 => Formula::implies(a, b),
        3 => Formula::iff(a, b),
        4 => Formula::until(j, a, b),
        5 => Formula::action_until(j, a, b),
        _ => Formula::release(j, a, b),
    }
}
