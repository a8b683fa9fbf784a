use crate::syntax::{Atom, Formula, Interval};

/// Grammar of an exhaustive formula corpus: atoms, `⊤`, `¬`, `∧`, `∨` and
/// the temporal operators, each with its own interval menu.
#[derive(Debug, Clone)]
pub struct CorpusConfig {
    /// Propositions; the first two are symmetry-reduced.
    pub atoms: Vec<String>,
    pub max_size: usize,
    pub eventually: Vec<Interval>,
    pub globally: Vec<Interval>,
    pub next: Vec<Interval>,
    /// Intervals for `C{2}`; `C{1}` coincides with `X`.
    pub count2: Vec<Interval>,
    pub until: Vec<Interval>,
    pub release: Vec<Interval>,
}

impl CorpusConfig {
    /// Atoms `p`, `q`; size at most 6; constants at most 3.
    ///
    /// Across operators the menus cover the unbounded interval, each bracket
    /// combination, a singular interval, a right-infinite interval with a
    /// positive lower end, and each constant 0 to 3.
    pub fn standard() -> Self {
        let iv = |lo, hi, lo_open, hi_open| Interval::new(lo, hi, lo_open, hi_open).unwrap();
        let u = Interval::UNBOUNDED;
        CorpusConfig {
            atoms: vec!["p".into(), "q".into()],
            max_size: 6,
            eventually: vec![u, iv(1, Some(3), true, false)],
            globally: vec![u],
            next: vec![Interval::singular(1), Interval::greater_than(2)],
            count2: vec![iv(2, Some(3), false, true)],
            until: vec![u, iv(1, Some(2), false, true)],
            release: vec![Interval::open(0, 2).unwrap()],
        }
    }

    /// Every interval of every menu.
    pub fn intervals(&self) -> Vec<Interval> {
        let mut all: Vec<Interval> = [&self.eventually, &self.globally, &self.next, &self.count2, &self.until, &self.release]
            .into_iter()
            .flatten()
            .copied()
            .collect();
        all.sort();
        all.dedup();
        all
    }
}

/// Exchange two atoms.
pub fn swap_atoms(f: &Formula, a: &str, b: &str) -> Formula {
    f.map_atoms(&mut |x| match x.as_str() {
        s if s == a => Formula::atom(b),
        s if s == b => Formula::atom(a),
        _ => Formula::Atom(x.clone()),
    })
}

/// Every formula of the grammar up to the configured size, ordered by size
/// then construction, except those equivalent to another corpus formula by
/// one of these rules:
///
/// * `¬¬φ ≡ φ`, `¬⊤ ≡ ⊥` (so `⊥` is not a leaf either), `□_J ⊤ ≡ ⊤`,
///   `U_J(⊤, ψ) ≡ ◇_J ψ`, `R_J(φ, ⊤) ≡ ⊤`;
/// * `∧`/`∨` with a `⊤` operand, equal operands, or operands out of order;
/// * exchanging the first two atoms, keeping the lesser formula.
pub fn enumerate_formulas(config: &CorpusConfig) -> Vec<Formula> {
    if config.max_size == 0 {
        return Vec::new();
    }
    let mut by_size: Vec<Vec<Formula>> = vec![Vec::new(); config.max_size + 1];
    by_size[1] = config.atoms.iter().map(|a| Formula::Atom(Atom::new(a))).collect();
    by_size[1].push(Formula::True);
    for n in 2..=config.max_size {
        let mut out = Vec::new();
        for a in &by_size[n - 1] {
            let is_true = *a == Formula::True;
            if !matches!(a, Formula::Not(_)) && !is_true {
                out.push(Formula::not(a.clone()));
            }
            out.extend(config.eventually.iter().map(|&j| Formula::eventually(j, a.clone())));
            if !is_true {
                out.extend(config.globally.iter().map(|&j| Formula::globally(j, a.clone())));
            }
            out.extend(config.next.iter().map(|&j| Formula::next(j, a.clone())));
            out.extend(config.count2.iter().map(|&j| Formula::count(2, j, a.clone())));
        }
        for left in 1..n - 1 {
            let right = n - 1 - left;
            for a in &by_size[left] {
                for b in &by_size[right] {
                    let (a_true, b_true) = (*a == Formula::True, *b == Formula::True);
                    if a < b && !a_true && !b_true {
                        out.push(Formula::and(a.clone(), b.clone()));
                        out.push(Formula::or(a.clone(), b.clone()));
                    }
                    if !a_true {
                        out.extend(config.until.iter().map(|&j| Formula::until(j, a.clone(), b.clone())));
                    }
                    if !b_true {
                        out.extend(config.release.iter().map(|&j| Formula::release(j, a.clone(), b.clone())));
                    }
                }
            }
        }
        by_size[n] = out;
    }
    let symmetric = config.atoms.len() >= 2;
    by_size
        .into_iter()
        .flatten()
        .filter(|f| !symmetric || *f <= swap_atoms(f, &config.atoms[0], &config.atoms[1]))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sizes() {
        let config = CorpusConfig { max_size: 2, ..CorpusConfig::standard() };
        let fs = enumerate_formulas(&config);
        // p, true; !p; over p: 2 F + 1 G + 2 X + 1 C; over true: 2 F + 2 X + 1 C.
        assert_eq!(fs.len(), 2 + 1 + 6 + 5);
        assert!(fs.iter().all(|f| f.size() <= 2));
        assert!(!fs.contains(&Formula::atom("q")));
        assert!(fs.iter().all(|f| f.max_constant().unwrap_or(0) <= 3));
    }
}
