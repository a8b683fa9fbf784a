use super::{DiscreteLassoWord, Event, PropSet};
use crate::syntax::Alphabet;

/// All nonempty subsets of `alphabet`, smaller sets first, then
/// lexicographically.
pub fn nonempty_subsets(alphabet: &Alphabet) -> Vec<PropSet> {
    let atoms: Vec<_> = alphabet.iter().cloned().collect();
    assert!(atoms.len() < 20, "alphabet too large to enumerate subsets");
    let mut out: Vec<PropSet> = (1u32..(1 << atoms.len()))
        .map(|mask| {
            atoms
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, a)| a.clone())
                .collect()
        })
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Deterministic, duplicate-free enumeration of lasso words.
///
/// Every position is a letter `(props, gap)` where `gap` is the distance to
/// the next position. Words are listed by total length, then stem length,
/// then lexicographically by letter (props-major). Only the canonical
/// representation of each word is produced: the loop is primitive and the
/// stem cannot be shortened by rotating the loop.
#[derive(Debug, Clone)]
pub struct LassoEnumerator {
    propsets: Vec<PropSet>,
    max_stem: usize,
    max_loop: usize,
    max_gap: u64,
    n: usize,
    s: usize,
    digits: Vec<usize>,
    started: bool,
    done: bool,
}

impl LassoEnumerator {
    /// Enumerate over an explicit list of proposition sets.
    pub fn with_propsets(propsets: Vec<PropSet>, max_stem: usize, max_loop: usize, max_gap: u64) -> Self {
        let done = propsets.is_empty() || max_loop == 0 || max_gap == 0;
        let s = 1usize.saturating_sub(max_loop.min(1));
        LassoEnumerator {
            propsets,
            max_stem,
            max_loop,
            max_gap,
            n: 1,
            s,
            digits: vec![0],
            started: false,
            done,
        }
    }

    fn letters(&self) -> usize {
        self.propsets.len() * self.max_gap as usize
    }

    fn letter(&self, d: usize) -> (usize, u64) {
        let g = self.max_gap as usize;
        (d / g, (d % g) as u64 + 1)
    }

    /// Move to the next (length, stem) shape with the odometer reset.
    fn next_shape(&mut self) -> bool {
        loop {
            let s_max = self.max_stem.min(self.n - 1);
            if self.s < s_max {
                self.s += 1;
            } else {
                self.n += 1;
                if self.n > self.max_stem + self.max_loop {
                    return false;
                }
                self.s = self.n.saturating_sub(self.max_loop);
            }
            let l = self.n - self.s;
            if l >= 1 && l <= self.max_loop && self.s <= self.max_stem {
                self.digits = vec![0; self.n];
                return true;
            }
        }
    }

    fn advance(&mut self) -> bool {
        let base = self.letters();
        for i in (0..self.digits.len()).rev() {
            self.digits[i] += 1;
            if self.digits[i] < base {
                return true;
            }
            self.digits[i] = 0;
        }
        self.next_shape()
    }

    fn canonical(&self) -> bool {
        let (s, n) = (self.s, self.n);
        if s > 0 && self.digits[s - 1] == self.digits[n - 1] {
            return false;
        }
        let cycle = &self.digits[s..];
        let l = cycle.len();
        (1..l).filter(|p| l % p == 0).all(|p| (p..l).any(|i| cycle[i] != cycle[i - p]))
    }

    /// Next canonical shape as `(stem length, letters)`, letters decoded by
    /// [`Self::decode`].
    pub fn next_raw(&mut self) -> Option<(usize, &[usize])> {
        if self.done {
            return None;
        }
        loop {
            if self.started {
                if !self.advance() {
                    self.done = true;
                    return None;
                }
            } else {
                self.started = true;
                if self.max_stem + self.max_loop == 0 {
                    self.done = true;
                    return None;
                }
            }
            if self.canonical() {
                return Some((self.s, &self.digits));
            }
        }
    }

    /// `(propset index, gap)` of a letter.
    pub fn decode(&self, letter: usize) -> (usize, u64) {
        self.letter(letter)
    }

    pub fn propsets(&self) -> &[PropSet] {
        &self.propsets
    }

    /// Materialize a shape.
    pub fn build(&self, stem_len: usize, letters: &[usize]) -> DiscreteLassoWord {
        let mut t = 0;
        let mut stem = Vec::with_capacity(stem_len);
        for &d in &letters[..stem_len] {
            let (p, g) = self.letter(d);
            stem.push(Event::new(self.propsets[p].clone(), t));
            t += g;
        }
        let loop_start = t;
        let mut off = 0;
        let mut cycle = Vec::with_capacity(letters.len() - stem_len);
        for &d in &letters[stem_len..] {
            let (p, g) = self.letter(d);
            cycle.push(Event::new(self.propsets[p].clone(), off));
            off += g;
        }
        DiscreteLassoWord::new_unchecked(stem, cycle, off, loop_start)
    }
}

impl Iterator for LassoEnumerator {
    type Item = DiscreteLassoWord;

    fn next(&mut self) -> Option<DiscreteLassoWord> {
        let (s, letters) = self.next_raw()?;
        let letters = letters.to_vec();
        Some(self.build(s, &letters))
    }
}

/// Every lasso word over nonempty subsets of `alphabet` with at most
/// `max_stem` stem positions, at most `max_loop` loop positions and gaps
/// at most `max_gap`.
pub fn enumerate_lasso_words(alphabet: &Alphabet, max_stem: usize, max_loop: usize, max_gap: u64) -> LassoEnumerator {
    LassoEnumerator::with_propsets(nonempty_subsets(alphabet), max_stem, max_loop, max_gap)
}
