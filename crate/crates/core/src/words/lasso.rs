use std::fmt;

use super::{Event, PropSet, VariabilityBound, VariabilityCheck, WordViolation};

/// An ultimately periodic timed ω-word over ℕ.
///
/// Positions `0..stem.len()` are the stem. Loop event `j` of iteration `i`
/// sits at position `stem.len() + i * loop.len() + j` with timestamp
/// `loop_start + i * period + loop[j].t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiscreteLassoWord {
    stem: Vec<Event<u64>>,
    cycle: Vec<Event<u64>>,
    period: u64,
    loop_start: u64,
}

impl DiscreteLassoWord {
    /// Build and validate.
    pub fn new(
        stem: Vec<Event<u64>>,
        cycle: Vec<Event<u64>>,
        period: u64,
        loop_start: u64,
    ) -> Result<Self, WordViolation> {
        let w = Self::new_unchecked(stem, cycle, period, loop_start);
        w.validate()?;
        Ok(w)
    }

    /// Build without validation; call [`Self::validate`] before evaluating.
    pub fn new_unchecked(stem: Vec<Event<u64>>, cycle: Vec<Event<u64>>, period: u64, loop_start: u64) -> Self {
        DiscreteLassoWord { stem, cycle, period, loop_start }
    }

    /// The word repeating `cycle` from time 0 on.
    pub fn periodic(cycle: Vec<Event<u64>>, period: u64) -> Result<Self, WordViolation> {
        Self::new(Vec::new(), cycle, period, 0)
    }

    pub fn stem(&self) -> &[Event<u64>] {
        &self.stem
    }

    /// Loop events with timestamps as offsets from the start of an iteration.
    pub fn cycle(&self) -> &[Event<u64>] {
        &self.cycle
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn loop_start(&self) -> u64 {
        self.loop_start
    }

    pub fn stem_len(&self) -> usize {
        self.stem.len()
    }

    pub fn loop_len(&self) -> usize {
        self.cycle.len()
    }

    /// Positions `0..canonical_len()` represent every position up to a time
    /// shift: position `k >= stem_len` behaves like `k + loop_len`.
    pub fn canonical_len(&self) -> usize {
        self.stem.len() + self.cycle.len()
    }

    /// Representative of `k` in `0..canonical_len()`.
    pub fn canonical(&self, k: usize) -> usize {
        let s = self.stem.len();
        if k < s {
            k
        } else {
            s + (k - s) % self.cycle.len()
        }
    }

    pub fn time(&self, k: usize) -> u64 {
        let s = self.stem.len();
        if k < s {
            return self.stem[k].t;
        }
        let (i, j) = ((k - s) / self.cycle.len(), (k - s) % self.cycle.len());
        self.loop_start + i as u64 * self.period + self.cycle[j].t
    }

    pub fn props(&self, k: usize) -> &PropSet {
        let s = self.stem.len();
        if k < s {
            &self.stem[k].props
        } else {
            &self.cycle[(k - s) % self.cycle.len()].props
        }
    }

    /// `t_{k+1} - t_k`.
    pub fn gap(&self, k: usize) -> u64 {
        self.time(k + 1) - self.time(k)
    }

    /// The event at position `k` with its absolute timestamp.
    pub fn event(&self, k: usize) -> Event<u64> {
        Event::new(self.props(k).clone(), self.time(k))
    }

    /// Equal word whose stem additionally holds `extra` loop iterations.
    pub fn unroll(&self, extra: usize) -> Self {
        let n = self.stem.len() + extra * self.cycle.len();
        DiscreteLassoWord {
            stem: (0..n).map(|k| self.event(k)).collect(),
            cycle: self.cycle.clone(),
            period: self.period,
            loop_start: self.loop_start + extra as u64 * self.period,
        }
    }

    /// First violated invariant, in position order.
    pub fn validate(&self) -> Result<(), WordViolation> {
        if self.cycle.is_empty() {
            return Err(WordViolation::EmptyLoop);
        }
        if self.period == 0 {
            return Err(WordViolation::ZeroPeriod);
        }
        if let Some(e) = self.cycle.iter().find(|e| e.t >= self.period) {
            return Err(WordViolation::OffsetOutOfRange { offset: e.t, period: self.period });
        }
        // The first loop iteration plus one more event covers every pair of
        // adjacent positions up to the periodic repetition.
        let horizon = self.canonical_len() + 1;
        if self.time(0) != 0 {
            return Err(WordViolation::NonzeroStart(self.time(0).to_string()));
        }
        for k in 0..horizon {
            if k > 0 && self.time(k) <= self.time(k - 1) {
                return Err(WordViolation::NotIncreasing {
                    index: k,
                    prev: self.time(k - 1).to_string(),
                    next: self.time(k).to_string(),
                });
            }
            if k < self.canonical_len() && self.props(k).is_empty() {
                return Err(WordViolation::EmptyProps(k));
            }
        }
        Ok(())
    }

    /// Decide `t_{k+v} - t_k > V` for all `k`. Window lengths repeat with the
    /// loop, so positions `0..canonical_len()` decide it exactly.
    pub fn check_variability(&self, b: VariabilityBound) -> VariabilityCheck {
        let v = b.v as usize;
        let witness = (0..self.canonical_len()).find(|&k| self.time(k + v) - self.time(k) <= b.big_v);
        VariabilityCheck::from_witness(witness)
    }
}

impl fmt::Display for DiscreteLassoWord {
    /// The line-based word file format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let line = |f: &mut fmt::Formatter<'_>, e: &Event<u64>| {
            let names: Vec<&str> = e.props.iter().map(|a| a.as_str()).collect();
            writeln!(f, "t {} : {}", e.t, names.join(","))
        };
        writeln!(f, "discrete")?;
        for e in &self.stem {
            line(f, e)?;
        }
        writeln!(f, "loop period {} start {}", self.period, self.loop_start)?;
        for e in &self.cycle {
            line(f, e)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(name: &str, t: u64) -> Event<u64> {
        Event::named([name], t)
    }

    /// 0, 3, 10, 13, 20, 23, ...
    fn square_wave() -> DiscreteLassoWord {
        DiscreteLassoWord::new(vec![ev("p", 0), ev("q", 3)], vec![ev("p", 0), ev("q", 3)], 10, 10).unwrap()
    }

    #[test]
    fn validation_reports_first_violation() {
        let w = DiscreteLassoWord::new_unchecked(vec![ev("p", 0), ev("q", 0)], vec![ev("p", 0)], 1, 1);
        assert!(matches!(w.validate(), Err(WordViolation::NotIncreasing { index: 1, .. })));
        let w = DiscreteLassoWord::new_unchecked(vec![ev("p", 1)], vec![ev("p", 0)], 1, 2);
        assert_eq!(w.validate(), Err(WordViolation::NonzeroStart("1".into())));
        let w = DiscreteLassoWord::new_unchecked(vec![ev("p", 0)], vec![ev("p", 0)], 1, 0);
        assert!(matches!(w.validate(), Err(WordViolation::NotIncreasing { index: 1, .. })));
        let w = DiscreteLassoWord::new_unchecked(vec![], vec![Event::new(PropSet::new(), 0)], 1, 0);
        assert_eq!(w.validate(), Err(WordViolation::EmptyProps(0)));
        assert!(square_wave().validate().is_ok());
    }

    #[test]
    fn timestamps_and_canonical_positions() {
        let w = square_wave();
        let ts: Vec<u64> = (0..7).map(|k| w.time(k)).collect();
        assert_eq!(ts, [0, 3, 10, 13, 20, 23, 30]);
        assert_eq!(w.canonical(6), 2);
        assert_eq!(w.gap(3), 7);
    }

    #[test]
    fn square_wave_variability() {
        let w = square_wave();
        assert_eq!(w.check_variability(VariabilityBound::new(3, 10)), VariabilityCheck { bounded: true, witness: None });
        assert_eq!(w.check_variability(VariabilityBound::new(2, 10)), VariabilityCheck { bounded: false, witness: Some(0) });
        assert!(!w.check_variability(VariabilityBound::new(0, 1)).bounded);
    }

    #[test]
    fn unrolling_is_the_same_word() {
        let w = square_wave();
        let u = w.unroll(2);
        assert_eq!(u.stem_len(), 6);
        for k in 0..20 {
            assert_eq!(w.event(k), u.event(k));
        }
        assert!(u.validate().is_ok());
    }
}
