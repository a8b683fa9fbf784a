use std::fmt;

use super::{Event, VariabilityBound, VariabilityCheck, WordViolation};
use crate::time::TimeValue;

/// A finite timed word with exact timestamps. Nothing happens after the last
/// event.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteWord<T> {
    events: Vec<Event<T>>,
}

impl<T: TimeValue> FiniteWord<T> {
    pub fn new(events: Vec<Event<T>>) -> Result<Self, WordViolation> {
        let w = FiniteWord { events };
        w.validate()?;
        Ok(w)
    }

    pub fn new_unchecked(events: Vec<Event<T>>) -> Self {
        FiniteWord { events }
    }

    pub fn events(&self) -> &[Event<T>] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn validate(&self) -> Result<(), WordViolation> {
        let first = self.events.first().ok_or(WordViolation::Empty)?;
        if !first.t.is_zero() {
            return Err(WordViolation::NonzeroStart(first.t.to_string()));
        }
        for (k, e) in self.events.iter().enumerate() {
            if k > 0 && e.t <= self.events[k - 1].t {
                return Err(WordViolation::NotIncreasing {
                    index: k,
                    prev: self.events[k - 1].t.to_string(),
                    next: e.t.to_string(),
                });
            }
            if e.props.is_empty() {
                return Err(WordViolation::EmptyProps(k));
            }
        }
        Ok(())
    }

    /// Largest number of events inside a closed window `[x, x + width]`.
    /// Some optimal window starts at an event, so a two-pointer sweep over
    /// event-anchored windows is exact.
    pub fn max_window_count(&self, width: &T) -> usize {
        let mut best = 0;
        let mut hi = 0;
        for (lo, e) in self.events.iter().enumerate() {
            let end = e.t.clone() + width.clone();
            hi = hi.max(lo);
            while hi < self.events.len() && self.events[hi].t <= end {
                hi += 1;
            }
            best = best.max(hi - lo);
        }
        best
    }

    /// `t_{k+v} - t_k > V` for every `k` with `k + v` inside the word.
    pub fn check_variability(&self, b: VariabilityBound) -> VariabilityCheck {
        let v = b.v as usize;
        let big_v = T::from_endpoint(b.big_v);
        let witness = (0..self.events.len())
            .take_while(|k| k + v < self.events.len())
            .find(|&k| self.events[k + v].t.clone() - self.events[k].t.clone() <= big_v);
        VariabilityCheck::from_witness(witness)
    }
}

impl<T: TimeValue> fmt::Display for FiniteWord<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dense")?;
        for e in &self.events {
            let names: Vec<&str> = e.props.iter().map(|a| a.as_str()).collect();
            writeln!(f, "t {} : {}", e.t, names.join(","))?;
        }
        Ok(())
    }
}
