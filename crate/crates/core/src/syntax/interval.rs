use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::time::TimeValue;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntervalError {
    #[error("empty interval: lower endpoint {lo} exceeds upper endpoint {hi}")]
    Inverted { lo: u64, hi: u64 },
    #[error("empty interval: singular endpoint {0} with an open bracket")]
    OpenSingular(u64),
}

/// A time interval with nonnegative integer endpoints, possibly right-infinite.
///
/// Invariants: `lo <= hi`; a right-infinite interval is right-open; the
/// interval is nonempty over the reals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Interval {
    lo: u64,
    hi: Option<u64>,
    lo_open: bool,
    hi_open: bool,
}

impl Interval {
    /// `[0, ∞)`, the interval dropped from the concrete syntax.
    pub const UNBOUNDED: Interval = Interval { lo: 0, hi: None, lo_open: false, hi_open: true };

    pub fn new(lo: u64, hi: Option<u64>, lo_open: bool, hi_open: bool) -> Result<Self, IntervalError> {
        match hi {
            None => Ok(Interval { lo, hi: None, lo_open, hi_open: true }),
            Some(h) if lo > h => Err(IntervalError::Inverted { lo, hi: h }),
            Some(h) if lo == h && (lo_open || hi_open) => Err(IntervalError::OpenSingular(lo)),
            Some(h) => Ok(Interval { lo, hi: Some(h), lo_open, hi_open }),
        }
    }

    pub fn closed(lo: u64, hi: u64) -> Result<Self, IntervalError> {
        Self::new(lo, Some(hi), false, false)
    }

    pub fn open(lo: u64, hi: u64) -> Result<Self, IntervalError> {
        Self::new(lo, Some(hi), true, true)
    }

    /// `[c, c]`
    pub fn singular(c: u64) -> Self {
        Interval { lo: c, hi: Some(c), lo_open: false, hi_open: false }
    }

    /// `(c, ∞)`
    pub fn greater_than(c: u64) -> Self {
        Interval { lo: c, hi: None, lo_open: true, hi_open: true }
    }

    /// `[c, ∞)`
    pub fn at_least(c: u64) -> Self {
        Interval { lo: c, hi: None, lo_open: false, hi_open: true }
    }

    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> Option<u64> {
        self.hi
    }

    pub fn lo_open(&self) -> bool {
        self.lo_open
    }

    pub fn hi_open(&self) -> bool {
        self.hi_open
    }

    pub fn is_unbounded(&self) -> bool {
        *self == Self::UNBOUNDED
    }

    pub fn is_finite(&self) -> bool {
        self.hi.is_some()
    }

    pub fn is_singular(&self) -> bool {
        self.hi == Some(self.lo)
    }

    /// Membership of an integer distance.
    pub fn contains(&self, d: u64) -> bool {
        let above = if self.lo_open { d > self.lo } else { d >= self.lo };
        let below = match self.hi {
            None => true,
            Some(h) if self.hi_open => d < h,
            Some(h) => d <= h,
        };
        above && below
    }

    /// Membership of an arbitrary exact distance.
    pub fn contains_time<T: TimeValue>(&self, d: &T) -> bool {
        let lo = T::from_endpoint(self.lo);
        let above = if self.lo_open { *d > lo } else { *d >= lo };
        let below = match self.hi {
            None => true,
            Some(h) => {
                let h = T::from_endpoint(h);
                if self.hi_open {
                    *d < h
                } else {
                    *d <= h
                }
            }
        };
        above && below
    }

    /// Smallest and largest *positive* integer distance inside the interval.
    ///
    /// Pointwise operators only look strictly into the future, so distance 0
    /// never matters. Returns `None` when no positive integer is inside.
    pub fn positive_integer_bounds(&self) -> Option<(u64, Option<u64>)> {
        let lo = (self.lo + u64::from(self.lo_open)).max(1);
        match self.hi {
            None => Some((lo, None)),
            Some(h) => {
                if self.hi_open && h == 0 {
                    return None;
                }
                let hi = h - u64::from(self.hi_open);
                (lo <= hi).then_some((lo, Some(hi)))
            }
        }
    }

    /// Finite endpoints, in order (the lower endpoint is always finite).
    pub fn finite_endpoints(&self) -> impl Iterator<Item = u64> {
        std::iter::once(self.lo).chain(self.hi)
    }

    /// Pieces of `(0, ∞) \ self`, each built only from this interval's
    /// endpoints, 0 and ∞.
    pub fn positive_complement(&self) -> Vec<Interval> {
        let mut pieces = Vec::new();
        if self.lo > 0 {
            // (0, lo) when lo is included, (0, lo] when it is excluded.
            pieces.push(Interval { lo: 0, hi: Some(self.lo), lo_open: true, hi_open: !self.lo_open });
        }
        if let Some(h) = self.hi {
            pieces.push(Interval { lo: h, hi: None, lo_open: !self.hi_open, hi_open: true });
        }
        pieces
    }

    /// Same lower end, upper end pushed out to `hi` (or ∞). Used to test
    /// monotonicity in the interval.
    pub fn widen_to(&self, hi: Option<u64>) -> Interval {
        match (self.hi, hi) {
            (_, None) => Interval { hi: None, hi_open: true, ..*self },
            (Some(old), Some(new)) if new > old => Interval { hi: Some(new), hi_open: false, ..*self },
            _ => *self,
        }
    }
}

impl Default for Interval {
    fn default() -> Self {
        Self::UNBOUNDED
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let open = if self.lo_open { '(' } else { '[' };
        match self.hi {
            None => write!(f, "{open}{},inf)", self.lo),
            Some(h) => {
                let close = if self.hi_open { ')' } else { ']' };
                write!(f, "{open}{},{h}{close}", self.lo)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_intervals() {
        assert_eq!(Interval::closed(2, 1), Err(IntervalError::Inverted { lo: 2, hi: 1 }));
        assert!(Interval::new(3, Some(3), true, false).is_err());
        assert!(Interval::closed(0, 0).is_ok());
    }

    #[test]
    fn right_infinite_is_right_open() {
        let i = Interval::new(2, None, false, false).unwrap();
        assert!(i.hi_open());
        assert_eq!(i.to_string(), "[2,inf)");
    }

    #[test]
    fn integer_membership() {
        let i = Interval::new(1, Some(3), true, false).unwrap();
        assert!(!i.contains(1));
        assert!(i.contains(2));
        assert!(i.contains(3));
        assert!(!i.contains(4));
        assert_eq!(i.positive_integer_bounds(), Some((2, Some(3))));
        assert_eq!(Interval::open(1, 2).unwrap().positive_integer_bounds(), None);
        assert_eq!(Interval::singular(0).positive_integer_bounds(), None);
        assert_eq!(Interval::UNBOUNDED.positive_integer_bounds(), Some((1, None)));
    }

    #[test]
    fn complement_reuses_endpoints() {
        let i = Interval::closed(1, 3).unwrap();
        let pieces = i.positive_complement();
        assert_eq!(pieces.len(), 2);
        assert_eq!(pieces[0].to_string(), "(0,1)");
        assert_eq!(pieces[1].to_string(), "(3,inf)");
        for d in 1..10 {
            let inside = i.contains(d);
            let outside = pieces.iter().any(|p| p.contains(d));
            assert!(inside ^ outside, "distance {d}");
        }
        assert!(Interval::UNBOUNDED.positive_complement().is_empty());
        let g = Interval::greater_than(2).positive_complement();
        assert_eq!(g.len(), 1);
        assert_eq!(g[0].to_string(), "(0,2]");
    }
}
