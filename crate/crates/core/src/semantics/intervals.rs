use std::fmt;

use crate::syntax::Interval;
use crate::time::TimeValue;

/// A nonempty convex subset of `[0, ∞)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Span<T> {
    pub lo: T,
    pub lo_closed: bool,
    /// `None` is `+∞`.
    pub hi: Option<T>,
    pub hi_closed: bool,
}

impl<T: TimeValue> Span<T> {
    /// Clip `<lo, hi>` to `[0, ∞)`; `lo = None` is `-∞`. `None` if empty.
    fn clipped(lo: Option<T>, lo_closed: bool, hi: Option<T>, hi_closed: bool) -> Option<Self> {
        let (lo, lo_closed) = match lo {
            Some(l) if !l.is_negative() => (l, lo_closed),
            _ => (T::zero(), true),
        };
        let hi_closed = hi.is_some() && hi_closed;
        if let Some(h) = &hi {
            if *h < lo || (*h == lo && !(lo_closed && hi_closed)) {
                return None;
            }
        }
        Some(Span { lo, lo_closed, hi, hi_closed })
    }

    pub fn point(t: T) -> Self {
        Span { lo: t.clone(), lo_closed: true, hi: Some(t), hi_closed: true }
    }

    pub fn contains(&self, t: &T) -> bool {
        let above = if self.lo_closed { *t >= self.lo } else { *t > self.lo };
        let below = match &self.hi {
            None => true,
            Some(h) if self.hi_closed => t <= h,
            Some(h) => t < h,
        };
        above && below
    }
}

impl<T: TimeValue> fmt::Display for Span<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let open = if self.lo_closed { '[' } else { '(' };
        match &self.hi {
            None => write!(f, "{open}{},inf)", self.lo),
            Some(h) => write!(f, "{open}{},{h}{}", self.lo, if self.hi_closed { ']' } else { ')' }),
        }
    }
}

/// A finite union of spans, kept sorted, disjoint and non-adjacent so that
/// equal sets have equal representations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalSet<T> {
    spans: Vec<Span<T>>,
}

impl<T: TimeValue> IntervalSet<T> {
    pub fn empty() -> Self {
        IntervalSet { spans: Vec::new() }
    }

    /// `[0, ∞)`
    pub fn everything() -> Self {
        IntervalSet { spans: vec![Span { lo: T::zero(), lo_closed: true, hi: None, hi_closed: false }] }
    }

    pub fn from_spans(spans: impl IntoIterator<Item = Span<T>>) -> Self {
        let mut spans: Vec<Span<T>> = spans.into_iter().collect();
        spans.sort_by(|a, b| a.lo.cmp(&b.lo).then(b.lo_closed.cmp(&a.lo_closed)));
        let mut out: Vec<Span<T>> = Vec::with_capacity(spans.len());
        for s in spans {
            if let Some(last) = out.last_mut() {
                let touches = match &last.hi {
                    None => true,
                    Some(h) => s.lo < *h || (s.lo == *h && (last.hi_closed || s.lo_closed)),
                };
                if touches {
                    match (&last.hi, &s.hi) {
                        (None, _) => {}
                        (_, None) => {
                            last.hi = None;
                            last.hi_closed = false;
                        }
                        (Some(a), Some(b)) => {
                            if b > a {
                                last.hi = s.hi.clone();
                                last.hi_closed = s.hi_closed;
                            } else if b == a {
                                last.hi_closed |= s.hi_closed;
                            }
                        }
                    }
                    continue;
                }
            }
            out.push(s);
        }
        IntervalSet { spans: out }
    }

    pub fn points(ts: impl IntoIterator<Item = T>) -> Self {
        Self::from_spans(ts.into_iter().map(Span::point))
    }

    pub fn spans(&self) -> &[Span<T>] {
        &self.spans
    }

    pub fn is_empty(&self) -> bool {
        self.spans.is_empty()
    }

    pub fn contains(&self, t: &T) -> bool {
        self.spans.iter().any(|s| s.contains(t))
    }

    pub fn union(&self, other: &Self) -> Self {
        Self::from_spans(self.spans.iter().chain(&other.spans).cloned())
    }

    /// `[0, ∞)` minus this set.
    pub fn complement(&self) -> Self {
        let mut out = Vec::new();
        let mut cursor = Some((T::zero(), true));
        for s in &self.spans {
            let Some((lo, lo_closed)) = cursor.take() else { break };
            out.extend(Span::clipped(Some(lo), lo_closed, Some(s.lo.clone()), !s.lo_closed));
            cursor = s.hi.clone().map(|h| (h, !s.hi_closed));
        }
        if let Some((lo, lo_closed)) = cursor {
            out.extend(Span::clipped(Some(lo), lo_closed, None, false));
        }
        IntervalSet { spans: out }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.complement().union(&other.complement()).complement()
    }

    /// `{ t ≥ 0 : ∃u. u - t ∈ J, u - t > 0, u ∈ self }`: the instants from
    /// which the set is reached strictly in the future within `J`.
    pub fn back_shift(&self, j: &Interval) -> Self {
        // J ∩ (0, ∞)
        let (d_lo, d_lo_closed) = (T::from_endpoint(j.lo()), !j.lo_open() && j.lo() > 0);
        let d_hi = j.hi().map(T::from_endpoint);
        if let Some(h) = &d_hi {
            if h.is_zero() {
                return Self::empty();
            }
        }
        let d_hi_closed = !j.hi_open();
        Self::from_spans(self.spans.iter().filter_map(|s| {
            // s - J: lower end s.lo - d_hi, upper end s.hi - d_lo.
            let lo = d_hi.as_ref().map(|h| s.lo.clone() - h.clone());
            let lo_closed = s.lo_closed && d_hi_closed;
            let hi = s.hi.as_ref().map(|h| h.clone() - d_lo.clone());
            let hi_closed = s.hi_closed && d_lo_closed;
            Span::clipped(lo, lo_closed, hi, hi_closed)
        }))
    }
}

impl<T: TimeValue> fmt::Display for IntervalSet<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.spans.is_empty() {
            return f.write_str("{}");
        }
        let parts: Vec<String> = self.spans.iter().map(|s| s.to_string()).collect();
        f.write_str(&parts.join(" u "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn complement_round_trip() {
        let s = IntervalSet::points([r(0, 1), r(3, 2)]);
        let c = s.complement();
        assert_eq!(c.to_string(), "(0,3/2) u (3/2,inf)");
        assert_eq!(c.complement(), s);
        assert!(IntervalSet::<Rational64>::everything().complement().is_empty());
    }

    #[test]
    fn merging() {
        let a = IntervalSet::from_spans([
            Span { lo: r(0, 1), lo_closed: true, hi: Some(r(1, 1)), hi_closed: false },
            Span::point(r(1, 1)),
            Span { lo: r(2, 1), lo_closed: false, hi: Some(r(3, 1)), hi_closed: true },
        ]);
        assert_eq!(a.to_string(), "[0,1] u (2,3]");
        let b = a.intersection(&IntervalSet::from_spans([Span { lo: r(1, 2), lo_closed: false, hi: None, hi_closed: false }]));
        assert_eq!(b.to_string(), "(1/2,1] u (2,3]");
    }

    #[test]
    fn back_shift_is_strict_future() {
        let z = IntervalSet::points([r(3, 2)]);
        assert_eq!(z.back_shift(&Interval::open(1, 2).unwrap()).to_string(), "[0,1/2)");
        assert!(z.back_shift(&Interval::singular(0)).is_empty());
        // [0,1] reaches 3/2 from (1/2, 3/2), never from 3/2 itself
        assert_eq!(z.back_shift(&Interval::closed(0, 1).unwrap()).to_string(), "[1/2,3/2)");
        assert_eq!(z.back_shift(&Interval::UNBOUNDED).to_string(), "[0,3/2)");
    }
}
