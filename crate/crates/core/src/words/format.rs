//! Line-based word files.
//!
//! ```text
//! # square wave
//! discrete
//! t 0 : p
//! t 3 : q
//! loop period 10 start 10
//! t 0 : p
//! t 3 : q
//! ```
//!
//! Stem lines give absolute timestamps; lines after `loop` give offsets from
//! the start of each loop iteration. `start` is the timestamp of the first
//! iteration and may be omitted when the stem is empty (it is then 0).
//!
//! ```text
//! dense
//! t 0 : p0
//! t 13/2 : z0
//! ```
//!
//! Dense timestamps are integers or fractions `n/d`. Blank lines and text
//! after `#` are ignored.

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use super::{DiscreteLassoWord, Event, FiniteWord, PropSet, WordViolation};
use crate::syntax::{is_valid_atom_name, Atom};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyWord {
    Discrete(DiscreteLassoWord),
    Dense(FiniteWord<BigRational>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordFormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("ill-formed word: {0}")]
    Invalid(#[from] WordViolation),
}

fn syntax(line: usize, message: impl Into<String>) -> WordFormatError {
    WordFormatError::Syntax { line, message: message.into() }
}

fn parse_props(line: usize, text: &str) -> Result<PropSet, WordFormatError> {
    let mut props = PropSet::new();
    for name in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if !is_valid_atom_name(name) {
            return Err(syntax(line, format!("invalid proposition name {name:?}")));
        }
        props.insert(Atom::new(name));
    }
    Ok(props)
}

/// `t <time> : props`
fn split_event<'a>(line: usize, text: &'a str) -> Result<(&'a str, PropSet), WordFormatError> {
    let rest = text
        .strip_prefix('t')
        .filter(|r| r.starts_with(char::is_whitespace))
        .ok_or_else(|| syntax(line, "expected `t <time> : <props>`"))?;
    let (time, props) = rest.split_once(':').ok_or_else(|| syntax(line, "missing `:`"))?;
    Ok((time.trim(), parse_props(line, props)?))
}

fn parse_u64(line: usize, text: &str) -> Result<u64, WordFormatError> {
    text.parse().map_err(|_| syntax(line, format!("expected a nonnegative integer, found {text:?}")))
}

fn parse_rational(line: usize, text: &str) -> Result<BigRational, WordFormatError> {
    let bad = || syntax(line, format!("expected a time `n` or `n/d`, found {text:?}"));
    let int = |s: &str| -> Result<BigInt, WordFormatError> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        s.parse().map_err(|_| bad())
    };
    match text.split_once('/') {
        None => Ok(BigRational::from_integer(int(text)?)),
        Some((n, d)) => {
            let d = int(d)?;
            if d == BigInt::from(0) {
                return Err(syntax(line, "zero denominator"));
            }
            Ok(BigRational::new(int(n)?, d))
        }
    }
}

/// Parse and validate a word file.
pub fn parse_word(text: &str) -> Result<AnyWord, WordFormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or_else(|| syntax(1, "empty word file"))?;
    match header {
        "dense" => {
            let mut events = Vec::new();
            for (n, l) in lines {
                let (t, props) = split_event(n, l)?;
                events.push(Event::new(props, parse_rational(n, t)?));
            }
            Ok(AnyWord::Dense(FiniteWord::new(events)?))
        }
        "discrete" => {
            let mut stem = Vec::new();
            let mut cycle = Vec::new();
            let mut looping: Option<(u64, Option<u64>)> = None;
            for (n, l) in lines {
                if let Some(rest) = l.strip_prefix("loop") {
                    if looping.is_some() {
                        return Err(syntax(n, "second `loop` line"));
                    }
                    let words: Vec<&str> = rest.split_whitespace().collect();
                    looping = Some(match words.as_slice() {
                        ["period", p] => (parse_u64(n, p)?, None),
                        ["period", p, "start", s] => (parse_u64(n, p)?, Some(parse_u64(n, s)?)),
                        _ => return Err(syntax(n, "expected `loop period <int> [start <int>]`")),
                    });
                    continue;
                }
                let (t, props) = split_event(n, l)?;
                let ev = Event::new(props, parse_u64(n, t)?);
                if looping.is_some() {
                    cycle.push(ev);
                } else {
                    stem.push(ev);
                }
            }
            let (period, start) = looping.ok_or_else(|| syntax(hline, "missing `loop period` line"))?;
            let start = match start {
                Some(s) => s,
                None if stem.is_empty() => 0,
                None => return Err(syntax(hline, "`loop ... start <int>` is required after a stem")),
            };
            Ok(AnyWord::Discrete(DiscreteLassoWord::new(stem, cycle, period, start)?))
        }
        other => Err(syntax(hline, format!("expected `discrete` or `dense`, found {other:?}"))),
    }
}
