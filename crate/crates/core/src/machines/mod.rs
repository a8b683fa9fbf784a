//! Nondeterministic counter machines, their exploration, the reductions
//! between counter problems, and encodings into MTL formulas and timed words.

mod encode;
mod explore;
mod format;
mod random;
mod transform;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub use encode::{
    counter_atom, decode_word, encode_computation, encode_machine, encode_overflow, location_atom,
    ConformanceViolation, SLOT_PERIOD,
};
pub use explore::{
    check_bounded_counter, explore, halts_within, overflows_within, BoundedCounterOutcome, ExploreBudget,
    Exploration,
};
pub use format::{parse_machine, MachineParseError};
pub use random::{random_computation, random_machine};
pub use transform::{
    compile_guarded_inc, prepend_guess_loop, some_counter_overflows_within, transform_halting_to_bounded,
    GuardedMachine,
};

/// One instruction. Labels are instruction indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum Instr {
    Halt,
    /// `if v_counter > 0 goto then_label, else_label`; when the counter is
    /// zero control falls through to the next instruction.
    Branch { counter: usize, then_label: usize, else_label: usize },
    Inc { counter: usize },
    Dec { counter: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MachineError {
    #[error("the program is empty")]
    Empty,
    #[error("the program has no halt instruction")]
    NoHalt,
    #[error("halt occurs at L{0} and L{1}; exactly one is allowed")]
    MultipleHalts(usize, usize),
    #[error("the last instruction must be halt or a branch")]
    BadLastInstruction,
    #[error("L{label} jumps to missing label L{target}")]
    MissingTarget { label: usize, target: usize },
    #[error("L{label} uses counter v{counter} but the machine has {counters} counters")]
    CounterOutOfRange { label: usize, counter: usize, counters: usize },
}

/// A counter machine with counters `v0 .. v{counters-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Machine {
    counters: usize,
    program: Vec<Instr>,
}

impl Machine {
    pub fn new(counters: usize, program: Vec<Instr>) -> Result<Self, MachineError> {
        let m = Machine { counters: counters.max(1), program };
        m.validate()?;
        Ok(m)
    }

    /// Counters inferred from the program, at least one.
    pub fn from_program(program: Vec<Instr>) -> Result<Self, MachineError> {
        let counters = program.iter().filter_map(Instr::counter).max().map_or(1, |c| c + 1);
        Self::new(counters, program)
    }

    fn validate(&self) -> Result<(), MachineError> {
        let last = self.program.last().ok_or(MachineError::Empty)?;
        let halts: Vec<usize> = (0..self.program.len()).filter(|&i| self.program[i] == Instr::Halt).collect();
        match halts[..] {
            [] => return Err(MachineError::NoHalt),
            [_] => {}
            [a, b, ..] => return Err(MachineError::MultipleHalts(a, b)),
        }
        if !matches!(last, Instr::Halt | Instr::Branch { .. }) {
            return Err(MachineError::BadLastInstruction);
        }
        for (label, instr) in self.program.iter().enumerate() {
            if let Some(counter) = instr.counter() {
                if counter >= self.counters {
                    return Err(MachineError::CounterOutOfRange { label, counter, counters: self.counters });
                }
            }
            if let Instr::Branch { then_label, else_label, .. } = *instr {
                for target in [then_label, else_label] {
                    if target >= self.program.len() {
                        return Err(MachineError::MissingTarget { label, target });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn counters(&self) -> usize {
        self.counters
    }

    pub fn program(&self) -> &[Instr] {
        &self.program
    }

    pub fn len(&self) -> usize {
        self.program.len()
    }

    pub fn is_empty(&self) -> bool {
        self.program.is_empty()
    }

    /// Label of the unique halt instruction.
    pub fn halt_label(&self) -> usize {
        self.program.iter().position(|i| *i == Instr::Halt).expect("validated machine halts somewhere")
    }

    /// `⟨ℓ0, 0, ..., 0⟩`
    pub fn initial(&self) -> Config {
        Config { location: 0, counters: vec![0; self.counters] }
    }

    /// Successor configurations. Decrementing zero blocks; a branch on a
    /// zero counter falls through, and blocks if it is the last instruction.
    pub fn step(&self, c: &Config) -> Vec<Config> {
        let goto = |location: usize, counters: Vec<u64>| Config { location, counters };
        match self.program[c.location] {
            Instr::Halt => vec![],
            Instr::Inc { counter } => {
                let mut v = c.counters.clone();
                v[counter] += 1;
                vec![goto(c.location + 1, v)]
            }
            Instr::Dec { counter } => {
                if c.counters[counter] == 0 {
                    return vec![];
                }
                let mut v = c.counters.clone();
                v[counter] -= 1;
                vec![goto(c.location + 1, v)]
            }
            Instr::Branch { counter, then_label, else_label } => {
                if c.counters[counter] > 0 {
                    let mut out = vec![goto(then_label, c.counters.clone())];
                    if else_label != then_label {
                        out.push(goto(else_label, c.counters.clone()));
                    }
                    out
                } else if c.location + 1 < self.program.len() {
                    vec![goto(c.location + 1, c.counters.clone())]
                } else {
                    vec![]
                }
            }
        }
    }
}

impl Instr {
    pub fn counter(&self) -> Option<usize> {
        match *self {
            Instr::Halt => None,
            Instr::Branch { counter, .. } | Instr::Inc { counter } | Instr::Dec { counter } => Some(counter),
        }
    }
}

impl fmt::Display for Instr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Instr::Halt => write!(f, "halt"),
            Instr::Branch { counter, then_label, else_label } => {
                write!(f, "if v{counter} > 0 goto L{then_label}, L{else_label}")
            }
            Instr::Inc { counter } => write!(f, "inc v{counter}"),
            Instr::Dec { counter } => write!(f, "dec v{counter}"),
        }
    }
}

impl fmt::Display for Machine {
    /// The program file format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (label, instr) in self.program.iter().enumerate() {
            writeln!(f, "L{label}: {instr}")?;
        }
        Ok(())
    }
}

/// `⟨ℓ, x_0, ..., x_{n-1}⟩`
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Config {
    pub location: usize,
    pub counters: Vec<u64>,
}

impl fmt::Display for Config {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<L{}", self.location)?;
        for x in &self.counters {
            write!(f, ", {x}")?;
        }
        write!(f, ">")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComputationError {
    #[error("a computation has at least one configuration")]
    Empty,
    #[error("the first configuration is {0}, not the initial one")]
    BadStart(String),
    #[error("step {index} from {from} to {to} is not a transition of the machine")]
    IllegalStep { index: usize, from: String, to: String },
}

/// A finite computation prefix starting in the initial configuration.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Computation {
    pub configs: Vec<Config>,
}

impl Computation {
    /// First reason `configs` is not a computation of `m`.
    pub fn validate(&self, m: &Machine) -> Result<(), ComputationError> {
        let first = self.configs.first().ok_or(ComputationError::Empty)?;
        if *first != m.initial() {
            return Err(ComputationError::BadStart(first.to_string()));
        }
        for (index, pair) in self.configs.windows(2).enumerate() {
            if !m.step(&pair[0]).contains(&pair[1]) {
                return Err(ComputationError::IllegalStep {
                    index,
                    from: pair[0].to_string(),
                    to: pair[1].to_string(),
                });
            }
        }
        Ok(())
    }

    /// Number of steps.
    pub fn steps(&self) -> usize {
        self.configs.len().saturating_sub(1)
    }

    /// Largest value each counter takes.
    pub fn max_counters(&self) -> Vec<u64> {
        let n = self.configs.first().map_or(0, |c| c.counters.len());
        (0..n).map(|i| self.configs.iter().map(|c| c.counters[i]).max().unwrap_or(0)).collect()
    }
}

impl fmt::Display for Computation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.configs.iter().map(Config::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert_eq!(Machine::from_program(vec![]), Err(MachineError::Empty));
        assert_eq!(Machine::from_program(vec![Instr::Inc { counter: 0 }]), Err(MachineError::NoHalt));
        assert_eq!(
            Machine::from_program(vec![Instr::Halt, Instr::Inc { counter: 0 }]),
            Err(MachineError::BadLastInstruction)
        );
        assert_eq!(
            Machine::from_program(vec![Instr::Halt, Instr::Halt]),
            Err(MachineError::MultipleHalts(0, 1))
        );
        let bad = Instr::Branch { counter: 0, then_label: 5, else_label: 0 };
        assert_eq!(
            Machine::from_program(vec![Instr::Halt, bad]),
            Err(MachineError::MissingTarget { label: 1, target: 5 })
        );
    }

    #[test]
    fn step_semantics() {
        let m = Machine::from_program(vec![
            Instr::Inc { counter: 0 },
            Instr::Branch { counter: 0, then_label: 0, else_label: 3 },
            Instr::Dec { counter: 0 },
            Instr::Halt,
        ])
        .unwrap();
        let c = |location, x| Config { location, counters: vec![x] };
        assert_eq!(m.step(&c(0, 0)), vec![c(1, 1)]);
        assert_eq!(m.step(&c(1, 1)), vec![c(0, 1), c(3, 1)]);
        assert_eq!(m.step(&c(1, 0)), vec![c(2, 0)]);
        assert_eq!(m.step(&c(2, 0)), vec![]);
        assert_eq!(m.step(&c(3, 4)), vec![]);
    }
}
