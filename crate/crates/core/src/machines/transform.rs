use std::collections::{HashMap, VecDeque};

use super::{Config, Instr, Machine};

fn relabel(instr: Instr, map: impl Fn(usize) -> usize, counter: impl Fn(usize) -> usize) -> Instr {
    match instr {
        Instr::Halt => Instr::Halt,
        Instr::Inc { counter: c } => Instr::Inc { counter: counter(c) },
        Instr::Dec { counter: c } => Instr::Dec { counter: counter(c) },
        Instr::Branch { counter: c, then_label, else_label } => {
            Instr::Branch { counter: counter(c), then_label: map(then_label), else_label: map(else_label) }
        }
    }
}

/// Halting reduced to overflow of `β = 0`: a fresh `v0` (old `v_k` becomes
/// `v_{k+1}`), and the halt at `ℓ_h` becomes `ℓ_h: inc v0` followed by
/// `halt`. Labels after `ℓ_h` shift by one.
pub fn transform_halting_to_bounded(m: &Machine) -> Machine {
    let h = m.halt_label();
    let shift = |l: usize| if l > h { l + 1 } else { l };
    let mut program = Vec::with_capacity(m.len() + 1);
    for (label, &instr) in m.program().iter().enumerate() {
        if label == h {
            program.push(Instr::Inc { counter: 0 });
            program.push(Instr::Halt);
        } else {
            program.push(relabel(instr, shift, |c| c + 1));
        }
    }
    Machine::new(m.counters() + 1, program).expect("transformation preserves well-formedness")
}

/// Prefix `ℓ0: inc v_x; ℓ1: if v_x > 0 goto ℓ0, ℓ2` with a fresh counter
/// `v_x = v_n`, the original program relabeled from `ℓ2`.
pub fn prepend_guess_loop(m: &Machine) -> Machine {
    let x = m.counters();
    let mut program = vec![Instr::Inc { counter: x }, Instr::Branch { counter: x, then_label: 0, else_label: 2 }];
    program.extend(m.program().iter().map(|&i| relabel(i, |l| l + 2, |c| c)));
    Machine::new(m.counters() + 1, program).expect("transformation preserves well-formedness")
}

/// Result of [`compile_guarded_inc`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GuardedMachine {
    pub machine: Machine,
    /// `block_start[ℓ]`: label where the code for source label `ℓ` begins.
    pub block_start: Vec<usize>,
    pub beta: u64,
}

/// Replace every `inc v_k` by `inc v_{k+1}; if v_{k+1} > β then v0 := nβ+1`
/// over a fresh `v0`, with `n` the source's counter count, written with
/// basic instructions only.
///
/// Branches whose two targets coincide are deterministic (nonzero jumps,
/// zero falls through), which gives both tests and unconditional jumps on
/// a counter known to be positive. The test `v > β` decrements `v` up to
/// `β + 1` times, restoring it on either outcome. Since `v0` only ever
/// holds 0 or `nβ + 1`, the assignment is "if `v0 = 0`, increment `nβ + 1`
/// times".
pub fn compile_guarded_inc(m: &Machine, beta: u64) -> GuardedMachine {
    let n = m.counters() as u64;
    let blocks: Vec<usize> = m
        .program()
        .iter()
        .map(|i| match i {
            // inc; β+1 rounds of (test, restore-and-jump, dec); restore;
            // v0 test; the assignment.
            Instr::Inc { .. } => {
                let b = beta as usize;
                1 + (0..=b).map(|r| 1 + r + 1 + 1).sum::<usize>() + (b + 1) + 1 + (n * beta + 1) as usize
            }
            _ => 1,
        })
        .collect();
    let mut block_start = Vec::with_capacity(blocks.len());
    let mut at = 0;
    for len in &blocks {
        block_start.push(at);
        at += len;
    }
    let mut program = Vec::with_capacity(at);
    for (label, &instr) in m.program().iter().enumerate() {
        let Instr::Inc { counter } = instr else {
            program.push(relabel(instr, |l| block_start[l], |c| c + 1));
            continue;
        };
        let v = counter + 1;
        let end = block_start[label + 1];
        program.push(Instr::Inc { counter: v });
        for round in 0..=beta {
            // v > 0 here iff the original value exceeds `round`.
            let test = program.len();
            let dec_at = test + 1 + round as usize + 1;
            program.push(Instr::Branch { counter: v, then_label: dec_at, else_label: dec_at });
            // Zero: undo `round` decrements and leave. `v >= 1` after the
            // first increment, so round 0 never falls through and its jump
            // is unreachable.
            program.extend((0..round).map(|_| Instr::Inc { counter: v }));
            program.push(Instr::Branch { counter: v, then_label: end, else_label: end });
            program.push(Instr::Dec { counter: v });
        }
        program.extend((0..=beta).map(|_| Instr::Inc { counter: v }));
        program.push(Instr::Branch { counter: 0, then_label: end, else_label: end });
        program.extend((0..n * beta + 1).map(|_| Instr::Inc { counter: 0 }));
        debug_assert_eq!(program.len(), end);
    }
    let machine = Machine::new(m.counters() + 1, program).expect("compiled program is well formed");
    GuardedMachine { machine, block_start, beta }
}

impl GuardedMachine {
    /// Configurations at block starts reachable in at most `max_steps`
    /// source steps. Code inside a compiled `inc` block is deterministic,
    /// so one source step is one run from block start to block start.
    fn macro_successors(&self, c: &Config) -> Vec<Config> {
        let is_start = |l: usize| self.block_start.binary_search(&l).is_ok();
        let mut out = Vec::new();
        for mut s in self.machine.step(c) {
            loop {
                if is_start(s.location) {
                    out.push(s);
                    break;
                }
                let mut next = self.machine.step(&s);
                debug_assert!(next.len() <= 1, "compiled blocks are deterministic");
                match next.pop() {
                    Some(n) => s = n,
                    None => break,
                }
            }
        }
        out
    }

    /// Does `v0` exceed `nβ` within `max_steps` source steps?
    pub fn v0_overflows_within(&self, max_steps: usize) -> bool {
        let n = (self.machine.counters() - 1) as u64;
        let limit = n * self.beta;
        let init = self.machine.initial();
        let mut seen = HashMap::from([(init.clone(), 0usize)]);
        let mut queue = VecDeque::from([(init, 0usize)]);
        while let Some((c, depth)) = queue.pop_front() {
            if c.counters[0] > limit {
                return true;
            }
            if depth == max_steps {
                continue;
            }
            for s in self.macro_successors(&c) {
                if !seen.contains_key(&s) {
                    seen.insert(s.clone(), depth + 1);
                    queue.push_back((s, depth + 1));
                }
            }
        }
        false
    }
}

/// Does some counter of `m` exceed `beta` within `max_steps` steps?
pub fn some_counter_overflows_within(m: &Machine, beta: u64, max_steps: usize) -> bool {
    let init = m.initial();
    let mut seen = HashMap::from([(init.clone(), 0usize)]);
    let mut queue = VecDeque::from([(init, 0usize)]);
    while let Some((c, depth)) = queue.pop_front() {
        if c.counters.iter().any(|&x| x > beta) {
            return true;
        }
        if depth == max_steps {
            continue;
        }
        for s in m.step(&c) {
            if !seen.contains_key(&s) {
                seen.insert(s.clone(), depth + 1);
                queue.push_back((s, depth + 1));
            }
        }
    }
    false
}
