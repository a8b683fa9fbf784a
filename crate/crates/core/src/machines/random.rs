use rand::seq::SliceRandom;
use rand::Rng;

use super::{Computation, Instr, Machine};

/// A random well-formed machine with `1..=max_instructions` instructions
/// over `counters` counters.
pub fn random_machine(rng: &mut impl Rng, max_instructions: usize, counters: usize) -> Machine {
    assert!(max_instructions >= 1 && counters >= 1);
    let len = rng.gen_range(1..=max_instructions);
    let halt = rng.gen_range(0..len);
    let program = (0..len)
        .map(|label| {
            let counter = rng.gen_range(0..counters);
            let branch = |rng: &mut _| Instr::Branch {
                counter,
                then_label: gen_label(rng, len),
                else_label: gen_label(rng, len),
            };
            if label == halt {
                Instr::Halt
            } else if label + 1 == len {
                branch(rng)
            } else {
                match rng.gen_range(0..4) {
                    0 | 1 => Instr::Inc { counter },
                    2 => Instr::Dec { counter },
                    _ => branch(rng),
                }
            }
        })
        .collect();
    Machine::new(counters, program).expect("generator respects the machine invariants")
}

fn gen_label(rng: &mut impl Rng, len: usize) -> usize {
    rng.gen_range(0..len)
}

/// A random walk of at most `max_steps` steps from the initial
/// configuration, choosing uniformly among successors.
pub fn random_computation(m: &Machine, rng: &mut impl Rng, max_steps: usize) -> Computation {
    let mut configs = vec![m.initial()];
    for _ in 0..max_steps {
        let succ = m.step(configs.last().expect("nonempty"));
        match succ.choose(rng) {
            Some(next) => configs.push(next.clone()),
            None => break,
        }
    }
    Computation { configs }
}
