use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use mtl_bv::machines::{
    check_bounded_counter, compile_guarded_inc, decode_word, encode_computation, encode_machine, encode_overflow,
    explore, parse_machine, prepend_guess_loop, random_computation, transform_halting_to_bounded,
    BoundedCounterOutcome, ExploreBudget, Machine,
};
use mtl_bv::words::{parse_word, AnyWord};

use crate::report::{Answer, RunReport};
use crate::{read, Ctx};

#[derive(Debug, Subcommand)]
pub enum MachineCommand {
    /// Enumerate computations depth-first up to a step budget.
    Explore {
        program: PathBuf,
        #[arg(long, default_value_t = 20)]
        steps: usize,
        /// Cap on listed computations.
        #[arg(long, default_value_t = 10_000)]
        max_computations: usize,
    },
    /// Search for a computation driving v0 above beta (exit 0 when found).
    BoundedCounter {
        program: PathBuf,
        #[arg(long)]
        beta: u64,
        /// Step budget.
        #[arg(long, default_value_t = 100)]
        budget: usize,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Rewrite a program.
    Transform {
        program: PathBuf,
        #[arg(long, value_enum, default_value_t = Transform::Halting)]
        kind: Transform,
        /// Threshold for `guarded`.
        #[arg(long, default_value_t = 0)]
        beta: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Emit the formula whose models encode the program's computations,
    /// or with --overflow the formula stating that v0 exceeds beta.
    Encode {
        program: PathBuf,
        #[arg(long, value_name = "BETA")]
        overflow: Option<u64>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Encode a seeded random computation of a two-counter program as a
    /// dense word.
    EncodeRun {
        program: PathBuf,
        #[arg(long, default_value_t = 10)]
        steps: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Decode a dense word back into a computation of the program.
    Decode { program: PathBuf, word: PathBuf },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Transform {
    /// Halting to overflow of v0 beyond 0.
    Halting,
    /// Prepend a loop guessing an initial counter value.
    GuessLoop,
    /// Guarded increments: v0 jumps above n*beta once any counter exceeds beta.
    Guarded,
}

fn load(path: &Path) -> anyhow::Result<Machine> {
    parse_machine(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

pub fn run(ctx: &Ctx, cmd: &MachineCommand) -> anyhow::Result<i32> {
    match cmd {
        MachineCommand::Explore { program, steps, max_computations } => {
            let m = load(program)?;
            let e = explore(&m, ExploreBudget { max_steps: *steps, max_computations: *max_computations });
            let mut report = RunReport::new("machine explore").input("program", program.display());
            report.detail("computations", e.computations.len());
            report.detail("halting", e.halting.len());
            report.detail("reachable", e.reachable.len());
            report.detail("max_counters", serde_json::to_value(&e.max_counters)?);
            report.budget(*steps, "steps", e.exhausted);
            let listing: String = e.halting.iter().map(|&i| format!("{}\n", e.computations[i])).collect();
            match (e.halting.is_empty(), e.exhausted) {
                (false, _) => report.verdict("HALTS", Answer::Yes),
                (true, false) => report.verdict("NO_HALT", Answer::No),
                (true, true) => report.verdict("NO_HALT_WITHIN_BUDGET", Answer::Inconclusive),
            }
            if !listing.is_empty() {
                report.emit(None, listing)?;
            }
            ctx.finish(report)
        }
        MachineCommand::BoundedCounter { program, beta, budget, witness } => {
            let m = load(program)?;
            let mut report =
                RunReport::new("machine bounded-counter").input("program", program.display()).input("beta", beta);
            match check_bounded_counter(&m, *beta, *budget) {
                BoundedCounterOutcome::Overflow(chi) => {
                    chi.validate(&m).context("overflow witness does not replay")?;
                    report.verdict("OVERFLOW", Answer::Yes);
                    report.detail("steps", chi.steps());
                    report.budget(*budget, "steps", false);
                    let text: String = chi.configs.iter().map(|c| format!("{c}\n")).collect();
                    report.emit(witness.as_deref(), text)?;
                }
                BoundedCounterOutcome::NoOverflowWithinBudget { complete: true } => {
                    report.verdict("NO_OVERFLOW", Answer::No);
                    report.budget(*budget, "steps", false);
                }
                BoundedCounterOutcome::NoOverflowWithinBudget { complete: false } => {
                    report.verdict("NO_OVERFLOW_WITHIN_BUDGET", Answer::Inconclusive);
                    report.budget(*budget, "steps", true);
                }
            }
            ctx.finish(report)
        }
        MachineCommand::Transform { program, kind, beta, output } => {
            let m = load(program)?;
            let out = match kind {
                Transform::Halting => transform_halting_to_bounded(&m),
                Transform::GuessLoop => prepend_guess_loop(&m),
                Transform::Guarded => compile_guarded_inc(&m, *beta).machine,
            };
            let mut report = RunReport::new("machine transform").input("program", program.display());
            report.detail("kind", serde_json::to_value(kind.to_possible_value().map(|v| v.get_name().to_string()))?);
            report.detail("instructions", out.len());
            report.detail("counters", out.counters());
            report.verdict("DONE", Answer::Yes);
            report.emit(output.as_deref(), out.to_string())?;
            ctx.finish(report)
        }
        MachineCommand::Encode { program, overflow, output } => {
            let m = load(program)?;
            let f = match overflow {
                Some(beta) => encode_overflow(*beta, m.len()),
                None => encode_machine(&m),
            };
            let mut report = RunReport::new("machine encode").input("program", program.display());
            report.detail("size", f.size());
            report.verdict("DONE", Answer::Yes);
            report.emit(output.as_deref(), format!("{f}\n"))?;
            ctx.finish(report)
        }
        MachineCommand::EncodeRun { program, steps, output } => {
            let m = load(program)?;
            let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
            let chi = random_computation(&m, &mut rng, *steps);
            let w = encode_computation(&chi)?;
            let mut report = RunReport::new("machine encode-run")
                .input("program", program.display())
                .input("seed", ctx.seed);
            report.detail("computation", chi.to_string());
            report.detail("steps", chi.steps());
            report.verdict("DONE", Answer::Yes);
            report.emit(output.as_deref(), w.to_string())?;
            ctx.finish(report)
        }
        MachineCommand::Decode { program, word } => {
            let m = load(program)?;
            let w = match parse_word(&read(word)?).with_context(|| format!("parsing {}", word.display()))? {
                AnyWord::Dense(w) => w,
                AnyWord::Discrete(_) => bail!("{} is a discrete word; decoding needs a dense word", word.display()),
            };
            let mut report =
                RunReport::new("machine decode").input("program", program.display()).input("word", word.display());
            match decode_word(&w, &m) {
                Ok(chi) => {
                    report.verdict("CONFORMS", Answer::Yes);
                    report.detail("steps", chi.steps());
                    report.emit(None, chi.configs.iter().map(|c| format!("{c}\n")).collect())?;
                }
                Err(violations) => {
                    report.verdict("NONCONFORMING", Answer::No);
                    report.detail("violations", violations.len());
                    report.emit(None, violations.iter().map(|v| format!("{v}\n")).collect())?;
                }
            }
            ctx.finish(report)
        }
    }
}
