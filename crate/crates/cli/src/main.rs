//! `mtlbv`: satisfiability, validity and bounded variability of MTL formulas
//! over discrete time, word checking, and counter-machine tooling.
//!
//! Exit codes: 0 yes (satisfied, SAT, valid, BOUNDED, overflow found),
//! 1 no, 2 inconclusive (budget exhausted, fast path undecided), 3 error.

mod machine;
mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use mtl_bv::corpus::{enumerate_formulas, random_lasso_word, CorpusConfig, RandomWordConfig};
use mtl_bv::decision::{decide_bv_carousel, BuchiAutomaton, FastVerdict};
use mtl_bv::syntax::parse_formula_any;
use mtl_bv::words::{parse_word, AnyWord};
use mtl_bv::{
    decide_bv, eval_dense_existential, eval_discrete, fastpath_bv, mtl_sat_discrete, parse_formula,
    reduce_sat_to_bv, translate_to_ltl, Alphabet, Atom, DecisionError, DenseTime, Formula,
    SolveOptions, VariabilityBound,
};

use report::{Answer, Format, RunReport, EXIT_ERROR};

#[derive(Debug, Parser)]
#[command(name = "mtlbv", version, about = "MTL satisfiability, bounded variability and counter-machine gadgets")]
struct Cli {
    /// Propositions models may use, comma separated. Formula atoms outside
    /// it are rejected.
    #[arg(long, global = true, value_delimiter = ',')]
    alphabet: Option<Vec<String>>,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Include wall-clock time in reports (makes them nondeterministic).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a formula at the start of a word file.
    Check {
        #[arg(long)]
        word: PathBuf,
        formula: String,
    },
    /// Satisfiability over discrete time.
    Sat {
        formula: String,
        #[command(flatten)]
        solve: SolveArgs,
        /// Write the Büchi automaton of the translation in HOA format.
        #[arg(long)]
        hoa: Option<PathBuf>,
    },
    /// Validity over discrete time; the witness is a countermodel.
    Valid {
        formula: String,
        #[command(flatten)]
        solve: SolveArgs,
    },
    /// Is every model of the formula of variability bounded by v/V?
    Bv {
        formula: String,
        v: u64,
        #[arg(value_name = "V")]
        big_v: u64,
        #[command(flatten)]
        solve: SolveArgs,
        /// Try the fragment-based fast path first.
        #[arg(long)]
        fastpath: bool,
        /// Only run the fast path; undecided instances exit with 2.
        #[arg(long, conflicts_with = "fastpath")]
        fastpath_only: bool,
        #[arg(long, value_enum, default_value_t = Style::Counting)]
        style: Style,
    },
    /// The bounded-variability instance equivalent to unsatisfiability.
    Reduce { formula: String },
    #[command(subcommand)]
    Machine(machine::MachineCommand),
    #[command(subcommand)]
    Corpus(CorpusCommand),
}

#[derive(Debug, Args)]
struct SolveArgs {
    /// Cap on explored automaton states.
    #[arg(long, default_value_t = SolveOptions::default().max_states)]
    budget: usize,
    /// Write the witness word here instead of printing it.
    #[arg(long)]
    witness: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Style {
    Counting,
    Carousel,
}

#[derive(Debug, Subcommand)]
enum CorpusCommand {
    /// Print the exhaustive formula corpus, one formula per line.
    Formulas {
        #[arg(long, default_value_t = 6)]
        max_size: usize,
    },
    /// Print seeded random lasso words.
    Words {
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 4)]
        max_gap: u64,
    },
}

pub struct Ctx {
    pub alphabet: Option<Alphabet>,
    pub seed: u64,
    pub format: Format,
    pub started: Option<Instant>,
}

impl Ctx {
    fn formula(&self, text: &str) -> anyhow::Result<Formula> {
        let f = match &self.alphabet {
            Some(a) => parse_formula(text, a),
            None => parse_formula_any(text),
        };
        f.map_err(|e| {
            let caret = if e.line == 1 { format!("\n  {text}\n  {:>width$}", "^", width = e.column) } else { String::new() };
            anyhow::anyhow!("formula {e}{caret}")
        })
    }

    fn solve_options(&self, budget: usize) -> SolveOptions {
        SolveOptions { max_states: budget, alphabet: self.alphabet.clone() }
    }

    pub fn finish(&self, report: RunReport) -> anyhow::Result<i32> {
        report.finish(self.started, self.format)
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// Budget overruns are an answer, not an error.
fn budget_exhausted(report: &mut RunReport, budget: usize, e: DecisionError) -> anyhow::Result<()> {
    match e {
        DecisionError::Budget { states } => {
            report.verdict("BUDGET", Answer::Inconclusive);
            report.detail("states", states);
            report.budget(budget, "states", true);
            Ok(())
        }
        other => Err(other.into()),
    }
}

fn cmd_check(ctx: &Ctx, word: &Path, text: &str) -> anyhow::Result<i32> {
    let f = ctx.formula(text)?;
    let w = parse_word(&read(word)?).with_context(|| format!("parsing {}", word.display()))?;
    let (holds, kind) = match &w {
        AnyWord::Discrete(w) => (eval_discrete(w, 0, &f), "discrete"),
        AnyWord::Dense(w) => (eval_dense_existential(w, &DenseTime::zero(), &f)?, "dense"),
    };
    let mut report = RunReport::new("check").input("formula", &f).input("word", word.display());
    report.detail("semantics", kind);
    if holds {
        report.verdict("SATISFIED", Answer::Yes);
    } else {
        report.verdict("VIOLATED", Answer::No);
    }
    ctx.finish(report)
}

fn cmd_sat(ctx: &Ctx, text: &str, solve: &SolveArgs, hoa: Option<&Path>) -> anyhow::Result<i32> {
    let f = ctx.formula(text)?;
    let opts = ctx.solve_options(solve.budget);
    let mut report = RunReport::new("sat").input("formula", &f);
    if let Some(path) = hoa {
        let alphabet = opts.effective_alphabet(&f);
        let mut tr = translate_to_ltl(&f, &alphabet);
        let root = tr.formula();
        match BuchiAutomaton::build(&tr.arena, root, solve.budget) {
            Ok(aut) => report.emit(Some(path), aut.to_hoa(&tr.arena, &f.to_string()))?,
            Err(e) => {
                budget_exhausted(&mut report, solve.budget, e)?;
                return ctx.finish(report);
            }
        }
    }
    match mtl_sat_discrete(&f, &opts) {
        Ok(r) => {
            report.detail("states", r.states);
            report.detail("ltl_size", r.ltl_size);
            report.budget(solve.budget, "states", false);
            match r.model {
                Some(model) => {
                    report.verdict("SAT", Answer::Yes);
                    report.emit(solve.witness.as_deref(), model.to_string())?;
                }
                None => report.verdict("UNSAT", Answer::No),
            }
        }
        Err(e) => budget_exhausted(&mut report, solve.budget, e)?,
    }
    ctx.finish(report)
}

fn cmd_valid(ctx: &Ctx, text: &str, solve: &SolveArgs) -> anyhow::Result<i32> {
    let f = ctx.formula(text)?;
    let mut opts = ctx.solve_options(solve.budget);
    opts.alphabet = Some(opts.effective_alphabet(&f));
    let mut report = RunReport::new("valid").input("formula", &f);
    match mtl_sat_discrete(&Formula::not(f.clone()), &opts) {
        Ok(r) => {
            report.detail("states", r.states);
            report.budget(solve.budget, "states", false);
            match r.model {
                Some(model) => {
                    report.verdict("INVALID", Answer::No);
                    report.emit(solve.witness.as_deref(), model.to_string())?;
                }
                None => report.verdict("VALID", Answer::Yes),
            }
        }
        Err(e) => budget_exhausted(&mut report, solve.budget, e)?,
    }
    ctx.finish(report)
}

struct BvArgs<'a> {
    text: &'a str,
    bound: VariabilityBound,
    solve: &'a SolveArgs,
    fastpath: bool,
    fastpath_only: bool,
    style: Style,
}

fn cmd_bv(ctx: &Ctx, a: BvArgs<'_>) -> anyhow::Result<i32> {
    let f = ctx.formula(a.text)?;
    let opts = ctx.solve_options(a.solve.budget);
    let mut report = RunReport::new("bv").input("formula", &f).input("bound", a.bound);
    if a.fastpath || a.fastpath_only {
        let fast = fastpath_bv(&f, a.bound, &opts);
        report.detail("fastpath_states", fast.states);
        if let Some(psi) = &fast.psi {
            report.detail("fastpath_conjuncts", psi.to_string());
        }
        if fast.verdict == FastVerdict::Bounded {
            let route = serde_json::to_value(fast.route)?;
            report.detail("fastpath_route", route);
            report.verdict("BOUNDED", Answer::Yes);
            report.budget(a.solve.budget, "states", false);
            return ctx.finish(report);
        }
        if a.fastpath_only {
            report.verdict("UNKNOWN", Answer::Inconclusive);
            return ctx.finish(report);
        }
    }
    let result = match a.style {
        Style::Counting => decide_bv(&f, a.bound, &opts),
        Style::Carousel => decide_bv_carousel(&f, a.bound, &opts),
    };
    match result {
        Ok(r) => {
            report.detail("states", r.states);
            report.budget(a.solve.budget, "states", false);
            match r.counterexample {
                Some(w) => {
                    report.verdict("UNBOUNDED", Answer::No);
                    if let Some(k) = r.witness {
                        report.detail("window_start", k);
                    }
                    report.emit(a.solve.witness.as_deref(), w.to_string())?;
                }
                None => report.verdict("BOUNDED", Answer::Yes),
            }
        }
        Err(e) => budget_exhausted(&mut report, a.solve.budget, e)?,
    }
    ctx.finish(report)
}

fn cmd_reduce(ctx: &Ctx, text: &str) -> anyhow::Result<i32> {
    let f = ctx.formula(text)?;
    let b = reduce_sat_to_bv(&f);
    let mut report = RunReport::new("reduce").input("formula", &f);
    report.detail("v", b.v);
    report.detail("V", b.big_v);
    report.verdict(&b.to_string(), Answer::Yes);
    ctx.finish(report)
}

fn cmd_corpus(ctx: &Ctx, cmd: &CorpusCommand) -> anyhow::Result<i32> {
    let mut report = RunReport::new("corpus");
    let mut out = String::new();
    match cmd {
        CorpusCommand::Formulas { max_size } => {
            let config = CorpusConfig { max_size: *max_size, ..CorpusConfig::standard() };
            let formulas = enumerate_formulas(&config);
            report = report.input("max_size", max_size);
            report.detail("count", formulas.len());
            for f in &formulas {
                out += &format!("{f}\n");
            }
        }
        CorpusCommand::Words { count, max_gap } => {
            if *max_gap == 0 {
                bail!("--max-gap must be positive");
            }
            let mut config = RandomWordConfig { max_gap: *max_gap, ..RandomWordConfig::default() };
            if let Some(a) = &ctx.alphabet {
                config.atoms = a.iter().map(|x| x.to_string()).collect();
            }
            if config.atoms.is_empty() {
                bail!("the alphabet is empty");
            }
            let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
            report = report.input("seed", ctx.seed).input("count", count);
            for i in 0..*count {
                if i > 0 {
                    out += "\n";
                }
                out += &random_lasso_word(&mut rng, &config).to_string();
            }
        }
    }
    report.verdict("DONE", Answer::Yes);
    report.emit(None, out)?;
    ctx.finish(report)
}

fn run(cli: Cli) -> anyhow::Result<i32> {
    let alphabet = match &cli.alphabet {
        Some(names) => {
            let mut a = Alphabet::new();
            for n in names.iter().map(|n| n.trim()).filter(|n| !n.is_empty()) {
                if !mtl_bv::syntax::is_valid_atom_name(n) {
                    bail!("invalid proposition name {n:?}");
                }
                a.insert(Atom::new(n));
            }
            Some(a)
        }
        None => None,
    };
    let ctx = Ctx { alphabet, seed: cli.seed, format: cli.format, started: cli.timing.then(Instant::now) };
    match &cli.command {
        Command::Check { word, formula } => cmd_check(&ctx, word, formula),
        Command::Sat { formula, solve, hoa } => cmd_sat(&ctx, formula, solve, hoa.as_deref()),
        Command::Valid { formula, solve } => cmd_valid(&ctx, formula, solve),
        Command::Bv { formula, v, big_v, solve, fastpath, fastpath_only, style } => {
            if *big_v == 0 {
                bail!("the window V must be positive");
            }
            let args = BvArgs {
                text: formula,
                bound: VariabilityBound::new(*v, *big_v),
                solve,
                fastpath: *fastpath,
                fastpath_only: *fastpath_only,
                style: *style,
            };
            cmd_bv(&ctx, args)
        }
        Command::Reduce { formula } => cmd_reduce(&ctx, formula),
        Command::Machine(cmd) => machine::run(&ctx, cmd),
        Command::Corpus(cmd) => cmd_corpus(&ctx, cmd),
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let code = run(cli).unwrap_or_else(|e| {
        eprintln!("error: {e:#}");
        EXIT_ERROR
    });
    std::process::exit(code);
}
