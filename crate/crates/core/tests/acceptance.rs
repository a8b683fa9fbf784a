//! Acceptance run: ten criteria, one PASS/FAIL line each.
//!
//! Built without the libtest harness so the report is printed even when
//! every criterion passes. Exits nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mtl_bv::corpus::{enumerate_formulas, random_lasso_word, CorpusConfig, RandomWordConfig};
use mtl_bv::decision::{build_bound_formula, fastpath_bv, BoundStyle, FastVerdict};
use mtl_bv::machines::{
    decode_word, encode_computation, encode_overflow, halts_within, overflows_within, random_computation,
    random_machine, transform_halting_to_bounded,
};
use mtl_bv::semantics::{BruteForceBounds, DiscreteEvaluator};
use mtl_bv::syntax::{alphabet, classify_fragment, constant_product, gap_bound, parse_formula_any, restrict_time};
use mtl_bv::words::{enumerate_lasso_words, Event};
use mtl_bv::{
    brute_force_sat, decide_bv, eval_dense_existential, eval_discrete, ltl_sat, mtl_sat_discrete,
    reduce_sat_to_bv, translate_to_ltl, Alphabet, BvVerdict, DenseTime, DiscreteLassoWord, Formula, SatResult,
    SolveOptions, VariabilityBound,
};

const RUNTIME_LIMIT: Duration = Duration::from_secs(600);
const SMALL_STEM: usize = 3;
const SMALL_LOOP: usize = 3;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome { pass, detail: detail.into() }
    }
}

/// Pipeline and oracle verdicts over the exhaustive corpus, shared by the
/// corpus-based criteria.
struct CorpusRun {
    sigma: Alphabet,
    opts: SolveOptions,
    formulas: Vec<Formula>,
    pipeline: Vec<SatResult>,
    oracle: Vec<bool>,
    escalated: usize,
    pipeline_time: Duration,
    oracle_time: Duration,
}

fn small_gap_cap(f: &Formula) -> u64 {
    f.max_constant().unwrap_or(0) + 1
}

/// Brute-force verdict. Gaps are capped at `K + 1`; a longer stem or loop
/// is tried when the pipeline has a model the small search missed, sized
/// after that model's shape.
fn oracle_verdict(f: &Formula, sigma: &Alphabet, pipeline: &SatResult) -> (bool, bool) {
    let small = BruteForceBounds { max_stem: SMALL_STEM, max_loop: SMALL_LOOP, max_gap: small_gap_cap(f) };
    if brute_force_sat(f, sigma, small).is_found() {
        return (true, false);
    }
    let Some(model) = &pipeline.model else {
        return (false, false);
    };
    let wider = BruteForceBounds {
        max_stem: model.stem_len().max(SMALL_STEM),
        max_loop: model.loop_len().max(SMALL_LOOP),
        ..small
    };
    (brute_force_sat(f, sigma, wider).is_found(), true)
}

impl CorpusRun {
    fn compute() -> Self {
        let sigma = alphabet(["p", "q"]);
        let opts = SolveOptions { alphabet: Some(sigma.clone()), ..SolveOptions::default() };
        let formulas = enumerate_formulas(&CorpusConfig::standard());
        let start = Instant::now();
        let pipeline: Vec<SatResult> = formulas
            .iter()
            .map(|f| mtl_sat_discrete(f, &opts).unwrap_or_else(|e| panic!("pipeline failed on {f}: {e}")))
            .collect();
        let pipeline_time = start.elapsed();
        let start = Instant::now();
        let mut escalated = 0;
        let oracle = formulas
            .iter()
            .zip(&pipeline)
            .map(|(f, r)| {
                let (found, wider) = oracle_verdict(f, &sigma, r);
                escalated += usize::from(wider);
                found
            })
            .collect();
        let oracle_time = start.elapsed();
        CorpusRun { sigma, opts, formulas, pipeline, oracle, escalated, pipeline_time, oracle_time }
    }

    fn sat_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.formulas.len()).filter(|&i| self.oracle[i])
    }
}

/// The same word with every gap `t_{k+1} - t_k` lowered to at most `cap`.
fn clamp_gaps(w: &DiscreteLassoWord, cap: u64) -> DiscreteLassoWord {
    let n = w.canonical_len();
    let mut times = vec![0u64];
    for k in 0..n {
        times.push(times[k] + w.gap(k).min(cap));
    }
    let s = w.stem_len();
    let stem = (0..s).map(|k| Event::new(w.props(k).clone(), times[k])).collect();
    let cycle = (s..n).map(|k| Event::new(w.props(k).clone(), times[k] - times[s])).collect();
    DiscreteLassoWord::new(stem, cycle, times[n] - times[s], times[s]).expect("clamping keeps the word well formed")
}

fn criterion_1(run: &CorpusRun) -> Outcome {
    let bad: Vec<String> = (0..run.formulas.len())
        .filter(|&i| run.pipeline[i].is_sat() != run.oracle[i])
        .map(|i| format!("{} (pipeline {})", run.formulas[i], run.pipeline[i].is_sat()))
        .collect();
    let total = run.pipeline_time + run.oracle_time;
    let sat = run.pipeline.iter().filter(|r| r.is_sat()).count();
    Outcome::new(
        bad.is_empty() && total <= RUNTIME_LIMIT,
        format!(
            "{} formulas, {sat} SAT, {} discrepancies (tolerance 0), {} escalated searches; \
             pipeline {:.1}s + brute force {:.1}s = {:.1}s (limit {}s){}",
            run.formulas.len(),
            bad.len(),
            run.escalated,
            run.pipeline_time.as_secs_f64(),
            run.oracle_time.as_secs_f64(),
            total.as_secs_f64(),
            RUNTIME_LIMIT.as_secs(),
            bad.first().map(|b| format!("; first: {b}")).unwrap_or_default(),
        ),
    )
}

fn criterion_2(run: &CorpusRun) -> Outcome {
    // Capping at δ_f only removes words, so UNSAT verdicts stand. For every
    // SAT formula the pipeline model, with its gaps lowered to δ_f, must
    // remain a model; on random wide-gap words, lowering gaps to δ_f must not
    // change the truth value at 0.
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let wide = RandomWordConfig { max_gap: 12, ..RandomWordConfig::default() };
    let words: Vec<DiscreteLassoWord> = (0..6).map(|_| random_lasso_word(&mut rng, &wide)).collect();
    let (mut model_failures, mut word_failures, mut product_failures) = (Vec::new(), 0usize, 0usize);
    let mut wide_models = 0;
    for (i, f) in run.formulas.iter().enumerate() {
        let delta = gap_bound(f);
        if let Some(m) = &run.pipeline[i].model {
            let max_gap = (0..m.canonical_len()).map(|k| m.gap(k)).max().unwrap_or(0);
            wide_models += usize::from(max_gap > delta);
            if !eval_discrete(&clamp_gaps(m, delta), 0, f) {
                model_failures.push(f.to_string());
            }
            if !eval_discrete(&clamp_gaps(m, constant_product(f)), 0, f) {
                product_failures += 1;
            }
        }
        let ev = DiscreteEvaluator::new(f);
        for w in &words {
            if ev.eval_word(w)[0] != ev.eval_word(&clamp_gaps(w, delta))[0] {
                word_failures += 1;
            }
        }
    }
    Outcome::new(
        model_failures.is_empty() && word_failures == 0,
        format!(
            "δ_f = max(constant product, K+1); {} SAT models re-checked after capping ({wide_models} had wider gaps), \
             {} failures; {} formula×word clamping checks, {word_failures} changed (tolerance 0); \
             literal constant product as cap loses {product_failures} models (informational){}",
            run.pipeline.iter().filter(|r| r.is_sat()).count(),
            model_failures.len(),
            run.formulas.len() * words.len(),
            model_failures.first().map(|b| format!("; first: {b}")).unwrap_or_default(),
        ),
    )
}

fn criterion_3(run: &CorpusRun) -> Outcome {
    let mut bad = Vec::new();
    for (i, f) in run.formulas.iter().enumerate() {
        let b = reduce_sat_to_bv(f);
        let r = decide_bv(f, b, &run.opts).unwrap_or_else(|e| panic!("decide_bv failed on {f}: {e}"));
        if (r.verdict == BvVerdict::Unbounded) != run.oracle[i] {
            bad.push(format!("{f} with {b}"));
        }
    }
    Outcome::new(
        bad.is_empty(),
        format!(
            "{} formulas, {} discrepancies between sat(f) and decide_bv(f, 0, δ_f) = UNBOUNDED (tolerance 0){}",
            run.formulas.len(),
            bad.len(),
            bad.first().map(|b| format!("; first: {b}")).unwrap_or_default(),
        ),
    )
}

fn criterion_4() -> Outcome {
    let ev = |name: &str, t| Event::named([name], t);
    let wave = DiscreteLassoWord::new(vec![ev("p", 0), ev("q", 3)], vec![ev("p", 0), ev("q", 3)], 10, 10)
        .expect("square wave is well formed");
    let three = wave.check_variability(VariabilityBound::new(3, 10));
    let two = wave.check_variability(VariabilityBound::new(2, 10));
    // Rising edge p every 10 units, falling edge q 3 units after it.
    let wave_formula = parse_formula_any("p & X[3,3] q & G(p -> X[3,3] q) & G(q -> X[7,7] p)").expect("formula parses");
    let opts = SolveOptions { alphabet: Some(alphabet(["p", "q"])), ..SolveOptions::default() };
    let holds = eval_discrete(&wave, 0, &wave_formula);
    let bounded = decide_bv(&wave_formula, VariabilityBound::new(3, 10), &opts).expect("decide_bv");
    let unbounded = decide_bv(&wave_formula, VariabilityBound::new(2, 10), &opts).expect("decide_bv");
    let pass = three.bounded
        && !two.bounded
        && two.witness == Some(0)
        && holds
        && bounded.verdict == BvVerdict::Bounded
        && unbounded.verdict == BvVerdict::Unbounded;
    Outcome::new(
        pass,
        format!(
            "check 3/10 bounded={}, check 2/10 bounded={} witness={:?}; word satisfies `{wave_formula}`: {holds}; \
             decide_bv 3/10 = {:?} ({} states), 2/10 = {:?} witness {:?}",
            three.bounded, two.bounded, two.witness, bounded.verdict, bounded.states, unbounded.verdict,
            unbounded.witness,
        ),
    )
}

fn criterion_5() -> Outcome {
    let all: Vec<DiscreteLassoWord> = enumerate_lasso_words(&alphabet(["p"]), 3, 3, 4).collect();
    let stride = (all.len() / 1000).max(1);
    let words: Vec<&DiscreteLassoWord> = all.iter().step_by(stride).take(1000).collect();
    let (mut checks, mut bad, mut bounded) = (0, Vec::new(), 0);
    for v in 0..=4 {
        for big_v in 1..=6 {
            let b = VariabilityBound::new(v, big_v);
            let ev = DiscreteEvaluator::new(&build_bound_formula(b, BoundStyle::Counting));
            for w in &words {
                let expected = w.check_variability(b).bounded;
                checks += 1;
                bounded += usize::from(expected);
                if ev.eval_word(w)[0] != expected {
                    bad.push(format!("{b} on\n{w}"));
                }
            }
        }
    }
    Outcome::new(
        words.len() == 1000 && bad.is_empty(),
        format!(
            "{} words (every {stride}th of {}), v in 0..=4, V in 1..=6: {checks} checks, {bounded} bounded, \
             {} mismatches (tolerance 0){}",
            words.len(),
            all.len(),
            bad.len(),
            bad.first().map(|b| format!("; first: {b}")).unwrap_or_default(),
        ),
    )
}

fn criterion_6(run: &CorpusRun) -> Outcome {
    // |τ(μ)| is the translated formula; the side constraints depend on the
    // alphabet only and are reported separately.
    let (mut count, mut bad, mut oversized) = (0, Vec::new(), Vec::new());
    let (mut worst, mut largest_side) = (0.0f64, 0);
    for (i, f) in run.formulas.iter().enumerate() {
        if !classify_fragment(f).is_fx {
            continue;
        }
        count += 1;
        let mut tr = translate_to_ltl(f, &run.sigma);
        let root = tr.formula();
        let size = tr.body_size();
        largest_side = largest_side.max(tr.size() - size);
        let limit = 1u64 << (f.size() + 3);
        worst = worst.max(size as f64 / limit as f64);
        if size as u64 > limit {
            oversized.push(format!("{f}: {size} > {limit}"));
        }
        let r = ltl_sat(&tr.arena, root, &run.opts).unwrap_or_else(|e| panic!("ltl_sat failed on {f}: {e}"));
        if r.lasso.is_some() != run.oracle[i] {
            bad.push(f.to_string());
        }
    }
    Outcome::new(
        count > 0 && bad.is_empty() && oversized.is_empty(),
        format!(
            "{count} FX formulas: {} verdict mismatches (tolerance 0), {} with |τ(μ)| over 2^(|μ|+3) \
             (largest ratio {worst:.3}; side constraints add at most {largest_side} nodes){}",
            bad.len(),
            oversized.len(),
            bad.first().or(oversized.first()).map(|b| format!("; first: {b}")).unwrap_or_default(),
        ),
    )
}

fn criterion_7(run: &CorpusRun) -> Outcome {
    // The counting bound grows with v while the GX bound only depends on
    // ⌈V/v⌉, so the larger v the more the fast path can save.
    let grid = [
        VariabilityBound::new(1, 1),
        VariabilityBound::new(1, 3),
        VariabilityBound::new(2, 3),
        VariabilityBound::new(4, 8),
    ];
    let (mut fast_bounded, mut unconfirmed, mut cheaper) = (0, Vec::new(), 0);
    let mut best: Option<(String, usize, usize)> = None;
    for (i, f) in run.formulas.iter().enumerate() {
        for &b in &grid {
            let fast = fastpath_bv(f, b, &run.opts);
            if fast.verdict != FastVerdict::Bounded {
                continue;
            }
            fast_bounded += 1;
            let full = decide_bv(f, b, &run.opts).unwrap_or_else(|e| panic!("decide_bv failed on {f}: {e}"));
            if full.verdict != BvVerdict::Bounded {
                unconfirmed.push(format!("{f} with {b}"));
                continue;
            }
            // Unsatisfiable formulas are bounded for trivial reasons.
            if run.oracle[i] && fast.states < full.states {
                cheaper += 1;
                let gain = full.states - fast.states;
                if best.as_ref().map_or(true, |(_, fs, ss)| gain > ss - fs) {
                    best = Some((format!("{f} with {b}"), fast.states, full.states));
                }
            }
        }
    }
    let logged = best
        .as_ref()
        .map(|(what, fs, ss)| format!("; largest saving: {what}, fast path {fs} states vs full path {ss}"))
        .unwrap_or_default();
    Outcome::new(
        unconfirmed.is_empty() && cheaper >= 1,
        format!(
            "{} formulas x {} bounds: {fast_bounded} fast-path BOUNDED, {} unconfirmed (tolerance 0), \
             {cheaper} satisfiable instances with fewer states than the full path (need >= 1){logged}{}",
            run.formulas.len(),
            grid.len(),
            unconfirmed.len(),
            unconfirmed.first().map(|b| format!("; first unconfirmed: {b}")).unwrap_or_default(),
        ),
    )
}

fn criterion_8() -> Outcome {
    const BUDGET: usize = 200;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut halting, mut bad) = (0, Vec::new());
    for _ in 0..50 {
        let counters = rng.gen_range(1..=2);
        let m = random_machine(&mut rng, 6, counters);
        let halts = halts_within(&m, BUDGET);
        halting += usize::from(halts);
        if halts != overflows_within(&transform_halting_to_bounded(&m), 0, BUDGET + 1) {
            bad.push(m.to_string());
        }
    }
    Outcome::new(
        bad.is_empty(),
        format!(
            "50 machines, {halting} halt within {BUDGET} steps, {} discrepancies (tolerance 0){}",
            bad.len(),
            bad.first().map(|b| format!("; first:\n{b}")).unwrap_or_default(),
        ),
    )
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (zero, one) = (DenseTime::zero(), DenseTime::one());
    let (mut xi_checks, mut bad) = (0, Vec::new());
    let mut largest = 0;
    for _ in 0..50 {
        let m = random_machine(&mut rng, 6, 2);
        let chi = random_computation(&m, &mut rng, 24);
        let max = chi.max_counters();
        largest = largest.max(max[0].max(max[1]));
        let w = encode_computation(&chi).expect("two counters");
        for beta in 0..=3 {
            xi_checks += 1;
            let xi = encode_overflow(beta, m.len());
            let holds = eval_dense_existential(&w, &zero, &xi).expect("Ξ is existential");
            if holds != (max[0] > beta) {
                bad.push(format!("Ξ_{beta} on {chi}"));
            }
        }
        let expected = (max[0].max(max[1]) as usize).max(1);
        if w.max_window_count(&one) != expected {
            bad.push(format!("max_window_count on {chi}"));
        }
        if decode_word(&w, &m).as_ref() != Ok(&chi) {
            bad.push(format!("decode on {chi}"));
        }
    }
    Outcome::new(
        bad.is_empty(),
        format!(
            "50 computations (largest counter {largest}): {xi_checks} Ξ_β checks, window counts, round trips; \
             {} discrepancies (tolerance 0){}",
            bad.len(),
            bad.first().map(|b| format!("; first: {b}")).unwrap_or_default(),
        ),
    )
}

fn criterion_10(run: &CorpusRun) -> Outcome {
    let sat: Vec<usize> = run.sat_indices().collect();
    let stride = (sat.len() / 20).max(1);
    let mut sigma = run.sigma.clone();
    sigma.extend(alphabet(["e", "idle"]));
    let opts = SolveOptions { alphabet: Some(sigma), ..run.opts.clone() };
    let (mut models, mut unsat, mut bad) = (0, 0, Vec::new());
    for (n, &i) in sat.iter().step_by(stride).take(20).enumerate() {
        let f = &run.formulas[i];
        let horizon = 1 + n as u64 % 3;
        let g = restrict_time(f, horizon, &run.sigma).expect("no name clash");
        let r = mtl_sat_discrete(&g, &opts).unwrap_or_else(|e| panic!("pipeline failed on {g}: {e}"));
        let Some(model) = r.model else {
            unsat += 1;
            continue;
        };
        models += 1;
        let late = (0..model.canonical_len() + model.loop_len())
            .filter(|&k| model.time(k) > horizon)
            .any(|k| model.props(k).iter().any(|a| run.sigma.contains(a)));
        if late {
            bad.push(format!("{f} with T = {horizon}"));
        }
    }
    Outcome::new(
        models >= 1 && bad.is_empty(),
        format!(
            "20 satisfiable formulas, T in 1..=3: {models} models extracted, {unsat} restrictions unsatisfiable, \
             {} models with a proposition after T (tolerance 0){}",
            bad.len(),
            bad.first().map(|b| format!("; first: {b}")).unwrap_or_default(),
        ),
    )
}

fn main() {
    let start = Instant::now();
    let run = CorpusRun::compute();
    type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;
    let criteria: Vec<(&str, Check)> = vec![
        ("oracle equivalence", Box::new(|| criterion_1(&run))),
        ("small-gap property", Box::new(|| criterion_2(&run))),
        ("satisfiability as bounded variability", Box::new(|| criterion_3(&run))),
        ("square wave", Box::new(criterion_4)),
        ("counting bound exactness", Box::new(criterion_5)),
        ("LTL translation fidelity", Box::new(|| criterion_6(&run))),
        ("fast-path soundness", Box::new(|| criterion_7(&run))),
        ("counter-machine reduction", Box::new(criterion_8)),
        ("overflow gadget and encoding", Box::new(criterion_9)),
        ("time restriction", Box::new(|| criterion_10(&run))),
    ];
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|e| Outcome::new(false, format!("panicked: {e:?}")));
        failed += usize::from(!outcome.pass);
        let verdict = if outcome.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {verdict} {name} [{:.1}s]: {}", n + 1, t.elapsed().as_secs_f64(), outcome.detail);
    }
    println!("acceptance: {} of {} passed in {:.1}s", criteria.len() - failed, criteria.len(), start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
