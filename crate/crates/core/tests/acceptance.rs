//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the report is always printed. The
//! process exits non-zero if any criterion fails.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::{RngExt, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

use vizing_core::block::{
    audit_observation, audit_trace, default_partitions, verify_observation, Certifier, Outcome,
};
use vizing_core::experiments::{
    corollary_sweep, dryer_probability, exhaustive_over, labeled_graphs, to_csv, with_jobs, ExperimentConfig,
    DEFAULT_SEED,
};
use vizing_core::random::gnp_from_rng;
use vizing_core::solver::{enumerate_minimum_dominating_sets, SolverConfig};
use vizing_core::{cartesian_product, gamma_bruteforce, gamma_exact, Graph};

/// Diagnostic outcomes over ordered pairs of labeled graphs with at most
/// four vertices, canonical D, inside the order condition.
const PINNED_DIAGNOSTICS_PAIRS: usize = 107;
/// Diagnostic outcomes over the observation-suite engine runs.
const PINNED_DIAGNOSTICS_OBSERVATION: usize = 5;
/// Successes for p = 0.5, epsilon = 0.5, n = 300, 1000 trials, seed 20261017.
const PINNED_DRYER_SUCCESSES: usize = 969;

type Check = Result<String, String>;

fn rng(seed: u64) -> Xoshiro256PlusPlus {
    Xoshiro256PlusPlus::seed_from_u64(seed)
}

/// Domination number by scanning every vertex subset as a bitmask.
fn oracle_gamma(g: &Graph) -> usize {
    let n = g.n();
    assert!(n <= 20);
    let nbhd: Vec<u32> = (0..n)
        .map(|v| (0..n).filter(|&u| u == v || g.has_edge(u, v)).fold(0, |m, u| m | 1 << u))
        .collect();
    let full: u32 = (1 << n) - 1;
    (0u32..=full)
        .filter(|s| {
            let covered = (0..n).filter(|v| s >> v & 1 == 1).fold(0, |m, v| m | nbhd[v]);
            covered == full
        })
        .map(|s| s.count_ones() as usize)
        .min()
        .unwrap_or(0)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let five: Vec<Graph> = labeled_graphs(5)
        .map_err(|e| e.to_string())?
        .into_iter()
        .filter(|g| g.n() == 5)
        .collect();
    ensure(five.len() == 1024, || format!("{} graphs on 5 vertices", five.len()))?;
    let mut r = rng(1);
    let random: Vec<Graph> = (0..500)
        .map(|_| {
            let n = r.random_range(6..=12);
            let p = r.random_range(0.05..0.95);
            gnp_from_rng(n, p, &mut r).unwrap()
        })
        .collect();
    let mut compared = 0;
    for g in five.iter().chain(&random) {
        let exact = gamma_exact(g).map_err(|e| e.to_string())?;
        let brute = gamma_bruteforce(g).map_err(|e| e.to_string())?.gamma;
        let oracle = oracle_gamma(g);
        ensure(exact.gamma == brute && brute == oracle, || {
            format!("gamma mismatch on {}: exact {} brute {brute} oracle {oracle}", vizing_core::emit_graph6(g), exact.gamma)
        })?;
        ensure(g.is_dominating(&exact.witness).unwrap() && exact.witness.len() == exact.gamma, || {
            "witness is not a minimum dominating set".into()
        })?;
        compared += 1;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("{compared} graphs, 0 mismatches, {elapsed:.2?}"))
}

struct PairCorpus {
    report: vizing_core::experiments::ExhaustiveReport,
    elapsed: Duration,
}

fn criterion_2(corpus: &[Graph], run: &PairCorpus) -> Check {
    let s = &run.report.summary;
    ensure(s.pairs == corpus.len() * corpus.len() && s.skipped_pairs == 0, || {
        format!("{} pairs checked", s.pairs)
    })?;
    for row in &run.report.rows {
        let (a, b, c) = (row.gamma_g, row.gamma_h, row.gamma_prod);
        ensure(row.vizing == (c >= a * b), || "vizing flag disagrees with the integers".into())?;
        ensure(row.suen_tarr == (2 * c >= a * b + a.min(b)), || "Suen-Tarr flag disagrees".into())?;
    }
    // Re-solve a spread of products with the bitmask oracle.
    let mut resolved = 0;
    for row in run.report.rows.iter().step_by(29) {
        let pg = cartesian_product(&corpus[row.g_id], &corpus[row.h_id]).unwrap();
        ensure(oracle_gamma(&pg.graph) == row.gamma_prod, || {
            format!("gamma(G x H) mismatch for pair ({}, {})", row.g_id, row.h_id)
        })?;
        ensure(oracle_gamma(&corpus[row.g_id]) == row.gamma_g, || "gamma(G) mismatch".into())?;
        resolved += 1;
    }
    ensure(s.vizing_violations == 0 && s.suen_tarr_violations == 0, || {
        format!("{} Vizing, {} Suen-Tarr violations", s.vizing_violations, s.suen_tarr_violations)
    })?;
    ensure(run.elapsed < Duration::from_secs(600), || format!("took {:?}", run.elapsed))?;
    Ok(format!(
        "{} ordered pairs, 0 Vizing and 0 Suen-Tarr violations, {resolved} products re-solved by the oracle, {:.2?}",
        s.pairs, run.elapsed
    ))
}

fn criterion_3(corpus: &[Graph], run: &PairCorpus) -> Check {
    let mut in_scope = 0;
    for row in &run.report.rows {
        let (g, h) = (&corpus[row.g_id], &corpus[row.h_id]);
        let product = row.gamma_g * row.gamma_h;
        let condition = g.n() >= product && h.n() >= product;
        ensure(condition == row.condition, || "order condition flag disagrees".into())?;
        if condition {
            in_scope += 1;
            ensure(row.gamma_prod >= product, || format!("pair ({}, {}) violates", row.g_id, row.h_id))?;
        }
    }
    ensure(in_scope == run.report.summary.condition_pairs, || "condition count disagrees".into())?;
    Ok(format!(
        "{in_scope} of {} pairs satisfy the order condition; all satisfy the inequality",
        run.report.rows.len()
    ))
}

#[derive(Default)]
struct EngineTally {
    runs: usize,
    outcomes: BTreeMap<&'static str, usize>,
    failures: Vec<String>,
}

impl EngineTally {
    fn record(&mut self, pg: &vizing_core::ProductGraph, c: &Certifier, d: &vizing_core::VertexSet) {
        let trace = match c.run(d) {
            Ok(t) => t,
            Err(e) => return self.failures.push(format!("engine error: {e}")),
        };
        self.runs += 1;
        *self.outcomes.entry(trace.outcome.as_str()).or_default() += 1;
        let audit = audit_trace(&trace, pg, d);
        if !audit.passed {
            self.failures.push(format!("audit: {}", audit.failure.unwrap_or_default()));
        }
        if trace.certified_count > d.len() {
            self.failures.push("certified_count exceeds |D|".into());
        }
        if trace.outcome.is_certified() && trace.certified_count < trace.gamma_g * trace.gamma_h {
            self.failures.push("certified_count below gamma(G)gamma(H)".into());
        }
        if trace.outcome == Outcome::DiagnosticFailure && trace.diagnostic.is_none() {
            self.failures.push("diagnostic outcome without a logged diagnostic".into());
        }
    }

    fn diagnostics(&self) -> usize {
        self.outcomes.get(Outcome::DiagnosticFailure.as_str()).copied().unwrap_or(0)
    }
}

fn criterion_4(tally: &mut EngineTally) -> Check {
    let mut r = rng(4);
    let (mut instances, mut sets, mut blocks, mut witnesses) = (0, 0, 0, 0);
    while instances < 200 {
        let (ng, nh) = (r.random_range(1..=5), r.random_range(1..=5));
        if ng * nh > 24 {
            continue;
        }
        let p = r.random_range(0.1..0.9);
        let g = gnp_from_rng(ng, p, &mut r).unwrap();
        let h = gnp_from_rng(nh, p, &mut r).unwrap();
        instances += 1;
        let (gg, gh) = (gamma_exact(&g).unwrap().gamma, gamma_exact(&h).unwrap().gamma);
        let pg = cartesian_product(&g, &h).unwrap();
        let gp = gamma_exact(&pg.graph).unwrap().gamma;
        let (pgp, php) = default_partitions(&g, &h, gg, gh).map_err(|e| e.to_string())?;
        let certifier = Certifier::from_parts(pg.clone(), gg, gh, gp, SolverConfig::default()).ok();
        for d in enumerate_minimum_dominating_sets(&pg.graph, usize::MAX).map_err(|e| e.to_string())? {
            sets += 1;
            let report = verify_observation(&pg, &d, &pgp, &php).map_err(|e| e.to_string())?;
            ensure(report.holds(), || format!("unlabelled block {:?}", report.failure))?;
            let audit = audit_observation(&pg, &d, &pgp, &php, &report);
            ensure(audit.passed, || format!("witness audit: {:?}", audit.failure))?;
            blocks += report.labels.len();
            witnesses += report.labels.iter().filter(|l| l.witness.is_some()).count();
            if let Some(c) = &certifier {
                tally.record(&pg, c, &d);
            }
        }
    }
    Ok(format!(
        "{instances} instances, {sets} minimum dominating sets, {blocks} blocks labelled, {witnesses} H-cell witnesses audited"
    ))
}

fn criterion_5(pairs: &PairCorpus, corpus: &[Graph], observation: &EngineTally) -> Check {
    let mut tally = EngineTally::default();
    for row in pairs.report.rows.iter().filter(|r| r.condition) {
        let (g, h) = (&corpus[row.g_id], &corpus[row.h_id]);
        let pg = cartesian_product(g, h).unwrap();
        let d = gamma_exact(&pg.graph).unwrap().witness;
        let c = Certifier::from_parts(pg.clone(), row.gamma_g, row.gamma_h, row.gamma_prod, SolverConfig::default())
            .map_err(|e| e.to_string())?;
        tally.record(&pg, &c, &d);
    }
    for t in [&tally, observation] {
        ensure(t.failures.is_empty(), || t.failures[0].clone())?;
    }
    ensure(tally.diagnostics() == PINNED_DIAGNOSTICS_PAIRS, || {
        format!("{} diagnostics on the pair corpus, pinned {PINNED_DIAGNOSTICS_PAIRS}", tally.diagnostics())
    })?;
    ensure(observation.diagnostics() == PINNED_DIAGNOSTICS_OBSERVATION, || {
        format!(
            "{} diagnostics on the observation suite, pinned {PINNED_DIAGNOSTICS_OBSERVATION}",
            observation.diagnostics()
        )
    })?;
    Ok(format!(
        "{} engine runs audited; outcomes {:?} (pairs) and {:?} (observation suite)",
        tally.runs + observation.runs,
        tally.outcomes,
        observation.outcomes
    ))
}

fn criterion_6() -> Check {
    let start = Instant::now();
    let row = dryer_probability(&ExperimentConfig::dryer(300, 0.5, 0.5, 1000, DEFAULT_SEED)).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(row.t == 13, || format!("t = {}", row.t))?;
    ensure(row.phat >= 0.95, || format!("phat = {}", row.phat))?;
    ensure(row.successes == PINNED_DRYER_SUCCESSES, || {
        format!("{} successes, pinned {PINNED_DRYER_SUCCESSES}", row.successes)
    })?;
    ensure(elapsed < Duration::from_secs(30), || format!("took {elapsed:?}"))?;
    let trend: Vec<f64> = [50, 150, 300]
        .iter()
        .map(|&n| dryer_probability(&ExperimentConfig::dryer(n, 0.5, 0.5, 1000, DEFAULT_SEED)).unwrap().phat)
        .collect();
    ensure(trend.windows(2).all(|w| w[1] >= w[0] - 0.05), || format!("trend {trend:?}"))?;
    Ok(format!(
        "phat = {:.3} ({}/1000), Wilson [{:.3}, {:.3}], {elapsed:.2?}; n = 50, 150, 300 gives {trend:?}",
        row.phat, row.successes, row.wilson_lo, row.wilson_hi
    ))
}

fn criterion_7() -> Check {
    let mut r = rng(7);
    for _ in 0..100 {
        let (ng, nh) = (r.random_range(1..=12), r.random_range(1..=12));
        let (pg_, ph) = (r.random_range(0.0..1.0), r.random_range(0.0..1.0));
        let g = gnp_from_rng(ng, pg_, &mut r).unwrap();
        let h = gnp_from_rng(nh, ph, &mut r).unwrap();
        let pg = cartesian_product(&g, &h).unwrap();
        let n = pg.graph.n();
        ensure(n == ng * nh, || "vertex count".into())?;
        ensure(pg.graph.edge_count() == ng * h.edge_count() + nh * g.edge_count(), || "edge count".into())?;
        for x in 0..n {
            let (u, v) = (x / nh, x % nh);
            ensure(pg.graph.degree(x) == g.degree(u) + h.degree(v), || "degree identity".into())?;
            for y in 0..n {
                let (a, b) = (y / nh, y % nh);
                let expected = (u == a && h.has_edge(v, b)) || (v == b && g.has_edge(u, a));
                ensure(pg.graph.has_edge(x, y) == expected, || format!("adjacency of {x}, {y}"))?;
            }
        }
    }
    Ok("100 random pairs: order, size, degrees and adjacency match the definition".into())
}

fn criterion_8() -> Check {
    let mut sweep = ExperimentConfig::corollary(2, 20, 0.5, 300, DEFAULT_SEED);
    sweep.g_cap = 24;
    let dryer = ExperimentConfig::dryer(120, 0.5, 0.5, 300, DEFAULT_SEED);
    let corpus = labeled_graphs(3).unwrap();
    let render = |jobs| {
        with_jobs(jobs, || {
            (
                to_csv(&corollary_sweep(&sweep).unwrap()),
                to_csv(&[dryer_probability(&dryer).unwrap()]),
                to_csv(&exhaustive_over(&corpus).unwrap().rows),
            )
        })
        .unwrap()
    };
    let baseline = render(Some(1));
    for jobs in [Some(1), Some(8), None] {
        ensure(render(jobs) == baseline, || format!("output changed with jobs = {jobs:?}"))?;
    }
    Ok(format!(
        "sweep, dryer and exhaustive CSV byte-identical across repeats and 1/8/default threads ({} bytes)",
        baseline.0.len() + baseline.1.len() + baseline.2.len()
    ))
}

fn main() {
    let corpus = labeled_graphs(4).unwrap();
    let start = Instant::now();
    let report = exhaustive_over(&corpus).unwrap();
    let pairs = PairCorpus {
        report,
        elapsed: start.elapsed(),
    };
    let mut observation = EngineTally::default();

    let results: Vec<(&str, Check)> = vec![
        ("1 oracle equivalence", criterion_1()),
        ("2 inequality sweep", criterion_2(&corpus, &pairs)),
        ("3 order-condition scope", criterion_3(&corpus, &pairs)),
        ("4 observation suite", criterion_4(&mut observation)),
        ("5 certificate soundness", criterion_5(&pairs, &corpus, &observation)),
        ("6 Dryer experiment", criterion_6()),
        ("7 product identities", criterion_7()),
        ("8 determinism", criterion_8()),
    ];
    let mut failed = 0;
    for (name, result) in &results {
        match result {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
