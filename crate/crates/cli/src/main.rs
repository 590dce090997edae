//! `vizing`: command-line driver for the verification toolkit.
//!
//! Exit status 0 means success, 1 means a finding (an inequality
//! violation, a failed audit or a failed observation), and 2 means bad
//! usage or bad input. Errors are printed to stderr prefixed with `error:`.

mod input;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use vizing_core::block::{
    audit_observation, audit_trace, certify_with_retry, default_partitions, verify_observation, Certifier,
};
use vizing_core::experiments::{
    corollary_sweep, dryer_probability, exhaustive_pairs, summarize_buckets, to_csv, with_jobs,
    ExperimentConfig, DEFAULT_SEED,
};
use vizing_core::solver::{SolverConfig, DEFAULT_NODE_BUDGET};
use vizing_core::verify::check_pair_with;
use vizing_core::{cartesian_product, emit_edgelist, emit_graph6, gamma_exact_with, Error};

use input::{read_corpus, read_graph, Format};

#[derive(Parser)]
#[command(name = "vizing", version, about = "Instance-level checks of Vizing's inequality")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GraphInput {
    /// Input format; inferred from the extension (.g6, .el) when omitted.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Node budget for the branch-and-bound solver.
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
}

impl GraphInput {
    fn solver(&self) -> SolverConfig {
        SolverConfig {
            node_budget: self.budget,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the domination number and a minimum dominating set.
    Gamma {
        file: PathBuf,
        #[command(flatten)]
        input: GraphInput,
    },
    /// Write the Cartesian product of two graphs.
    Product {
        g: PathBuf,
        h: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Output format; inferred from the output extension, graph6 otherwise.
        #[arg(long, value_enum)]
        out_format: Option<Format>,
        #[command(flatten)]
        input: GraphInput,
    },
    /// Compute all three domination numbers and check the bounds.
    CheckPair {
        g: PathBuf,
        h: PathBuf,
        /// Edge probability for the order-bound check.
        #[arg(long)]
        p: Option<f64>,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        input: GraphInput,
    },
    /// Run the re-partitioning certificate and audit it.
    Certify {
        g: PathBuf,
        h: PathBuf,
        /// Where to write the JSON trace.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// On a diagnostic, retry with other minimum dominating sets.
        #[arg(long)]
        all_mds_retry: bool,
        /// Most dominating sets tried by --all-mds-retry.
        #[arg(long, default_value_t = 10_000)]
        retry_limit: usize,
        #[command(flatten)]
        input: GraphInput,
    },
    /// Label every block of the default partitions for the canonical D.
    Observation {
        g: PathBuf,
        h: PathBuf,
        #[command(flatten)]
        input: GraphInput,
    },
    /// Probability that a random small set dominates G(n, p).
    Dryer {
        /// Vertex counts; one row per value.
        #[arg(long, num_args = 1.., required = true)]
        n: Vec<usize>,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 0.5)]
        epsilon: f64,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Sample pairs inside the order bound and record the order condition.
    Sweep {
        #[arg(long, default_value_t = 20)]
        h_min: usize,
        #[arg(long, default_value_t = 40)]
        h_max: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// Largest |G| sampled.
        #[arg(long, default_value_t = 60)]
        g_cap: usize,
        /// Largest product order on which the inequality is checked.
        #[arg(long, default_value_t = 64)]
        product_cap: usize,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Check every ordered pair of small labeled graphs or of a graph6 corpus.
    Exhaustive {
        /// Enumerate labeled graphs with up to this many vertices.
        #[arg(long, default_value_t = 3, conflicts_with = "corpus")]
        max_n: usize,
        /// graph6 file with one graph per line.
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Worker threads; output does not depend on it.
    #[arg(long)]
    jobs: Option<usize>,
    /// CSV destination; stdout when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

enum Failure {
    Finding(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Finding(msg)) => {
            eprintln!("error: finding: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Gamma { file, input } => {
            let g = read_graph(&file, input.format)?;
            let r = gamma_exact_with(&g, &input.solver())?;
            println!("gamma={}", r.gamma);
            println!("witness={}", join(r.witness.iter()));
            println!("nodes={}", r.nodes_explored);
            Ok(())
        }
        Command::Product {
            g,
            h,
            output,
            out_format,
            input,
        } => {
            let (g, h) = (read_graph(&g, input.format)?, read_graph(&h, input.format)?);
            let pg = cartesian_product(&g, &h)?;
            let text = match out_format.or_else(|| Format::from_path(&output)).unwrap_or(Format::G6) {
                Format::G6 => emit_graph6(&pg.graph) + "\n",
                Format::El => emit_edgelist(&pg.graph),
            };
            fs::write(&output, text)?;
            Ok(())
        }
        Command::CheckPair { g, h, p, json, input } => {
            let (g, h) = (read_graph(&g, input.format)?, read_graph(&h, input.format)?);
            let r = check_pair_with(&g, &h, &input.solver(), p)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&r).expect("report serializes"));
            } else {
                println!("gamma_g={}", r.gamma_g);
                println!("gamma_h={}", r.gamma_h);
                println!("gamma_product={}", r.gamma_product);
                println!("vizing={}", r.vizing_holds);
                println!("suen_tarr={}", r.suen_tarr_holds);
                println!("theorem_condition={}", r.theorem_condition);
                if let Some(b) = r.corollary_bound_holds {
                    println!("corollary_bound={b}");
                }
            }
            if !r.vizing_holds || !r.suen_tarr_holds {
                return Err(Failure::Finding(format!(
                    "gamma(GxH) = {} against gamma(G) = {}, gamma(H) = {}",
                    r.gamma_product, r.gamma_g, r.gamma_h
                )));
            }
            Ok(())
        }
        Command::Certify {
            g,
            h,
            output,
            all_mds_retry,
            retry_limit,
            input,
        } => {
            let (g, h) = (read_graph(&g, input.format)?, read_graph(&h, input.format)?);
            let (trace, runs) = if all_mds_retry {
                certify_with_retry(&g, &h, retry_limit)?
            } else {
                let c = Certifier::with_config(&g, &h, input.solver())?;
                (c.run(&c.canonical_d()?)?, 1)
            };
            let pg = cartesian_product(&g, &h)?;
            let audit = audit_trace(&trace, &pg, &trace.d);
            println!("outcome={}", trace.outcome.as_str());
            println!("certified_count={}", trace.certified_count);
            println!("gamma_product={}", trace.gamma_product);
            println!("rounds={}", trace.rounds.len());
            println!("runs={runs}");
            if let Some(d) = &trace.diagnostic {
                println!(
                    "diagnostic=round {} part {} missing {}: {}",
                    d.round, d.part, d.missing, d.reason
                );
            }
            println!("audit={}", if audit.passed { "passed" } else { "failed" });
            if let Some(path) = output {
                fs::write(path, trace.to_json() + "\n")?;
            }
            match audit.failure {
                Some(why) => Err(Failure::Finding(format!("trace audit failed: {why}"))),
                None => Ok(()),
            }
        }
        Command::Observation { g, h, input } => {
            let (g, h) = (read_graph(&g, input.format)?, read_graph(&h, input.format)?);
            let config = input.solver();
            let gamma_g = gamma_exact_with(&g, &config)?.gamma;
            let gamma_h = gamma_exact_with(&h, &config)?.gamma;
            let pg = cartesian_product(&g, &h)?;
            let d = gamma_exact_with(&pg.graph, &config)?.witness;
            let (pgp, php) = default_partitions(&g, &h, gamma_g, gamma_h)?;
            let report = verify_observation(&pg, &d, &pgp, &php)?;
            println!("d={}", join(d.iter()));
            for l in &report.labels {
                println!(
                    "block ({}, {}): g_cell={} h_cell={} d_in_block={} g_strip={} h_strip={}",
                    l.i, l.j, l.is_g_cell, l.is_h_cell, l.d_count_in_block, l.g_strip_count, l.h_strip_count
                );
            }
            let audit = audit_observation(&pg, &d, &pgp, &php, &report);
            println!("observation={}", if report.holds() { "holds" } else { "fails" });
            println!("audit={}", if audit.passed { "passed" } else { "failed" });
            if let Some((i, j)) = report.failure {
                return Err(Failure::Finding(format!("block ({i}, {j}) has neither label")));
            }
            match audit.failure {
                Some(why) => Err(Failure::Finding(format!("observation audit failed: {why}"))),
                None => Ok(()),
            }
        }
        Command::Dryer {
            n,
            p,
            epsilon,
            trials,
            run,
        } => {
            let rows = with_jobs(run.jobs, || {
                n.iter()
                    .map(|&n| dryer_probability(&ExperimentConfig::dryer(n, p, epsilon, trials, run.seed)))
                    .collect::<Result<Vec<_>, _>>()
            })??;
            emit(&run.output, &to_csv(&rows))
        }
        Command::Sweep {
            h_min,
            h_max,
            p,
            trials,
            g_cap,
            product_cap,
            run,
        } => {
            let mut cfg = ExperimentConfig::corollary(h_min, h_max, p, trials, run.seed);
            cfg.g_cap = g_cap;
            cfg.product_cap = product_cap;
            let rows = with_jobs(run.jobs, || corollary_sweep(&cfg))??;
            emit(&run.output, &to_csv(&rows))?;
            let buckets = summarize_buckets(&rows);
            let mut summary = String::new();
            for b in &buckets {
                summary.push_str(&format!(
                    "summary: h_order={} trials={} skipped={} condition_holds={} fraction={} vizing_checked={} vizing_violations={}\n",
                    b.h_order,
                    b.trials,
                    b.skipped,
                    b.condition_holds,
                    b.fraction.map(|f| format!("{f:.6}")).unwrap_or_default(),
                    b.vizing_checked,
                    b.vizing_violations
                ));
            }
            report(&run.output, &summary)?;
            let violations: usize = buckets.iter().map(|b| b.vizing_violations).sum();
            if violations > 0 {
                return Err(Failure::Finding(format!("{violations} sampled pairs violate the inequality")));
            }
            Ok(())
        }
        Command::Exhaustive { max_n, corpus, run } => {
            let corpus = corpus.map(|path| read_corpus(&path)).transpose()?;
            let report_ = with_jobs(run.jobs, || exhaustive_pairs(max_n, corpus.as_deref()))??;
            emit(&run.output, &to_csv(&report_.rows))?;
            let s = &report_.summary;
            let mut summary = format!(
                "summary: graphs={} pairs={} skipped_pairs={} vizing_violations={} suen_tarr_violations={} condition_pairs={} audit_failures={}\n",
                s.graphs,
                s.pairs,
                s.skipped_pairs,
                s.vizing_violations,
                s.suen_tarr_violations,
                s.condition_pairs,
                s.audit_failures
            );
            for (outcome, count) in &s.outcomes {
                summary.push_str(&format!("summary: outcome {outcome}={count}\n"));
            }
            report(&run.output, &summary)?;
            if !s.clean() {
                return Err(Failure::Finding(format!(
                    "{} Vizing violations, {} Suen-Tarr violations, {} failed audits",
                    s.vizing_violations, s.suen_tarr_violations, s.audit_failures
                )));
            }
            Ok(())
        }
    }
}

fn join<T: ToString>(items: impl Iterator<Item = T>) -> String {
    items.map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// Writes `text` to `path`, or to stdout.
fn emit(path: &Option<PathBuf>, text: &str) -> Outcome {
    match path {
        Some(p) => fs::write(p, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Summary lines go to stdout when the CSV went to a file, else to stderr.
fn report(csv_path: &Option<PathBuf>, text: &str) -> Outcome {
    if csv_path.is_some() {
        io::stdout().write_all(text.as_bytes())?;
    } else {
        io::stderr().write_all(text.as_bytes())?;
    }
    Ok(())
}
