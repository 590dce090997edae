//! Seeded Monte Carlo experiments and exhaustive small-pair sweeps.
//!
//! Every trial draws from its own stream `trial_rng(seed, index)`, and rows
//! are collected in trial order, so the thread count never changes output.

mod dryer;
mod exhaustive;
mod sweep;

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use dryer::{dryer_probability, dryer_set_size, DryerRow};
pub use exhaustive::{
    exhaustive_pairs, exhaustive_over, labeled_graphs, ExhaustiveReport, ExhaustiveRow, ExhaustiveSummary,
    NOT_APPLICABLE, PRODUCT_CAP,
};
pub use sweep::{corollary_sweep, summarize_buckets, BucketSummary, CorollaryRow};

/// 97.5% standard normal quantile.
pub const WILSON_Z: f64 = 1.959963984540054;

pub const DEFAULT_SEED: u64 = 20_261_017;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Mode {
    Dryer,
    CorollarySweep,
    ExhaustivePairs,
}

/// Parameters of one experiment. `n_min..=n_max` is the vertex count for
/// Dryer runs (a single value) and the `|H|` range for the corollary sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub mode: Mode,
    pub n_min: usize,
    pub n_max: usize,
    pub p: f64,
    pub epsilon: f64,
    pub trials: usize,
    pub seed: u64,
    /// Largest `|G|` the sweep samples.
    pub g_cap: usize,
    /// Largest product order on which the sweep solves `γ(G□H)`.
    pub product_cap: usize,
}

impl ExperimentConfig {
    pub fn dryer(n: usize, p: f64, epsilon: f64, trials: usize, seed: u64) -> Self {
        Self {
            mode: Mode::Dryer,
            n_min: n,
            n_max: n,
            p,
            epsilon,
            trials,
            seed,
            g_cap: 0,
            product_cap: 0,
        }
    }

    pub fn corollary(h_min: usize, h_max: usize, p: f64, trials: usize, seed: u64) -> Self {
        Self {
            mode: Mode::CorollarySweep,
            n_min: h_min,
            n_max: h_max,
            p,
            epsilon: 0.0,
            trials,
            seed,
            g_cap: 60,
            product_cap: 64,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidConfig(m));
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if self.n_min == 0 || self.n_min > self.n_max {
            return bad(format!("vertex range {}..={} is empty or starts at 0", self.n_min, self.n_max));
        }
        if self.mode != Mode::ExhaustivePairs && !(self.p > 0.0 && self.p < 1.0) {
            return bad(format!("p = {} must lie in (0, 1) so that q = 1/(1-p) exceeds 1", self.p));
        }
        match self.mode {
            Mode::Dryer => {
                if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
                    return bad(format!("epsilon = {} must be positive", self.epsilon));
                }
                if self.n_min != self.n_max {
                    return bad("a Dryer run takes a single n".into());
                }
            }
            Mode::CorollarySweep => {
                if self.n_min < 2 {
                    return bad("the order bound needs |H| >= 2".into());
                }
            }
            Mode::ExhaustivePairs => {}
        }
        Ok(())
    }

    /// FNV-1a over the JSON form of the config, as 16 hex digits.
    pub fn hash(&self) -> String {
        let json = serde_json::to_string(self).expect("config serializes");
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in json.bytes() {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
        format!("{h:016x}")
    }
}

/// Wilson score interval for `successes` out of `trials` at `z`.
pub fn wilson_interval(successes: usize, trials: usize, z: f64) -> (f64, f64) {
    assert!(trials > 0 && successes <= trials);
    let n = trials as f64;
    let phat = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (phat + z2 / (2.0 * n)) / denom;
    let half = z / denom * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt();
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// Runs `f` on a pool of `jobs` threads, or on the global pool when `None`.
pub fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match jobs {
        None => Ok(f()),
        Some(0) => Err(Error::InvalidConfig("--jobs must be at least 1".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map(|pool| pool.install(f))
            .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}"))),
    }
}

/// A record with a fixed CSV layout.
pub trait CsvRow {
    const HEADER: &'static [&'static str];
    fn fields(&self) -> Vec<String>;
}

pub(crate) fn fmt_f64(x: f64) -> String {
    format!("{x:.6}")
}

pub(crate) fn fmt_opt<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

pub fn write_csv<R: CsvRow, W: Write>(rows: &[R], out: W) -> Result<()> {
    let io_err = |e: csv::Error| Error::InvalidInput(format!("writing CSV: {e}"));
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(R::HEADER).map_err(io_err)?;
    for row in rows {
        w.write_record(row.fields()).map_err(io_err)?;
    }
    w.flush().map_err(|e| Error::InvalidInput(format!("writing CSV: {e}")))
}

pub fn to_csv<R: CsvRow>(rows: &[R]) -> String {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("CSV is ASCII")
}
