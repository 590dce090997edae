use rayon::prelude::*;
use serde::Serialize;

use super::{fmt_f64, wilson_interval, CsvRow, ExperimentConfig, Mode, WILSON_Z};
use crate::error::{Error, Result};
use crate::random::{gnp_from_rng, random_subset, trial_rng};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DryerRow {
    pub n: usize,
    pub p: f64,
    pub epsilon: f64,
    pub t: usize,
    pub trials: usize,
    pub successes: usize,
    pub phat: f64,
    pub wilson_lo: f64,
    pub wilson_hi: f64,
    pub seed: u64,
    pub config_hash: String,
}

impl CsvRow for DryerRow {
    const HEADER: &'static [&'static str] =
        &["n", "p", "epsilon", "t", "trials", "successes", "phat", "wilson_lo", "wilson_hi", "seed"];

    fn fields(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            fmt_f64(self.p),
            fmt_f64(self.epsilon),
            self.t.to_string(),
            self.trials.to_string(),
            self.successes.to_string(),
            fmt_f64(self.phat),
            fmt_f64(self.wilson_lo),
            fmt_f64(self.wilson_hi),
            self.seed.to_string(),
        ]
    }
}

/// `⌈(1+ε) log_q n⌉` with `q = 1/(1-p)`. A `1e-9` slack keeps exact powers
/// of `q` from rounding up.
pub fn dryer_set_size(n: usize, p: f64, epsilon: f64) -> Result<usize> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidConfig(format!("p = {p} must lie in (0, 1)")));
    }
    if !(epsilon >= 0.0 && epsilon.is_finite()) || n == 0 {
        return Err(Error::InvalidConfig(format!("need n >= 1 and epsilon >= 0, got n = {n}, epsilon = {epsilon}")));
    }
    let log_q_n = (n as f64).ln() / (1.0 / (1.0 - p)).ln();
    Ok(((1.0 + epsilon) * log_q_n - 1e-9).ceil().max(0.0) as usize)
}

/// Fraction of trials in which a uniform `t`-subset dominates `G(n, p)`.
pub fn dryer_probability(cfg: &ExperimentConfig) -> Result<DryerRow> {
    if cfg.mode != Mode::Dryer {
        return Err(Error::InvalidConfig("dryer_probability needs a DRYER config".into()));
    }
    cfg.validate()?;
    let n = cfg.n_min;
    let t = dryer_set_size(n, cfg.p, cfg.epsilon)?;
    if t > n {
        return Err(Error::InvalidConfig(format!("set size t = {t} exceeds n = {n}")));
    }
    let outcomes: Vec<bool> = (0..cfg.trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(cfg.seed, i as u64);
            let g = gnp_from_rng(n, cfg.p, &mut rng)?;
            let set = random_subset(n, t, &mut rng);
            debug_assert_eq!(set.len(), t);
            g.is_dominating(&set)
        })
        .collect::<Result<_>>()?;
    let successes = outcomes.iter().filter(|&&ok| ok).count();
    let (wilson_lo, wilson_hi) = wilson_interval(successes, cfg.trials, WILSON_Z);
    Ok(DryerRow {
        n,
        p: cfg.p,
        epsilon: cfg.epsilon,
        t,
        trials: cfg.trials,
        successes,
        phat: successes as f64 / cfg.trials as f64,
        wilson_lo,
        wilson_hi,
        seed: cfg.seed,
        config_hash: cfg.hash(),
    })
}
