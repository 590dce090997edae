use std::collections::BTreeMap;

use rand::RngExt;
use rayon::prelude::*;
use serde::Serialize;

use super::{fmt_f64, fmt_opt, CsvRow, ExperimentConfig, Mode};
use crate::error::{Error, Result};
use crate::product::cartesian_product;
use crate::random::{gnp_from_rng, trial_rng};
use crate::solver::gamma_exact;
use crate::verify::{check_corollary_bound, corollary_max_g_order, orders_meet_condition, vizing_holds};

/// One trial. When no `|G|` fits the order bound the row is skipped and
/// only `h_order`, `p`, `seed` and `trial` are set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorollaryRow {
    pub h_order: usize,
    pub g_order: Option<usize>,
    pub p: f64,
    pub gamma_g: Option<usize>,
    pub gamma_h: Option<usize>,
    pub condition_holds: Option<bool>,
    pub vizing_checked: bool,
    pub vizing_holds: Option<bool>,
    pub seed: u64,
    pub trial: usize,
    pub config_hash: String,
}

impl CorollaryRow {
    pub fn skipped(&self) -> bool {
        self.g_order.is_none()
    }
}

impl CsvRow for CorollaryRow {
    const HEADER: &'static [&'static str] = &[
        "h_order",
        "g_order",
        "p",
        "gamma_g",
        "gamma_h",
        "condition_holds",
        "vizing_checked",
        "vizing_holds",
        "seed",
        "trial",
    ];

    fn fields(&self) -> Vec<String> {
        vec![
            self.h_order.to_string(),
            fmt_opt(self.g_order),
            fmt_f64(self.p),
            fmt_opt(self.gamma_g),
            fmt_opt(self.gamma_h),
            fmt_opt(self.condition_holds),
            self.vizing_checked.to_string(),
            fmt_opt(self.vizing_holds),
            self.seed.to_string(),
            self.trial.to_string(),
        ]
    }
}

/// Samples `(G, H)` pairs inside the order bound and records how often the
/// theorem's order condition holds, checking the inequality itself whenever
/// the product is at most `product_cap` vertices.
pub fn corollary_sweep(cfg: &ExperimentConfig) -> Result<Vec<CorollaryRow>> {
    if cfg.mode != Mode::CorollarySweep {
        return Err(Error::InvalidConfig("corollary_sweep needs a COROLLARY_SWEEP config".into()));
    }
    cfg.validate()?;
    let hash = cfg.hash();
    (0..cfg.trials)
        .into_par_iter()
        .map(|trial| run_trial(cfg, trial, &hash))
        .collect()
}

fn run_trial(cfg: &ExperimentConfig, trial: usize, hash: &str) -> Result<CorollaryRow> {
    let mut rng = trial_rng(cfg.seed, trial as u64);
    let h_order = rng.random_range(cfg.n_min..=cfg.n_max);
    let mut row = CorollaryRow {
        h_order,
        g_order: None,
        p: cfg.p,
        gamma_g: None,
        gamma_h: None,
        condition_holds: None,
        vizing_checked: false,
        vizing_holds: None,
        seed: cfg.seed,
        trial,
        config_hash: hash.to_string(),
    };
    let Some(g_max) = corollary_max_g_order(h_order, cfg.p, cfg.g_cap)? else {
        return Ok(row);
    };
    let g_order = rng.random_range(h_order..=g_max);
    debug_assert!(check_corollary_bound(g_order, h_order, cfg.p)?);
    let g = gnp_from_rng(g_order, cfg.p, &mut rng)?;
    let h = gnp_from_rng(h_order, cfg.p, &mut rng)?;
    let gamma_g = gamma_exact(&g)?.gamma;
    let gamma_h = gamma_exact(&h)?.gamma;
    row.g_order = Some(g_order);
    row.gamma_g = Some(gamma_g);
    row.gamma_h = Some(gamma_h);
    row.condition_holds = Some(orders_meet_condition(g_order, h_order, gamma_g, gamma_h));
    if g_order * h_order <= cfg.product_cap {
        let pg = cartesian_product(&g, &h)?;
        let gamma_product = gamma_exact(&pg.graph)?.gamma;
        row.vizing_checked = true;
        row.vizing_holds = Some(vizing_holds(gamma_g, gamma_h, gamma_product));
    }
    Ok(row)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BucketSummary {
    pub h_order: usize,
    pub trials: usize,
    pub skipped: usize,
    pub condition_holds: usize,
    /// Among non-skipped trials; `None` when all were skipped.
    pub fraction: Option<f64>,
    pub vizing_checked: usize,
    pub vizing_violations: usize,
}

/// Aggregates rows per `|H|`, in increasing order.
pub fn summarize_buckets(rows: &[CorollaryRow]) -> Vec<BucketSummary> {
    let mut buckets: BTreeMap<usize, BucketSummary> = BTreeMap::new();
    for row in rows {
        let b = buckets.entry(row.h_order).or_insert(BucketSummary {
            h_order: row.h_order,
            trials: 0,
            skipped: 0,
            condition_holds: 0,
            fraction: None,
            vizing_checked: 0,
            vizing_violations: 0,
        });
        b.trials += 1;
        b.skipped += usize::from(row.skipped());
        b.condition_holds += usize::from(row.condition_holds == Some(true));
        b.vizing_checked += usize::from(row.vizing_checked);
        b.vizing_violations += usize::from(row.vizing_holds == Some(false));
    }
    buckets
        .into_values()
        .map(|mut b| {
            let sampled = b.trials - b.skipped;
            b.fraction = (sampled > 0).then(|| b.condition_holds as f64 / sampled as f64);
            b
        })
        .collect()
}
