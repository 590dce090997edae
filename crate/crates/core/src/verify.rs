//! Per-pair checks of Vizing's inequality and the surrounding bounds.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::product::cartesian_product;
use crate::solver::{gamma_exact_with, SolverConfig};

/// Tolerance applied on the log scale by [`check_corollary_bound`].
pub const COROLLARY_LOG_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairReport {
    pub gamma_g: usize,
    pub gamma_h: usize,
    pub gamma_product: usize,
    pub vizing_holds: bool,
    pub suen_tarr_holds: bool,
    pub theorem_condition: bool,
    /// Present only when an edge probability was supplied.
    pub corollary_bound_holds: Option<bool>,
    pub p_used: Option<f64>,
}

/// `γ(G□H) ≥ γ(G)γ(H)`.
pub fn vizing_holds(gamma_g: usize, gamma_h: usize, gamma_product: usize) -> bool {
    gamma_product >= gamma_g * gamma_h
}

/// `γ(G□H) ≥ ½γ(G)γ(H) + ½min(γ(G), γ(H))`, compared after doubling.
pub fn suen_tarr_holds(gamma_g: usize, gamma_h: usize, gamma_product: usize) -> bool {
    2 * gamma_product >= gamma_g * gamma_h + gamma_g.min(gamma_h)
}

/// `|G| ≥ γ(G)γ(H)` and `|H| ≥ γ(G)γ(H)`.
pub fn check_theorem_condition(g: &Graph, h: &Graph, gamma_g: usize, gamma_h: usize) -> bool {
    orders_meet_condition(g.n(), h.n(), gamma_g, gamma_h)
}

pub fn orders_meet_condition(g_order: usize, h_order: usize, gamma_g: usize, gamma_h: usize) -> bool {
    let product = gamma_g * gamma_h;
    g_order >= product && h_order >= product
}

fn log_base(q: f64) -> impl Fn(f64) -> f64 {
    let ln_q = q.ln();
    move |x| x.ln() / ln_q
}

fn q_of(p: f64) -> Result<f64> {
    // p = 0 gives q = 1 and an undefined log base.
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidInput(format!(
            "edge probability {p} must lie in (0, 1) for q = 1/(1-p) to exceed 1"
        )));
    }
    Ok(1.0 / (1.0 - p))
}

/// Largest `log_q |G|` admitted by the order bound for a given `|H|`:
/// `|H| / log_q |H|`.
pub fn corollary_log_limit(h_order: usize, p: f64) -> Result<f64> {
    let q = q_of(p)?;
    if h_order < 2 {
        return Err(Error::InvalidInput(format!(
            "|H| = {h_order}; the order bound needs |H| >= 2"
        )));
    }
    let log_q = log_base(q);
    Ok(h_order as f64 / log_q(h_order as f64))
}

/// `|G| ≤ q^(|H| / log_q |H|)` with `q = 1/(1-p)`, compared as
/// `log_q |G| ≤ |H| / log_q |H|` within [`COROLLARY_LOG_TOLERANCE`].
pub fn check_corollary_bound(g_order: usize, h_order: usize, p: f64) -> Result<bool> {
    let limit = corollary_log_limit(h_order, p)?;
    if g_order < h_order {
        return Err(Error::Precondition(format!(
            "the order bound assumes |G| >= |H|, got |G| = {g_order} < |H| = {h_order}"
        )));
    }
    let log_q = log_base(q_of(p)?);
    Ok(log_q(g_order as f64) <= limit + COROLLARY_LOG_TOLERANCE)
}

/// Largest `|G|` in `[|H|, cap]` passing [`check_corollary_bound`], if any.
pub fn corollary_max_g_order(h_order: usize, p: f64, cap: usize) -> Result<Option<usize>> {
    let limit = corollary_log_limit(h_order, p)?;
    let q = q_of(p)?;
    if cap < h_order {
        return Ok(None);
    }
    // Estimate from the closed form, then settle with the exact predicate.
    let estimate = (limit * q.ln()).exp().floor();
    let mut g = if estimate.is_finite() && estimate < cap as f64 {
        (estimate as usize).max(h_order)
    } else {
        cap
    };
    g = g.min(cap);
    while g < cap && check_corollary_bound(g + 1, h_order, p)? {
        g += 1;
    }
    while g >= h_order && !check_corollary_bound(g, h_order, p)? {
        if g == h_order {
            return Ok(None);
        }
        g -= 1;
    }
    Ok((g >= h_order).then_some(g))
}

pub fn check_pair(g: &Graph, h: &Graph) -> Result<PairReport> {
    check_pair_with(g, h, &SolverConfig::default(), None)
}

/// Computes all three domination numbers and evaluates every check. The
/// corollary bound is evaluated only when `p` is given, with the larger
/// factor playing `G`.
pub fn check_pair_with(
    g: &Graph,
    h: &Graph,
    config: &SolverConfig,
    p: Option<f64>,
) -> Result<PairReport> {
    let gamma = |which: &'static str, graph: &Graph| {
        gamma_exact_with(graph, config)
            .map(|r| r.gamma)
            .map_err(|e| Error::Gamma {
                which,
                source: Box::new(e),
            })
    };
    let gamma_g = gamma("gamma(G)", g)?;
    let gamma_h = gamma("gamma(H)", h)?;
    let pg = cartesian_product(g, h)?;
    let gamma_product = gamma("gamma(G x H)", &pg.graph)?;

    let corollary_bound_holds = p
        .map(|p| {
            let (big, small) = (g.n().max(h.n()), g.n().min(h.n()));
            check_corollary_bound(big, small, p)
        })
        .transpose()?;

    Ok(PairReport {
        gamma_g,
        gamma_h,
        gamma_product,
        vizing_holds: vizing_holds(gamma_g, gamma_h, gamma_product),
        suen_tarr_holds: suen_tarr_holds(gamma_g, gamma_h, gamma_product),
        theorem_condition: check_theorem_condition(g, h, gamma_g, gamma_h),
        corollary_bound_holds,
        p_used: p,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::gamma_bruteforce;

    #[test]
    fn p2_pair() {
        let p2 = Graph::path(2).unwrap();
        let r = check_pair(&p2, &p2).unwrap();
        assert_eq!((r.gamma_g, r.gamma_h, r.gamma_product), (1, 1, 2));
        assert!(r.vizing_holds && r.suen_tarr_holds && r.theorem_condition);
        assert_eq!(r.corollary_bound_holds, None);
    }

    #[test]
    fn c4_pair_against_oracle() {
        let c4 = Graph::cycle(4).unwrap();
        let torus = cartesian_product(&c4, &c4).unwrap();
        assert_eq!(gamma_bruteforce(&torus.graph).unwrap().gamma, 4);
        let r = check_pair(&c4, &c4).unwrap();
        assert_eq!((r.gamma_g, r.gamma_h, r.gamma_product), (2, 2, 4));
        assert!(r.vizing_holds && r.suen_tarr_holds);
    }

    #[test]
    fn k1_pair_is_tight() {
        let k1 = Graph::complete(1).unwrap();
        let r = check_pair(&k1, &k1).unwrap();
        assert_eq!(r.gamma_product, 1);
        assert!(r.vizing_holds);
    }

    #[test]
    fn suen_tarr_boundary_is_exact() {
        // 2·3 = 6 = 2·2 + 2: holds with equality; one less fails.
        assert!(suen_tarr_holds(2, 2, 3));
        assert!(!suen_tarr_holds(2, 2, 2));
        // ½·3·1 + ½·1 = 2
        assert!(suen_tarr_holds(3, 1, 2));
        assert!(!suen_tarr_holds(3, 1, 1));
    }

    #[test]
    fn theorem_condition_arithmetic() {
        assert!(orders_meet_condition(4, 4, 2, 2));
        assert!(!orders_meet_condition(3, 9, 2, 3));
        assert!(orders_meet_condition(25, 25, 5, 5));
        let c4 = Graph::cycle(4).unwrap();
        assert!(check_theorem_condition(&c4, &c4, 2, 2));
    }

    #[test]
    fn corollary_examples() {
        assert!(check_corollary_bound(16, 16, 0.5).unwrap());
        assert!(!check_corollary_bound(17, 16, 0.5).unwrap());
        assert!(check_corollary_bound(1 << 32, 256, 0.5).unwrap());
        // 2^32 + 1 is inside the 1e-9 log tolerance; 2^32 + 2^24 is not.
        assert!(check_corollary_bound((1 << 32) + 1, 256, 0.5).unwrap());
        assert!(!check_corollary_bound((1 << 32) + (1 << 24), 256, 0.5).unwrap());
        assert!(check_corollary_bound(4, 2, 0.5).unwrap());
        assert!(!check_corollary_bound(5, 2, 0.5).unwrap());
    }

    #[test]
    fn corollary_errors() {
        assert!(matches!(check_corollary_bound(16, 16, 1.0), Err(Error::InvalidInput(_))));
        assert!(matches!(check_corollary_bound(16, 16, 0.0), Err(Error::InvalidInput(_))));
        assert!(matches!(check_corollary_bound(16, 1, 0.5), Err(Error::InvalidInput(_))));
        assert!(matches!(check_corollary_bound(15, 16, 0.5), Err(Error::Precondition(_))));
    }

    #[test]
    fn corollary_max_order() {
        assert_eq!(corollary_max_g_order(16, 0.5, 1000).unwrap(), Some(16));
        assert_eq!(corollary_max_g_order(2, 0.5, 1000).unwrap(), Some(4));
        assert_eq!(corollary_max_g_order(2, 0.5, 3).unwrap(), Some(3));
        // q ~ 1.11: log_q 20 ~ 28.4 > 20 / 28.4, so nothing admissible.
        assert_eq!(corollary_max_g_order(20, 0.1, 1000).unwrap(), None);
    }

    /// With `|H| = q^L` the bound reads `|G|^L ≤ q^|H|` in integers.
    #[test]
    fn log_scale_agrees_with_integer_powers() {
        for (q, p) in [(2u128, 0.5), (3, 2.0 / 3.0), (4, 0.75)] {
            for l in 1..=5u32 {
                let h = q.pow(l);
                let Some(rhs) = q.checked_pow(h as u32) else { continue };
                for g in h..h + 300 {
                    let Some(lhs) = g.checked_pow(l) else { continue };
                    assert_eq!(
                        check_corollary_bound(g as usize, h as usize, p).unwrap(),
                        lhs <= rhs,
                        "q={q} h={h} g={g}"
                    );
                }
            }
        }
    }
}
