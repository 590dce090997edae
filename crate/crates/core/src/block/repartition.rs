//! The re-partitioning procedure as a certificate generator.
//!
//! Factors are first oriented so that the repartitioned factor (called `G`
//! below) has the larger domination number `k`; the other factor `H` has
//! `l <= k`. `G` is dealt into `k` parts of at least `l` vertices and `H`
//! into `l` parts of at least `k` vertices. Round `r` (1-based) looks at
//! column `H_r` and the parts of `G` that are not yet frozen:
//!
//! * If the strip `G × H_r` is short (not a G-cell column), every active row
//!   `G_i × H` holds at least `|G_i|` dominators, every frozen part `F_s`
//!   holds at least `|F_s|` dominators inside `F_s × H_s`, and together these
//!   count at least `|G| >= kl` vertices of `D`.
//! * If `r = l`, the `l` column strips each hold at least `|H_s| >= k`
//!   dominators.
//! * Otherwise part `r` exchanges each vertex without a dominator in its
//!   column fiber for a projection vertex of another active part (an
//!   injection, matched in ascending order), absorbs the remaining
//!   projections of the column and freezes. The displaced vertices are
//!   spread over the active parts, smallest part first. If the active parts
//!   are then all empty, the frozen parts cover `G` and certify `|G|`.
//!
//! Whenever a supply the procedure relies on is missing, the run ends in
//! [`Outcome::DiagnosticFailure`] with the round, part and shortfall; no
//! certificate is produced in that case.
//!
//! The source text's third round refers back to `B^1_{2,2}` where the
//! staircase pattern calls for `B^2_{3,3}`; rounds here follow the pattern.

use serde::{Deserialize, Serialize};

use super::partition::{deal, Partition};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::product::{cartesian_product, Coords, ProductGraph};
use crate::solver::{enumerate_minimum_dominating_sets, gamma_exact_with, SolverConfig};
use crate::verify::orders_meet_condition;

pub const TRACE_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Outcome {
    CertifiedByRounds,
    CertifiedAllHCellColumn,
    CertifiedPartsExhausted,
    DiagnosticFailure,
}

impl Outcome {
    pub fn is_certified(self) -> bool {
        self != Outcome::DiagnosticFailure
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::CertifiedByRounds => "CERTIFIED_BY_ROUNDS",
            Outcome::CertifiedAllHCellColumn => "CERTIFIED_ALL_H_CELL_COLUMN",
            Outcome::CertifiedPartsExhausted => "CERTIFIED_PARTS_EXHAUSTED",
            Outcome::DiagnosticFailure => "DIAGNOSTIC_FAILURE",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Factor {
    G,
    H,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegionKind {
    /// Frozen parts so far times the column of a G-cell round; claims `|H_r|`.
    Staircase,
    /// The whole strip of the last column; claims `|H_l|`.
    FinalStrip,
    /// A frozen part times its own column; claims the part size.
    FrozenPart,
    /// An active part times all of `H`; claims the part size.
    HCellRow,
}

impl RegionKind {
    /// Whether the claimed count is the column size rather than the row size.
    pub fn claims_column(self) -> bool {
        matches!(self, RegionKind::Staircase | RegionKind::FinalStrip)
    }
}

/// A rectangle of the product, in the original `(G, H)` orientation, that
/// the certificate counts vertices of `D` in.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountedRegion {
    pub round: usize,
    pub kind: RegionKind,
    pub g_vertices: VertexSet,
    pub h_vertices: VertexSet,
    pub d_count: usize,
    pub required: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundBlock {
    pub part: usize,
    pub d_count_in_block: usize,
    pub is_g_cell: bool,
    pub is_h_cell: bool,
    pub projection: VertexSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundRecord {
    /// 1-based round index `m`; the round examines column `m - 1` and part `m - 1`.
    pub round: usize,
    pub column: usize,
    pub column_size: usize,
    pub column_d_count: usize,
    pub column_is_g_cell: bool,
    pub blocks: Vec<RoundBlock>,
    /// Injection `f`: `(source, target)`.
    pub exchange: Vec<(usize, usize)>,
    /// Projection vertices absorbed into the frozen part without a partner.
    pub swept: Vec<usize>,
    /// Displaced sources and the part each was placed in.
    pub reassigned: Vec<(usize, usize)>,
    pub partition_after: Vec<VertexSet>,
    pub frozen_part: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub round: usize,
    pub column: usize,
    pub part: usize,
    pub missing: usize,
    pub reason: String,
}

/// Full audit log of one run. Partitions and exchange maps refer to the
/// factor named by `repartitioned`; regions are in `(G, H)` coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepartitionTrace {
    pub schema_version: u32,
    pub g_order: usize,
    pub h_order: usize,
    pub gamma_g: usize,
    pub gamma_h: usize,
    pub gamma_product: usize,
    pub d: VertexSet,
    pub swapped: bool,
    pub repartitioned: Factor,
    pub k: usize,
    pub l: usize,
    pub round_limit: usize,
    pub initial_partition: Partition,
    pub fixed_partition: Partition,
    pub rounds: Vec<RoundRecord>,
    pub outcome: Outcome,
    pub regions: Vec<CountedRegion>,
    pub certified_count: usize,
    pub diagnostic: Option<Diagnostic>,
}

impl RepartitionTrace {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("trace JSON: {e}")))
    }
}

/// A pair of factors with their domination numbers, ready to certify any
/// minimum dominating set of the product.
#[derive(Debug, Clone)]
pub struct Certifier {
    pg: ProductGraph,
    gamma_g: usize,
    gamma_h: usize,
    gamma_product: usize,
    config: SolverConfig,
}

impl Certifier {
    pub fn new(g: &Graph, h: &Graph) -> Result<Self> {
        Self::with_config(g, h, SolverConfig::default())
    }

    pub fn with_config(g: &Graph, h: &Graph, config: SolverConfig) -> Result<Self> {
        let gamma_g = gamma_exact_with(g, &config)?.gamma;
        let gamma_h = gamma_exact_with(h, &config)?.gamma;
        let pg = cartesian_product(g, h)?;
        let gamma_product = gamma_exact_with(&pg.graph, &config)?.gamma;
        Self::from_parts(pg, gamma_g, gamma_h, gamma_product, config)
    }

    /// Uses domination numbers computed elsewhere; they are trusted.
    pub fn from_parts(
        pg: ProductGraph,
        gamma_g: usize,
        gamma_h: usize,
        gamma_product: usize,
        config: SolverConfig,
    ) -> Result<Self> {
        if !orders_meet_condition(pg.g_size, pg.h_size, gamma_g, gamma_h) {
            return Err(Error::Precondition(format!(
                "|G| = {}, |H| = {} must both be at least gamma(G)gamma(H) = {}",
                pg.g_size,
                pg.h_size,
                gamma_g * gamma_h
            )));
        }
        Ok(Self {
            pg,
            gamma_g,
            gamma_h,
            gamma_product,
            config,
        })
    }

    pub fn product(&self) -> &ProductGraph {
        &self.pg
    }

    pub fn gammas(&self) -> (usize, usize, usize) {
        (self.gamma_g, self.gamma_h, self.gamma_product)
    }

    /// The solver's minimum dominating set of the product (lexicographically
    /// least when the product is small enough).
    pub fn canonical_d(&self) -> Result<VertexSet> {
        Ok(gamma_exact_with(&self.pg.graph, &self.config)?.witness)
    }

    pub fn run(&self, d: &VertexSet) -> Result<RepartitionTrace> {
        if !self.pg.graph.is_dominating(d)? {
            return Err(Error::InvalidInput("D does not dominate the product".into()));
        }
        if d.len() != self.gamma_product {
            return Err(Error::InvalidInput(format!(
                "|D| = {} but gamma(G x H) = {}",
                d.len(),
                self.gamma_product
            )));
        }
        Ok(Engine::new(self, d).run())
    }
}

/// Runs the procedure on `(g, h)`. With `d = None` the solver's minimum
/// dominating set of the product is used.
pub fn run_repartitioning(g: &Graph, h: &Graph, d: Option<&VertexSet>) -> Result<RepartitionTrace> {
    let c = Certifier::new(g, h)?;
    match d {
        Some(d) => c.run(d),
        None => c.run(&c.canonical_d()?),
    }
}

/// Tries the canonical `D` first, then further minimum dominating sets in
/// lexicographic order (up to `limit`), returning the first certified trace
/// or, failing that, the canonical one. Also returns the number of runs.
pub fn certify_with_retry(g: &Graph, h: &Graph, limit: usize) -> Result<(RepartitionTrace, usize)> {
    let c = Certifier::new(g, h)?;
    let first = c.run(&c.canonical_d()?)?;
    if first.outcome.is_certified() {
        return Ok((first, 1));
    }
    let mut runs = 1;
    for d in enumerate_minimum_dominating_sets(&c.pg.graph, limit)? {
        if d == first.d {
            continue;
        }
        runs += 1;
        let trace = c.run(&d)?;
        if trace.outcome.is_certified() {
            return Ok((trace, runs));
        }
    }
    Ok((first, runs))
}

struct Engine<'c> {
    c: &'c Certifier,
    d: VertexSet,
    swapped: bool,
    /// Sizes of the repartitioned factor and the fixed factor.
    coords: Coords,
    k: usize,
    l: usize,
    /// `fibers[u] = {v : (u, v) ∈ D}` in the normalized orientation.
    fibers: Vec<VertexSet>,
}

impl<'c> Engine<'c> {
    fn new(c: &'c Certifier, d: &VertexSet) -> Self {
        let swapped = c.gamma_h > c.gamma_g;
        let orig = c.pg.coords();
        let (coords, k, l) = if swapped {
            (orig.transposed(), c.gamma_h, c.gamma_g)
        } else {
            (orig, c.gamma_g, c.gamma_h)
        };
        let mut fibers = vec![VertexSet::new(); coords.g_size];
        for x in d {
            let (a, b) = orig.unflat(x);
            let (u, v) = if swapped { (b, a) } else { (a, b) };
            fibers[u].insert(v);
        }
        Self {
            c,
            d: d.clone(),
            swapped,
            coords,
            k,
            l,
            fibers,
        }
    }

    fn count(&self, rows: &VertexSet, cols: &VertexSet) -> usize {
        rows.iter().map(|u| self.fibers[u].intersection(cols).len()).sum()
    }

    fn region(&self, round: usize, kind: RegionKind, rows: VertexSet, cols: VertexSet) -> CountedRegion {
        let d_count = self.count(&rows, &cols);
        let required = if kind.claims_column() { cols.len() } else { rows.len() };
        let (g_vertices, h_vertices) = if self.swapped { (cols, rows) } else { (rows, cols) };
        CountedRegion {
            round,
            kind,
            g_vertices,
            h_vertices,
            d_count,
            required,
        }
    }

    fn run(&self) -> RepartitionTrace {
        let (k, l) = (self.k, self.l);
        let initial = deal(self.coords.g_size, k, l).expect("theorem condition checked");
        let fixed = deal(self.coords.h_size, l, k).expect("theorem condition checked");
        let all_h = VertexSet::full(self.coords.h_size);
        let mut parts = initial.parts.clone();
        let mut rounds = Vec::new();
        let mut staircase = Vec::new();

        let finish = |rounds, outcome, regions: Vec<CountedRegion>, diagnostic| {
            self.trace(&initial, &fixed, rounds, outcome, regions, diagnostic)
        };
        let fail = |rounds, round: usize, part: usize, missing: usize, reason: &str| {
            let diag = Diagnostic {
                round,
                column: round - 1,
                part,
                missing,
                reason: reason.to_string(),
            };
            self.trace(&initial, &fixed, rounds, Outcome::DiagnosticFailure, Vec::new(), Some(diag))
        };

        for r in 0..l {
            let round = r + 1;
            let column = fixed.part(r);
            let column_d_count = self.count(&VertexSet::full(self.coords.g_size), column);
            let column_is_g_cell = column_d_count >= column.len();
            let blocks: Vec<RoundBlock> = (r..k)
                .map(|i| {
                    let part = &parts[i];
                    RoundBlock {
                        part: i,
                        d_count_in_block: self.count(part, column),
                        is_g_cell: column_is_g_cell,
                        is_h_cell: self.count(part, &all_h) >= part.len(),
                        projection: part.iter().filter(|&u| !self.fibers[u].is_disjoint(column)).collect(),
                    }
                })
                .collect();
            let mut record = RoundRecord {
                round,
                column: r,
                column_size: column.len(),
                column_d_count,
                column_is_g_cell,
                blocks: blocks.clone(),
                exchange: Vec::new(),
                swept: Vec::new(),
                reassigned: Vec::new(),
                partition_after: parts.clone(),
                frozen_part: None,
            };

            if !column_is_g_cell {
                rounds.push(record);
                if let Some(b) = blocks.iter().find(|b| !b.is_h_cell) {
                    let short = parts[b.part].len() - self.count(&parts[b.part], &all_h);
                    return fail(rounds, round, b.part, short, "block is neither a G-cell nor an H-cell block");
                }
                let mut regions: Vec<CountedRegion> = (0..r)
                    .map(|s| self.region(s + 1, RegionKind::FrozenPart, parts[s].clone(), fixed.part(s).clone()))
                    .collect();
                regions.extend(
                    (r..k)
                        .filter(|&i| !parts[i].is_empty())
                        .map(|i| self.region(round, RegionKind::HCellRow, parts[i].clone(), all_h.clone())),
                );
                return finish(rounds, Outcome::CertifiedAllHCellColumn, regions, None);
            }

            if round == l {
                rounds.push(record);
                let mut regions = staircase;
                regions.push(self.region(
                    round,
                    RegionKind::FinalStrip,
                    VertexSet::full(self.coords.g_size),
                    column.clone(),
                ));
                return finish(rounds, Outcome::CertifiedByRounds, regions, None);
            }

            let own_projection = &blocks[0].projection;
            let sources: Vec<usize> = parts[r].difference(own_projection).to_vec();
            let targets: Vec<usize> = blocks[1..].iter().flat_map(|b| b.projection.iter()).collect();
            if targets.len() < sources.len() {
                rounds.push(record);
                return fail(
                    rounds,
                    round,
                    r,
                    sources.len() - targets.len(),
                    "too few projection vertices in the other active parts for the exchange injection",
                );
            }

            record.exchange = sources.iter().copied().zip(targets.iter().copied()).collect();
            record.swept = targets[sources.len()..].to_vec();
            let mut frozen = own_projection.clone();
            for b in &blocks[1..] {
                parts[b.part] = parts[b.part].difference(&b.projection);
                frozen = frozen.union(&b.projection);
            }
            parts[r] = frozen;
            for &v in &sources {
                let dest = (r + 1..k)
                    .min_by_key(|&i| (parts[i].len(), i))
                    .expect("targets exist, so another active part exists");
                parts[dest].insert(v);
                record.reassigned.push((v, dest));
            }
            record.partition_after = parts.clone();
            record.frozen_part = Some(r);
            rounds.push(record);

            let frozen_rows = parts[..=r].iter().fold(VertexSet::new(), |acc, p| acc.union(p));
            staircase.push(self.region(round, RegionKind::Staircase, frozen_rows, column.clone()));

            if parts[r + 1..].iter().all(VertexSet::is_empty) {
                let regions = (0..=r)
                    .map(|s| self.region(s + 1, RegionKind::FrozenPart, parts[s].clone(), fixed.part(s).clone()))
                    .collect();
                return finish(rounds, Outcome::CertifiedPartsExhausted, regions, None);
            }
        }
        unreachable!("round l always terminates the procedure")
    }

    fn trace(
        &self,
        initial: &Partition,
        fixed: &Partition,
        rounds: Vec<RoundRecord>,
        outcome: Outcome,
        regions: Vec<CountedRegion>,
        diagnostic: Option<Diagnostic>,
    ) -> RepartitionTrace {
        let c = self.c;
        let mut trace = RepartitionTrace {
            schema_version: TRACE_SCHEMA_VERSION,
            g_order: c.pg.g_size,
            h_order: c.pg.h_size,
            gamma_g: c.gamma_g,
            gamma_h: c.gamma_h,
            gamma_product: c.gamma_product,
            d: self.d.clone(),
            swapped: self.swapped,
            repartitioned: if self.swapped { Factor::H } else { Factor::G },
            k: self.k,
            l: self.l,
            round_limit: self.k.min(self.l),
            initial_partition: initial.clone(),
            fixed_partition: fixed.clone(),
            rounds,
            outcome,
            certified_count: regions.iter().map(|r| r.d_count).sum(),
            regions,
            diagnostic,
        };
        if outcome.is_certified() {
            let target = self.k * self.l;
            let shortfall = trace
                .regions
                .iter()
                .find(|r| r.d_count < r.required)
                .map(|r| (r.round, r.required - r.d_count, "a counted region holds fewer dominators than claimed"))
                .or_else(|| {
                    (trace.certified_count < target).then(|| {
                        (trace.rounds.len(), target - trace.certified_count, "counted total falls short of gamma(G)gamma(H)")
                    })
                });
            if let Some((round, missing, reason)) = shortfall {
                trace.outcome = Outcome::DiagnosticFailure;
                trace.regions.clear();
                trace.certified_count = 0;
                trace.diagnostic = Some(Diagnostic {
                    round,
                    column: round.saturating_sub(1),
                    part: round.saturating_sub(1),
                    missing,
                    reason: reason.to_string(),
                });
            }
        }
        trace
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::block::audit::audit_trace;

    fn run(g: &Graph, h: &Graph) -> (RepartitionTrace, ProductGraph) {
        let trace = run_repartitioning(g, h, None).unwrap();
        (trace, cartesian_product(g, h).unwrap())
    }

    #[test]
    fn torus_c4_c4_canonical_d_has_no_exchange_targets() {
        // D = {(0,0), (0,1), (2,2), (2,3)}: column H_0 = {0, 1} is a G-cell
        // column, part G_0 = {0, 1} has the non-projection vertex 1, and
        // part G_1 = {2, 3} projects nothing into the column.
        let c4 = Graph::cycle(4).unwrap();
        let (trace, pg) = run(&c4, &c4);
        assert_eq!((trace.gamma_g, trace.gamma_h, trace.gamma_product), (2, 2, 4));
        assert_eq!(trace.d.to_vec(), vec![0, 1, 10, 11]);
        assert_eq!(trace.outcome, Outcome::DiagnosticFailure);
        let diag = trace.diagnostic.clone().unwrap();
        assert_eq!((diag.round, diag.part, diag.missing), (1, 0, 1));
        assert_eq!(trace.certified_count, 0);
        assert!(audit_trace(&trace, &pg, &trace.d).passed);
    }

    #[test]
    fn torus_c4_c4_retry_certifies() {
        let c4 = Graph::cycle(4).unwrap();
        let (trace, runs) = certify_with_retry(&c4, &c4, usize::MAX).unwrap();
        assert!(trace.outcome.is_certified(), "no certificate after {runs} runs");
        assert!(runs > 1);
        assert_eq!(trace.certified_count, 4);
        assert!(trace.rounds.len() <= trace.l);
        let pg = cartesian_product(&c4, &c4).unwrap();
        let audit = audit_trace(&trace, &pg, &trace.d);
        assert!(audit.passed, "{:?}", audit.failure);
    }

    #[test]
    fn k1_k1_single_block() {
        let k1 = Graph::complete(1).unwrap();
        let (trace, pg) = run(&k1, &k1);
        assert!(trace.outcome.is_certified());
        assert_eq!(trace.certified_count, 1);
        assert!(audit_trace(&trace, &pg, &trace.d).passed);
    }

    #[test]
    fn p3_k2_degenerates_to_one_round() {
        let (trace, pg) = run(&Graph::path(3).unwrap(), &Graph::complete(2).unwrap());
        assert_eq!((trace.k, trace.l), (1, 1));
        assert_eq!(trace.rounds.len(), 1);
        assert!(trace.outcome.is_certified());
        assert!(trace.certified_count >= 1);
        assert!(audit_trace(&trace, &pg, &trace.d).passed);
    }

    #[test]
    fn factors_are_swapped_when_h_dominates_harder() {
        // gamma(K4) = 1 < gamma(P6) = 2.
        let g = Graph::complete(4).unwrap();
        let h = Graph::path(6).unwrap();
        let (trace, pg) = run(&g, &h);
        assert!(trace.swapped);
        assert_eq!(trace.repartitioned, Factor::H);
        assert_eq!((trace.k, trace.l), (2, 1));
        let audit = audit_trace(&trace, &pg, &trace.d);
        assert!(audit.passed, "{:?}", audit.failure);
    }

    #[test]
    fn precondition_and_input_errors() {
        // |G| = 3 < gamma(G)gamma(H) = 1 * 4 for H = 4 isolated vertices.
        let err = run_repartitioning(&Graph::path(3).unwrap(), &Graph::empty(4).unwrap(), None).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));

        let c4 = Graph::cycle(4).unwrap();
        let c = Certifier::new(&c4, &c4).unwrap();
        let everything = VertexSet::full(16);
        assert!(matches!(c.run(&everything), Err(Error::InvalidInput(_))));
        assert!(matches!(c.run(&[0usize].into_iter().collect()), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn trace_json_round_trip() {
        let c4 = Graph::cycle(4).unwrap();
        let (trace, _) = run(&c4, &c4);
        let json = trace.to_json();
        assert!(json.contains("\"schema_version\": 1"));
        assert_eq!(RepartitionTrace::from_json(&json).unwrap(), trace);
    }
}
