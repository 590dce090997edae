//! Exact domination numbers.
//!
//! Two independent routes compute `γ(G)`:
//!
//! * [`gamma_bruteforce`] walks vertex subsets by increasing size, and
//!   lexicographically within a size, returning the first dominating one.
//!   It is the ground-truth oracle and is limited to 32 vertices.
//! * [`gamma_exact`] is a branch-and-bound search. It branches on the
//!   uncovered vertex with the fewest available dominators, tries each
//!   dominator in turn (forbidding earlier siblings in later branches), and
//!   prunes with the better of a coverage-sum bound and a greedy 2-packing
//!   bound on the residual instance.
//!
//! Witness sets are canonical (lexicographically least among minimum
//! dominating sets) whenever the graph has at most [`CANONICAL_CAP`]
//! vertices; above that the first optimum found is returned and flagged.

use crate::error::{Error, Result};
use crate::graph::{iter_bits, popcount, Graph, VertexSet, WORD_BITS};

pub const BRUTEFORCE_CAP: usize = 32;
pub const ENUMERATE_CAP: usize = 24;
pub const CANONICAL_CAP: usize = 32;
pub const DEFAULT_NODE_BUDGET: u64 = 50_000_000;

/// The residual 2-packing bound is recomputed every this many levels of the
/// search tree. In between, the ancestor's value minus the number of
/// vertices chosen since is still valid: a chosen vertex lies in at most one
/// of the packed, pairwise disjoint dominator sets.
const PACKING_REFRESH_LEVELS: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaResult {
    pub gamma: usize,
    pub witness: VertexSet,
    pub nodes_explored: u64,
    /// Whether `witness` is the lexicographically least minimum dominating set.
    pub canonical: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverConfig {
    pub node_budget: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

/// Subset-enumeration oracle.
pub fn gamma_bruteforce(g: &Graph) -> Result<GammaResult> {
    let n = g.n();
    if n > BRUTEFORCE_CAP {
        return Err(Error::SizeCap {
            what: "brute-force domination oracle input",
            n,
            cap: BRUTEFORCE_CAP,
        });
    }
    let rows: Vec<u64> = (0..n).map(|v| g.row(v).first().copied().unwrap_or(0)).collect();
    let full = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
    let mut nodes = 0u64;

    for k in 0..=n {
        // Lexicographic k-combinations of 0..n.
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            nodes += 1;
            let covered = idx.iter().fold(0u64, |acc, &v| acc | rows[v]);
            if covered == full {
                return Ok(GammaResult {
                    gamma: k,
                    witness: idx.iter().copied().collect(),
                    nodes_explored: nodes,
                    canonical: true,
                });
            }
            let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
                break;
            };
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    unreachable!("the full vertex set always dominates")
}

/// Greedy dominating set: repeatedly take the vertex covering the most
/// uncovered vertices, lowest index on ties.
pub fn greedy_dominating(g: &Graph) -> VertexSet {
    let w = g.words_per_row();
    let mut uncovered = VertexSet::full(g.n()).to_words(w);
    let mut chosen = VertexSet::new();
    while popcount(&uncovered) > 0 {
        let (best, _) = (0..g.n())
            .map(|v| (v, and_count(g.row(v), &uncovered)))
            .fold((0, 0), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
        chosen.insert(best);
        and_not_assign(&mut uncovered, g.row(best));
    }
    chosen
}

/// Size of the maximal 2-packing built by scanning vertices in index order
/// and keeping each one whose closed neighborhood misses all kept ones.
pub fn two_packing_lower_bound(g: &Graph) -> usize {
    let mut union = vec![0u64; g.words_per_row()];
    let mut size = 0;
    for v in 0..g.n() {
        if and_count(g.row(v), &union) == 0 {
            or_assign(&mut union, g.row(v));
            size += 1;
        }
    }
    size
}

pub fn gamma_exact(g: &Graph) -> Result<GammaResult> {
    gamma_exact_with(g, &SolverConfig::default())
}

pub fn gamma_exact_with(g: &Graph, config: &SolverConfig) -> Result<GammaResult> {
    let greedy = greedy_dominating(g);
    let mut search = BranchAndBound::new(g, config.node_budget, greedy);
    let w = g.words_per_row();
    search.run(&mut vec![0u64; w], &mut vec![0u64; w], &mut Vec::new(), 0, 0)?;
    let gamma = search.best.len();
    let mut nodes = search.nodes;

    if g.n() <= CANONICAL_CAP {
        let mut lex = LexSearch::new(g, gamma, 1, config.node_budget.saturating_sub(nodes));
        lex.run()?;
        nodes += lex.nodes;
        let witness = lex
            .found
            .pop()
            .expect("branch and bound proved a dominating set of this size exists");
        return Ok(GammaResult {
            gamma,
            witness,
            nodes_explored: nodes,
            canonical: true,
        });
    }
    Ok(GammaResult {
        gamma,
        witness: search.best.iter().copied().collect(),
        nodes_explored: nodes,
        canonical: false,
    })
}

/// All minimum dominating sets in lexicographic order, at most `limit`.
pub fn enumerate_minimum_dominating_sets(g: &Graph, limit: usize) -> Result<Vec<VertexSet>> {
    if g.n() > ENUMERATE_CAP {
        return Err(Error::SizeCap {
            what: "minimum dominating set enumeration input",
            n: g.n(),
            cap: ENUMERATE_CAP,
        });
    }
    let gamma = gamma_exact(g)?.gamma;
    let mut lex = LexSearch::new(g, gamma, limit, DEFAULT_NODE_BUDGET);
    lex.run()?;
    Ok(lex.found)
}

#[inline]
fn and_count(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as usize).sum()
}

#[inline]
fn and_not_count(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x & !y).count_ones() as usize).sum()
}

#[inline]
fn or_assign(a: &mut [u64], b: &[u64]) {
    a.iter_mut().zip(b).for_each(|(x, y)| *x |= y);
}

#[inline]
fn and_not_assign(a: &mut [u64], b: &[u64]) {
    a.iter_mut().zip(b).for_each(|(x, y)| *x &= !y);
}

#[inline]
fn set_bit(a: &mut [u64], v: usize) {
    a[v / WORD_BITS] |= 1 << (v % WORD_BITS);
}

/// Smallest number of sets whose sizes, largest first, can add up to `need`.
fn coverage_bound(gains: &mut [usize], need: usize) -> Option<usize> {
    gains.sort_unstable_by(|a, b| b.cmp(a));
    let mut total = 0;
    for (i, &gain) in gains.iter().enumerate() {
        if total >= need {
            return Some(i);
        }
        total += gain;
    }
    (total >= need).then_some(gains.len())
}

struct BranchAndBound<'g> {
    g: &'g Graph,
    full: Vec<u64>,
    budget: u64,
    nodes: u64,
    best: Vec<usize>,
}

impl<'g> BranchAndBound<'g> {
    fn new(g: &'g Graph, budget: u64, incumbent: VertexSet) -> Self {
        Self {
            g,
            full: VertexSet::full(g.n()).to_words(g.words_per_row()),
            budget,
            nodes: 0,
            best: incumbent.to_vec(),
        }
    }

    /// Greedy packing of uncovered vertices whose available dominator sets
    /// `N[w] \ forbidden` are pairwise disjoint.
    fn residual_packing(&self, uncovered: &[u64], forbidden: &[u64]) -> usize {
        let mut union = vec![0u64; self.full.len()];
        let mut size = 0;
        for w in iter_bits(uncovered) {
            let row = self.g.row(w);
            let clash = row
                .iter()
                .zip(forbidden)
                .zip(&union)
                .any(|((r, f), u)| r & !f & u != 0);
            if !clash {
                for ((u, r), f) in union.iter_mut().zip(row).zip(forbidden) {
                    *u |= r & !f;
                }
                size += 1;
            }
        }
        size
    }

    fn run(
        &mut self,
        covered: &mut Vec<u64>,
        forbidden: &mut Vec<u64>,
        chosen: &mut Vec<usize>,
        inherited_packing: usize,
        depth: usize,
    ) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded { nodes: self.nodes });
        }
        let uncovered: Vec<u64> = self.full.iter().zip(covered.iter()).map(|(f, c)| f & !c).collect();
        let need = popcount(&uncovered);
        if need == 0 {
            if chosen.len() < self.best.len() {
                self.best = chosen.clone();
            }
            return Ok(());
        }
        if chosen.len() + 1 >= self.best.len() {
            return Ok(());
        }

        // Fail-first branch vertex; a vertex with no available dominator
        // makes the node infeasible.
        let mut branch = usize::MAX;
        let mut fewest = usize::MAX;
        for w in iter_bits(&uncovered) {
            let avail = and_not_count(self.g.row(w), forbidden);
            if avail < fewest {
                fewest = avail;
                branch = w;
                if avail == 0 {
                    return Ok(());
                }
            }
        }

        let mut gains: Vec<(usize, usize)> = (0..self.g.n())
            .filter(|&u| forbidden[u / WORD_BITS] & (1 << (u % WORD_BITS)) == 0)
            .map(|u| (u, and_count(self.g.row(u), &uncovered)))
            .filter(|&(_, gain)| gain > 0)
            .collect();
        let mut sizes: Vec<usize> = gains.iter().map(|&(_, s)| s).collect();
        let Some(cover_lb) = coverage_bound(&mut sizes, need) else {
            return Ok(());
        };
        let packing = if depth.is_multiple_of(PACKING_REFRESH_LEVELS) {
            self.residual_packing(&uncovered, forbidden)
        } else {
            inherited_packing.saturating_sub(depth % PACKING_REFRESH_LEVELS)
        };
        let packing_base = if depth.is_multiple_of(PACKING_REFRESH_LEVELS) {
            packing
        } else {
            inherited_packing
        };
        if chosen.len() + cover_lb.max(packing) >= self.best.len() {
            return Ok(());
        }

        gains.retain(|&(u, _)| self.g.row(branch)[u / WORD_BITS] & (1 << (u % WORD_BITS)) != 0);
        gains.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));

        let saved_forbidden = forbidden.clone();
        for &(u, _) in &gains {
            let saved_covered = covered.clone();
            or_assign(covered, self.g.row(u));
            chosen.push(u);
            self.run(covered, forbidden, chosen, packing_base, depth + 1)?;
            chosen.pop();
            *covered = saved_covered;
            set_bit(forbidden, u);
            if chosen.len() + 1 >= self.best.len() {
                break;
            }
        }
        *forbidden = saved_forbidden;
        Ok(())
    }
}

/// Depth-first search over increasing vertex sequences of a fixed size, in
/// lexicographic order. Collects dominating sets until `limit` are found.
struct LexSearch<'g> {
    g: &'g Graph,
    size: usize,
    limit: usize,
    budget: u64,
    nodes: u64,
    /// Largest index in `N[w]`: the last vertex able to dominate `w`.
    last_dominator: Vec<usize>,
    found: Vec<VertexSet>,
}

impl<'g> LexSearch<'g> {
    fn new(g: &'g Graph, size: usize, limit: usize, budget: u64) -> Self {
        let last_dominator = (0..g.n())
            .map(|w| iter_bits(g.row(w)).last().expect("closed rows are non-empty"))
            .collect();
        Self {
            g,
            size,
            limit,
            budget,
            nodes: 0,
            last_dominator,
            found: Vec::new(),
        }
    }

    fn run(&mut self) -> Result<()> {
        if self.limit == 0 {
            return Ok(());
        }
        let w = self.g.words_per_row();
        let mut uncovered = VertexSet::full(self.g.n()).to_words(w);
        let mut chosen = Vec::with_capacity(self.size);
        self.descend(&mut uncovered, &mut chosen, 0)
    }

    /// Lower bound on the dominators still needed when only vertices
    /// `>= next` may be chosen: greedy packing of uncovered vertices by
    /// their dominators restricted to that range.
    fn packing_from(&self, uncovered: &[u64], next: usize) -> usize {
        let w = uncovered.len();
        let mut allowed = vec![0u64; w];
        for v in next..self.g.n() {
            set_bit(&mut allowed, v);
        }
        let mut union = vec![0u64; w];
        let mut size = 0;
        for x in iter_bits(uncovered) {
            let row = self.g.row(x);
            if row.iter().zip(&allowed).zip(&union).all(|((r, a), u)| r & a & u == 0) {
                for ((u, r), a) in union.iter_mut().zip(row).zip(&allowed) {
                    *u |= r & a;
                }
                size += 1;
            }
        }
        size
    }

    fn descend(&mut self, uncovered: &mut Vec<u64>, chosen: &mut Vec<usize>, next: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded { nodes: self.nodes });
        }
        if popcount(uncovered) == 0 {
            if chosen.len() == self.size {
                self.found.push(chosen.iter().copied().collect());
            }
            return Ok(());
        }
        let slots = self.size - chosen.len();
        if slots == 0 {
            return Ok(());
        }
        if iter_bits(uncovered).any(|x| self.last_dominator[x] < next) {
            return Ok(());
        }
        if self.packing_from(uncovered, next) > slots {
            return Ok(());
        }
        let n = self.g.n();
        for v in next..=n - slots {
            let saved = uncovered.clone();
            and_not_assign(uncovered, self.g.row(v));
            chosen.push(v);
            self.descend(uncovered, chosen, v + 1)?;
            chosen.pop();
            *uncovered = saved;
            if self.found.len() >= self.limit {
                return Ok(());
            }
            // Once `v` is passed over, some uncovered vertex may lose its
            // last possible dominator.
            if iter_bits(uncovered).any(|x| self.last_dominator[x] <= v) {
                return Ok(());
            }
        }
        Ok(())
    }
}
