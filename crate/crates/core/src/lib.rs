//! Instance-level verification of Vizing's inequality `γ(G □ H) ≥ γ(G)γ(H)`.
//!
//! The crate bundles an exact domination solver, Cartesian products that
//! remember their coordinates, checkers for the inequality and related
//! bounds, a block-partition certificate engine, and seeded Monte Carlo
//! experiments over Erdős–Rényi graphs.

pub mod block;
pub mod error;
pub mod experiments;
pub mod graph;
pub mod io;
pub mod product;
pub mod random;
pub mod solver;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSet, MAX_VERTICES};
pub use io::{emit_edgelist, emit_graph6, parse_edgelist, parse_graph6, parse_graph6_lines};
pub use product::{cartesian_product, Coords, ProductGraph};
pub use random::erdos_renyi;
pub use solver::{
    enumerate_minimum_dominating_sets, gamma_bruteforce, gamma_exact, gamma_exact_with,
    greedy_dominating, two_packing_lower_bound, GammaResult, SolverConfig,
};
pub use verify::{check_corollary_bound, check_pair, check_theorem_condition, PairReport};
