//! Block partitions of a product and the counting certificate built on them.

pub mod audit;
pub mod observation;
pub mod partition;
pub mod repartition;

use crate::graph::Graph;

pub use audit::{audit_observation, audit_trace, AuditReport};
pub use observation::{
    audit_witness, classify_block, projection_set, verify_observation, BlockLabel, HCellWitness,
    ObservationReport,
};
pub use partition::{build_partition, deal, Partition};
pub use repartition::{
    certify_with_retry, run_repartitioning, Certifier, CountedRegion, Diagnostic, Factor, Outcome,
    RegionKind, RepartitionTrace, RoundBlock, RoundRecord, TRACE_SCHEMA_VERSION,
};

use crate::error::Result;

/// Default block partitions of `(G, H)`: `γ(G)` parts of `G` and `γ(H)` parts
/// of `H`, each with the theorem's size floor when the orders allow it and
/// the largest feasible floor otherwise.
pub fn default_partitions(g: &Graph, h: &Graph, gamma_g: usize, gamma_h: usize) -> Result<(Partition, Partition)> {
    let floor = |n: usize, parts: usize, wanted: usize| wanted.min(n / parts.max(1));
    Ok((
        deal(g.n(), gamma_g, floor(g.n(), gamma_g, gamma_h))?,
        deal(h.n(), gamma_h, floor(h.n(), gamma_h, gamma_g))?,
    ))
}
