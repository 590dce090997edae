//! Block labels: every block `G_i □ H_j` of a dominated product is a G-cell
//! block (its strip `G × H_j` holds at least `|H_j|` dominators) or an H-cell
//! block (its strip `G_i × H` holds at least `|G_i|` dominators).
//!
//! The H-cell side comes with a constructive witness. When the strip
//! `G × H_j` holds fewer than `|H_j|` vertices of `D`, some layer
//! `G × {h*}`, `h* ∈ H_j`, holds none. Each `(u, h*)` with `u ∈ G_i` is then
//! dominated from its own fiber `{u} × H`, and distinct `u` give distinct
//! dominators.

use serde::{Deserialize, Serialize};

use super::partition::Partition;
use crate::error::{Error, Result};
use crate::graph::VertexSet;
use crate::product::ProductGraph;

/// `{u ∈ g_part : (u, v) ∈ d for some v ∈ h_part}`.
pub fn projection_set(pg: &ProductGraph, d: &VertexSet, g_part: &VertexSet, h_part: &VertexSet) -> VertexSet {
    d.iter()
        .map(|x| pg.unflat(x))
        .filter(|(u, v)| g_part.contains(*u) && h_part.contains(*v))
        .map(|(u, _)| u)
        .collect()
}

/// Number of `D` vertices in `g_part × h_part`.
pub(crate) fn count_in(pg: &ProductGraph, d: &VertexSet, g_part: &VertexSet, h_part: &VertexSet) -> usize {
    d.iter()
        .map(|x| pg.unflat(x))
        .filter(|(u, v)| g_part.contains(*u) && h_part.contains(*v))
        .count()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HCellWitness {
    /// `h* ∈ H_j` with no vertex of `D` in `G × {h*}`.
    pub empty_layer: usize,
    /// `(u, x)` for each `u ∈ G_i`: `x ∈ D` is a flat index in `{u} × H`
    /// dominating `(u, h*)`.
    pub dominators: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockLabel {
    pub i: usize,
    pub j: usize,
    pub is_g_cell: bool,
    pub is_h_cell: bool,
    pub d_count_in_block: usize,
    /// `|D ∩ (G × H_j)|`
    pub g_strip_count: usize,
    /// `|D ∩ (G_i × H)|`
    pub h_strip_count: usize,
    pub witness: Option<HCellWitness>,
}

fn require_dominating(pg: &ProductGraph, d: &VertexSet) -> Result<()> {
    if !pg.graph.is_dominating(d)? {
        return Err(Error::Precondition(
            "block labels are only defined for a dominating set of the product".into(),
        ));
    }
    Ok(())
}

/// Labels block `(i, j)` by the two strip counts.
pub fn classify_block(
    pg: &ProductGraph,
    d: &VertexSet,
    partition_g: &Partition,
    partition_h: &Partition,
    i: usize,
    j: usize,
) -> Result<BlockLabel> {
    require_dominating(pg, d)?;
    if i >= partition_g.len() || j >= partition_h.len() {
        return Err(Error::InvalidInput(format!(
            "block ({i}, {j}) outside a {}x{} grid",
            partition_g.len(),
            partition_h.len()
        )));
    }
    Ok(label(pg, d, partition_g.part(i), partition_h.part(j), i, j))
}

fn label(pg: &ProductGraph, d: &VertexSet, g_i: &VertexSet, h_j: &VertexSet, i: usize, j: usize) -> BlockLabel {
    let all_g = VertexSet::full(pg.g_size);
    let all_h = VertexSet::full(pg.h_size);
    let g_strip_count = count_in(pg, d, &all_g, h_j);
    let h_strip_count = count_in(pg, d, g_i, &all_h);
    BlockLabel {
        i,
        j,
        is_g_cell: g_strip_count >= h_j.len(),
        is_h_cell: h_strip_count >= g_i.len(),
        d_count_in_block: count_in(pg, d, g_i, h_j),
        g_strip_count,
        h_strip_count,
        witness: None,
    }
}

/// Builds the H-cell witness for a block whose strip `G × H_j` is short.
/// Returns `None` if the construction breaks down.
fn h_cell_witness(pg: &ProductGraph, d: &VertexSet, g_i: &VertexSet, h_j: &VertexSet) -> Option<HCellWitness> {
    let occupied = pg.project_to_h(d);
    let empty_layer = h_j.iter().find(|v| !occupied.contains(*v))?;
    let dominators = g_i
        .iter()
        .map(|u| {
            let target = pg.flat(u, empty_layer);
            pg.graph
                .closed_nbhd(target)
                .iter()
                .find(|x| d.contains(*x) && pg.unflat(*x).0 == u)
                .map(|x| (u, x))
        })
        .collect::<Option<Vec<_>>>()?;
    Some(HCellWitness {
        empty_layer,
        dominators,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObservationReport {
    /// Row-major over `(i, j)`.
    pub labels: Vec<BlockLabel>,
    /// First block that received neither label or whose witness could not
    /// be built.
    pub failure: Option<(usize, usize)>,
}

impl ObservationReport {
    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }
}

/// Labels every block and attaches an H-cell witness to each block that is
/// not a G-cell block.
pub fn verify_observation(
    pg: &ProductGraph,
    d: &VertexSet,
    partition_g: &Partition,
    partition_h: &Partition,
) -> Result<ObservationReport> {
    require_dominating(pg, d)?;
    let mut labels = Vec::with_capacity(partition_g.len() * partition_h.len());
    let mut failure = None;
    for (i, g_i) in partition_g.parts.iter().enumerate() {
        for (j, h_j) in partition_h.parts.iter().enumerate() {
            let mut l = label(pg, d, g_i, h_j, i, j);
            if !l.is_g_cell {
                l.witness = h_cell_witness(pg, d, g_i, h_j);
                if l.witness.is_none() {
                    failure.get_or_insert((i, j));
                }
            }
            if !(l.is_g_cell || l.is_h_cell) {
                failure.get_or_insert((i, j));
            }
            labels.push(l);
        }
    }
    Ok(ObservationReport { labels, failure })
}

/// Re-checks one H-cell witness against the product and `D`: the layer is
/// free of `D`, every `u ∈ G_i` has exactly one listed dominator, each lies
/// in `D ∩ ({u} × H)` and dominates `(u, h*)`.
pub fn audit_witness(
    pg: &ProductGraph,
    d: &VertexSet,
    partition_g: &Partition,
    partition_h: &Partition,
    label: &BlockLabel,
) -> std::result::Result<(), String> {
    let w = label
        .witness
        .as_ref()
        .ok_or_else(|| format!("block ({}, {}) has no witness", label.i, label.j))?;
    let g_i = partition_g.part(label.i);
    if !partition_h.part(label.j).contains(w.empty_layer) {
        return Err(format!("layer {} is not in H_{}", w.empty_layer, label.j));
    }
    if pg.project_to_h(d).contains(w.empty_layer) {
        return Err(format!("layer {} holds a vertex of D", w.empty_layer));
    }
    let sources: VertexSet = w.dominators.iter().map(|&(u, _)| u).collect();
    if sources != *g_i || w.dominators.len() != g_i.len() {
        return Err(format!("witness for block ({}, {}) does not cover G_i once", label.i, label.j));
    }
    let mut used = VertexSet::new();
    for &(u, x) in &w.dominators {
        if x >= pg.graph.n() || !d.contains(x) {
            return Err(format!("dominator {x} of column {u} is not in D"));
        }
        if pg.unflat(x).0 != u {
            return Err(format!("dominator {x} lies outside column {u}"));
        }
        if !pg.graph.closed_nbhd(pg.flat(u, w.empty_layer)).contains(x) {
            return Err(format!("{x} does not dominate ({u}, {})", w.empty_layer));
        }
        if !used.insert(x) {
            return Err(format!("dominator {x} used twice"));
        }
    }
    Ok(())
}
