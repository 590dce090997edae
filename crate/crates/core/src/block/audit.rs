//! Independent checker for re-partitioning traces.
//!
//! Everything is recomputed from the trace, the product and `D`; nothing
//! the engine computed internally is reused. Domination numbers recorded in
//! the trace are taken as given.

use super::observation::{audit_witness, ObservationReport};
use super::partition::Partition;
use super::repartition::{Outcome, RepartitionTrace, TRACE_SCHEMA_VERSION};
use crate::graph::VertexSet;
use crate::product::ProductGraph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub passed: bool,
    /// The first check that failed.
    pub failure: Option<String>,
}

impl From<Result<(), String>> for AuditReport {
    fn from(r: Result<(), String>) -> Self {
        match r {
            Ok(()) => AuditReport {
                passed: true,
                failure: None,
            },
            Err(e) => AuditReport {
                passed: false,
                failure: Some(e),
            },
        }
    }
}

pub fn audit_trace(trace: &RepartitionTrace, pg: &ProductGraph, d: &VertexSet) -> AuditReport {
    check_trace(trace, pg, d).into()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn check_trace(t: &RepartitionTrace, pg: &ProductGraph, d: &VertexSet) -> Result<(), String> {
    ensure(t.schema_version == TRACE_SCHEMA_VERSION, || {
        format!("schema version {} != {TRACE_SCHEMA_VERSION}", t.schema_version)
    })?;
    ensure((t.g_order, t.h_order) == (pg.g_size, pg.h_size), || {
        "factor orders do not match the product".into()
    })?;
    ensure(t.d == *d, || "trace was produced for a different D".into())?;
    let dominating = pg.graph.is_dominating(d).map_err(|e| e.to_string())?;
    ensure(dominating, || "D does not dominate the product".into())?;
    ensure(d.len() == t.gamma_product, || {
        format!("|D| = {} but the trace records gamma = {}", d.len(), t.gamma_product)
    })?;

    let swapped = t.swapped;
    let (rep_size, fixed_size) = if swapped { (pg.h_size, pg.g_size) } else { (pg.g_size, pg.h_size) };
    let (k, l) = if swapped { (t.gamma_h, t.gamma_g) } else { (t.gamma_g, t.gamma_h) };
    ensure((t.k, t.l) == (k, l) && k >= l, || "k and l do not match the orientation".into())?;
    let in_d = |u: usize, v: usize| {
        let x = if swapped { pg.flat(v, u) } else { pg.flat(u, v) };
        d.contains(x)
    };

    check_partition(&t.initial_partition, rep_size, k, l, "initial partition")?;
    check_partition(&t.fixed_partition, fixed_size, l, k, "fixed partition")?;
    ensure(t.rounds.len() <= t.l, || format!("{} rounds exceed l = {}", t.rounds.len(), t.l))?;

    let mut prev = t.initial_partition.parts.clone();
    for (idx, round) in t.rounds.iter().enumerate() {
        let r = idx;
        let name = format!("round {}", round.round);
        ensure(round.round == idx + 1 && round.column == r, || format!("{name}: numbering out of order"))?;
        let column = t.fixed_partition.part(r);
        let strip: usize = (0..rep_size)
            .map(|u| column.iter().filter(|&v| in_d(u, v)).count())
            .sum();
        ensure(strip == round.column_d_count, || format!("{name}: column count mismatch"))?;
        ensure(round.column_is_g_cell == (strip >= column.len()), || {
            format!("{name}: G-cell label mismatch")
        })?;

        let after = &round.partition_after;
        ensure(after.len() == k, || format!("{name}: partition has {} parts", after.len()))?;
        Partition {
            parts: after.clone(),
            min_part_size: 0,
            exempt: Vec::new(),
        }
        .validate(rep_size)
        .map_err(|e| format!("{name}: {e}"))?;
        for s in 0..r {
            ensure(after[s] == prev[s], || format!("{name}: frozen part {s} changed"))?;
        }

        let projects = |u: usize| column.iter().any(|v| in_d(u, v));
        let mut sources = VertexSet::new();
        let mut targets = VertexSet::new();
        for &(src, dst) in &round.exchange {
            ensure(sources.insert(src), || format!("{name}: source {src} repeated"))?;
            ensure(targets.insert(dst), || format!("{name}: exchange is not injective at {dst}"))?;
            ensure(prev[r].contains(src) && !projects(src), || {
                format!("{name}: source {src} is not a non-projection vertex of part {r}")
            })?;
            let from = prev.iter().position(|p| p.contains(dst));
            ensure(from.is_some_and(|i| i > r) && projects(dst), || {
                format!("{name}: target {dst} is not a projection vertex of a later part")
            })?;
            ensure(after[r].contains(dst), || format!("{name}: target {dst} not moved into part {r}"))?;
            let placed = after.iter().position(|p| p.contains(src));
            ensure(placed.is_some_and(|i| i > r), || format!("{name}: source {src} not moved out"))?;
        }
        ensure(sources.is_disjoint(&targets), || format!("{name}: sources and targets overlap"))?;
        if round.frozen_part.is_some() {
            let expected: VertexSet = prev[r..].iter().flat_map(|p| p.iter()).filter(|&u| projects(u)).collect();
            ensure(after[r] == expected, || {
                format!("{name}: frozen part is not the projection of the column")
            })?;
        }
        prev = after.clone();
    }

    let coords = pg.coords();
    let mut union = VertexSet::new();
    let mut total = 0;
    let mut claimed = 0;
    for (n, region) in t.regions.iter().enumerate() {
        let name = format!("region {n}");
        ensure(
            region.g_vertices.last().is_none_or(|m| m < pg.g_size)
                && region.h_vertices.last().is_none_or(|m| m < pg.h_size),
            || format!("{name}: out of range"),
        )?;
        let cells = coords.region(&region.g_vertices, &region.h_vertices);
        ensure(cells.is_disjoint(&union), || format!("{name}: overlaps an earlier region"))?;
        union = union.union(&cells);
        let actual = cells.intersection(d).len();
        ensure(actual == region.d_count, || {
            format!("{name}: claims {} vertices of D, holds {actual}", region.d_count)
        })?;
        let (rows, cols) = if swapped {
            (&region.h_vertices, &region.g_vertices)
        } else {
            (&region.g_vertices, &region.h_vertices)
        };
        let expected_claim = if region.kind.claims_column() { cols.len() } else { rows.len() };
        ensure(region.required == expected_claim, || format!("{name}: claimed bound mismatch"))?;
        ensure(region.d_count >= region.required, || format!("{name}: below its claimed bound"))?;
        total += region.d_count;
        claimed += region.required;
    }
    ensure(total == t.certified_count, || {
        format!("certified count {} != region total {total}", t.certified_count)
    })?;
    ensure(t.certified_count <= d.len(), || "certified count exceeds |D|".into())?;

    let target = t.gamma_g * t.gamma_h;
    match t.outcome {
        Outcome::DiagnosticFailure => {
            ensure(t.diagnostic.is_some(), || "diagnostic outcome without a diagnostic".into())?;
            ensure(t.regions.is_empty() && t.certified_count == 0, || {
                "diagnostic outcome carries a certificate".into()
            })?;
        }
        _ => {
            ensure(t.diagnostic.is_none(), || "certified outcome with a diagnostic".into())?;
            ensure(claimed >= target && t.certified_count >= target, || {
                format!("certified {} < gamma(G)gamma(H) = {target}", t.certified_count)
            })?;
        }
    }
    Ok(())
}

fn check_partition(p: &Partition, n: usize, parts: usize, min: usize, what: &str) -> Result<(), String> {
    ensure(p.len() == parts && p.min_part_size == min && p.exempt.is_empty(), || {
        format!("{what}: expected {parts} parts of at least {min}")
    })?;
    p.validate(n).map_err(|e| format!("{what}: {e}"))
}

/// Re-checks an observation report: labels recomputed from the strip
/// counts, every block labelled, and every H-cell witness valid.
pub fn audit_observation(
    pg: &ProductGraph,
    d: &VertexSet,
    partition_g: &Partition,
    partition_h: &Partition,
    report: &ObservationReport,
) -> AuditReport {
    let check = || -> Result<(), String> {
        ensure(report.labels.len() == partition_g.len() * partition_h.len(), || {
            "label count does not match the grid".into()
        })?;
        let all_g = VertexSet::full(pg.g_size);
        let all_h = VertexSet::full(pg.h_size);
        for label in &report.labels {
            let (g_i, h_j) = (partition_g.part(label.i), partition_h.part(label.j));
            let g_strip = coords_count(pg, d, &all_g, h_j);
            let h_strip = coords_count(pg, d, g_i, &all_h);
            ensure(label.is_g_cell == (g_strip >= h_j.len()), || {
                format!("block ({}, {}): G-cell label mismatch", label.i, label.j)
            })?;
            ensure(label.is_h_cell == (h_strip >= g_i.len()), || {
                format!("block ({}, {}): H-cell label mismatch", label.i, label.j)
            })?;
            ensure(label.is_g_cell || label.is_h_cell, || {
                format!("block ({}, {}) is unlabelled", label.i, label.j)
            })?;
            if !label.is_g_cell {
                audit_witness(pg, d, partition_g, partition_h, label)?;
            }
        }
        Ok(())
    };
    check().into()
}

fn coords_count(pg: &ProductGraph, d: &VertexSet, rows: &VertexSet, cols: &VertexSet) -> usize {
    pg.coords().region(rows, cols).intersection(d).len()
}
