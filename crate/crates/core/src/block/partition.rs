use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// An ordered cover of `0..n` by disjoint parts.
///
/// Parts listed in `exempt` (frozen or drained by re-partitioning) are not
/// held to `min_part_size`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    pub parts: Vec<VertexSet>,
    pub min_part_size: usize,
    #[serde(default)]
    pub exempt: Vec<usize>,
}

/// Deals `0..n` into `parts` parts in index order: each part is first filled
/// to `min_size`, then the remainder goes round-robin from part 0.
pub fn build_partition(g: &Graph, parts: usize, min_size: usize) -> Result<Partition> {
    deal(g.n(), parts, min_size)
}

pub fn deal(n: usize, parts: usize, min_size: usize) -> Result<Partition> {
    if parts == 0 {
        return Err(Error::Precondition("a partition needs at least one part".into()));
    }
    if n < parts * min_size {
        return Err(Error::Precondition(format!(
            "{n} vertices cannot fill {parts} parts of size {min_size} ({n} < {})",
            parts * min_size
        )));
    }
    let mut out = vec![VertexSet::new(); parts];
    let filled = parts * min_size;
    for v in 0..filled {
        out[v / min_size].insert(v);
    }
    for v in filled..n {
        out[(v - filled) % parts].insert(v);
    }
    Ok(Partition {
        parts: out,
        min_part_size: min_size,
        exempt: Vec::new(),
    })
}

impl Partition {
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn part(&self, i: usize) -> &VertexSet {
        &self.parts[i]
    }

    /// Index of the part holding `v`.
    pub fn part_of(&self, v: usize) -> Option<usize> {
        self.parts.iter().position(|p| p.contains(v))
    }

    /// Checks disjointness, coverage of `0..n` and the size floor.
    pub fn validate(&self, n: usize) -> std::result::Result<(), String> {
        let mut seen = VertexSet::new();
        for (i, p) in self.parts.iter().enumerate() {
            if !p.is_disjoint(&seen) {
                return Err(format!("part {i} overlaps an earlier part"));
            }
            seen = seen.union(p);
            if p.len() < self.min_part_size && !self.exempt.contains(&i) {
                return Err(format!(
                    "part {i} has {} vertices, below the floor {}",
                    p.len(),
                    self.min_part_size
                ));
            }
        }
        if seen != VertexSet::full(n) {
            return Err(format!("parts do not cover exactly 0..{n}"));
        }
        Ok(())
    }
}
