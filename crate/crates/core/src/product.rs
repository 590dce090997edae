//! Cartesian products with the coordinate bijection kept alongside.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet, MAX_VERTICES};

/// `G □ H` on flat indices `flat(u, v) = u * h_size + v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductGraph {
    pub graph: Graph,
    pub g_size: usize,
    pub h_size: usize,
}

/// Factor sizes of a product, enough to translate between flat indices and
/// coordinates without holding the graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coords {
    pub g_size: usize,
    pub h_size: usize,
}

impl Coords {
    #[inline]
    pub fn flat(&self, u: usize, v: usize) -> usize {
        debug_assert!(u < self.g_size && v < self.h_size);
        u * self.h_size + v
    }

    #[inline]
    pub fn unflat(&self, x: usize) -> (usize, usize) {
        (x / self.h_size, x % self.h_size)
    }

    pub fn transposed(&self) -> Coords {
        Coords {
            g_size: self.h_size,
            h_size: self.g_size,
        }
    }

    /// Maps a set of flat indices to the product with the factors swapped.
    pub fn transpose_set(&self, s: &VertexSet) -> VertexSet {
        let t = self.transposed();
        s.iter()
            .map(|x| {
                let (u, v) = self.unflat(x);
                t.flat(v, u)
            })
            .collect()
    }

    /// The flat indices of `rows × cols`.
    pub fn region(&self, rows: &VertexSet, cols: &VertexSet) -> VertexSet {
        rows.iter()
            .flat_map(|u| cols.iter().map(move |v| self.flat(u, v)))
            .collect()
    }
}

pub fn cartesian_product(g: &Graph, h: &Graph) -> Result<ProductGraph> {
    let n = g.n() * h.n();
    if n > MAX_VERTICES {
        return Err(Error::SizeCap {
            what: "Cartesian product",
            n,
            cap: MAX_VERTICES,
        });
    }
    let coords = Coords {
        g_size: g.n(),
        h_size: h.n(),
    };
    let mut graph = Graph::empty(n)?;
    for u in 0..g.n() {
        for (v1, v2) in h.edges() {
            graph.link(coords.flat(u, v1), coords.flat(u, v2));
        }
    }
    for (u1, u2) in g.edges() {
        for v in 0..h.n() {
            graph.link(coords.flat(u1, v), coords.flat(u2, v));
        }
    }
    Ok(ProductGraph {
        graph,
        g_size: g.n(),
        h_size: h.n(),
    })
}

impl ProductGraph {
    pub fn coords(&self) -> Coords {
        Coords {
            g_size: self.g_size,
            h_size: self.h_size,
        }
    }

    #[inline]
    pub fn flat(&self, u: usize, v: usize) -> usize {
        self.coords().flat(u, v)
    }

    #[inline]
    pub fn unflat(&self, x: usize) -> (usize, usize) {
        self.coords().unflat(x)
    }

    /// `{u : (u, v) ∈ s for some v}`.
    pub fn project_to_g(&self, s: &VertexSet) -> VertexSet {
        s.iter().map(|x| self.unflat(x).0).collect()
    }

    /// `{v : (u, v) ∈ s for some u}`.
    pub fn project_to_h(&self, s: &VertexSet) -> VertexSet {
        s.iter().map(|x| self.unflat(x).1).collect()
    }
}
