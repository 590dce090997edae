//! Simple undirected graphs stored as rows of closed-neighborhood bitsets.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest vertex count accepted for a single graph (products included).
pub const MAX_VERTICES: usize = 4096;

pub(crate) const WORD_BITS: usize = 64;

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(WORD_BITS)
}

/// A set of vertex indices backed by 64-bit words.
///
/// The word vector never carries trailing zero words, so two sets holding
/// the same elements compare equal regardless of how they were built.
/// Ordering is lexicographic on the ascending element sequence, which makes
/// `{0, 3} < {1, 2}` and `{0} < {0, 1}`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct VertexSet {
    words: Vec<u64>,
}

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        let mut words = vec![u64::MAX; words_for(n)];
        if !n.is_multiple_of(WORD_BITS) {
            if let Some(last) = words.last_mut() {
                *last = (1u64 << (n % WORD_BITS)) - 1;
            }
        }
        Self { words }
    }

    pub(crate) fn from_words(words: &[u64]) -> Self {
        let mut s = Self {
            words: words.to_vec(),
        };
        s.trim();
        s
    }

    /// Copies the set into a fixed-width word buffer.
    pub(crate) fn to_words(&self, width: usize) -> Vec<u64> {
        let mut out = vec![0u64; width];
        out[..self.words.len()].copy_from_slice(&self.words);
        out
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn insert(&mut self, v: usize) -> bool {
        let (w, b) = (v / WORD_BITS, v % WORD_BITS);
        if w >= self.words.len() {
            self.words.resize(w + 1, 0);
        }
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn remove(&mut self, v: usize) -> bool {
        let (w, b) = (v / WORD_BITS, v % WORD_BITS);
        if w >= self.words.len() {
            return false;
        }
        let present = self.words[w] & (1 << b) != 0;
        self.words[w] &= !(1 << b);
        self.trim();
        present
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        self.words
            .get(v / WORD_BITS)
            .is_some_and(|w| w & (1 << (v % WORD_BITS)) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Largest element, if any.
    pub fn last(&self) -> Option<usize> {
        let last = *self.words.last()?;
        Some((self.words.len() - 1) * WORD_BITS + 63 - last.leading_zeros() as usize)
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    /// Elements in ascending order.
    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn union(&self, other: &Self) -> Self {
        let (long, short) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = long.words.clone();
        for (w, o) in words.iter_mut().zip(&short.words) {
            *w |= o;
        }
        Self { words }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let words: Vec<u64> = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & b)
            .collect();
        Self::from_words(&words)
    }

    pub fn difference(&self, other: &Self) -> Self {
        let words: Vec<u64> = self
            .words
            .iter()
            .enumerate()
            .map(|(i, a)| a & !other.words.get(i).copied().unwrap_or(0))
            .collect();
        Self::from_words(&words)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words
            .iter()
            .enumerate()
            .all(|(i, a)| a & !other.words.get(i).copied().unwrap_or(0) == 0)
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = Self::new();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Serialized as a sorted array of indices.
impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        Ok(Vec::<usize>::deserialize(deserializer)?.into_iter().collect())
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * WORD_BITS + bit);
            }
            self.index += 1;
            self.current = *self.words.get(self.index)?;
        }
    }
}

/// Iterates the set bits of a raw word slice.
pub(crate) fn iter_bits(words: &[u64]) -> Iter<'_> {
    Iter {
        words,
        index: 0,
        current: words.first().copied().unwrap_or(0),
    }
}

#[inline]
pub(crate) fn popcount(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

/// An immutable simple undirected graph on vertices `0..n`.
///
/// Row `v` of the adjacency store is the closed neighborhood `N[v]`; the
/// diagonal bit is always set and open adjacency is obtained by ignoring it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::SizeCap {
                what: "graph",
                n,
                cap: MAX_VERTICES,
            });
        }
        let words = words_for(n);
        let mut rows = vec![0u64; n * words];
        for v in 0..n {
            rows[v * words + v / WORD_BITS] |= 1 << (v % WORD_BITS);
        }
        Ok(Self { n, words, rows })
    }

    /// Builds a graph from an edge list. Duplicate edges collapse; loops and
    /// out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::empty(n)?;
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidInput(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::InvalidInput(format!("self-loop on vertex {u}")));
            }
            g.link(u, v);
        }
        Ok(g)
    }

    #[inline]
    pub(crate) fn link(&mut self, u: usize, v: usize) {
        self.rows[u * self.words + v / WORD_BITS] |= 1 << (v % WORD_BITS);
        self.rows[v * self.words + u / WORD_BITS] |= 1 << (u % WORD_BITS);
    }

    pub fn complete(n: usize) -> Result<Self> {
        Self::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
    }

    pub fn path(n: usize) -> Result<Self> {
        Self::from_edges(n, (1..n).map(|v| (v - 1, v)))
    }

    /// Cycle on `n >= 3` vertices in index order.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidInput(format!("cycle needs 3 vertices, got {n}")));
        }
        Self::from_edges(n, (0..n).map(|v| (v, (v + 1) % n)))
    }

    /// Star `K_{1,leaves}` with center 0.
    pub fn star(leaves: usize) -> Result<Self> {
        Self::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v)))
    }

    /// Vertex-disjoint union; the vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Self> {
        let shift = self.n;
        Self::from_edges(
            self.n + other.n,
            self.edges()
                .chain(other.edges().map(|(u, v)| (u + shift, v + shift))),
        )
    }

    /// Returns a copy with the edge `{u, v}` added.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Self> {
        if u >= self.n || v >= self.n || u == v {
            return Err(Error::InvalidInput(format!("cannot add edge ({u}, {v})")));
        }
        let mut g = self.clone();
        g.link(u, v);
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of 64-bit words in each neighborhood row.
    #[inline]
    pub fn words_per_row(&self) -> usize {
        self.words
    }

    /// Raw closed-neighborhood row of `v`.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    /// `N[v]` as an owned set.
    pub fn closed_nbhd(&self, v: usize) -> VertexSet {
        VertexSet::from_words(self.row(v))
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.row(u)[v / WORD_BITS] & (1 << (v % WORD_BITS)) != 0
    }

    /// Open neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        iter_bits(self.row(v)).filter(move |&u| u != v)
    }

    pub fn degree(&self, v: usize) -> usize {
        popcount(self.row(v)) - 1
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    fn check_set(&self, s: &VertexSet) -> Result<()> {
        match s.last() {
            Some(v) if v >= self.n => Err(Error::InvalidInput(format!(
                "vertex {v} out of range for a graph on {} vertices",
                self.n
            ))),
            _ => Ok(()),
        }
    }

    /// `N[S]`, the union of the closed neighborhoods of the members of `s`.
    pub fn closed_neighborhood(&self, s: &VertexSet) -> Result<VertexSet> {
        self.check_set(s)?;
        let mut acc = vec![0u64; self.words];
        for v in s {
            for (a, r) in acc.iter_mut().zip(self.row(v)) {
                *a |= r;
            }
        }
        Ok(VertexSet::from_words(&acc))
    }

    /// Whether `N[S]` is the whole vertex set.
    pub fn is_dominating(&self, s: &VertexSet) -> Result<bool> {
        Ok(self.closed_neighborhood(s)?.len() == self.n)
    }

    /// Checks the closed-row invariants: diagonal set, symmetry, no stray
    /// bits beyond `n`.
    pub fn check_invariants(&self) -> bool {
        (0..self.n).all(|v| {
            let row = self.row(v);
            row[v / WORD_BITS] & (1 << (v % WORD_BITS)) != 0
                && iter_bits(row).all(|u| u < self.n && self.row(u)[v / WORD_BITS] & (1 << (v % WORD_BITS)) != 0)
        })
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    #[test]
    fn center_of_p3_covers_everything() {
        let g = Graph::path(3).unwrap();
        assert_eq!(g.closed_neighborhood(&set(&[1])).unwrap(), set(&[0, 1, 2]));
    }

    #[test]
    fn empty_set_has_empty_neighborhood() {
        let g = Graph::cycle(5).unwrap();
        assert!(g.closed_neighborhood(&VertexSet::new()).unwrap().is_empty());
    }

    #[test]
    fn c5_union_of_two_rows() {
        let g = Graph::cycle(5).unwrap();
        assert_eq!(
            g.closed_neighborhood(&set(&[0, 2])).unwrap(),
            set(&[0, 1, 2, 3, 4])
        );
    }

    #[test]
    fn domination_examples() {
        assert!(Graph::complete(4).unwrap().is_dominating(&set(&[0])).unwrap());
        assert!(!Graph::path(4).unwrap().is_dominating(&set(&[0])).unwrap());
        assert!(Graph::cycle(6).unwrap().is_dominating(&set(&[0, 3])).unwrap());
    }

    #[test]
    fn out_of_range_bit_is_rejected() {
        let g = Graph::path(3).unwrap();
        assert!(matches!(
            g.closed_neighborhood(&set(&[3])),
            Err(Error::InvalidInput(_))
        ));
        assert!(g.is_dominating(&set(&[0, 7])).is_err());
    }

    #[test]
    fn set_ordering_is_lexicographic() {
        assert!(set(&[0, 3]) < set(&[1, 2]));
        assert!(set(&[0]) < set(&[0, 1]));
        assert!(set(&[]) < set(&[0]));
        assert_eq!(set(&[70]).last(), Some(70));
        let mut s = set(&[70]);
        s.remove(70);
        assert_eq!(s, VertexSet::new());
    }

    #[test]
    fn full_set_sizes() {
        for n in [0, 1, 63, 64, 65, 130] {
            let f = VertexSet::full(n);
            assert_eq!(f.len(), n);
            assert_eq!(f.last(), n.checked_sub(1));
        }
    }

    #[test]
    fn builders_respect_invariants() {
        for g in [
            Graph::empty(3).unwrap(),
            Graph::complete(70).unwrap(),
            Graph::cycle(65).unwrap(),
            Graph::star(9).unwrap(),
        ] {
            assert!(g.check_invariants());
        }
        assert_eq!(Graph::complete(5).unwrap().edge_count(), 10);
        assert!(Graph::empty(MAX_VERTICES + 1).is_err());
        assert!(Graph::from_edges(2, [(0, 0)]).is_err());
    }
}
