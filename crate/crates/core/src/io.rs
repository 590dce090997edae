//! graph6 and edge-list readers and writers.
//!
//! graph6 follows the nauty encoding: a size header (one byte `n + 63` for
//! `n <= 62`, otherwise `~` and three 6-bit groups) followed by the upper
//! triangle `x(i, j)` for `i < j`, column by column, packed six bits per
//! byte with 63 added. Unused trailing bits must be zero.

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

const BIAS: u8 = 63;
const LONG_HEADER: u8 = 126;
const OPTIONAL_PREFIX: &str = ">>graph6<<";

fn g6_err(offset: usize, message: impl Into<String>) -> Error {
    Error::Graph6 {
        offset,
        message: message.into(),
    }
}

fn six_bits(bytes: &[u8], offset: usize) -> Result<u8> {
    let b = *bytes
        .get(offset)
        .ok_or_else(|| g6_err(offset, "unexpected end of input"))?;
    if !(BIAS..=126).contains(&b) {
        return Err(g6_err(offset, format!("byte {b} outside 63..=126")));
    }
    Ok(b - BIAS)
}

/// Parses a single graph6 line. Surrounding whitespace and the optional
/// `>>graph6<<` prefix are ignored.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let line = text.trim();
    let skip = if line.starts_with(OPTIONAL_PREFIX) {
        OPTIONAL_PREFIX.len()
    } else {
        0
    };
    let bytes = &line.as_bytes()[skip..];
    let err_at = |o: usize| skip + o;

    if bytes.is_empty() {
        return Err(g6_err(err_at(0), "empty input"));
    }
    let (n, mut pos) = if bytes[0] == LONG_HEADER {
        if bytes.get(1) == Some(&LONG_HEADER) {
            return Err(g6_err(err_at(1), "eight-byte header exceeds the vertex cap"));
        }
        let mut n = 0usize;
        for k in 1..4 {
            n = (n << 6) | six_bits(bytes, k).map_err(|e| shift(e, skip))? as usize;
        }
        (n, 4)
    } else {
        (six_bits(bytes, 0).map_err(|e| shift(e, skip))? as usize, 1)
    };
    if n > MAX_VERTICES {
        return Err(g6_err(err_at(0), format!("{n} vertices exceeds cap {MAX_VERTICES}")));
    }

    let total_bits = n * n.saturating_sub(1) / 2;
    let payload_len = total_bits.div_ceil(6);
    if bytes.len() != pos + payload_len {
        return Err(g6_err(
            err_at(bytes.len().min(pos + payload_len)),
            format!(
                "expected {payload_len} payload bytes for {n} vertices, found {}",
                bytes.len() - pos
            ),
        ));
    }

    let mut g = Graph::empty(n)?;
    let mut bit = 0usize;
    let mut current = 0u8;
    for j in 1..n {
        for i in 0..j {
            if bit.is_multiple_of(6) {
                current = six_bits(bytes, pos).map_err(|e| shift(e, skip))?;
                pos += 1;
            }
            if current & (1 << (5 - bit % 6)) != 0 {
                g.link(i, j);
            }
            bit += 1;
        }
    }
    if !bit.is_multiple_of(6) {
        let pad_mask = (1u8 << (6 - bit % 6)) - 1;
        if current & pad_mask != 0 {
            return Err(g6_err(err_at(pos - 1), "nonzero padding bits"));
        }
    }
    Ok(g)
}

fn shift(e: Error, by: usize) -> Error {
    match e {
        Error::Graph6 { offset, message } => Error::Graph6 {
            offset: offset + by,
            message,
        },
        other => other,
    }
}

/// Encodes `g` as a graph6 line without a trailing newline.
pub fn emit_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else {
        out.push(LONG_HEADER);
        for k in (0..3).rev() {
            out.push(((n >> (6 * k)) & 0x3f) as u8 + BIAS);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + BIAS);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + BIAS);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

/// Parses a graph6 file holding one graph per line. Blank lines are skipped;
/// errors carry the 1-based line number.
pub fn parse_graph6_lines(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            parse_graph6(l).map_err(|e| Error::Corpus {
                line: i + 1,
                source: Box::new(e),
            })
        })
        .collect()
}

/// Parses the edge-list format: a first line holding `n`, then one `u v`
/// pair per line. Duplicate edges (in either orientation) are merged.
pub fn parse_edgelist(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (first_line, header) = lines.next().ok_or(Error::EdgeList {
        line: 1,
        message: "missing vertex count".into(),
    })?;
    let n: usize = header.parse().map_err(|_| Error::EdgeList {
        line: first_line,
        message: format!("bad vertex count {header:?}"),
    })?;
    let mut g = Graph::empty(n)?;

    for (line, l) in lines {
        let fields: Vec<&str> = l.split_whitespace().collect();
        let [a, b] = fields[..] else {
            return Err(Error::EdgeList {
                line,
                message: format!("expected two vertex indices, got {l:?}"),
            });
        };
        let parse = |s: &str| {
            s.parse::<usize>().map_err(|_| Error::EdgeList {
                line,
                message: format!("bad vertex index {s:?}"),
            })
        };
        let (u, v) = (parse(a)?, parse(b)?);
        for vertex in [u, v] {
            if vertex >= n {
                return Err(Error::VertexOutOfRange { line, vertex, n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop { line, vertex: u });
        }
        g.link(u, v);
    }
    Ok(g)
}

pub fn emit_edgelist(g: &Graph) -> String {
    let mut out = format!("{}\n", g.n());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}
