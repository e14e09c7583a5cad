//! Graph serialization: edge-list text, graph6, and DOT rendering.
//!
//! Edge-list format: ASCII with LF line endings, a `n m` header line, then
//! `m` lines `u v` of 0-based whitespace-separated decimal endpoints.
//! graph6 is the standard printable 6-bit encoding, one graph per line.

use std::fmt;
use std::path::Path;

use crate::bitset::VertexSet;
use crate::graph::{Graph, GraphBuildError};

/// Supported text encodings for graph files.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    Graph6,
}

impl GraphFormat {
    /// Picks a format from a file extension; `.g6`/`.graph6` mean graph6,
    /// anything else is edge-list.
    pub fn infer_from_path(path: &Path) -> GraphFormat {
        match path.extension().and_then(|e| e.to_str()) {
            Some("g6") | Some("graph6") => GraphFormat::Graph6,
            _ => GraphFormat::EdgeList,
        }
    }
}

impl fmt::Display for GraphFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphFormat::EdgeList => write!(f, "edge-list"),
            GraphFormat::Graph6 => write!(f, "graph6"),
        }
    }
}

/// Errors raised while decoding graph text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphParseError {
    /// Input had no content to parse.
    Empty,
    /// A line failed to scan; `line` is 1-based.
    Malformed { line: usize, detail: String },
    /// Edge count in the header disagrees with the body.
    EdgeCountMismatch { expected: usize, found: usize },
    /// A per-edge graph invariant failed; `line` is 1-based.
    InvalidEdge {
        line: usize,
        source: GraphBuildError,
    },
    /// A whole-graph invariant failed (connectivity).
    InvalidGraph(GraphBuildError),
    /// graph6 payload was malformed.
    Graph6 { detail: String },
}

impl fmt::Display for GraphParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphParseError::Empty => write!(f, "no graph data found"),
            GraphParseError::Malformed { line, detail } => {
                write!(f, "parse error at line {line}: {detail}")
            }
            GraphParseError::EdgeCountMismatch { expected, found } => {
                write!(f, "header promises {expected} edges but body has {found}")
            }
            GraphParseError::InvalidEdge { line, source } => {
                write!(f, "error: {source} at line {line}")
            }
            GraphParseError::InvalidGraph(e) => write!(f, "error: {e}"),
            GraphParseError::Graph6 { detail } => write!(f, "graph6 error: {detail}"),
        }
    }
}

impl std::error::Error for GraphParseError {}

/// Parses `text` in the named format.
pub fn parse_graph(text: &str, format: GraphFormat) -> Result<Graph, GraphParseError> {
    match format {
        GraphFormat::EdgeList => parse_edge_list(text),
        GraphFormat::Graph6 => parse_graph6(text),
    }
}

/// Serializes `g` in the named format.
pub fn write_graph(g: &Graph, format: GraphFormat) -> String {
    match format {
        GraphFormat::EdgeList => write_edge_list(g),
        GraphFormat::Graph6 => write_graph6(g),
    }
}

// ---------------------------------------------------------------------------
// Edge-list
// ---------------------------------------------------------------------------

pub fn parse_edge_list(text: &str) -> Result<Graph, GraphParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let (header_line, header) = lines.next().ok_or(GraphParseError::Empty)?;
    let mut header_it = header.split_whitespace();
    let parse_num =
        |tok: Option<&str>, what: &str, line: usize| -> Result<usize, GraphParseError> {
            tok.ok_or_else(|| GraphParseError::Malformed {
                line,
                detail: format!("missing {what}"),
            })?
            .parse()
            .map_err(|_| GraphParseError::Malformed {
                line,
                detail: format!("{what} is not a number"),
            })
        };
    let n = parse_num(header_it.next(), "vertex count", header_line)?;
    let m = parse_num(header_it.next(), "edge count", header_line)?;
    if header_it.next().is_some() {
        return Err(GraphParseError::Malformed {
            line: header_line,
            detail: "trailing tokens after header".to_string(),
        });
    }

    let mut edges = Vec::with_capacity(m);
    let mut edge_lines = Vec::with_capacity(m);
    for (line_no, line) in lines {
        let mut it = line.split_whitespace();
        let u = parse_num(it.next(), "edge endpoint", line_no)?;
        let v = parse_num(it.next(), "edge endpoint", line_no)?;
        if it.next().is_some() {
            return Err(GraphParseError::Malformed {
                line: line_no,
                detail: "trailing tokens after edge".to_string(),
            });
        }
        edges.push((u, v));
        edge_lines.push(line_no);
    }
    if edges.len() != m {
        return Err(GraphParseError::EdgeCountMismatch {
            expected: m,
            found: edges.len(),
        });
    }

    // Validate edges one at a time so errors carry the offending line.
    let mut seen = std::collections::HashSet::with_capacity(m);
    for (&(u, v), &line) in edges.iter().zip(&edge_lines) {
        let err = if n == 0 || u >= n || v >= n {
            Some(GraphBuildError::VertexOutOfRange { u, v, n })
        } else if u == v {
            Some(GraphBuildError::SelfLoop { v })
        } else if !seen.insert((u.min(v), u.max(v))) {
            Some(GraphBuildError::DuplicateEdge {
                u: u.min(v),
                v: u.max(v),
            })
        } else {
            None
        };
        if let Some(source) = err {
            return Err(GraphParseError::InvalidEdge { line, source });
        }
    }

    Graph::from_edges(n, &edges).map_err(GraphParseError::InvalidGraph)
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

// ---------------------------------------------------------------------------
// graph6
// ---------------------------------------------------------------------------

const G6_BIAS: u8 = 63;

fn graph6_err(detail: impl Into<String>) -> GraphParseError {
    GraphParseError::Graph6 {
        detail: detail.into(),
    }
}

/// Decodes the first non-empty line of `text` as a graph6 graph.
pub fn parse_graph6(text: &str) -> Result<Graph, GraphParseError> {
    let line = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .ok_or(GraphParseError::Empty)?;
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    let bytes = line.as_bytes();
    if bytes.iter().any(|&b| !(G6_BIAS..=126).contains(&b)) {
        return Err(graph6_err("byte outside printable graph6 range"));
    }

    let (n, mut pos) = decode_g6_order(bytes)?;
    let pair_bits = n * n.saturating_sub(1) / 2;
    let needed = pair_bits.div_ceil(6);
    if bytes.len() - pos != needed {
        return Err(graph6_err(format!(
            "expected {needed} payload bytes for n={n}, found {}",
            bytes.len() - pos
        )));
    }

    let mut edges = Vec::new();
    let mut bit_index = 0usize;
    let mut current = 0u8;
    let mut bits_left = 0u8;
    for v in 1..n {
        for u in 0..v {
            if bits_left == 0 {
                current = bytes[pos] - G6_BIAS;
                pos += 1;
                bits_left = 6;
            }
            let bit = current >> 5 & 1;
            current <<= 1;
            bits_left -= 1;
            bit_index += 1;
            if bit == 1 {
                edges.push((u, v));
            }
        }
    }
    debug_assert_eq!(bit_index, pair_bits);

    Graph::from_edges(n, &edges).map_err(GraphParseError::InvalidGraph)
}

fn decode_g6_order(bytes: &[u8]) -> Result<(usize, usize), GraphParseError> {
    match bytes {
        [] => Err(graph6_err("empty input")),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(graph6_err("truncated 36-bit order"));
            }
            let mut n = 0usize;
            for &b in &rest[..6] {
                n = n << 6 | (b - G6_BIAS) as usize;
            }
            Ok((n, 8))
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(graph6_err("truncated 18-bit order"));
            }
            let mut n = 0usize;
            for &b in &rest[..3] {
                n = n << 6 | (b - G6_BIAS) as usize;
            }
            Ok((n, 4))
        }
        [b, ..] => Ok(((b - G6_BIAS) as usize, 1)),
    }
}

/// Encodes `g` as a single graph6 line (no trailing newline).
pub fn write_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut bytes = Vec::new();
    if n <= 62 {
        bytes.push(n as u8 + G6_BIAS);
    } else if n <= 258_047 {
        bytes.push(126);
        for shift in [12u32, 6, 0] {
            bytes.push((n >> shift & 0x3f) as u8 + G6_BIAS);
        }
    } else {
        bytes.push(126);
        bytes.push(126);
        for shift in [30u32, 24, 18, 12, 6, 0] {
            bytes.push((n >> shift & 0x3f) as u8 + G6_BIAS);
        }
    }

    let mut current = 0u8;
    let mut used = 0u8;
    for v in 1..n {
        for u in 0..v {
            current <<= 1;
            if g.has_edge(u, v) {
                current |= 1;
            }
            used += 1;
            if used == 6 {
                bytes.push(current + G6_BIAS);
                current = 0;
                used = 0;
            }
        }
    }
    if used > 0 {
        current <<= 6 - used;
        bytes.push(current + G6_BIAS);
    }
    String::from_utf8(bytes).expect("graph6 bytes are printable ASCII")
}

// ---------------------------------------------------------------------------
// DOT
// ---------------------------------------------------------------------------

/// Renders `g` as DOT text with `highlight` members drawn as solid dots.
///
/// Output is deterministic: vertices ascending, edges lexicographic.
///
/// # Panics
/// Panics if the highlight width differs from `g.n()`.
pub fn to_dot(g: &Graph, highlight: &VertexSet) -> String {
    assert_eq!(highlight.width(), g.n(), "highlight width must match graph");
    let mut out = String::from("graph G {\n");
    out.push_str("  node [shape=circle];\n");
    for v in 0..g.n() {
        if highlight.contains(v) {
            out.push_str(&format!(
                "  {v} [style=filled, fillcolor=black, fontcolor=white];\n"
            ));
        } else {
            out.push_str(&format!("  {v};\n"));
        }
    }
    for (u, v) in g.edges() {
        out.push_str(&format!("  {u} -- {v};\n"));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn edge_list_k2() {
        let g = parse_edge_list("2 1\n0 1").unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn edge_list_reports_line_numbers() {
        let err = parse_edge_list("3 3\n0 1\n1 2\n0 0").unwrap_err();
        assert_eq!(
            err,
            GraphParseError::InvalidEdge {
                line: 4,
                source: GraphBuildError::SelfLoop { v: 0 }
            }
        );
        assert_eq!(err.to_string(), "error: self-loop at vertex 0 at line 4");

        let err = parse_edge_list("2 2\n0 1").unwrap_err();
        assert_eq!(
            err,
            GraphParseError::EdgeCountMismatch {
                expected: 2,
                found: 1
            }
        );

        let err = parse_edge_list("2 1\nx 1").unwrap_err();
        assert!(matches!(err, GraphParseError::Malformed { line: 2, .. }));
    }

    #[test]
    fn edge_list_round_trip() {
        let g = generators::circulant(9, &[1, 3, 6, 8]).unwrap();
        let text = write_edge_list(&g);
        let h = parse_edge_list(&text).unwrap();
        assert_eq!(g.n(), h.n());
        assert_eq!(g.edges().collect::<Vec<_>>(), h.edges().collect::<Vec<_>>());
    }

    #[test]
    fn graph6_known_encodings() {
        // K_2 encodes as "A_", the triangle as "Bw".
        assert_eq!(write_graph6(&generators::complete(2).unwrap()), "A_");
        assert_eq!(write_graph6(&generators::complete(3).unwrap()), "Bw");
        let k2 = parse_graph6("A_").unwrap();
        assert_eq!((k2.n(), k2.edge_count()), (2, 1));
    }

    #[test]
    fn graph6_long_form_for_large_orders() {
        let g = generators::hypercube(7).unwrap();
        let text = write_graph6(&g);
        assert!(text.starts_with('~'));
        let h = parse_graph6(&text).unwrap();
        assert_eq!(h.n(), 128);
        assert_eq!(h.edge_count(), g.edge_count());
    }

    #[test]
    fn graph6_rejects_garbage() {
        assert!(parse_graph6("").is_err());
        assert!(parse_graph6("A").is_err()); // missing payload byte
        assert!(parse_graph6("A_X").is_err()); // trailing byte
        assert!(parse_graph6("\x1f_").is_err()); // below printable range
    }

    #[test]
    fn graph6_header_prefix_is_tolerated() {
        let g = parse_graph6(">>graph6<<Bw").unwrap();
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn dot_output_shape() {
        let g = generators::complete(2).unwrap();
        let dot = to_dot(&g, &VertexSet::from_indices(2, &[0]));
        assert!(dot.contains("0 [style=filled"));
        assert!(dot.contains("  1;\n"));
        assert!(dot.contains("0 -- 1;"));

        let c4 = generators::cycle(4).unwrap();
        let dot = to_dot(&c4, &VertexSet::empty(4));
        assert!(!dot.contains("filled"));
        assert_eq!(dot.matches(" -- ").count(), 4);
        // Determinism: identical calls yield identical bytes.
        assert_eq!(dot, to_dot(&c4, &VertexSet::empty(4)));
    }
}
