//! Constructors for the benchmark graph families.

use std::fmt;
use std::path::PathBuf;

use crate::graph::{Graph, GraphBuildError};
use crate::io::{self, GraphFormat, GraphParseError};

/// Errors from family constructors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorError {
    DimensionOutOfRange {
        d: u32,
    },
    OrderTooSmall {
        n: usize,
        min: usize,
        family: &'static str,
    },
    EmptyConnectionSet,
    ZeroInConnectionSet,
    ConnectionOutOfRange {
        c: usize,
        n: usize,
    },
    /// `c` is present but `n - c` is not.
    AsymmetricConnectionSet {
        c: usize,
    },
    /// The generated edge set violates a graph invariant (a circulant whose
    /// steps all share a factor with n is disconnected, for example).
    Build(GraphBuildError),
}

impl fmt::Display for GeneratorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorError::DimensionOutOfRange { d } => {
                write!(f, "hypercube dimension {d} outside supported range 1..=20")
            }
            GeneratorError::OrderTooSmall { n, min, family } => {
                write!(f, "{family} requires at least {min} vertices, got {n}")
            }
            GeneratorError::EmptyConnectionSet => write!(f, "connection set is empty"),
            GeneratorError::ZeroInConnectionSet => write!(f, "connection set contains 0"),
            GeneratorError::ConnectionOutOfRange { c, n } => {
                write!(f, "connection {c} outside 1..{n}")
            }
            GeneratorError::AsymmetricConnectionSet { c } => {
                write!(
                    f,
                    "connection set not closed under negation: missing complement of {c}"
                )
            }
            GeneratorError::Build(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for GeneratorError {}

/// The `d`-dimensional hypercube: vertex `i` is its binary label, two labels
/// are adjacent when they differ in exactly one bit.
pub fn hypercube(d: u32) -> Result<Graph, GeneratorError> {
    if !(1..=20).contains(&d) {
        return Err(GeneratorError::DimensionOutOfRange { d });
    }
    let n = 1usize << d;
    let mut edges = Vec::with_capacity(d as usize * n / 2);
    for i in 0..n {
        for b in 0..d {
            let j = i ^ (1 << b);
            if i < j {
                edges.push((i, j));
            }
        }
    }
    Ok(Graph::from_edges(n, &edges).expect("hypercube construction is always valid"))
}

/// Circulant graph on `Z_n`: `i ~ j` iff `(j - i) mod n` is in `conn`.
///
/// `conn` must be nonempty, exclude 0, stay within `1..n`, and be closed
/// under `c ↦ n - c`.
pub fn circulant(n: usize, conn: &[usize]) -> Result<Graph, GeneratorError> {
    if n < 3 {
        return Err(GeneratorError::OrderTooSmall {
            n,
            min: 3,
            family: "circulant",
        });
    }
    if conn.is_empty() {
        return Err(GeneratorError::EmptyConnectionSet);
    }
    let mut steps: Vec<usize> = conn.to_vec();
    steps.sort_unstable();
    steps.dedup();
    for &c in &steps {
        if c == 0 {
            return Err(GeneratorError::ZeroInConnectionSet);
        }
        if c >= n {
            return Err(GeneratorError::ConnectionOutOfRange { c, n });
        }
        if !steps.contains(&(n - c)) {
            return Err(GeneratorError::AsymmetricConnectionSet { c });
        }
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for &c in &steps {
            let j = (i + c) % n;
            if i < j {
                edges.push((i, j));
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    Graph::from_edges(n, &edges).map_err(GeneratorError::Build)
}

/// The cycle `C_n`, `n >= 3`.
pub fn cycle(n: usize) -> Result<Graph, GeneratorError> {
    if n < 3 {
        return Err(GeneratorError::OrderTooSmall {
            n,
            min: 3,
            family: "cycle",
        });
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    let edges: Vec<_> = edges
        .into_iter()
        .map(|(u, v)| (u.min(v), u.max(v)))
        .collect();
    Ok(Graph::from_edges(n, &edges).expect("cycle construction is always valid"))
}

/// The path `P_n` on vertices `0..n`, `n >= 1`.
pub fn path(n: usize) -> Result<Graph, GeneratorError> {
    if n < 1 {
        return Err(GeneratorError::OrderTooSmall {
            n,
            min: 1,
            family: "path",
        });
    }
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Ok(Graph::from_edges(n, &edges).expect("path construction is always valid"))
}

/// The complete graph `K_n`, `n >= 1`.
pub fn complete(n: usize) -> Result<Graph, GeneratorError> {
    if n < 1 {
        return Err(GeneratorError::OrderTooSmall {
            n,
            min: 1,
            family: "complete",
        });
    }
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    for u in 0..n {
        for v in (u + 1)..n {
            edges.push((u, v));
        }
    }
    Ok(Graph::from_edges(n, &edges).expect("complete construction is always valid"))
}

/// A named description of a graph instance, either a built-in family or an
/// external file.
///
/// Spec strings: `qD` (hypercube), `cN` (cycle), `pN` (path), `kN`
/// (complete), `cay:N:c1,c2,…` (circulant), `file:PATH[:FORMAT]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphSpec {
    Hypercube(u32),
    Cycle(usize),
    Path(usize),
    Complete(usize),
    Circulant {
        n: usize,
        conn: Vec<usize>,
    },
    File {
        path: PathBuf,
        format: Option<GraphFormat>,
    },
}

/// Errors from parsing or realizing a [`GraphSpec`].
#[derive(Debug)]
pub enum SpecError {
    Unrecognized(String),
    BadParameter { spec: String, detail: String },
    Generator(GeneratorError),
    Build(GraphBuildError),
    Parse(GraphParseError),
    Io(std::io::Error),
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecError::Unrecognized(s) => write!(
                f,
                "unrecognized graph spec '{s}' (expected qD, cN, pN, kN, cay:N:c1,c2,…, or file:PATH[:FORMAT])"
            ),
            SpecError::BadParameter { spec, detail } => {
                write!(f, "invalid parameter in graph spec '{spec}': {detail}")
            }
            SpecError::Generator(e) => write!(f, "{e}"),
            SpecError::Build(e) => write!(f, "{e}"),
            SpecError::Parse(e) => write!(f, "{e}"),
            SpecError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for SpecError {}

impl From<GeneratorError> for SpecError {
    fn from(e: GeneratorError) -> Self {
        SpecError::Generator(e)
    }
}

impl From<GraphParseError> for SpecError {
    fn from(e: GraphParseError) -> Self {
        SpecError::Parse(e)
    }
}

impl GraphSpec {
    /// Parses a spec string such as `q6`, `c46`, or `cay:9:1,3,6,8`.
    pub fn parse(s: &str) -> Result<GraphSpec, SpecError> {
        let bad = |detail: &str| SpecError::BadParameter {
            spec: s.to_string(),
            detail: detail.to_string(),
        };
        if let Some(rest) = s.strip_prefix("cay:") {
            let (n_str, conn_str) = rest
                .split_once(':')
                .ok_or_else(|| bad("expected cay:N:c1,c2,…"))?;
            let n: usize = n_str.parse().map_err(|_| bad("modulus is not a number"))?;
            let conn: Result<Vec<usize>, _> = conn_str
                .split(',')
                .map(|c| c.trim().parse::<usize>())
                .collect();
            let conn = conn.map_err(|_| bad("connection set entries must be numbers"))?;
            return Ok(GraphSpec::Circulant { n, conn });
        }
        if let Some(rest) = s.strip_prefix("file:") {
            if rest.is_empty() {
                return Err(bad("missing file path"));
            }
            let (path, format) = match rest.rsplit_once(':') {
                Some((p, "edge-list")) => (p, Some(GraphFormat::EdgeList)),
                Some((p, "graph6")) => (p, Some(GraphFormat::Graph6)),
                _ => (rest, None),
            };
            return Ok(GraphSpec::File {
                path: PathBuf::from(path),
                format,
            });
        }
        let (head, tail) = s.split_at(s.len().min(1));
        let number = |family: &str| -> Result<usize, SpecError> {
            tail.parse::<usize>().map_err(|_| SpecError::BadParameter {
                spec: s.to_string(),
                detail: format!("{family} size is not a number"),
            })
        };
        match head {
            "q" if !tail.is_empty() => {
                let d = number("hypercube")? as u32;
                Ok(GraphSpec::Hypercube(d))
            }
            "c" if !tail.is_empty() => Ok(GraphSpec::Cycle(number("cycle")?)),
            "p" if !tail.is_empty() => Ok(GraphSpec::Path(number("path")?)),
            "k" if !tail.is_empty() => Ok(GraphSpec::Complete(number("complete")?)),
            _ => Err(SpecError::Unrecognized(s.to_string())),
        }
    }

    /// Canonical name used in reports and JSON records.
    pub fn canonical_name(&self) -> String {
        match self {
            GraphSpec::Hypercube(d) => format!("q{d}"),
            GraphSpec::Cycle(n) => format!("c{n}"),
            GraphSpec::Path(n) => format!("p{n}"),
            GraphSpec::Complete(n) => format!("k{n}"),
            GraphSpec::Circulant { n, conn } => {
                let parts: Vec<String> = conn.iter().map(|c| c.to_string()).collect();
                format!("cay:{n}:{}", parts.join(","))
            }
            GraphSpec::File { path, .. } => format!("file:{}", path.display()),
        }
    }

    /// Realizes the spec into a concrete graph.
    pub fn build(&self) -> Result<Graph, SpecError> {
        match self {
            GraphSpec::Hypercube(d) => Ok(hypercube(*d)?),
            GraphSpec::Cycle(n) => Ok(cycle(*n)?),
            GraphSpec::Path(n) => Ok(path(*n)?),
            GraphSpec::Complete(n) => Ok(complete(*n)?),
            GraphSpec::Circulant { n, conn } => Ok(circulant(*n, conn)?),
            GraphSpec::File { path, format } => {
                let text = std::fs::read_to_string(path).map_err(SpecError::Io)?;
                let format = format.unwrap_or_else(|| GraphFormat::infer_from_path(path));
                Ok(io::parse_graph(&text, format)?)
            }
        }
    }
}
