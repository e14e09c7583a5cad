//! Simple connected graphs and their shortest-path metric.

use std::fmt;

/// An immutable simple connected graph on vertices `0..n`.
///
/// Construction validates simplicity (no loops, no duplicate edges),
/// symmetry, and connectivity; everything downstream relies on those
/// invariants holding.
#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
}

/// Errors rejected at graph construction time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphBuildError {
    /// `n == 0`; the empty graph has no shortest-path metric.
    NoVertices,
    /// An edge endpoint is `>= n`.
    VertexOutOfRange { u: usize, v: usize, n: usize },
    /// An edge joins a vertex to itself.
    SelfLoop { v: usize },
    /// The same unordered pair appears twice in the edge list.
    DuplicateEdge { u: usize, v: usize },
    /// BFS from vertex 0 missed part of the graph.
    Disconnected { reached: usize, n: usize },
}

impl fmt::Display for GraphBuildError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphBuildError::NoVertices => write!(f, "graph must have at least one vertex"),
            GraphBuildError::VertexOutOfRange { u, v, n } => {
                write!(f, "edge ({u}, {v}) references a vertex outside 0..{n}")
            }
            GraphBuildError::SelfLoop { v } => write!(f, "self-loop at vertex {v}"),
            GraphBuildError::DuplicateEdge { u, v } => write!(f, "duplicate edge ({u}, {v})"),
            GraphBuildError::Disconnected { reached, n } => {
                write!(
                    f,
                    "graph is disconnected: {reached} of {n} vertices reachable from 0"
                )
            }
        }
    }
}

impl std::error::Error for GraphBuildError {}

impl Graph {
    /// Builds a graph from an undirected edge list.
    ///
    /// Neighbor lists come out sorted ascending. Rejects self-loops,
    /// duplicate edges (in either orientation), out-of-range endpoints, and
    /// disconnected inputs.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphBuildError> {
        if n == 0 {
            return Err(GraphBuildError::NoVertices);
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphBuildError::VertexOutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphBuildError::SelfLoop { v });
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for (u, nbrs) in adjacency.iter_mut().enumerate() {
            nbrs.sort_unstable();
            if let Some(w) = nbrs.windows(2).find(|w| w[0] == w[1]) {
                let (a, b) = (u.min(w[0]), u.max(w[0]));
                return Err(GraphBuildError::DuplicateEdge { u: a, v: b });
            }
        }
        let g = Graph {
            n,
            adjacency,
            edge_count: edges.len(),
        };
        let reached = g.bfs_reach_count(0);
        if reached != n {
            return Err(GraphBuildError::Disconnected { reached, n });
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, ascending lexicographically.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    fn bfs_reach_count(&self, start: usize) -> usize {
        let mut seen = vec![false; self.n];
        let mut queue = std::collections::VecDeque::new();
        seen[start] = true;
        queue.push_back(start);
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &v in &self.adjacency[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count
    }
}

/// Dense all-pairs hop-count matrix, filled by one BFS per vertex.
#[derive(Clone)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u32>,
}

impl DistanceMatrix {
    /// Runs `n` BFS traversals over `g`.
    pub fn from_graph(g: &Graph) -> DistanceMatrix {
        let n = g.n();
        let mut d = vec![u32::MAX; n * n];
        let mut queue = std::collections::VecDeque::new();
        for src in 0..n {
            let row = &mut d[src * n..(src + 1) * n];
            row[src] = 0;
            queue.clear();
            queue.push_back(src);
            while let Some(u) = queue.pop_front() {
                let du = row[u];
                for &v in g.neighbors(u) {
                    if row[v] == u32::MAX {
                        row[v] = du + 1;
                        queue.push_back(v);
                    }
                }
            }
        }
        // Connectivity is a Graph invariant, so every entry got filled.
        debug_assert!(d.iter().all(|&x| x != u32::MAX));
        DistanceMatrix { n, d }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Hop count between `u` and `v`.
    pub fn get(&self, u: usize, v: usize) -> u32 {
        debug_assert!(u < self.n && v < self.n);
        self.d[u * self.n + v]
    }
}
