//! Exact maximum general position search.
//!
//! Two engines: a plain exhaustive enumeration kept deliberately simple so
//! it can serve as a correctness oracle, and a branch-and-bound search that
//! scales to the benchmark instances.

use std::fmt;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use crate::bitset::VertexSet;
use crate::interval::{extension_is_feasible, IntervalOracle};

/// Result of an exact search.
#[derive(Clone, Debug)]
pub struct ExactResult {
    /// Size of the best general position set found. Equal to gp(G) whenever
    /// `complete` is true.
    pub gp: usize,
    /// A set attaining `gp`.
    pub witness: VertexSet,
    /// Vertices added to a partial solution during the search.
    pub nodes_explored: u64,
    /// Wall time of the search itself.
    pub time: Duration,
    /// False only when the search was cancelled before exhausting the space.
    pub complete: bool,
}

/// Vertex-count guard for the exhaustive engine.
pub const BRUTE_FORCE_MAX_VERTICES: usize = 22;

/// Input too large for exhaustive enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteForceLimitExceeded {
    pub n: usize,
}

impl fmt::Display for BruteForceLimitExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "brute force is limited to {BRUTE_FORCE_MAX_VERTICES} vertices, got {}",
            self.n
        )
    }
}

impl std::error::Error for BruteForceLimitExceeded {}

/// Exhaustively enumerates all general position sets by recursive extension
/// in ascending vertex order, rejecting a branch as soon as a pair violates.
///
/// The incumbent is replaced only on strict improvement, which combined with
/// the ascending exploration order makes the returned witness the
/// lexicographically smallest maximum set.
pub fn brute_force_gp(oracle: &IntervalOracle) -> Result<ExactResult, BruteForceLimitExceeded> {
    let n = oracle.n();
    if n > BRUTE_FORCE_MAX_VERTICES {
        return Err(BruteForceLimitExceeded { n });
    }
    let start = Instant::now();
    let mut best = VertexSet::empty(n);
    let mut best_size = 0usize;
    let mut current = VertexSet::empty(n);
    let mut nodes = 0u64;
    extend_all(
        oracle,
        &mut current,
        0,
        0,
        &mut best,
        &mut best_size,
        &mut nodes,
    );
    Ok(ExactResult {
        gp: best_size,
        witness: best,
        nodes_explored: nodes,
        time: start.elapsed(),
        complete: true,
    })
}

fn extend_all(
    oracle: &IntervalOracle,
    current: &mut VertexSet,
    size: usize,
    next: usize,
    best: &mut VertexSet,
    best_size: &mut usize,
    nodes: &mut u64,
) {
    for w in next..oracle.n() {
        if !extension_is_feasible(oracle, current, w) {
            continue;
        }
        current.insert(w);
        *nodes += 1;
        if size + 1 > *best_size {
            *best_size = size + 1;
            *best = current.clone();
        }
        extend_all(oracle, current, size + 1, w + 1, best, best_size, nodes);
        current.remove(w);
    }
}

/// Options for [`branch_and_bound_gp`].
#[derive(Clone, Default)]
pub struct BbConfig {
    /// Cooperative cancellation; when set, the search returns its best
    /// incumbent with `complete = false`.
    pub cancel: Option<Arc<AtomicBool>>,
}

const CANCEL_CHECK_MASK: u64 = 0xFFF;

/// Exact search by depth-first branch and bound.
///
/// Vertices are branched in a fixed static order, descending by the number
/// of pair intervals containing them (ties by index). A candidate survives
/// only while adding it keeps the partial set in general position, and a
/// subtree is pruned when the partial set plus all surviving candidates
/// cannot beat the incumbent.
pub fn branch_and_bound_gp(oracle: &IntervalOracle, config: &BbConfig) -> ExactResult {
    let n = oracle.n();
    let start = Instant::now();

    // Static branching order: most-contained vertices first.
    let mut order: Vec<usize> = (0..n).collect();
    let freq: Vec<usize> = (0..n).map(|v| oracle.containment_count(v)).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(freq[v]), v));

    let mut search = BbSearch {
        oracle,
        order,
        best: VertexSet::empty(n),
        best_size: 0,
        nodes: 0,
        cancel: config.cancel.clone(),
        cancelled: false,
    };
    let root_candidates: Vec<usize> = (0..n).collect();
    let mut partial = VertexSet::empty(n);
    search.extend(&mut partial, 0, &root_candidates);

    ExactResult {
        gp: search.best_size,
        witness: search.best,
        nodes_explored: search.nodes,
        time: start.elapsed(),
        complete: !search.cancelled,
    }
}

struct BbSearch<'a> {
    oracle: &'a IntervalOracle,
    /// Branching order; `order[i]` is the vertex at rank `i`.
    order: Vec<usize>,
    best: VertexSet,
    best_size: usize,
    nodes: u64,
    cancel: Option<Arc<AtomicBool>>,
    cancelled: bool,
}

impl BbSearch<'_> {
    /// `candidates` holds order-ranks (not vertex ids), ascending.
    fn extend(&mut self, partial: &mut VertexSet, size: usize, candidates: &[usize]) {
        if self.cancelled {
            return;
        }
        for (i, &rank) in candidates.iter().enumerate() {
            // Remaining candidates cannot lift the incumbent: prune.
            if size + (candidates.len() - i) <= self.best_size {
                return;
            }
            if self.nodes & CANCEL_CHECK_MASK == 0 {
                if let Some(flag) = &self.cancel {
                    if flag.load(Ordering::Relaxed) {
                        self.cancelled = true;
                        return;
                    }
                }
            }
            let w = self.order[rank];
            partial.insert(w);
            self.nodes += 1;
            if size + 1 > self.best_size {
                self.best_size = size + 1;
                self.best = partial.clone();
            }
            let surviving: Vec<usize> = candidates[i + 1..]
                .iter()
                .copied()
                .filter(|&r| extension_is_feasible(self.oracle, partial, self.order[r]))
                .collect();
            self.extend(partial, size + 1, &surviving);
            partial.remove(w);
            if self.cancelled {
                return;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::interval::is_general_position;

    fn solve_bf(g: &crate::graph::Graph) -> ExactResult {
        brute_force_gp(&IntervalOracle::from_graph(g)).unwrap()
    }

    fn solve_bb(g: &crate::graph::Graph) -> ExactResult {
        branch_and_bound_gp(&IntervalOracle::from_graph(g), &BbConfig::default())
    }

    #[test]
    fn complete_graph_takes_everything() {
        let res = solve_bf(&generators::complete(5).unwrap());
        assert_eq!(res.gp, 5);
        assert_eq!(res.witness.len(), 5);
        assert!(res.complete);
    }

    #[test]
    fn q3_brute_force() {
        let res = solve_bf(&generators::hypercube(3).unwrap());
        assert_eq!(res.gp, 4);
    }

    #[test]
    fn p4_brute_force() {
        // Any three vertices of a path contain a middle vertex.
        let res = solve_bf(&generators::path(4).unwrap());
        assert_eq!(res.gp, 2);
        assert_eq!(res.witness.to_vec(), vec![0, 1]);
    }

    #[test]
    fn single_vertex_graph() {
        let res = solve_bf(&generators::path(1).unwrap());
        assert_eq!(res.gp, 1);
        let res = solve_bb(&generators::path(1).unwrap());
        assert_eq!(res.gp, 1);
    }

    #[test]
    fn brute_force_guard() {
        let g = generators::cycle(23).unwrap();
        let err = brute_force_gp(&IntervalOracle::from_graph(&g)).unwrap_err();
        assert_eq!(err, BruteForceLimitExceeded { n: 23 });
    }

    #[test]
    fn q4_and_q5_branch_and_bound() {
        assert_eq!(solve_bb(&generators::hypercube(4).unwrap()).gp, 5);
        assert_eq!(solve_bb(&generators::hypercube(5).unwrap()).gp, 6);
    }

    #[test]
    fn bb_matches_bf_on_fixtures() {
        let graphs = [
            generators::cycle(7).unwrap(),
            generators::path(6).unwrap(),
            generators::complete(6).unwrap(),
            generators::circulant(9, &[1, 3, 6, 8]).unwrap(),
            generators::hypercube(3).unwrap(),
        ];
        for g in &graphs {
            let o = IntervalOracle::from_graph(g);
            let bf = brute_force_gp(&o).unwrap();
            let bb = branch_and_bound_gp(&o, &BbConfig::default());
            assert_eq!(bf.gp, bb.gp, "n={}", g.n());
            assert!(is_general_position(&o, &bb.witness));
            assert_eq!(bb.witness.len(), bb.gp);
        }
    }

    #[test]
    fn witnesses_are_feasible_and_lex_minimal_for_bf() {
        let g = generators::cycle(6).unwrap();
        let o = IntervalOracle::from_graph(&g);
        let res = brute_force_gp(&o).unwrap();
        assert_eq!(res.gp, 3);
        assert!(is_general_position(&o, &res.witness));
        // Exhaustive cross-check of lexicographic minimality.
        let n = g.n();
        let mut smallest: Option<VertexSet> = None;
        for mask in 0u32..1 << n {
            let ix: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            if ix.len() != res.gp {
                continue;
            }
            let s = VertexSet::from_indices(n, &ix);
            if is_general_position(&o, &s) && smallest.as_ref().is_none_or(|b| s < *b) {
                smallest = Some(s);
            }
        }
        assert_eq!(res.witness, smallest.unwrap());
    }

    #[test]
    fn cancellation_returns_incomplete() {
        let flag = Arc::new(AtomicBool::new(true));
        let g = generators::hypercube(4).unwrap();
        let o = IntervalOracle::from_graph(&g);
        let res = branch_and_bound_gp(&o, &BbConfig { cancel: Some(flag) });
        assert!(!res.complete);
        assert!(is_general_position(&o, &res.witness));
    }
}
