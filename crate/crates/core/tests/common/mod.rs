//! Helpers shared by the integration tests: seeded random connected graphs
//! and an exhaustive shortest-path interval oracle that stays independent of
//! the library's interval computation.

use gp_core::{DistanceMatrix, Graph, VertexSet};
use rand::{Rng, RngExt};

/// Random connected graph: a random recursive tree plus extra edges with
/// probability `extra_p`.
pub fn random_connected_graph<R: Rng>(rng: &mut R, n: usize, extra_p: f64) -> Graph {
    assert!(n >= 1);
    let mut edges = Vec::new();
    for v in 1..n {
        let u = rng.random_range(0..v);
        edges.push((u, v));
    }
    for u in 0..n {
        for v in (u + 1)..n {
            if !edges.contains(&(u, v)) && rng.random_bool(extra_p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("spanning tree keeps the graph connected")
}

/// Interior vertices of all shortest `(u, v)`-paths, found by enumerating
/// every shortest path with a depth-first walk along distance-decreasing
/// edges. Exponential; intended for graphs with at most ~8 vertices.
pub fn interval_by_path_enumeration(
    g: &Graph,
    d: &DistanceMatrix,
    u: usize,
    v: usize,
) -> VertexSet {
    let mut interior = VertexSet::empty(g.n());
    let mut path = vec![u];
    walk_shortest_paths(g, d, u, v, &mut path, &mut interior);
    interior
}

fn walk_shortest_paths(
    g: &Graph,
    d: &DistanceMatrix,
    current: usize,
    target: usize,
    path: &mut Vec<usize>,
    interior: &mut VertexSet,
) {
    if current == target {
        for &w in &path[1..path.len() - 1] {
            interior.insert(w);
        }
        return;
    }
    for &nb in g.neighbors(current) {
        if d.get(nb, target) + 1 == d.get(current, target) {
            path.push(nb);
            walk_shortest_paths(g, d, nb, target, path, interior);
            path.pop();
        }
    }
}
