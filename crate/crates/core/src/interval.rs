//! Geodesic interval oracle and the general-position predicates.
//!
//! For each unordered vertex pair `{u, v}` the oracle stores the set of
//! interior vertices of all shortest `(u, v)`-paths: exactly the `w` with
//! `w ∉ {u, v}` and `d(u, w) + d(w, v) = d(u, v)`. Pairs are precomputed
//! densely as packed bit rows because every solver probes them in its inner
//! loop.

use crate::bitset::{words_for, VertexSet};
use crate::graph::{DistanceMatrix, Graph};

/// Precomputed interior-vertex sets for all unordered vertex pairs.
///
/// Immutable after construction and safe to share across threads.
pub struct IntervalOracle {
    n: usize,
    words_per_set: usize,
    /// Bit rows for pairs `u < v`, flattened in pair-index order.
    rows: Vec<u64>,
}

#[inline]
fn pair_index(n: usize, u: usize, v: usize) -> usize {
    debug_assert!(u < v && v < n);
    // Offset of row u in the strictly-upper-triangular layout.
    u * n - u * (u + 1) / 2 + (v - u - 1)
}

impl IntervalOracle {
    /// Builds the oracle from a graph and its distance matrix.
    pub fn build(g: &Graph, d: &DistanceMatrix) -> IntervalOracle {
        assert_eq!(g.n(), d.n(), "distance matrix does not match graph");
        let n = g.n();
        let wps = words_for(n).max(1);
        let pairs = n * n.saturating_sub(1) / 2;
        let mut rows = vec![0u64; pairs * wps];
        for u in 0..n {
            for v in (u + 1)..n {
                let duv = d.get(u, v);
                let base = pair_index(n, u, v) * wps;
                for w in 0..n {
                    if w != u && w != v && d.get(u, w) + d.get(w, v) == duv {
                        rows[base + w / 64] |= 1u64 << (w % 64);
                    }
                }
            }
        }
        IntervalOracle {
            n,
            words_per_set: wps,
            rows,
        }
    }

    /// Convenience constructor that computes the distances itself.
    pub fn from_graph(g: &Graph) -> IntervalOracle {
        Self::build(g, &DistanceMatrix::from_graph(g))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Borrowed bit row of interior vertices for the pair `{u, v}`.
    #[inline]
    pub fn interval_words(&self, u: usize, v: usize) -> &[u64] {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        assert!(a < b && b < self.n, "invalid pair ({u}, {v})");
        let base = pair_index(self.n, a, b) * self.words_per_set;
        &self.rows[base..base + self.words_per_set]
    }

    /// Interior vertices of the pair `{u, v}` as an owned set.
    pub fn interval(&self, u: usize, v: usize) -> VertexSet {
        let mut s = VertexSet::empty(self.n);
        s.union_words_in_place(self.interval_words(u, v));
        s
    }

    #[inline]
    pub fn interval_contains(&self, u: usize, v: usize, w: usize) -> bool {
        debug_assert!(w < self.n);
        self.interval_words(u, v)[w / 64] >> (w % 64) & 1 != 0
    }

    #[inline]
    pub fn interval_is_empty(&self, u: usize, v: usize) -> bool {
        self.interval_words(u, v).iter().all(|&w| w == 0)
    }

    /// Number of pairs whose interval contains `v` (branching heuristic fuel).
    pub fn containment_count(&self, v: usize) -> usize {
        let (wi, bit) = (v / 64, 1u64 << (v % 64));
        self.rows
            .chunks_exact(self.words_per_set)
            .filter(|row| row[wi] & bit != 0)
            .count()
    }
}

/// Counts unordered pairs `{u, v} ⊆ s` whose interval meets `s`.
///
/// Each violating pair counts once, no matter how many interior witnesses it
/// has, so the count is at most `C(|s|, 2)`.
pub fn count_violations(oracle: &IntervalOracle, s: &VertexSet) -> usize {
    debug_assert_eq!(oracle.n(), s.width());
    let mut count = 0;
    for v in s.iter() {
        for u in s.iter().take_while(|&u| u < v) {
            if s.intersects_words(oracle.interval_words(u, v)) {
                count += 1;
            }
        }
    }
    count
}

/// True when no shortest path between two members of `s` passes through a
/// third member.
pub fn is_general_position(oracle: &IntervalOracle, s: &VertexSet) -> bool {
    for v in s.iter() {
        for u in s.iter().take_while(|&u| u < v) {
            if s.intersects_words(oracle.interval_words(u, v)) {
                return false;
            }
        }
    }
    true
}

/// The violating pairs themselves, ascending by `(u, v)`.
pub fn violating_pairs(oracle: &IntervalOracle, s: &VertexSet) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for u in s.iter() {
        for v in s.iter().skip_while(|&v| v <= u) {
            if s.intersects_words(oracle.interval_words(u, v)) {
                pairs.push((u, v));
            }
        }
    }
    pairs
}

/// Checks whether `set ∪ {w}` stays in general position. `set` itself must
/// already be in general position; only violations introduced by `w` are
/// examined. Costs `|set|` interval probes plus `C(|set|, 2)` bit tests.
pub fn extension_is_feasible(oracle: &IntervalOracle, set: &VertexSet, w: usize) -> bool {
    // New pairs {a, w} must not be witnessed by any current member.
    for a in set.iter() {
        if a == w {
            continue;
        }
        if set.intersects_words(oracle.interval_words(a, w)) {
            return false;
        }
    }
    // w itself must not witness an existing pair.
    for b in set.iter() {
        for a in set.iter().take_while(|&a| a < b) {
            if oracle.interval_contains(a, b, w) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    fn oracle(g: &Graph) -> IntervalOracle {
        IntervalOracle::from_graph(g)
    }

    #[test]
    fn c4_interval_of_antipodal_pair() {
        let g = generators::cycle(4).unwrap();
        let o = oracle(&g);
        assert_eq!(o.interval(0, 2).to_vec(), vec![1, 3]);
        assert_eq!(o.interval(2, 0).to_vec(), vec![1, 3]);
        assert!(o.interval_is_empty(0, 1));
    }

    #[test]
    fn q3_interval_between_distance_two_labels() {
        let g = generators::hypercube(3).unwrap();
        let o = oracle(&g);
        // Vertices 0b000 and 0b011 have the two midpoints 0b001 and 0b010.
        assert_eq!(o.interval(0, 3).to_vec(), vec![1, 2]);
    }

    #[test]
    fn complete_graph_intervals_all_empty() {
        let g = generators::complete(5).unwrap();
        let o = oracle(&g);
        for u in 0..5 {
            for v in (u + 1)..5 {
                assert!(o.interval_is_empty(u, v));
            }
        }
        assert!(is_general_position(&o, &VertexSet::full(5)));
    }

    #[test]
    fn c6_violation_counting() {
        let g = generators::cycle(6).unwrap();
        let o = oracle(&g);
        let clean = VertexSet::from_indices(6, &[0, 2, 4]);
        assert_eq!(count_violations(&o, &clean), 0);
        assert!(is_general_position(&o, &clean));

        let dirty = VertexSet::from_indices(6, &[0, 1, 3]);
        assert_eq!(count_violations(&o, &dirty), 1);
        assert!(!is_general_position(&o, &dirty));
        assert_eq!(violating_pairs(&o, &dirty), vec![(0, 3)]);
    }

    #[test]
    fn small_sets_never_violate() {
        let g = generators::cycle(6).unwrap();
        let o = oracle(&g);
        assert_eq!(count_violations(&o, &VertexSet::empty(6)), 0);
        for u in 0..6 {
            for v in (u + 1)..6 {
                let s = VertexSet::from_indices(6, &[u, v]);
                assert_eq!(count_violations(&o, &s), 0);
            }
        }
        assert!(is_general_position(&o, &VertexSet::empty(6)));
    }

    #[test]
    fn distance_two_pairs_have_nonempty_intervals() {
        let g = generators::hypercube(4).unwrap();
        let d = DistanceMatrix::from_graph(&g);
        let o = IntervalOracle::build(&g, &d);
        for u in 0..g.n() {
            for v in (u + 1)..g.n() {
                match d.get(u, v) {
                    1 => assert!(o.interval_is_empty(u, v)),
                    2 => assert!(!o.interval_is_empty(u, v)),
                    _ => {}
                }
            }
        }
    }

    #[test]
    fn extension_check_agrees_with_recount() {
        let g = generators::circulant(9, &[1, 3, 6, 8]).unwrap();
        let o = oracle(&g);
        let base_sets = [vec![0, 4], vec![1, 5], vec![0, 2, 7], vec![3]];
        for base in &base_sets {
            let s = VertexSet::from_indices(9, base);
            if !is_general_position(&o, &s) {
                continue;
            }
            for w in 0..9 {
                if s.contains(w) {
                    continue;
                }
                let mut ext = s.clone();
                ext.insert(w);
                assert_eq!(
                    extension_is_feasible(&o, &s, w),
                    is_general_position(&o, &ext),
                    "set {base:?} + {w}"
                );
            }
        }
    }
}
