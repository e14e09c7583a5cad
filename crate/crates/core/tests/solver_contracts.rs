//! Cross-checks between the solvers, the interval oracle, and the 0/1 model
//! on small graphs where independent verification is cheap.

mod common;

use common::{interval_by_path_enumeration, random_connected_graph};
use gp_core::exact::{branch_and_bound_gp, brute_force_gp, BbConfig};
use gp_core::ilp::build_ilp;
use gp_core::interval::is_general_position;
use gp_core::io;
use gp_core::{generators, DistanceMatrix, Graph, IlpModel, IntervalOracle, VertexSet};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn fixture_corpus() -> Vec<Graph> {
    let mut graphs = Vec::new();
    for n in 1..=8 {
        graphs.push(generators::path(n).unwrap());
        graphs.push(generators::complete(n).unwrap());
    }
    for n in 3..=8 {
        graphs.push(generators::cycle(n).unwrap());
    }
    graphs.push(generators::hypercube(3).unwrap());
    graphs.push(generators::circulant(9, &[1, 3, 6, 8]).unwrap());
    graphs
}

/// Maximum objective over all binary assignments satisfying the model.
fn ilp_optimum_by_enumeration(model: &IlpModel) -> usize {
    let n = model.n;
    assert!(n <= 16, "enumeration oracle limited to small models");
    let mut best = 0;
    for mask in 0u32..1 << n {
        let ix: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        if ix.len() > best {
            let s = VertexSet::from_indices(n, &ix);
            if model.assignment_satisfies(&s) {
                best = ix.len();
            }
        }
    }
    best
}

#[test]
fn intervals_match_exhaustive_path_enumeration() {
    for g in fixture_corpus() {
        if g.n() > 9 {
            continue;
        }
        let d = DistanceMatrix::from_graph(&g);
        let oracle = IntervalOracle::build(&g, &d);
        for u in 0..g.n() {
            for v in (u + 1)..g.n() {
                let expected = interval_by_path_enumeration(&g, &d, u, v);
                assert_eq!(
                    oracle.interval(u, v),
                    expected,
                    "n={} pair ({u},{v})",
                    g.n()
                );
            }
        }
    }
}

#[test]
fn interval_characterization_against_distances() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xD15);
    for _ in 0..20 {
        let g = random_connected_graph(&mut rng, 9, 0.25);
        let d = DistanceMatrix::from_graph(&g);
        let oracle = IntervalOracle::build(&g, &d);
        for u in 0..9 {
            for v in (u + 1)..9 {
                for w in 0..9 {
                    let expected = w != u && w != v && d.get(u, w) + d.get(w, v) == d.get(u, v);
                    assert_eq!(oracle.interval_contains(u, v, w), expected);
                }
            }
        }
    }
}

#[test]
fn distance_matrix_invariants_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xD157);
    for round in 0..15 {
        let n = 2 + (round % 9);
        let g = random_connected_graph(&mut rng, n, 0.3);
        let d = DistanceMatrix::from_graph(&g);
        for u in 0..n {
            assert_eq!(d.get(u, u), 0);
            for v in 0..n {
                assert_eq!(d.get(u, v), d.get(v, u));
                assert_eq!(d.get(u, v) == 1, g.has_edge(u, v));
                for w in 0..n {
                    assert!(d.get(u, w) <= d.get(u, v) + d.get(v, w), "triangle");
                }
            }
        }
    }
}

#[test]
fn exact_engines_agree_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xBB0F);
    for round in 0..30 {
        let n = 2 + (round % 9);
        let g = random_connected_graph(&mut rng, n, 0.3);
        let oracle = IntervalOracle::from_graph(&g);
        let bf = brute_force_gp(&oracle).unwrap();
        let bb = branch_and_bound_gp(&oracle, &BbConfig::default());
        assert_eq!(bf.gp, bb.gp, "round {round}, n={n}");
        assert!(is_general_position(&oracle, &bf.witness));
        assert!(is_general_position(&oracle, &bb.witness));
        assert_eq!(bf.witness.len(), bf.gp);
        assert_eq!(bb.witness.len(), bb.gp);
    }
}

#[test]
fn ilp_enumeration_matches_brute_force_on_fixtures() {
    for g in fixture_corpus() {
        let oracle = IntervalOracle::from_graph(&g);
        let model = build_ilp(&oracle);
        let bf = brute_force_gp(&oracle).unwrap();
        assert_eq!(ilp_optimum_by_enumeration(&model), bf.gp, "n={}", g.n());
    }
}

#[test]
fn dropping_a_constraint_cannot_shrink_the_optimum() {
    for spec in ["c6", "p5", "cay:9:1,3,6,8"] {
        let g = gp_core::GraphSpec::parse(spec).unwrap().build().unwrap();
        let model = build_ilp(&IntervalOracle::from_graph(&g));
        let full = ilp_optimum_by_enumeration(&model);
        for drop in 0..model.constraints.len() {
            let mut relaxed = model.clone();
            relaxed.constraints.remove(drop);
            assert!(
                ilp_optimum_by_enumeration(&relaxed) >= full,
                "{spec} without row {drop}"
            );
        }
    }
}

#[test]
fn small_graph_families_have_known_values() {
    // gp(K_n) = n; any pair is feasible so gp >= 2 for n >= 2.
    for n in 1..=8 {
        let g = generators::complete(n).unwrap();
        assert_eq!(
            brute_force_gp(&IntervalOracle::from_graph(&g)).unwrap().gp,
            n
        );
    }
    for n in 2..=8 {
        let g = generators::path(n).unwrap();
        let gp = brute_force_gp(&IntervalOracle::from_graph(&g)).unwrap().gp;
        assert_eq!(gp, 2, "paths never fit three vertices");
    }
    assert_eq!(
        brute_force_gp(&IntervalOracle::from_graph(&generators::cycle(4).unwrap()))
            .unwrap()
            .gp,
        2
    );
    for n in 5..=8 {
        let g = generators::cycle(n).unwrap();
        assert_eq!(
            brute_force_gp(&IntervalOracle::from_graph(&g)).unwrap().gp,
            3
        );
    }
}

#[test]
fn serialization_round_trips_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
    for round in 0..40 {
        let n = 2 + (round % 11);
        let g = random_connected_graph(&mut rng, n, 0.3);
        let edges: Vec<_> = g.edges().collect();

        let el = io::write_edge_list(&g);
        let back = io::parse_edge_list(&el).unwrap();
        assert_eq!(back.n(), g.n());
        assert_eq!(back.edges().collect::<Vec<_>>(), edges);

        let g6 = io::write_graph6(&g);
        let back = io::parse_graph6(&g6).unwrap();
        assert_eq!(back.n(), g.n());
        assert_eq!(back.edges().collect::<Vec<_>>(), edges);
    }
}

#[test]
fn hereditary_property_on_repaired_sets() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    use rand::RngExt;
    for round in 0..30 {
        let n = 4 + (round % 6);
        let g = random_connected_graph(&mut rng, n, 0.35);
        let oracle = IntervalOracle::from_graph(&g);
        let mut s = VertexSet::empty(n);
        for v in 0..n {
            if rng.random_bool(0.5) {
                s.insert(v);
            }
        }
        let feasible = gp_core::repair(&oracle, &s);
        assert!(is_general_position(&oracle, &feasible));
        // Every random subset of a feasible set stays feasible.
        for _ in 0..20 {
            let mut sub = VertexSet::empty(n);
            for v in feasible.iter() {
                if rng.random_bool(0.6) {
                    sub.insert(v);
                }
            }
            assert!(is_general_position(&oracle, &sub));
        }
    }
}
