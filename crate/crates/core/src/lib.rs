//! Solvers for the general position number of a finite connected graph.
//!
//! A set of vertices is in *general position* when no shortest path between
//! two of its members passes through a third member; gp(G) is the largest
//! size such a set can have. This crate provides:
//!
//! - [`graph`]: immutable simple connected graphs and BFS distance matrices;
//! - [`interval`]: the geodesic interval oracle and feasibility predicates;
//! - [`generators`]: hypercubes, circulants, and test-fixture families;
//! - [`io`]: edge-list, graph6 and DOT serialization;
//! - [`exact`]: exhaustive and branch-and-bound exact searches;
//! - [`ilp`]: the 0/1 programming model of the problem and an LP-file writer;
//! - [`meta`]: penalty-driven genetic algorithm and simulated annealing.

pub mod bitset;
pub mod exact;
pub mod generators;
pub mod graph;
pub mod ilp;
pub mod interval;
pub mod io;
pub mod meta;

pub use bitset::VertexSet;
pub use exact::{branch_and_bound_gp, brute_force_gp, BbConfig, ExactResult};
pub use generators::{circulant, complete, cycle, hypercube, path, GraphSpec};
pub use graph::{DistanceMatrix, Graph};
pub use ilp::{build_ilp, write_lp, IlpModel};
pub use interval::{count_violations, is_general_position, IntervalOracle};
pub use meta::{
    crossover, fitness, ga_solve, mutate, repair, sa_solve, AcceptanceMode, FitnessParams,
    GaParams, Method, SaParams, SolveResult,
};
