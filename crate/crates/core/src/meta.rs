//! Penalty-driven metaheuristics: a genetic algorithm and simulated
//! annealing over vertex subsets.
//!
//! Both engines share the penalized objective
//! `fitness(S) = |S| - big_M * violations(S)` and report a repaired,
//! certified-feasible set. Runs are fully determined by their seed.

use std::time::{Duration, Instant};

use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitset::VertexSet;
use crate::interval::{count_violations, is_general_position, violating_pairs, IntervalOracle};

/// Which engine produced a result.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    BruteForce,
    BranchAndBound,
    GeneticAlgorithm,
    SimulatedAnnealing,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::BruteForce => "bf",
            Method::BranchAndBound => "bb",
            Method::GeneticAlgorithm => "ga",
            Method::SimulatedAnnealing => "sa",
        }
    }
}

/// Penalty weight for the shared fitness function.
///
/// Must exceed the vertex count so that fixing one violation always beats
/// gaining one vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FitnessParams {
    pub big_m: i64,
}

impl FitnessParams {
    /// Default weight `n + 1` for a graph on `n` vertices.
    pub fn for_order(n: usize) -> FitnessParams {
        FitnessParams {
            big_m: n as i64 + 1,
        }
    }
}

/// `|s| - big_M * f`, where `f` counts violating pairs.
pub fn fitness(oracle: &IntervalOracle, s: &VertexSet, params: &FitnessParams) -> i64 {
    debug_assert!(
        params.big_m > oracle.n() as i64,
        "penalty must dominate gains"
    );
    s.len() as i64 - params.big_m * count_violations(oracle, s) as i64
}

/// Offspring carry every vertex present in at least one parent.
pub fn crossover(a: &VertexSet, b: &VertexSet) -> VertexSet {
    a.union(b)
}

/// Swaps the bits at two distinct uniformly drawn positions. Preserves
/// cardinality; a no-op when both bits agree.
pub fn mutate<R: Rng>(s: &VertexSet, rng: &mut R) -> VertexSet {
    let n = s.width();
    assert!(n >= 2, "mutation needs at least two positions");
    let i = rng.random_range(0..n);
    let mut j = rng.random_range(0..n);
    while j == i {
        j = rng.random_range(0..n);
    }
    let mut out = s.clone();
    out.swap_bits(i, j);
    out
}

/// Deletes vertices until the set is in general position.
///
/// Each round removes the member participating in the most violating pairs
/// (as an endpoint or as an interior witness), breaking ties toward the
/// highest index. The result is always a feasible subset of the input.
pub fn repair(oracle: &IntervalOracle, s: &VertexSet) -> VertexSet {
    let mut out = s.clone();
    loop {
        let pairs = violating_pairs(oracle, &out);
        if pairs.is_empty() {
            return out;
        }
        let mut participation = vec![0usize; oracle.n()];
        for &(u, v) in &pairs {
            participation[u] += 1;
            participation[v] += 1;
            for w in out.iter() {
                if w != u && w != v && oracle.interval_contains(u, v, w) {
                    participation[w] += 1;
                }
            }
        }
        let worst = out
            .iter()
            .max_by_key(|&v| (participation[v], v))
            .expect("violating set is nonempty");
        out.remove(worst);
    }
}

/// Outcome of a metaheuristic run.
#[derive(Clone, Debug)]
pub struct SolveResult {
    pub method: Method,
    /// The repaired incumbent; always in general position.
    pub best_set: VertexSet,
    /// `best_set.len()`, a certified lower bound on gp(G).
    pub size: usize,
    /// Fitness of the incumbent before repair.
    pub raw_fitness: i64,
    pub feasible_before_repair: bool,
    pub iterations_run: usize,
    pub seed: u64,
    pub time: Duration,
}

/// Draws a uniformly random feasible starter set: two distinct vertices
/// (one, when the graph has a single vertex). Any set of at most two
/// vertices is in general position.
fn random_starter<R: Rng>(n: usize, rng: &mut R) -> VertexSet {
    let mut s = VertexSet::empty(n);
    let first = rng.random_range(0..n);
    s.insert(first);
    if n >= 2 {
        let mut second = rng.random_range(0..n);
        while second == first {
            second = rng.random_range(0..n);
        }
        s.insert(second);
    }
    s
}

// ---------------------------------------------------------------------------
// Genetic algorithm
// ---------------------------------------------------------------------------

/// Genetic algorithm controls.
#[derive(Clone, Debug)]
pub struct GaParams {
    pub population_size: usize,
    pub max_iterations: usize,
    pub seed: u64,
}

impl GaParams {
    pub fn new(population_size: usize, max_iterations: usize, seed: u64) -> GaParams {
        assert!(
            population_size >= 2,
            "population needs at least two individuals"
        );
        assert!(max_iterations >= 1);
        GaParams {
            population_size,
            max_iterations,
            seed,
        }
    }
}

struct Individual {
    set: VertexSet,
    fitness: i64,
}

/// Stepwise GA state, exposed so invariants can be observed mid-run.
pub struct GaEngine<'a> {
    oracle: &'a IntervalOracle,
    params: GaParams,
    fitness_params: FitnessParams,
    rng: ChaCha8Rng,
    population: Vec<Individual>,
}

impl<'a> GaEngine<'a> {
    /// Seeds an initial population of feasible two-vertex individuals.
    pub fn new(oracle: &'a IntervalOracle, params: GaParams, fp: FitnessParams) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
        let population = (0..params.population_size)
            .map(|_| {
                let set = random_starter(oracle.n(), &mut rng);
                let fitness = fitness(oracle, &set, &fp);
                Individual { set, fitness }
            })
            .collect();
        let mut engine = GaEngine {
            oracle,
            params,
            fitness_params: fp,
            rng,
            population,
        };
        engine.sort_population();
        engine
    }

    pub fn population_size(&self) -> usize {
        self.population.len()
    }

    /// Fittest individual of the current population.
    pub fn best(&self) -> (&VertexSet, i64) {
        let b = &self.population[0];
        (&b.set, b.fitness)
    }

    /// One generation: random parent pairs produce union offspring, random
    /// individuals produce swap mutants, and the merged pool is truncated
    /// back to the configured population size.
    pub fn step(&mut self) {
        let np = self.params.population_size;
        let mut pool = Vec::with_capacity(np + np / 2 + np);

        for _ in 0..np / 2 {
            let a = self.rng.random_range(0..np);
            let mut b = self.rng.random_range(0..np);
            while b == a {
                b = self.rng.random_range(0..np);
            }
            let child = crossover(&self.population[a].set, &self.population[b].set);
            let fitness = fitness(self.oracle, &child, &self.fitness_params);
            pool.push(Individual {
                set: child,
                fitness,
            });
        }

        for _ in 0..np {
            let pick = self.rng.random_range(0..np);
            // Swap mutation needs two positions; a one-vertex universe has
            // nothing to exchange.
            let mutant = if self.oracle.n() >= 2 {
                mutate(&self.population[pick].set, &mut self.rng)
            } else {
                self.population[pick].set.clone()
            };
            let fitness = fitness(self.oracle, &mutant, &self.fitness_params);
            pool.push(Individual {
                set: mutant,
                fitness,
            });
        }

        self.population.append(&mut pool);
        self.sort_population();
        self.population.truncate(np);
    }

    /// Fitness descending, ties broken toward the smaller member list.
    fn sort_population(&mut self) {
        self.population
            .sort_by(|a, b| b.fitness.cmp(&a.fitness).then_with(|| a.set.cmp(&b.set)));
    }
}

/// Runs the full GA loop and repairs the final incumbent.
pub fn ga_solve(oracle: &IntervalOracle, params: &GaParams, fp: &FitnessParams) -> SolveResult {
    let start = Instant::now();
    let mut engine = GaEngine::new(oracle, params.clone(), *fp);
    for _ in 0..params.max_iterations {
        engine.step();
    }
    let (incumbent, raw_fitness) = engine.best();
    let feasible_before_repair = is_general_position(oracle, incumbent);
    let best_set = repair(oracle, incumbent);
    SolveResult {
        method: Method::GeneticAlgorithm,
        size: best_set.len(),
        best_set,
        raw_fitness,
        feasible_before_repair,
        iterations_run: params.max_iterations,
        seed: params.seed,
        time: start.elapsed(),
    }
}

// ---------------------------------------------------------------------------
// Simulated annealing
// ---------------------------------------------------------------------------

/// How a worse walk state may replace the tracked incumbent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum AcceptanceMode {
    /// Metropolis on the fitness gap: accept when
    /// `exp(-(incumbent_fitness - walk_fitness) / T) > r`.
    #[default]
    Standard,
    /// Threshold on the absolute fitness with the temperature outside the
    /// exponential: accept when `exp(-walk_fitness) / T > r`.
    Absolute,
}

impl AcceptanceMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            AcceptanceMode::Standard => "standard",
            AcceptanceMode::Absolute => "absolute",
        }
    }
}

/// Simulated annealing controls.
#[derive(Clone, Debug)]
pub struct SaParams {
    pub max_iterations: usize,
    pub initial_temp: f64,
    /// Geometric cooling factor in (0, 1).
    pub cooling_rate: f64,
    /// Iterations between temperature reductions.
    pub cooling_time: usize,
    /// Neighbors sampled per iteration.
    pub neighbor_count: usize,
    pub seed: u64,
    pub acceptance: AcceptanceMode,
}

impl SaParams {
    /// Defaults for a graph on `n` vertices: `T_0 = 10`, `rho = 0.9`,
    /// twenty cooling plateaus, and `max(10, ceil(n / 2))` neighbors.
    pub fn with_defaults(n: usize, max_iterations: usize, seed: u64) -> SaParams {
        SaParams {
            max_iterations,
            initial_temp: 10.0,
            cooling_rate: 0.9,
            cooling_time: max_iterations.div_ceil(20).max(1),
            neighbor_count: 10.max(n.div_ceil(2)),
            seed,
            acceptance: AcceptanceMode::Standard,
        }
    }

    fn validate(&self) {
        assert!(self.max_iterations >= 1);
        assert!(self.initial_temp > 0.0);
        assert!(self.cooling_rate > 0.0 && self.cooling_rate < 1.0);
        assert!(self.cooling_time >= 1);
        assert!(self.neighbor_count >= 1);
    }
}

/// Temperature after `iterations_done` iterations of geometric cooling:
/// `t0 * rho^floor(iterations_done / cooling_time)`.
pub fn sa_temperature(t0: f64, rho: f64, cooling_time: usize, iterations_done: usize) -> f64 {
    t0 * rho.powi((iterations_done / cooling_time) as i32)
}

/// Stepwise SA state, exposed so the cooling schedule can be observed.
pub struct SaEngine<'a> {
    oracle: &'a IntervalOracle,
    params: SaParams,
    fitness_params: FitnessParams,
    rng: ChaCha8Rng,
    iterations_done: usize,
    walk: VertexSet,
    walk_fitness: i64,
    incumbent: VertexSet,
    incumbent_fitness: i64,
}

impl<'a> SaEngine<'a> {
    pub fn new(oracle: &'a IntervalOracle, params: SaParams, fp: FitnessParams) -> Self {
        params.validate();
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
        let walk = random_starter(oracle.n(), &mut rng);
        let walk_fitness = fitness(oracle, &walk, &fp);
        SaEngine {
            oracle,
            params,
            fitness_params: fp,
            rng,
            iterations_done: 0,
            incumbent: walk.clone(),
            incumbent_fitness: walk_fitness,
            walk,
            walk_fitness,
        }
    }

    pub fn temperature(&self) -> f64 {
        sa_temperature(
            self.params.initial_temp,
            self.params.cooling_rate,
            self.params.cooling_time,
            self.iterations_done,
        )
    }

    pub fn iterations_done(&self) -> usize {
        self.iterations_done
    }

    pub fn incumbent(&self) -> (&VertexSet, i64) {
        (&self.incumbent, self.incumbent_fitness)
    }

    /// One iteration: sample single-bit-flip neighbors at distinct
    /// positions, walk to the fittest one, then update the incumbent either
    /// by improvement or by the configured acceptance rule.
    pub fn step(&mut self) {
        let n = self.oracle.n();
        let k = self.params.neighbor_count.min(n);
        let temperature = self.temperature();

        // Distinct flip positions, drawn uniformly.
        let mut positions: Vec<usize> = Vec::with_capacity(k);
        while positions.len() < k {
            let p = self.rng.random_range(0..n);
            if !positions.contains(&p) {
                positions.push(p);
            }
        }

        // Ties go to the earlier draw, so equal-fitness moves stay random
        // rather than collapsing onto low-index vertices.
        let mut best_neighbor: Option<(VertexSet, i64)> = None;
        for &p in &positions {
            let mut neighbor = self.walk.clone();
            neighbor.toggle(p);
            let f = fitness(self.oracle, &neighbor, &self.fitness_params);
            if best_neighbor.as_ref().is_none_or(|(_, bf)| f > *bf) {
                best_neighbor = Some((neighbor, f));
            }
        }
        let (neighbor, neighbor_fitness) = best_neighbor.expect("k >= 1");
        self.walk = neighbor;
        self.walk_fitness = neighbor_fitness;

        if self.walk_fitness > self.incumbent_fitness {
            self.incumbent = self.walk.clone();
            self.incumbent_fitness = self.walk_fitness;
        } else {
            let r: f64 = self.rng.random();
            let accept = match self.params.acceptance {
                AcceptanceMode::Standard => {
                    let delta = (self.incumbent_fitness - self.walk_fitness) as f64;
                    (-delta / temperature).exp() > r
                }
                AcceptanceMode::Absolute => (-(self.walk_fitness as f64)).exp() / temperature > r,
            };
            if accept {
                self.incumbent = self.walk.clone();
                self.incumbent_fitness = self.walk_fitness;
            }
        }

        self.iterations_done += 1;
    }
}

/// Runs the full SA loop and repairs the final incumbent.
pub fn sa_solve(oracle: &IntervalOracle, params: &SaParams, fp: &FitnessParams) -> SolveResult {
    let start = Instant::now();
    let mut engine = SaEngine::new(oracle, params.clone(), *fp);
    for _ in 0..params.max_iterations {
        engine.step();
    }
    let (incumbent, raw_fitness) = engine.incumbent();
    let feasible_before_repair = is_general_position(oracle, incumbent);
    let best_set = repair(oracle, incumbent);
    SolveResult {
        method: Method::SimulatedAnnealing,
        size: best_set.len(),
        best_set,
        raw_fitness,
        feasible_before_repair,
        iterations_run: params.max_iterations,
        seed: params.seed,
        time: start.elapsed(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    fn oracle(g: &crate::graph::Graph) -> IntervalOracle {
        IntervalOracle::from_graph(g)
    }

    #[test]
    fn fitness_examples() {
        let g = generators::cycle(6).unwrap();
        let o = oracle(&g);
        let feasible = VertexSet::from_indices(6, &[0, 2, 4]);
        let fp = FitnessParams { big_m: 7 };
        assert_eq!(fitness(&o, &feasible, &fp), 3);
        let dirty = VertexSet::from_indices(6, &[0, 1, 3]);
        assert_eq!(fitness(&o, &dirty, &fp), -4);
        assert_eq!(fitness(&o, &VertexSet::empty(6), &fp), 0);
    }

    #[test]
    fn fitness_is_negative_exactly_when_infeasible() {
        let g = generators::hypercube(3).unwrap();
        let o = oracle(&g);
        let fp = FitnessParams::for_order(8);
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..300 {
            let mut s = VertexSet::empty(8);
            for v in 0..8 {
                if rng.random_bool(0.5) {
                    s.insert(v);
                }
            }
            let f = fitness(&o, &s, &fp);
            if is_general_position(&o, &s) {
                assert_eq!(f, s.len() as i64);
            } else {
                assert!(f < 0, "penalty must dominate: {s:?} -> {f}");
            }
        }
    }

    #[test]
    fn crossover_union_laws() {
        let a = VertexSet::from_indices(6, &[1, 4, 5]);
        let b = VertexSet::from_indices(6, &[2, 5]);
        let e = VertexSet::empty(6);
        assert_eq!(crossover(&a, &b), crossover(&b, &a));
        assert_eq!(crossover(&a, &a), a);
        assert_eq!(crossover(&a, &e), a);
        assert_eq!(crossover(&a, &b).to_vec(), vec![1, 2, 4, 5]);
    }

    #[test]
    fn mutate_preserves_cardinality() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let s = VertexSet::from_indices(9, &[0, 3, 8]);
        for _ in 0..200 {
            assert_eq!(mutate(&s, &mut rng).len(), 3);
        }
    }

    #[test]
    fn repair_examples() {
        let c6 = generators::cycle(6).unwrap();
        let o = oracle(&c6);
        let feasible = VertexSet::from_indices(6, &[0, 2, 4]);
        assert_eq!(repair(&o, &feasible), feasible);

        // {0,1,3}: the single violating pair {0,3} (witness 1) gives every
        // member participation 1, so the highest index 3 goes first.
        let dirty = VertexSet::from_indices(6, &[0, 1, 3]);
        assert_eq!(repair(&o, &dirty).to_vec(), vec![0, 1]);

        let p3 = generators::path(3).unwrap();
        let o = oracle(&p3);
        assert_eq!(repair(&o, &VertexSet::full(3)).to_vec(), vec![0, 1]);
    }

    #[test]
    fn repair_output_is_always_feasible() {
        let g = generators::hypercube(4).unwrap();
        let o = oracle(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let mut s = VertexSet::empty(16);
            for v in 0..16 {
                if rng.random_bool(0.4) {
                    s.insert(v);
                }
            }
            let fixed = repair(&o, &s);
            assert!(is_general_position(&o, &fixed));
            assert!(fixed.is_subset_of(&s));
        }
    }

    #[test]
    fn ga_finds_the_whole_complete_graph() {
        let g = generators::complete(5).unwrap();
        let o = oracle(&g);
        let fp = FitnessParams::for_order(5);
        for seed in 0..5 {
            let res = ga_solve(&o, &GaParams::new(8, 10, seed), &fp);
            assert_eq!(res.size, 5, "seed {seed}");
            assert!(is_general_position(&o, &res.best_set));
        }
    }

    #[test]
    fn ga_population_size_is_invariant() {
        let g = generators::hypercube(3).unwrap();
        let o = oracle(&g);
        let mut engine = GaEngine::new(&o, GaParams::new(10, 50, 3), FitnessParams::for_order(8));
        assert_eq!(engine.population_size(), 10);
        for _ in 0..50 {
            engine.step();
            assert_eq!(engine.population_size(), 10);
        }
    }

    #[test]
    fn ga_is_reproducible() {
        let g = generators::hypercube(4).unwrap();
        let o = oracle(&g);
        let fp = FitnessParams::for_order(16);
        let params = GaParams::new(12, 60, 42);
        let a = ga_solve(&o, &params, &fp);
        let b = ga_solve(&o, &params, &fp);
        assert_eq!(a.best_set, b.best_set);
        assert_eq!(a.raw_fitness, b.raw_fitness);
        assert_eq!(a.size, b.size);
    }

    #[test]
    fn sa_climbs_the_complete_graph() {
        let g = generators::complete(4).unwrap();
        let o = oracle(&g);
        let fp = FitnessParams::for_order(4);
        let mut best = 0;
        for seed in 0..10 {
            let mut params = SaParams::with_defaults(4, 10, seed);
            params.initial_temp = 10.0;
            let res = sa_solve(&o, &params, &fp);
            assert!(is_general_position(&o, &res.best_set));
            best = best.max(res.size);
        }
        assert_eq!(best, 4);
    }

    #[test]
    fn sa_is_reproducible() {
        let g = generators::hypercube(4).unwrap();
        let o = oracle(&g);
        let fp = FitnessParams::for_order(16);
        let params = SaParams::with_defaults(16, 40, 9);
        let a = sa_solve(&o, &params, &fp);
        let b = sa_solve(&o, &params, &fp);
        assert_eq!(a.best_set, b.best_set);
        assert_eq!(a.raw_fitness, b.raw_fitness);
    }

    #[test]
    fn sa_temperature_schedule() {
        let g = generators::hypercube(3).unwrap();
        let o = oracle(&g);
        let params = SaParams {
            max_iterations: 50,
            initial_temp: 10.0,
            cooling_rate: 0.9,
            cooling_time: 7,
            neighbor_count: 4,
            seed: 0,
            acceptance: AcceptanceMode::Standard,
        };
        let mut engine = SaEngine::new(&o, params.clone(), FitnessParams::for_order(8));
        for t in 0..50usize {
            let expected = params.initial_temp * params.cooling_rate.powi((t / 7) as i32);
            assert_eq!(engine.temperature(), expected, "iteration {t}");
            engine.step();
        }
    }

    #[test]
    fn absolute_acceptance_mode_runs() {
        let g = generators::hypercube(3).unwrap();
        let o = oracle(&g);
        let mut params = SaParams::with_defaults(8, 30, 5);
        params.acceptance = AcceptanceMode::Absolute;
        let res = sa_solve(&o, &params, &FitnessParams::for_order(8));
        assert!(is_general_position(&o, &res.best_set));
        assert!(res.size >= 2);
    }

    #[test]
    fn solver_results_stay_within_the_optimum() {
        let g = generators::hypercube(3).unwrap();
        let o = oracle(&g);
        let fp = FitnessParams::for_order(8);
        for seed in 0..6 {
            let ga = ga_solve(&o, &GaParams::new(10, 60, seed), &fp);
            let sa = sa_solve(&o, &SaParams::with_defaults(8, 60, seed), &fp);
            assert!(ga.size <= 4);
            assert!(sa.size <= 4);
        }
    }
}
