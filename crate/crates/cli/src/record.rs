//! Machine-readable run records.
//!
//! JSON output is schema-stable and key-sorted: the top-level object is
//! `{"artifact_version": …, "records": […]}` and every record carries the
//! same alphabetically ordered keys.

use std::time::Duration;

use anyhow::Result;
use serde_json::{json, Map, Value};

use gp_core::meta::{FitnessParams, GaParams, Method, SaParams, SolveResult};
use gp_core::{ExactResult, VertexSet};

/// One solver invocation on one instance.
#[derive(Clone, Debug)]
pub struct RunRecord {
    pub graph: String,
    pub n: usize,
    pub method: &'static str,
    pub size: usize,
    /// True only for exact methods that ran to completion.
    pub certified_optimal: bool,
    /// Echo of the solver parameters, key-sorted.
    pub params: Map<String, Value>,
    pub seed: u64,
    pub time_ms: u64,
    /// Ascending vertex list attaining `size`.
    pub witness: Vec<usize>,
}

impl RunRecord {
    pub fn from_exact(
        graph: &str,
        n: usize,
        method: Method,
        res: &ExactResult,
        elapsed: Duration,
    ) -> RunRecord {
        let mut params = Map::new();
        params.insert("nodes_explored".into(), json!(res.nodes_explored));
        RunRecord {
            graph: graph.to_string(),
            n,
            method: method.as_str(),
            size: res.gp,
            certified_optimal: res.complete,
            params,
            seed: 0,
            time_ms: elapsed.as_millis() as u64,
            witness: res.witness.to_vec(),
        }
    }

    pub fn from_ga(
        graph: &str,
        n: usize,
        ga: &GaParams,
        fp: &FitnessParams,
        res: &SolveResult,
        elapsed: Duration,
    ) -> RunRecord {
        let mut params = Map::new();
        params.insert("big_m".into(), json!(fp.big_m));
        params.insert("maxit".into(), json!(ga.max_iterations));
        params.insert("np".into(), json!(ga.population_size));
        Self::from_solve(graph, n, params, res, elapsed)
    }

    pub fn from_sa(
        graph: &str,
        n: usize,
        sa: &SaParams,
        fp: &FitnessParams,
        res: &SolveResult,
        elapsed: Duration,
    ) -> RunRecord {
        let mut params = Map::new();
        params.insert("acceptance".into(), json!(sa.acceptance.as_str()));
        params.insert("big_m".into(), json!(fp.big_m));
        params.insert("cooling_time".into(), json!(sa.cooling_time));
        params.insert("maxit".into(), json!(sa.max_iterations));
        params.insert("neighbors".into(), json!(sa.neighbor_count));
        params.insert("rho".into(), json!(sa.cooling_rate));
        params.insert("t0".into(), json!(sa.initial_temp));
        Self::from_solve(graph, n, params, res, elapsed)
    }

    fn from_solve(
        graph: &str,
        n: usize,
        params: Map<String, Value>,
        res: &SolveResult,
        elapsed: Duration,
    ) -> RunRecord {
        RunRecord {
            graph: graph.to_string(),
            n,
            method: res.method.as_str(),
            size: res.size,
            certified_optimal: false,
            params,
            seed: res.seed,
            time_ms: elapsed.as_millis() as u64,
            witness: res.best_set.to_vec(),
        }
    }

    /// The witness as a `VertexSet` of the given width.
    pub fn witness_set(&self, n: usize) -> VertexSet {
        VertexSet::from_indices(n, &self.witness)
    }

    /// Copy with `time_ms` forced to zero, for reproducible artifacts.
    pub fn with_zeroed_time(mut self) -> RunRecord {
        self.time_ms = 0;
        self
    }

    fn to_value(&self) -> Value {
        // serde_json maps are BTree-backed, so keys come out sorted.
        let mut m = Map::new();
        m.insert("certified_optimal".into(), json!(self.certified_optimal));
        m.insert("graph".into(), json!(self.graph));
        m.insert("method".into(), json!(self.method));
        m.insert("n".into(), json!(self.n));
        m.insert("params".into(), Value::Object(self.params.clone()));
        m.insert("seed".into(), json!(self.seed));
        m.insert("size".into(), json!(self.size));
        m.insert("time_ms".into(), json!(self.time_ms));
        m.insert("witness".into(), json!(self.witness));
        Value::Object(m)
    }
}

/// Top-level JSON document.
pub struct JsonReport {
    pub records: Vec<RunRecord>,
}

impl JsonReport {
    pub fn new(records: Vec<RunRecord>) -> JsonReport {
        JsonReport { records }
    }

    pub fn to_json_string(&self) -> Result<String> {
        let mut top = Map::new();
        top.insert("artifact_version".into(), json!(env!("CARGO_PKG_VERSION")));
        top.insert(
            "records".into(),
            Value::Array(self.records.iter().map(|r| r.to_value()).collect()),
        );
        let mut text = serde_json::to_string_pretty(&Value::Object(top))?;
        text.push('\n');
        Ok(text)
    }
}
