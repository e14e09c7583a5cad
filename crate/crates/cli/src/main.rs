//! `gp` — solvers for the general position number of a graph.

mod bench;
mod record;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use gp_core::generators::GraphSpec;
use gp_core::io::{self, GraphFormat};
use gp_core::meta::{AcceptanceMode, FitnessParams, GaParams, Method, SaParams};
use gp_core::{
    branch_and_bound_gp, brute_force_gp, build_ilp, write_lp, BbConfig, Graph, IntervalOracle,
    VertexSet,
};

use record::{JsonReport, RunRecord};

#[derive(Parser)]
#[command(
    name = "gp",
    version,
    about = "Compute general position numbers of graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a built-in graph as edge-list or graph6 text.
    Gen {
        /// Graph spec: qD, cN, pN, kN, cay:N:c1,c2,… or file:PATH, with an
        /// optional :edge-list / :graph6 suffix forcing the file format.
        spec: String,
        /// Output file; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = FormatArg::EdgeList)]
        format: FormatArg,
    },
    /// Run one solver on one graph.
    Solve {
        #[arg(long)]
        graph: String,
        #[arg(long, value_enum)]
        method: MethodArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the run record as JSON to this file.
        #[arg(long)]
        json: Option<PathBuf>,
        #[command(flatten)]
        ga: GaFlags,
        #[command(flatten)]
        sa: SaFlags,
        /// Penalty weight for GA/SA fitness; defaults to n+1.
        #[arg(long)]
        big_m: Option<i64>,
        /// Report zeroed wall times for byte-reproducible JSON.
        #[arg(long)]
        zero_times: bool,
    },
    /// Write the 0/1 programming model in LP format.
    ExportLp {
        #[arg(long)]
        graph: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check whether a vertex set is in general position.
    Verify {
        #[arg(long)]
        graph: String,
        /// Comma-separated vertex list, e.g. "0,2,4".
        #[arg(long)]
        set: String,
    },
    /// Run a benchmark suite.
    Bench {
        /// Suite name; only "table1" is defined.
        suite: String,
        /// Seeds per metaheuristic instance.
        #[arg(long, default_value_t = 10)]
        runs: usize,
        #[arg(long)]
        json: Option<PathBuf>,
        /// Directory holding fullerene adjacency files (c46.txt / c48.txt,
        /// or .g6 variants).
        #[arg(long)]
        fullerenes: Option<PathBuf>,
        /// Treat the fullerene reference values as assertions. Off by
        /// default because the value depends on which isomer the files hold.
        #[arg(long, requires = "fullerenes")]
        check_fullerenes: bool,
        /// Skip the branch-and-bound run on the 128-vertex hypercube.
        #[arg(long)]
        skip_q7_bb: bool,
        /// Report zeroed wall times for byte-reproducible JSON.
        #[arg(long)]
        zero_times: bool,
    },
    /// Render a graph (optionally with a highlighted set) as DOT text.
    Draw {
        #[arg(long)]
        graph: String,
        /// Comma-separated vertex list to highlight.
        #[arg(long)]
        set: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    EdgeList,
    Graph6,
}

impl From<FormatArg> for GraphFormat {
    fn from(f: FormatArg) -> GraphFormat {
        match f {
            FormatArg::EdgeList => GraphFormat::EdgeList,
            FormatArg::Graph6 => GraphFormat::Graph6,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Bf,
    Bb,
    Ga,
    Sa,
}

#[derive(Args)]
struct GaFlags {
    /// GA population size.
    #[arg(long, default_value_t = 20)]
    np: usize,
    /// GA/SA iteration budget.
    #[arg(long, default_value_t = 200)]
    maxit: usize,
}

#[derive(Args)]
struct SaFlags {
    /// SA initial temperature.
    #[arg(long, default_value_t = 10.0)]
    t0: f64,
    /// SA geometric cooling rate in (0, 1).
    #[arg(long, default_value_t = 0.9)]
    rho: f64,
    /// Iterations between cooling steps; defaults to ceil(maxit / 20).
    #[arg(long)]
    cooling_time: Option<usize>,
    /// Neighbors sampled per SA iteration; defaults to max(10, ceil(n / 2)).
    #[arg(long)]
    neighbors: Option<usize>,
    /// Incumbent acceptance rule for worse walk states.
    #[arg(long, value_enum, default_value_t = AcceptanceArg::Standard)]
    acceptance: AcceptanceArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum AcceptanceArg {
    Standard,
    Absolute,
}

impl From<AcceptanceArg> for AcceptanceMode {
    fn from(a: AcceptanceArg) -> AcceptanceMode {
        match a {
            AcceptanceArg::Standard => AcceptanceMode::Standard,
            AcceptanceArg::Absolute => AcceptanceMode::Absolute,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Gen {
            spec,
            output,
            format,
        } => {
            let graph = build_graph(&spec)?;
            let mut text = io::write_graph(&graph, format.into());
            if !text.ends_with('\n') {
                text.push('\n');
            }
            emit(output.as_deref(), &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Solve {
            graph,
            method,
            seed,
            json,
            ga,
            sa,
            big_m,
            zero_times,
        } => {
            let spec = parse_spec(&graph)?;
            let g = spec.build().map_err(|e| anyhow!("{e}"))?;
            let oracle = IntervalOracle::from_graph(&g);
            let record = solve_one(
                &spec.canonical_name(),
                &g,
                &oracle,
                method,
                seed,
                &ga,
                &sa,
                big_m,
            )?;
            let record = if zero_times {
                record.with_zeroed_time()
            } else {
                record
            };
            if !gp_core::is_general_position(&oracle, &record.witness_set(g.n())) {
                bail!("internal error: solver returned an infeasible witness");
            }
            println!(
                "{}: method={} size={} certified={} witness={:?} time_ms={}",
                record.graph,
                record.method,
                record.size,
                record.certified_optimal,
                record.witness,
                record.time_ms
            );
            if let Some(path) = json {
                let report = JsonReport::new(vec![record]);
                std::fs::write(&path, report.to_json_string()?)
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::ExportLp { graph, output } => {
            let g = build_graph(&graph)?;
            let model = build_ilp(&IntervalOracle::from_graph(&g));
            emit(output.as_deref(), &write_lp(&model))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { graph, set } => {
            let g = build_graph(&graph)?;
            let members = parse_set(&set, g.n())?;
            let oracle = IntervalOracle::from_graph(&g);
            let pairs = gp_core::interval::violating_pairs(&oracle, &members);
            if pairs.is_empty() {
                println!("feasible: {:?} is in general position", members.to_vec());
                Ok(ExitCode::SUCCESS)
            } else {
                for (u, v) in &pairs {
                    let witnesses: Vec<usize> = oracle
                        .interval(*u, *v)
                        .iter()
                        .filter(|&w| members.contains(w))
                        .collect();
                    println!(
                        "violation: pair {{{u}, {v}}} has member witness(es) {witnesses:?} on a shortest path"
                    );
                }
                println!("infeasible: {} violating pair(s)", pairs.len());
                Ok(ExitCode::FAILURE)
            }
        }
        Command::Bench {
            suite,
            runs,
            json,
            fullerenes,
            check_fullerenes,
            skip_q7_bb,
            zero_times,
        } => {
            if suite != "table1" {
                bail!("unknown bench suite '{suite}' (expected 'table1')");
            }
            if runs < 1 {
                bail!("--runs must be at least 1");
            }
            let options = bench::BenchOptions {
                runs,
                fullerene_dir: fullerenes,
                check_fullerenes,
                skip_q7_bb,
                zero_times,
                threads: bench::threads_from_env(),
            };
            let outcome = bench::run_table1(&options)?;
            print!("{}", outcome.report);
            if let Some(path) = json {
                let report = JsonReport::new(outcome.records);
                std::fs::write(&path, report.to_json_string()?)
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Draw { graph, set, output } => {
            let g = build_graph(&graph)?;
            let highlight = match set {
                Some(s) => parse_set(&s, g.n())?,
                None => VertexSet::empty(g.n()),
            };
            emit(output.as_deref(), &io::to_dot(&g, &highlight))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn parse_spec(s: &str) -> Result<GraphSpec> {
    GraphSpec::parse(s).map_err(|e| anyhow!("{e}"))
}

fn build_graph(spec: &str) -> Result<Graph> {
    parse_spec(spec)?.build().map_err(|e| anyhow!("{e}"))
}

fn parse_set(s: &str, n: usize) -> Result<VertexSet> {
    let mut set = VertexSet::empty(n);
    for tok in s.split(',') {
        let tok = tok.trim();
        if tok.is_empty() {
            continue;
        }
        let v: usize = tok
            .parse()
            .map_err(|_| anyhow!("malformed set entry '{tok}'"))?;
        if v >= n {
            bail!("vertex {v} out of range for a graph on {n} vertices");
        }
        set.insert(v);
    }
    Ok(set)
}

fn emit(path: Option<&std::path::Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn solve_one(
    name: &str,
    g: &Graph,
    oracle: &IntervalOracle,
    method: MethodArg,
    seed: u64,
    ga: &GaFlags,
    sa: &SaFlags,
    big_m: Option<i64>,
) -> Result<RunRecord> {
    if ga.np < 2 {
        bail!("--np must be at least 2");
    }
    if ga.maxit < 1 {
        bail!("--maxit must be at least 1");
    }
    if !(sa.rho > 0.0 && sa.rho < 1.0) {
        bail!("--rho must lie strictly between 0 and 1");
    }
    if sa.t0 <= 0.0 {
        bail!("--t0 must be positive");
    }
    if sa.cooling_time == Some(0) {
        bail!("--cooling-time must be at least 1");
    }
    if sa.neighbors == Some(0) {
        bail!("--neighbors must be at least 1");
    }
    let fp = match big_m {
        Some(m) => {
            if m <= g.n() as i64 {
                bail!("--big-m must exceed the vertex count {}", g.n());
            }
            FitnessParams { big_m: m }
        }
        None => FitnessParams::for_order(g.n()),
    };
    match method {
        MethodArg::Bf => {
            let start = Instant::now();
            let res = brute_force_gp(oracle).map_err(|e| anyhow!("{e}"))?;
            let elapsed = start.elapsed();
            Ok(RunRecord::from_exact(
                name,
                g.n(),
                Method::BruteForce,
                &res,
                elapsed,
            ))
        }
        MethodArg::Bb => {
            let start = Instant::now();
            let res = branch_and_bound_gp(oracle, &BbConfig::default());
            let elapsed = start.elapsed();
            Ok(RunRecord::from_exact(
                name,
                g.n(),
                Method::BranchAndBound,
                &res,
                elapsed,
            ))
        }
        MethodArg::Ga => {
            let params = GaParams::new(ga.np, ga.maxit, seed);
            let start = Instant::now();
            let res = gp_core::ga_solve(oracle, &params, &fp);
            let elapsed = start.elapsed();
            Ok(RunRecord::from_ga(name, g.n(), &params, &fp, &res, elapsed))
        }
        MethodArg::Sa => {
            let mut params = SaParams::with_defaults(g.n(), ga.maxit, seed);
            params.initial_temp = sa.t0;
            params.cooling_rate = sa.rho;
            if let Some(ct) = sa.cooling_time {
                params.cooling_time = ct;
            }
            if let Some(k) = sa.neighbors {
                params.neighbor_count = k;
            }
            params.acceptance = sa.acceptance.into();
            let start = Instant::now();
            let res = gp_core::sa_solve(oracle, &params, &fp);
            let elapsed = start.elapsed();
            Ok(RunRecord::from_sa(name, g.n(), &params, &fp, &res, elapsed))
        }
    }
}
