//! 0/1 programming model of the maximum general position problem, plus an
//! LP-format writer for external MILP solvers.
//!
//! One binary variable `x_j` per vertex, objective `max Σ x_j`, and for each
//! unordered pair `{u, v}` with a nonempty interval `I` the big-M row
//!
//! ```text
//! Σ_{ℓ ∈ I} x_ℓ + n·(x_u + x_v) <= 2n
//! ```
//!
//! which is vacuous unless both endpoint variables are 1, in which case it
//! forces the interval empty inside the selected set. Pairs with empty
//! intervals (adjacent vertices) constrain nothing and are omitted.

use crate::bitset::VertexSet;
use crate::interval::IntervalOracle;

/// One big-M row for a vertex pair with a nonempty interval.
#[derive(Clone, Debug)]
pub struct IlpConstraint {
    pub u: usize,
    pub v: usize,
    /// Interior vertices whose variables get coefficient 1.
    pub interval: VertexSet,
}

/// The full model: binary variables `x_0 … x_{n-1}`, maximize their sum.
#[derive(Clone, Debug)]
pub struct IlpModel {
    /// Variable count (vertex count of the underlying graph).
    pub n: usize,
    /// The big-M constant; always equal to `n`.
    pub big_m: usize,
    /// Rows ascending by `(u, v)`.
    pub constraints: Vec<IlpConstraint>,
}

impl IlpModel {
    /// Checks a binary assignment (as a vertex set) against all rows.
    pub fn assignment_satisfies(&self, assignment: &VertexSet) -> bool {
        assert_eq!(assignment.width(), self.n);
        self.constraints.iter().all(|c| {
            let interval_sum: usize = c
                .interval
                .iter()
                .filter(|&w| assignment.contains(w))
                .count();
            let endpoints = assignment.contains(c.u) as usize + assignment.contains(c.v) as usize;
            interval_sum + self.big_m * endpoints <= 2 * self.big_m
        })
    }
}

/// Builds the model from an interval oracle.
pub fn build_ilp(oracle: &IntervalOracle) -> IlpModel {
    let n = oracle.n();
    let mut constraints = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if !oracle.interval_is_empty(u, v) {
                constraints.push(IlpConstraint {
                    u,
                    v,
                    interval: oracle.interval(u, v),
                });
            }
        }
    }
    IlpModel {
        n,
        big_m: n,
        constraints,
    }
}

/// Maximum terms per emitted line; long rows continue indented.
const TERMS_PER_LINE: usize = 12;

/// Renders the model in LP text format, byte-deterministically.
///
/// Variables are listed ascending, constraint rows ascending by `(u, v)`
/// and named `gp_u_v`. Interval terms come first with unit coefficients,
/// then the two big-M endpoint terms.
pub fn write_lp(model: &IlpModel) -> String {
    let mut out = String::from("Maximize\n");
    let objective: Vec<String> = (0..model.n).map(|j| format!("x{j}")).collect();
    push_terms(&mut out, " obj: ", &objective, "");

    out.push_str("Subject To\n");
    for c in &model.constraints {
        let mut terms: Vec<String> = c.interval.iter().map(|w| format!("x{w}")).collect();
        terms.push(format!("{} x{}", model.big_m, c.u));
        terms.push(format!("{} x{}", model.big_m, c.v));
        let head = format!(" gp_{}_{}: ", c.u, c.v);
        push_terms(&mut out, &head, &terms, &format!(" <= {}", 2 * model.big_m));
    }

    out.push_str("Binary\n");
    for j in 0..model.n {
        out.push_str(&format!(" x{j}\n"));
    }
    out.push_str("End\n");
    out
}

fn push_terms(out: &mut String, head: &str, terms: &[String], tail: &str) {
    out.push_str(head);
    for (i, term) in terms.iter().enumerate() {
        if i > 0 {
            if i % TERMS_PER_LINE == 0 {
                out.push_str("\n   + ");
            } else {
                out.push_str(" + ");
            }
        }
        out.push_str(term);
    }
    out.push_str(tail);
    out.push('\n');
}
