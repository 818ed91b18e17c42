//! Solving [`IlpModel`]s, either with the embedded branch and bound or with an
//! external executable reached through LP files.

mod bnb;
mod external;

pub use external::{external_solve, parse_solution, write_solution};

use std::fmt;
use std::path::PathBuf;
use std::time::Duration;

use crate::error::{Error, Result};
use crate::ilp::IlpModel;

/// Environment variable naming the external solver executable.
pub const SOLVER_ENV: &str = "MPP_ILP_SOLVER";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Optimal,
    /// An incumbent exists but optimality was not proven (gap or time limit).
    Feasible,
    /// No assignment exists, or none better than the requested cutoff.
    Infeasible,
    TimeoutNoIncumbent,
}

impl fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolveStatus::Optimal => "optimal",
            SolveStatus::Feasible => "feasible",
            SolveStatus::Infeasible => "infeasible",
            SolveStatus::TimeoutNoIncumbent => "timeout",
        })
    }
}

#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub status: SolveStatus,
    /// Value per variable, indexed like `model.variables`; empty without an
    /// incumbent.
    pub assignment: Vec<i64>,
    pub objective: Option<i64>,
    pub best_bound: Option<i64>,
    pub wall_time: Duration,
    pub nodes: u64,
}

impl SolveOutcome {
    pub fn has_solution(&self) -> bool {
        matches!(self.status, SolveStatus::Optimal | SolveStatus::Feasible)
    }
}

#[derive(Debug, Clone, Default)]
pub struct SolveOptions {
    pub time_limit: Option<Duration>,
    /// Relative gap `(incumbent - bound) / max(1, |incumbent|)` at which the
    /// search may stop.
    pub gap: f64,
    /// Only assignments strictly better than this objective value count.
    pub objective_cutoff: Option<i64>,
    /// Embedded backend only: stop after this many search nodes.
    pub node_limit: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Backend {
    Embedded,
    External(PathBuf),
}

impl Backend {
    /// The executable named by `MPP_ILP_SOLVER`.
    pub fn external_from_env() -> Result<Backend> {
        match std::env::var_os(SOLVER_ENV) {
            Some(p) if !p.is_empty() => Ok(Backend::External(PathBuf::from(p))),
            _ => Err(Error::ExternalSolver(format!("{SOLVER_ENV} is not set"))),
        }
    }
}

/// Snapshot reported whenever the incumbent improves.
#[derive(Debug, Clone, Copy)]
pub struct Progress {
    pub incumbent: i64,
    pub bound: i64,
    pub nodes: u64,
    pub elapsed: Duration,
}

/// Problem-specific optimistic bound used by the embedded backend.
pub trait BoundHook {
    /// Best objective value any completion of the current domains can reach
    /// (a lower bound when minimizing, an upper bound when maximizing).
    fn bound(&mut self, model: &IlpModel, lower: &[i64], upper: &[i64]) -> i64;
}

/// Optional callbacks for [`solve_with`].
#[derive(Default)]
pub struct Hooks<'a> {
    pub bound: Option<&'a mut dyn BoundHook>,
    pub progress: Option<&'a mut dyn FnMut(&Progress)>,
}

pub fn solve(model: &IlpModel, backend: &Backend, opts: &SolveOptions) -> Result<SolveOutcome> {
    solve_with(model, backend, opts, Hooks::default())
}

/// Like [`solve`]; hooks are only consulted by the embedded backend.
pub fn solve_with(
    model: &IlpModel,
    backend: &Backend,
    opts: &SolveOptions,
    hooks: Hooks<'_>,
) -> Result<SolveOutcome> {
    let outcome = match backend {
        Backend::Embedded => embedded_branch_and_bound(model, opts, hooks),
        Backend::External(exe) => external_solve(model, exe, opts.time_limit)?,
    };
    if outcome.has_solution() {
        let z = model.check_assignment(&outcome.assignment)?;
        if Some(z) != outcome.objective {
            return Err(Error::Integrity(format!(
                "reported objective {:?} but the assignment evaluates to {z}",
                outcome.objective
            )));
        }
        if let Some(c) = opts.objective_cutoff {
            let better = match model.objective.sense {
                crate::ilp::ObjSense::Minimize => z < c,
                crate::ilp::ObjSense::Maximize => z > c,
            };
            if !better && backend == &Backend::Embedded {
                return Err(Error::Integrity(format!("objective {z} does not beat the cutoff {c}")));
            }
        }
    }
    Ok(outcome)
}

pub fn embedded_branch_and_bound(model: &IlpModel, opts: &SolveOptions, hooks: Hooks<'_>) -> SolveOutcome {
    bnb::run(model, opts, hooks)
}
