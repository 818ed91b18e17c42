//! File-based bridge to an external ILP executable.
//!
//! The executable is run as `<exe> <lp-file> <solution-file> <seconds>`
//! (`0` seconds means no limit) and must write
//!
//! ```text
//! status optimal|feasible|infeasible|timeout
//! objective <value>
//! <variable-name> <value>
//! ...
//! ```
//!
//! Variables missing from the file are taken as zero. The assignment is
//! checked against the model before it is returned.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use super::{SolveOutcome, SolveStatus};
use crate::error::{Error, Result};
use crate::ilp::{export_lp, IlpModel};

pub fn external_solve(model: &IlpModel, exe: &Path, time_limit: Option<Duration>) -> Result<SolveOutcome> {
    let started = Instant::now();
    if model.trivially_infeasible.is_some() {
        return Ok(SolveOutcome {
            status: SolveStatus::Infeasible,
            assignment: Vec::new(),
            objective: None,
            best_bound: None,
            wall_time: started.elapsed(),
            nodes: 0,
        });
    }
    let dir = tempfile::Builder::new().prefix("mpp-ilp-").tempdir()?;
    let lp_path = dir.path().join("model.lp");
    let sol_path = dir.path().join("model.sol");
    std::fs::write(&lp_path, export_lp(model))?;
    let secs = time_limit.map_or(0, |t| t.as_secs_f64().ceil() as u64);
    let output = Command::new(exe)
        .arg(&lp_path)
        .arg(&sol_path)
        .arg(secs.to_string())
        .output()
        .map_err(|e| Error::ExternalSolver(format!("cannot run {}: {e}", exe.display())))?;
    if !output.status.success() {
        return Err(Error::ExternalSolver(format!(
            "{} exited with {}: {}",
            exe.display(),
            output.status,
            String::from_utf8_lossy(&output.stderr).trim()
        )));
    }
    let text = std::fs::read_to_string(&sol_path)
        .map_err(|e| Error::ExternalSolver(format!("no solution file: {e}")))?;
    let (status, objective, assignment) = parse_solution(model, &text)?;
    let mut out = SolveOutcome {
        status,
        assignment: Vec::new(),
        objective: None,
        best_bound: None,
        wall_time: started.elapsed(),
        nodes: 0,
    };
    if out.has_solution() {
        let z = model.check_assignment(&assignment)?;
        if objective != Some(z) {
            return Err(Error::Integrity(format!(
                "solver reports objective {objective:?}, assignment evaluates to {z}"
            )));
        }
        out.objective = Some(z);
        out.assignment = assignment;
        if status == SolveStatus::Optimal {
            out.best_bound = Some(z);
        }
    }
    Ok(out)
}

/// Reads a solution file against `model`'s variable names.
pub fn parse_solution(model: &IlpModel, text: &str) -> Result<(SolveStatus, Option<i64>, Vec<i64>)> {
    let bad = |line: usize, msg: &str| Error::ExternalSolver(format!("solution line {line}: {msg}"));
    let index: HashMap<&str, usize> =
        model.variables.iter().enumerate().map(|(i, v)| (v.name.as_str(), i)).collect();
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let status = match lines.next().map(|(i, l)| (i + 1, l.split_whitespace().collect::<Vec<_>>())) {
        Some((_, f)) if f.len() == 2 && f[0] == "status" => match f[1] {
            "optimal" => SolveStatus::Optimal,
            "feasible" => SolveStatus::Feasible,
            "infeasible" => SolveStatus::Infeasible,
            "timeout" => SolveStatus::TimeoutNoIncumbent,
            other => return Err(bad(1, &format!("unknown status {other}"))),
        },
        Some((ln, _)) => return Err(bad(ln, "expected `status <value>`")),
        None => return Err(bad(1, "empty solution file")),
    };
    let mut values = vec![0i64; model.var_count()];
    let mut objective = None;
    for (i, line) in lines {
        let ln = i + 1;
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.len() != 2 {
            return Err(bad(ln, "expected `<name> <value>`"));
        }
        let raw: f64 = f[1].parse().map_err(|_| bad(ln, "value is not a number"))?;
        let value = raw.round();
        if (raw - value).abs() > 1e-6 {
            return Err(Error::Integrity(format!("{} = {raw} is not integral", f[0])));
        }
        if f[0] == "objective" && objective.is_none() {
            objective = Some(value as i64);
            continue;
        }
        let v = *index.get(f[0]).ok_or_else(|| bad(ln, &format!("unknown variable {}", f[0])))?;
        values[v] = value as i64;
    }
    if matches!(status, SolveStatus::Optimal | SolveStatus::Feasible) && objective.is_none() {
        return Err(bad(2, "missing objective line"));
    }
    Ok((status, objective, values))
}

/// Formats a solution file; zero-valued variables are omitted.
pub fn write_solution(model: &IlpModel, status: SolveStatus, objective: Option<i64>, values: &[i64]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "status {status}");
    if let Some(z) = objective {
        let _ = writeln!(out, "objective {z}");
        for (var, &x) in model.variables.iter().zip(values) {
            if x != 0 {
                let _ = writeln!(out, "{} {x}", var.name);
            }
        }
    }
    out
}
