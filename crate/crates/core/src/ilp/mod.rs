//! Integer linear programs over time-expanded networks.

mod build;
mod lp;

pub use build::{
    add_compact_collision_constraints, build_makespan_model, build_maxdist_model, build_model,
    build_totaldist_model, build_totaltime_model, extract_flow, flow_assignment, ObjectiveKind,
};
pub use lp::{export_lp, parse_lp};

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::timex::ArcId;

pub type VarId = usize;
pub type RowId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarKind {
    Binary,
    Integer,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Variable {
    pub name: String,
    pub kind: VarKind,
    pub lower: i64,
    pub upper: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Le,
    Eq,
    Ge,
}

impl fmt::Display for Sense {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sense::Le => "<=",
            Sense::Eq => "=",
            Sense::Ge => ">=",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub name: String,
    pub terms: Vec<(VarId, i64)>,
    pub sense: Sense,
    pub rhs: i64,
}

impl Constraint {
    pub fn activity(&self, values: &[i64]) -> i64 {
        self.terms.iter().map(|&(v, a)| a * values[v]).sum()
    }

    pub fn satisfied_by(&self, values: &[i64]) -> bool {
        let act = self.activity(values);
        match self.sense {
            Sense::Le => act <= self.rhs,
            Sense::Eq => act == self.rhs,
            Sense::Ge => act >= self.rhs,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObjSense {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Objective {
    pub sense: ObjSense,
    pub terms: Vec<(VarId, i64)>,
    pub constant: i64,
}

/// A pure integer program with bounded variables.
///
/// Besides the program itself the model records which network arc each
/// variable stands for, plus search hints that do not change the program:
/// a per-variable preference (lower is tried first) and a per-row layer used
/// to order branching.
#[derive(Debug, Clone)]
pub struct IlpModel {
    pub variables: Vec<Variable>,
    pub constraints: Vec<Constraint>,
    pub objective: Objective,
    /// `(robot, arc) -> x_{robot,arc}`.
    pub var_of_arc: BTreeMap<(usize, ArcId), VarId>,
    /// `(robot, t) -> x_i^t`, the hold at the goal over step `t-1 -> t`.
    pub goal_hold_var: BTreeMap<(usize, usize), VarId>,
    /// `(robot, t) -> y_i^t` (total-time model).
    pub stay_var: BTreeMap<(usize, usize), VarId>,
    /// `x_max` (max-distance model).
    pub max_var: Option<VarId>,
    /// Set when the model is infeasible before any search, e.g. a robot whose
    /// goal cannot be reached within the horizon.
    pub trivially_infeasible: Option<String>,
    pub var_hint: Vec<i64>,
    pub row_layer: Vec<u32>,
}

impl IlpModel {
    pub fn new(sense: ObjSense) -> Self {
        IlpModel {
            variables: Vec::new(),
            constraints: Vec::new(),
            objective: Objective { sense, terms: Vec::new(), constant: 0 },
            var_of_arc: BTreeMap::new(),
            goal_hold_var: BTreeMap::new(),
            stay_var: BTreeMap::new(),
            max_var: None,
            trivially_infeasible: None,
            var_hint: Vec::new(),
            row_layer: Vec::new(),
        }
    }

    pub fn add_var(&mut self, name: impl Into<String>, kind: VarKind, lower: i64, upper: i64) -> VarId {
        self.variables.push(Variable { name: name.into(), kind, lower, upper });
        self.var_hint.push(0);
        self.variables.len() - 1
    }

    pub fn add_binary(&mut self, name: impl Into<String>) -> VarId {
        self.add_var(name, VarKind::Binary, 0, 1)
    }

    /// Adds a row. A row without terms is dropped; if its constant side is
    /// violated the model is marked infeasible instead.
    pub fn add_constraint(
        &mut self,
        name: impl Into<String>,
        terms: Vec<(VarId, i64)>,
        sense: Sense,
        rhs: i64,
    ) -> Option<RowId> {
        self.add_constraint_at(name, terms, sense, rhs, 0)
    }

    pub fn add_constraint_at(
        &mut self,
        name: impl Into<String>,
        terms: Vec<(VarId, i64)>,
        sense: Sense,
        rhs: i64,
        layer: u32,
    ) -> Option<RowId> {
        let terms: Vec<(VarId, i64)> = terms.into_iter().filter(|&(_, a)| a != 0).collect();
        let name = name.into();
        if terms.is_empty() {
            let ok = match sense {
                Sense::Le => 0 <= rhs,
                Sense::Eq => 0 == rhs,
                Sense::Ge => 0 >= rhs,
            };
            if !ok && self.trivially_infeasible.is_none() {
                self.trivially_infeasible = Some(format!("row {name} has no variables and cannot hold"));
            }
            return None;
        }
        self.constraints.push(Constraint { name, terms, sense, rhs });
        self.row_layer.push(layer);
        Some(self.constraints.len() - 1)
    }

    pub fn var_count(&self) -> usize {
        self.variables.len()
    }

    pub fn row_count(&self) -> usize {
        self.constraints.len()
    }

    pub fn var_by_name(&self, name: &str) -> Option<VarId> {
        self.variables.iter().position(|v| v.name == name)
    }

    pub fn objective_value(&self, values: &[i64]) -> i64 {
        self.objective.constant + self.objective.terms.iter().map(|&(v, c)| c * values[v]).sum::<i64>()
    }

    /// Re-evaluates an assignment in exact integer arithmetic and returns its
    /// objective value, or an integrity error naming the first broken bound
    /// or row.
    pub fn check_assignment(&self, values: &[i64]) -> Result<i64> {
        if values.len() != self.variables.len() {
            return Err(Error::Integrity(format!(
                "assignment has {} values for {} variables",
                values.len(),
                self.variables.len()
            )));
        }
        for (var, &x) in self.variables.iter().zip(values) {
            if x < var.lower || x > var.upper {
                return Err(Error::Integrity(format!(
                    "{} = {x} outside [{}, {}]",
                    var.name, var.lower, var.upper
                )));
            }
        }
        if let Some(row) = self.constraints.iter().find(|r| !r.satisfied_by(values)) {
            return Err(Error::Integrity(format!(
                "row {} violated: activity {} {} {}",
                row.name,
                row.activity(values),
                row.sense,
                row.rhs
            )));
        }
        if let Some(why) = &self.trivially_infeasible {
            return Err(Error::Integrity(format!("model is infeasible: {why}")));
        }
        Ok(self.objective_value(values))
    }
}
