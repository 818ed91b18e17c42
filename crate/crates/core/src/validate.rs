//! Plan validation and objective metrics.
//!
//! Arrival times use stabilization semantics: a robot arrives at the first
//! step after which it never leaves its goal, so a robot may pass through its
//! goal earlier without arriving.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::plan::Plan;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    RobotCount,
    VertexRange,
    Start,
    Goal,
    Adjacency,
    Meet,
    HeadOn,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::RobotCount => "robot-count",
            Rule::VertexRange => "vertex-range",
            Rule::Start => "start",
            Rule::Goal => "goal",
            Rule::Adjacency => "adjacency",
            Rule::Meet => "meet",
            Rule::HeadOn => "head-on",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub rule: Rule,
    pub robots: Vec<usize>,
    /// Time step (for moves, the step `t -> t + 1` is reported as `t`).
    pub time: Option<usize>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rule)?;
        if let Some(t) = self.time {
            write!(f, " at t={t}")?;
        }
        let robots: Vec<String> = self.robots.iter().map(|r| r.to_string()).collect();
        write!(f, " robots [{}]: {}", robots.join(","), self.detail)
    }
}

/// Checks start/goal, move adjacency, meet and head-on rules. An empty result
/// means the plan is a feasible solution of the instance.
pub fn validate(plan: &Plan, inst: &Instance) -> Vec<Violation> {
    let mut out = Vec::new();
    let g = inst.graph();
    let n = inst.robot_count();
    if plan.robot_count() != n {
        out.push(Violation {
            rule: Rule::RobotCount,
            robots: Vec::new(),
            time: None,
            detail: format!("plan has {} robots, instance has {n}", plan.robot_count()),
        });
        return out;
    }
    if n == 0 {
        return out;
    }
    let horizon = plan.horizon();
    for i in 0..n {
        if let Some(t) = plan.path(i).iter().position(|&v| v >= g.vertex_count()) {
            out.push(Violation {
                rule: Rule::VertexRange,
                robots: vec![i],
                time: Some(t),
                detail: format!("vertex {} does not exist", plan.position(i, t)),
            });
        }
    }
    if !out.is_empty() {
        return out;
    }
    for i in 0..n {
        if plan.position(i, 0) != inst.start(i) {
            out.push(Violation {
                rule: Rule::Start,
                robots: vec![i],
                time: Some(0),
                detail: format!("starts at {} instead of {}", plan.position(i, 0), inst.start(i)),
            });
        }
        if plan.position(i, horizon) != inst.goal(i) {
            out.push(Violation {
                rule: Rule::Goal,
                robots: vec![i],
                time: Some(horizon),
                detail: format!("ends at {} instead of {}", plan.position(i, horizon), inst.goal(i)),
            });
        }
        for t in 0..horizon {
            let (a, b) = (plan.position(i, t), plan.position(i, t + 1));
            if a != b && !g.has_edge(a, b) {
                out.push(Violation {
                    rule: Rule::Adjacency,
                    robots: vec![i],
                    time: Some(t),
                    detail: format!("{a} -> {b} is not an edge"),
                });
            }
        }
    }
    for t in 0..=horizon {
        let mut at: HashMap<usize, usize> = HashMap::with_capacity(n);
        for i in 0..n {
            if let Some(&j) = at.get(&plan.position(i, t)) {
                out.push(Violation {
                    rule: Rule::Meet,
                    robots: vec![j, i],
                    time: Some(t),
                    detail: format!("both at vertex {}", plan.position(i, t)),
                });
            } else {
                at.insert(plan.position(i, t), i);
            }
        }
        if t == horizon {
            break;
        }
        let mut moves: HashMap<(usize, usize), usize> = HashMap::new();
        for i in 0..n {
            let (a, b) = (plan.position(i, t), plan.position(i, t + 1));
            if a != b {
                moves.insert((a, b), i);
            }
        }
        for i in 0..n {
            let (a, b) = (plan.position(i, t), plan.position(i, t + 1));
            if a < b {
                if let Some(&j) = moves.get(&(b, a)) {
                    out.push(Violation {
                        rule: Rule::HeadOn,
                        robots: vec![i, j],
                        time: Some(t),
                        detail: format!("exchange along edge {{{a}, {b}}}"),
                    });
                }
            }
        }
    }
    out
}

/// Objective values of a plan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Metrics {
    pub makespan: usize,
    pub max_distance: usize,
    pub total_time: usize,
    pub total_distance: usize,
}

/// Metric values computed from the paths alone.
pub fn plan_metrics(plan: &Plan) -> Metrics {
    let mut m = Metrics::default();
    for i in 0..plan.robot_count() {
        let t = plan.arrival_time(i);
        let len = plan.path_length(i);
        m.makespan = m.makespan.max(t);
        m.max_distance = m.max_distance.max(len);
        m.total_time += t;
        m.total_distance += len;
    }
    m
}

/// Metrics of a plan that must first pass validation.
pub fn metrics(plan: &Plan, inst: &Instance) -> Result<Metrics> {
    let violations = validate(plan, inst);
    if let Some(v) = violations.first() {
        return Err(Error::InvalidPlan(format!("{} violation(s), first: {v}", violations.len())));
    }
    Ok(plan_metrics(plan))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_grid, Graph};

    fn k2_inst(starts: Vec<usize>, goals: Vec<usize>) -> Instance {
        Instance::new(Graph::from_edges(2, &[(0, 1)]).unwrap(), starts, goals).unwrap()
    }

    #[test]
    fn stationary_plan_is_clean() {
        let inst = Instance::new(make_grid(2, 2), vec![0, 3], vec![0, 3]).unwrap();
        let plan = Plan::stationary(&[0, 3]);
        assert!(validate(&plan, &inst).is_empty());
        assert_eq!(metrics(&plan, &inst).unwrap(), Metrics::default());
    }

    #[test]
    fn exchange_is_head_on() {
        let inst = k2_inst(vec![0, 1], vec![1, 0]);
        let plan = Plan::new(vec![vec![0, 1], vec![1, 0]]).unwrap();
        let v = validate(&plan, &inst);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].rule, Rule::HeadOn);
        assert_eq!(v[0].time, Some(0));
    }

    #[test]
    fn meet_and_adjacency() {
        let inst = Instance::new(make_grid(1, 3), vec![0, 2], vec![1, 2]).unwrap();
        let plan = Plan::new(vec![vec![0, 1, 1], vec![2, 1, 2]]).unwrap();
        let v = validate(&plan, &inst);
        assert!(v.iter().any(|x| x.rule == Rule::Meet && x.time == Some(1)));
        let jump = Plan::new(vec![vec![0, 2, 1], vec![2, 2, 2]]).unwrap();
        let v = validate(&jump, &inst);
        assert!(v.iter().any(|x| x.rule == Rule::Adjacency));
        assert!(v.iter().any(|x| x.rule == Rule::Meet));
    }

    #[test]
    fn k2_move_then_hold() {
        let inst = k2_inst(vec![0], vec![1]);
        let plan = Plan::new(vec![vec![0, 1, 1, 1]]).unwrap();
        let m = metrics(&plan, &inst).unwrap();
        assert_eq!(m, Metrics { makespan: 1, max_distance: 1, total_time: 1, total_distance: 1 });
    }

    #[test]
    fn transient_goal_visit_counts_from_last_arrival() {
        let inst = Instance::new(make_grid(1, 3), vec![0], vec![1]).unwrap();
        let plan = Plan::new(vec![vec![0, 1, 2, 1]]).unwrap();
        assert!(validate(&plan, &inst).is_empty());
        let m = metrics(&plan, &inst).unwrap();
        assert_eq!((m.makespan, m.total_distance), (3, 3));
    }

    #[test]
    fn rotation_on_a_triangle_is_legal() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let inst = Instance::new(g, vec![0, 1, 2], vec![1, 2, 0]).unwrap();
        let plan = Plan::new(vec![vec![0, 1], vec![1, 2], vec![2, 0]]).unwrap();
        assert!(validate(&plan, &inst).is_empty());
    }
}
