//! Scheduled paths over a common horizon and the `plan` solution format.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::VertexId;
use crate::instance::{keyword, parse_num, Lines};

/// One vertex sequence `p_i(0..=T)` per robot.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Plan {
    paths: Vec<Vec<VertexId>>,
}

impl Plan {
    /// All paths must have the same nonzero length.
    pub fn new(paths: Vec<Vec<VertexId>>) -> Result<Self> {
        if let Some(first) = paths.first() {
            if first.is_empty() {
                return Err(Error::InvalidPlan("paths must contain at least one vertex".into()));
            }
            if let Some(i) = paths.iter().position(|p| p.len() != first.len()) {
                return Err(Error::InvalidPlan(format!(
                    "robot {i} has {} positions, robot 0 has {}",
                    paths[i].len(),
                    first.len()
                )));
            }
        }
        Ok(Plan { paths })
    }

    /// Every robot stays at its vertex; horizon 0.
    pub fn stationary(config: &[VertexId]) -> Self {
        Plan { paths: config.iter().map(|&v| vec![v]).collect() }
    }

    /// Builds a plan from a sequence of configurations `configs[t][robot]`.
    pub fn from_configurations(configs: &[Vec<VertexId>]) -> Result<Self> {
        let Some(first) = configs.first() else {
            return Err(Error::InvalidPlan("no configurations".into()));
        };
        let n = first.len();
        let mut paths = vec![Vec::with_capacity(configs.len()); n];
        for (t, c) in configs.iter().enumerate() {
            if c.len() != n {
                return Err(Error::InvalidPlan(format!("configuration {t} has {} robots", c.len())));
            }
            for (i, &v) in c.iter().enumerate() {
                paths[i].push(v);
            }
        }
        Ok(Plan { paths })
    }

    pub fn robot_count(&self) -> usize {
        self.paths.len()
    }

    pub fn horizon(&self) -> usize {
        self.paths.first().map_or(0, |p| p.len() - 1)
    }

    pub fn paths(&self) -> &[Vec<VertexId>] {
        &self.paths
    }

    pub fn path(&self, robot: usize) -> &[VertexId] {
        &self.paths[robot]
    }

    pub fn position(&self, robot: usize, t: usize) -> VertexId {
        self.paths[robot][t]
    }

    pub fn configuration(&self, t: usize) -> Vec<VertexId> {
        self.paths.iter().map(|p| p[t]).collect()
    }

    /// Smallest `t` from which the robot never leaves its final vertex.
    pub fn arrival_time(&self, robot: usize) -> usize {
        let p = &self.paths[robot];
        let last = *p.last().unwrap();
        p.iter().rposition(|&v| v != last).map_or(0, |k| k + 1)
    }

    /// Number of edge traversals.
    pub fn path_length(&self, robot: usize) -> usize {
        self.paths[robot].windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Drops trailing steps in which no robot moves.
    pub fn trimmed(&self) -> Plan {
        let keep = (0..self.robot_count()).map(|i| self.arrival_time(i)).max().unwrap_or(0);
        Plan { paths: self.paths.iter().map(|p| p[..=keep].to_vec()).collect() }
    }

    /// Concatenates plans whose boundary configurations agree.
    pub fn concat(stages: &[Plan]) -> Result<Plan> {
        let Some(first) = stages.first() else {
            return Err(Error::InvalidPlan("no stages to concatenate".into()));
        };
        let mut paths = first.paths.clone();
        for (k, stage) in stages.iter().enumerate().skip(1) {
            if stage.robot_count() != paths.len() {
                return Err(Error::InvalidPlan(format!("stage {k} has a different robot count")));
            }
            for (i, p) in paths.iter_mut().enumerate() {
                if p.last() != stage.paths[i].first() {
                    return Err(Error::InvalidPlan(format!(
                        "stage {k} does not start where stage {} ends for robot {i}",
                        k - 1
                    )));
                }
                p.extend_from_slice(&stage.paths[i][1..]);
            }
        }
        Ok(Plan { paths })
    }
}

pub fn serialize_plan(plan: &Plan) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "plan {} {}", plan.robot_count(), plan.horizon());
    for p in plan.paths() {
        let line: Vec<String> = p.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}

pub fn parse_plan(text: &str) -> Result<Plan> {
    let mut lines = Lines::new(text);
    let (ln, f) = lines.next_line("plan header")?;
    let head = keyword(ln, &f, "plan", 2)?;
    let (n, horizon) = (head[0], head[1]);
    let mut paths = Vec::with_capacity(n);
    for robot in 0..n {
        let (ln, f) = lines.next_line("robot path")?;
        if f.len() != horizon + 1 {
            return Err(Error::parse(
                ln,
                format!("robot {robot}: expected {} vertices, found {}", horizon + 1, f.len()),
            ));
        }
        paths.push(f.iter().map(|s| parse_num(ln, s)).collect::<Result<Vec<_>>>()?);
    }
    if let Some((ln, _)) = lines.next_opt() {
        return Err(Error::parse(ln, "unexpected trailing content"));
    }
    if n == 0 {
        return Ok(Plan { paths });
    }
    Plan::new(paths)
}
