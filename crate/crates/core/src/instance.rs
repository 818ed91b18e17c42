//! Problem instances, seeded generation and the `mpp 1` text format.

use std::collections::HashSet;
use std::fmt::Write as _;

use rand::seq::index::sample;
use rand_chacha::rand_core::SeedableRng;

use crate::error::{Error, Result};
use crate::graph::{make_grid, remove_obstacles, Graph, GridLayout, VertexId};
use crate::rng::Prng;

/// A graph with `n` labeled robots, each with a start and a goal vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    graph: Graph,
    starts: Vec<VertexId>,
    goals: Vec<VertexId>,
}

impl Instance {
    pub fn new(graph: Graph, starts: Vec<VertexId>, goals: Vec<VertexId>) -> Result<Self> {
        if starts.len() != goals.len() {
            return Err(Error::InvalidInstance(format!(
                "{} starts but {} goals",
                starts.len(),
                goals.len()
            )));
        }
        if starts.len() > graph.vertex_count() {
            return Err(Error::InvalidInstance(format!(
                "{} robots on {} vertices",
                starts.len(),
                graph.vertex_count()
            )));
        }
        if !graph.is_connected() {
            return Err(Error::InvalidInstance("graph is not connected".into()));
        }
        for (label, config) in [("start", &starts), ("goal", &goals)] {
            let mut seen = HashSet::new();
            for (robot, &v) in config.iter().enumerate() {
                if v >= graph.vertex_count() {
                    return Err(Error::VertexOutOfRange { vertex: v, count: graph.vertex_count() });
                }
                if !seen.insert(v) {
                    return Err(Error::InvalidInstance(format!(
                        "{label} configuration is not injective: robot {robot} reuses vertex {v}"
                    )));
                }
            }
        }
        Ok(Instance { graph, starts, goals })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn robot_count(&self) -> usize {
        self.starts.len()
    }

    pub fn starts(&self) -> &[VertexId] {
        &self.starts
    }

    pub fn goals(&self) -> &[VertexId] {
        &self.goals
    }

    pub fn start(&self, robot: usize) -> VertexId {
        self.starts[robot]
    }

    pub fn goal(&self, robot: usize) -> VertexId {
        self.goals[robot]
    }

    /// Same graph, different endpoints.
    pub fn with_endpoints(&self, starts: Vec<VertexId>, goals: Vec<VertexId>) -> Result<Self> {
        Instance::new(self.graph.clone(), starts, goals)
    }

    /// Hop distance from each robot's start to its goal.
    pub fn robot_distances(&self) -> Vec<usize> {
        (0..self.robot_count())
            .map(|i| self.graph.distances_from(self.goals[i])[self.starts[i]])
            .collect()
    }
}

/// Draws `n` distinct starts and, independently, `n` distinct goals.
pub fn generate_instance(g: &Graph, n: usize, seed: u64) -> Result<Instance> {
    let nv = g.vertex_count();
    if n == 0 || n > nv {
        return Err(Error::Generation(format!("cannot place {n} robots on {nv} vertices")));
    }
    let mut rng = Prng::seed_from_u64(seed);
    let starts = sample(&mut rng, nv, n).into_vec();
    let goals = sample(&mut rng, nv, n).into_vec();
    Instance::new(g.clone(), starts, goals)
}

/// Grid arena with obstacles and random robots, as used by the benchmarks.
/// Obstacles use `seed`; robot placement uses a stream derived from it.
pub fn generate_grid_instance(
    rows: usize,
    cols: usize,
    obstacle_fraction: f64,
    robots: usize,
    seed: u64,
) -> Result<Instance> {
    if rows == 0 || cols == 0 {
        return Err(Error::Generation("grid dimensions must be positive".into()));
    }
    let g = remove_obstacles(&make_grid(rows, cols), obstacle_fraction, seed)?;
    generate_instance(&g, robots, seed.wrapping_add(0x9e37_79b9_7f4a_7c15))
}

pub fn serialize_instance(inst: &Instance) -> String {
    let g = inst.graph();
    let mut out = String::new();
    out.push_str("mpp 1\n");
    let _ = writeln!(out, "vertices {}", g.vertex_count());
    let _ = writeln!(out, "edges {}", g.edge_count());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    let _ = writeln!(out, "robots {}", inst.robot_count());
    for i in 0..inst.robot_count() {
        let _ = writeln!(out, "{} {}", inst.start(i), inst.goal(i));
    }
    if let Some(layout) = g.grid() {
        let _ = writeln!(out, "grid {} {}", layout.rows, layout.cols);
        let _ = writeln!(out, "removed {}", layout.removed.len());
        for cell in &layout.removed {
            let _ = writeln!(out, "{cell}");
        }
    }
    out
}

/// Non-empty lines with `#` comments stripped, paired with 1-based line numbers.
pub(crate) struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    pub(crate) fn new(text: &'a str) -> Self {
        Lines { inner: text.lines().enumerate(), last: 0 }
    }

    pub(crate) fn next_line(&mut self, what: &str) -> Result<(usize, Vec<&'a str>)> {
        self.next_opt()
            .ok_or_else(|| Error::parse(self.last + 1, format!("unexpected end of input, expected {what}")))
    }

    pub(crate) fn next_opt(&mut self) -> Option<(usize, Vec<&'a str>)> {
        for (idx, raw) in self.inner.by_ref() {
            self.last = idx + 1;
            let content = raw.split('#').next().unwrap_or("");
            let fields: Vec<&str> = content.split_whitespace().collect();
            if !fields.is_empty() {
                return Some((idx + 1, fields));
            }
        }
        None
    }
}

pub(crate) fn parse_num(line: usize, s: &str) -> Result<usize> {
    s.parse().map_err(|_| Error::parse(line, format!("expected a nonnegative integer, found {s:?}")))
}

pub(crate) fn keyword(line: usize, fields: &[&str], key: &str, arity: usize) -> Result<Vec<usize>> {
    if fields.first() != Some(&key) || fields.len() != arity + 1 {
        return Err(Error::parse(line, format!("expected `{key}` with {arity} value(s)")));
    }
    fields[1..].iter().map(|f| parse_num(line, f)).collect()
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut lines = Lines::new(text);
    let (ln, header) = lines.next_line("header")?;
    if header != ["mpp", "1"] {
        return Err(Error::parse(ln, "expected header `mpp 1`"));
    }
    let (ln, f) = lines.next_line("vertex count")?;
    let nv = keyword(ln, &f, "vertices", 1)?[0];
    let (ln, f) = lines.next_line("edge count")?;
    let ne = keyword(ln, &f, "edges", 1)?[0];
    let mut edges = Vec::with_capacity(ne);
    let mut seen = HashSet::new();
    for _ in 0..ne {
        let (ln, f) = lines.next_line("edge")?;
        if f.len() != 2 {
            return Err(Error::parse(ln, "expected `u v`"));
        }
        let (u, v) = (parse_num(ln, f[0])?, parse_num(ln, f[1])?);
        if u >= nv || v >= nv {
            return Err(Error::parse(ln, format!("edge ({u}, {v}) references an unknown vertex")));
        }
        if u == v {
            return Err(Error::parse(ln, format!("self-loop at vertex {u}")));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(Error::parse(ln, format!("duplicate edge ({u}, {v})")));
        }
        edges.push((u, v));
    }
    let graph_line = lines.last + 1;
    let mut graph = Graph::from_edges(nv, &edges).map_err(|e| Error::parse(graph_line, e.to_string()))?;
    if !graph.is_connected() {
        return Err(Error::parse(graph_line, "graph is not connected"));
    }
    let (ln, f) = lines.next_line("robot count")?;
    let n = keyword(ln, &f, "robots", 1)?[0];
    if n > nv {
        return Err(Error::parse(ln, format!("{n} robots on {nv} vertices")));
    }
    let mut starts = Vec::with_capacity(n);
    let mut goals = Vec::with_capacity(n);
    let mut used_starts = HashSet::new();
    let mut used_goals = HashSet::new();
    for robot in 0..n {
        let (ln, f) = lines.next_line("robot line")?;
        if f.len() != 2 {
            return Err(Error::parse(ln, "expected `start goal`"));
        }
        let (s, g) = (parse_num(ln, f[0])?, parse_num(ln, f[1])?);
        if s >= nv || g >= nv {
            return Err(Error::parse(ln, format!("robot {robot} references an unknown vertex")));
        }
        if !used_starts.insert(s) {
            return Err(Error::parse(ln, format!("start vertex {s} used twice (not injective)")));
        }
        if !used_goals.insert(g) {
            return Err(Error::parse(ln, format!("goal vertex {g} used twice (not injective)")));
        }
        starts.push(s);
        goals.push(g);
    }
    if let Some((ln, f)) = lines.next_opt() {
        let dims = keyword(ln, &f, "grid", 2)?;
        let (ln, f) = lines.next_line("removed count")?;
        let k = keyword(ln, &f, "removed", 1)?[0];
        let mut removed = Vec::with_capacity(k);
        for _ in 0..k {
            let (ln, f) = lines.next_line("removed cell")?;
            if f.len() != 1 {
                return Err(Error::parse(ln, "expected a cell index"));
            }
            let cell = parse_num(ln, f[0])?;
            if cell >= dims[0] * dims[1] {
                return Err(Error::parse(ln, format!("cell {cell} outside the grid")));
            }
            removed.push(cell);
        }
        let layout = GridLayout::new(dims[0], dims[1], removed);
        graph = graph.with_grid(layout).map_err(|e| Error::parse(ln, e.to_string()))?;
        if let Some((ln, _)) = lines.next_opt() {
            return Err(Error::parse(ln, "unexpected trailing content"));
        }
    }
    Instance::new(graph, starts, goals).map_err(|e| Error::parse(lines.last, e.to_string()))
}
