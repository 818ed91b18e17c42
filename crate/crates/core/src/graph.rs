//! Undirected simple graphs, 4-connected grids and breadth-first distances.

use std::collections::{BTreeSet, VecDeque};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;

use crate::error::{Error, Result};
use crate::rng::Prng;

pub type VertexId = usize;

/// Rendering metadata carried by graphs that came from a grid.
///
/// Vertices of the graph are the surviving cells in increasing cell-index
/// order, so `cells[v]` is the grid cell of vertex `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridLayout {
    pub rows: usize,
    pub cols: usize,
    /// Removed cell indices (row-major), sorted.
    pub removed: Vec<usize>,
    cells: Vec<usize>,
}

impl GridLayout {
    pub fn new(rows: usize, cols: usize, removed: Vec<usize>) -> Self {
        let mut removed = removed;
        removed.sort_unstable();
        removed.dedup();
        let cells = (0..rows * cols)
            .filter(|c| removed.binary_search(c).is_err())
            .collect();
        GridLayout { rows, cols, removed, cells }
    }

    /// Grid cell (row-major index) of a vertex.
    pub fn cell_of(&self, v: VertexId) -> usize {
        self.cells[v]
    }

    pub fn row_col(&self, v: VertexId) -> (usize, usize) {
        let c = self.cells[v];
        (c / self.cols, c % self.cols)
    }

    /// Vertex occupying a cell, if the cell was not removed.
    pub fn vertex_at(&self, row: usize, col: usize) -> Option<VertexId> {
        if row >= self.rows || col >= self.cols {
            return None;
        }
        self.cells.binary_search(&(row * self.cols + col)).ok()
    }

    pub fn vertex_count(&self) -> usize {
        self.cells.len()
    }
}

/// Undirected simple graph with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<VertexId>>,
    edges: Vec<(VertexId, VertexId)>,
    grid: Option<GridLayout>,
}

impl Graph {
    /// Builds a graph from an edge list. Edges are normalized to `u < v`;
    /// self-loops and duplicates are rejected.
    pub fn from_edges(vertex_count: usize, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let mut set = BTreeSet::new();
        for &(a, b) in edges {
            if a >= vertex_count || b >= vertex_count {
                return Err(Error::InvalidGraph(format!(
                    "edge ({a}, {b}) references a vertex outside 0..{vertex_count}"
                )));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {a}")));
            }
            if !set.insert((a.min(b), a.max(b))) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({a}, {b})")));
            }
        }
        Ok(Self::from_sorted_edges(vertex_count, set.into_iter().collect(), None))
    }

    fn from_sorted_edges(
        vertex_count: usize,
        edges: Vec<(VertexId, VertexId)>,
        grid: Option<GridLayout>,
    ) -> Self {
        let mut adj = vec![Vec::new(); vertex_count];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { adj, edges, grid }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order. The position of
    /// an edge in this slice is its edge id.
    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u < self.adj.len() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Id of the edge `{u, v}`.
    pub fn edge_id(&self, u: VertexId, v: VertexId) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok()
    }

    pub fn grid(&self) -> Option<&GridLayout> {
        self.grid.as_ref()
    }

    pub fn with_grid(mut self, grid: GridLayout) -> Result<Self> {
        if grid.vertex_count() != self.vertex_count() {
            return Err(Error::InvalidGraph(format!(
                "grid metadata describes {} cells but the graph has {} vertices",
                grid.vertex_count(),
                self.vertex_count()
            )));
        }
        self.grid = Some(grid);
        Ok(self)
    }

    pub fn is_connected(&self) -> bool {
        if self.adj.is_empty() {
            return true;
        }
        self.bfs_distances(0).iter().all(|d| d.is_some())
    }

    /// Hop distances from `src` to every vertex (`None` when unreachable).
    pub fn bfs_distances(&self, src: VertexId) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count()];
        let mut queue = VecDeque::new();
        dist[src] = Some(0);
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Hop distances on a graph known to be connected.
    pub fn distances_from(&self, src: VertexId) -> Vec<usize> {
        self.bfs_distances(src)
            .into_iter()
            .map(|d| d.unwrap_or(usize::MAX))
            .collect()
    }

    /// Breadth-first shortest path; neighbors are expanded in increasing index
    /// order so the result is deterministic.
    pub fn shortest_path(&self, src: VertexId, dst: VertexId) -> Result<Vec<VertexId>> {
        let n = self.vertex_count();
        if src >= n || dst >= n {
            return Err(Error::VertexOutOfRange { vertex: src.max(dst), count: n });
        }
        let mut parent = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        parent[src] = src;
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            if u == dst {
                break;
            }
            for &w in &self.adj[u] {
                if parent[w] == usize::MAX {
                    parent[w] = u;
                    queue.push_back(w);
                }
            }
        }
        if parent[dst] == usize::MAX {
            return Err(Error::InvalidGraph(format!("vertex {dst} unreachable from {src}")));
        }
        let mut path = vec![dst];
        let mut cur = dst;
        while cur != src {
            cur = parent[cur];
            path.push(cur);
        }
        path.reverse();
        Ok(path)
    }

    /// Induced subgraph on the vertices not in `removed`, re-indexed densely.
    fn without_vertices(&self, removed: &BTreeSet<VertexId>) -> (Graph, Vec<Option<VertexId>>) {
        let mut map = vec![None; self.vertex_count()];
        let mut next = 0;
        for (v, slot) in map.iter_mut().enumerate() {
            if !removed.contains(&v) {
                *slot = Some(next);
                next += 1;
            }
        }
        let edges = self
            .edges
            .iter()
            .filter_map(|&(u, v)| Some((map[u]?, map[v]?)))
            .collect();
        (Graph::from_sorted_edges(next, edges, None), map)
    }
}

/// The `rows × cols` 4-connected grid; vertex `row * cols + col`.
pub fn make_grid(rows: usize, cols: usize) -> Graph {
    let mut edges = Vec::with_capacity(rows * cols.saturating_sub(1) + cols * rows.saturating_sub(1));
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                edges.push((v, v + 1));
            }
            if r + 1 < rows {
                edges.push((v, v + cols));
            }
        }
    }
    edges.sort_unstable();
    Graph::from_sorted_edges(rows * cols, edges, Some(GridLayout::new(rows, cols, Vec::new())))
}

/// Removes `floor(fraction * |V|)` vertices chosen by a seeded generator while
/// keeping the graph connected. A draw whose removal would disconnect the
/// remainder is rejected; at most `100 * |V|` draws are made.
pub fn remove_obstacles(g: &Graph, fraction: f64, seed: u64) -> Result<Graph> {
    if !(0.0..1.0).contains(&fraction) {
        return Err(Error::Generation(format!("obstacle fraction {fraction} outside [0, 1)")));
    }
    let n = g.vertex_count();
    let quota = (fraction * n as f64).floor() as usize;
    if quota == 0 {
        return Ok(g.clone());
    }
    if quota >= n {
        return Err(Error::Generation(format!("cannot remove {quota} of {n} vertices")));
    }
    let mut rng = Prng::seed_from_u64(seed);
    let mut removed = BTreeSet::new();
    let mut alive = vec![true; n];
    let cap = 100 * n;
    let mut draws = 0;
    while removed.len() < quota {
        if draws >= cap {
            return Err(Error::Generation(format!(
                "removed only {} of {quota} vertices after {cap} draws",
                removed.len()
            )));
        }
        draws += 1;
        let v = rng.random_range(0..n);
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        if connected_among(g, &alive) {
            removed.insert(v);
        } else {
            alive[v] = true;
        }
    }
    let (sub, _) = g.without_vertices(&removed);
    match g.grid() {
        Some(layout) => {
            let mut cells: Vec<usize> = layout.removed.clone();
            cells.extend(removed.iter().map(|&v| layout.cell_of(v)));
            sub.with_grid(GridLayout::new(layout.rows, layout.cols, cells))
        }
        None => Ok(sub),
    }
}

fn connected_among(g: &Graph, alive: &[bool]) -> bool {
    let Some(first) = alive.iter().position(|&a| a) else {
        return true;
    };
    let mut seen = vec![false; g.vertex_count()];
    let mut stack = vec![first];
    seen[first] = true;
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for &w in g.neighbors(u) {
            if alive[w] && !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == alive.iter().filter(|&&a| a).count()
}
