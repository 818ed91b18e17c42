#![allow(dead_code)]

use mpp_core::graph::{make_grid, Graph, VertexId};
use mpp_core::instance::Instance;
use mpp_core::oracle::enumerate_joint_moves;
use mpp_core::plan::Plan;
use mpp_core::rng::Prng;
use mpp_core::timex::CollisionClass;
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> Prng {
    Prng::seed_from_u64(seed)
}

/// Connected graph on `nv` vertices: a random spanning tree plus `extra`
/// random chords.
pub fn random_graph(nv: usize, extra: usize, rng: &mut Prng) -> Graph {
    let mut edges = Vec::new();
    for v in 1..nv {
        edges.push((rng.random_range(0..v), v));
    }
    for _ in 0..extra {
        let (u, v) = (rng.random_range(0..nv), rng.random_range(0..nv));
        let e = (u.min(v), u.max(v));
        if u != v && !edges.iter().any(|&(a, b)| (a.min(b), a.max(b)) == e) {
            edges.push(e);
        }
    }
    Graph::from_edges(nv, &edges).unwrap()
}

/// Small grid or random graph with at most 16 vertices.
pub fn small_graph(rng: &mut Prng) -> Graph {
    if rng.random_bool(0.5) {
        let rows = rng.random_range(1..=4);
        let cols = rng.random_range(2..=4);
        make_grid(rows, cols)
    } else {
        let nv = rng.random_range(2..=16);
        let extra = rng.random_range(0..=nv);
        random_graph(nv, extra, rng)
    }
}

pub fn distinct_vertices(g: &Graph, n: usize, rng: &mut Prng) -> Vec<VertexId> {
    let mut all: Vec<VertexId> = (0..g.vertex_count()).collect();
    all.shuffle(rng);
    all.truncate(n);
    all
}

/// Collision-free plan of horizon `t` built from random joint moves, with
/// the instance running from its first to its last configuration.
pub fn random_valid_plan(g: &Graph, n: usize, t: usize, rng: &mut Prng) -> (Instance, Plan) {
    let mut configs = vec![distinct_vertices(g, n, rng)];
    for _ in 0..t {
        let succ = enumerate_joint_moves(g, configs.last().unwrap());
        configs.push(succ.choose(rng).unwrap().clone());
    }
    let plan = Plan::from_configurations(&configs).unwrap();
    let inst = Instance::new(g.clone(), configs[0].clone(), configs[t].clone()).unwrap();
    (inst, plan)
}

/// Plan with exactly one collision of the requested class, between
/// configurations `at` and `at + 1`; all other robots hold. A head-on swaps
/// two robots across an edge. A meet sends two robots onto a common
/// neighbour, after which the second returns home, so it needs `t >= 2`.
pub fn colliding_plan(
    g: &Graph,
    class: CollisionClass,
    others: usize,
    t: usize,
    rng: &mut Prng,
) -> Option<(Instance, Plan)> {
    let mut paths = match class {
        CollisionClass::HeadOn => {
            let &(a, b) = g.edges().choose(rng)?;
            let at = rng.random_range(0..t);
            let step = |from, to| (0..=t).map(|s| if s <= at { from } else { to }).collect::<Vec<_>>();
            vec![step(a, b), step(b, a)]
        }
        CollisionClass::Meet => {
            if t < 2 {
                return None;
            }
            let hubs: Vec<VertexId> = (0..g.vertex_count()).filter(|&w| g.neighbors(w).len() >= 2).collect();
            let &w = hubs.choose(rng)?;
            let two: Vec<VertexId> = g.neighbors(w).choose_multiple(rng, 2).copied().collect();
            let (a, b) = (two[0], two[1]);
            let at = rng.random_range(0..t - 1);
            let first = (0..=t).map(|s| if s <= at { a } else { w }).collect();
            let second = (0..=t).map(|s| if s == at + 1 { w } else { b }).collect();
            vec![first, second]
        }
    };
    let busy: Vec<VertexId> = paths.iter().flatten().copied().collect();
    let mut free: Vec<VertexId> = (0..g.vertex_count()).filter(|v| !busy.contains(v)).collect();
    free.shuffle(rng);
    free.truncate(others);
    paths.extend(free.iter().map(|&v| vec![v; t + 1]));
    let plan = Plan::new(paths).unwrap();
    let inst = Instance::new(g.clone(), plan.configuration(0), plan.configuration(t)).ok()?;
    Some((inst, plan))
}
