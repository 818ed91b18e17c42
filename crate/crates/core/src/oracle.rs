//! Ground-truth engines that do not go through the ILP: joint-move
//! enumeration, cycle enumeration, breadth-first and exhaustive searches over
//! configurations, and a constructive solver for fully occupied square grids.

use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::graph::{make_grid, Graph, VertexId};
use crate::ilp::ObjectiveKind;
use crate::instance::Instance;
use crate::plan::Plan;

/// Default limit on stored configurations for [`bfs_min_makespan`].
pub const DEFAULT_NODE_CAP: usize = 20_000_000;

/// Result of an oracle search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleOutcome {
    Solved { value: usize, plan: Plan },
    /// Every reachable configuration was visited and none is the goal.
    Unsolvable,
    /// A search limit was hit before the answer was known.
    Unknown,
}

impl OracleOutcome {
    pub fn value(&self) -> Option<usize> {
        match self {
            OracleOutcome::Solved { value, .. } => Some(*value),
            _ => None,
        }
    }
}

/// All collision-free successors of `config` (robot `i` at `config[i]`),
/// the identity included.
///
/// Every successor splits into vertex-disjoint moved components, each a chain
/// advancing into a vertex that was empty or a fully occupied cycle turning
/// one way. They are found by assigning targets robot by robot while
/// rejecting double occupancy and swaps, and by cutting branches that would
/// leave more vertices empty than there are free vertices.
pub fn enumerate_joint_moves(g: &Graph, config: &[VertexId]) -> Vec<Vec<VertexId>> {
    let nv = g.vertex_count();
    let mut robot_at = vec![usize::MAX; nv];
    for (i, &v) in config.iter().enumerate() {
        robot_at[v] = i;
    }
    // Robots that could still end up on each vertex.
    let mut potential = vec![0u32; nv];
    for &v in config {
        potential[v] += 1;
        for &w in g.neighbors(v) {
            potential[w] += 1;
        }
    }
    let mut search = MoveSearch {
        g,
        config,
        robot_at,
        potential,
        taken: vec![false; nv],
        next: vec![0; config.len()],
        dead: 0,
        spare: nv - config.len(),
        out: Vec::new(),
    };
    search.assign(0);
    search.out
}

struct MoveSearch<'a> {
    g: &'a Graph,
    config: &'a [VertexId],
    robot_at: Vec<usize>,
    potential: Vec<u32>,
    taken: Vec<bool>,
    next: Vec<VertexId>,
    /// Vertices no remaining robot can reach and none has taken.
    dead: usize,
    spare: usize,
    out: Vec<Vec<VertexId>>,
}

impl MoveSearch<'_> {
    fn assign(&mut self, i: usize) {
        if i == self.config.len() {
            self.out.push(self.next.clone());
            return;
        }
        let u = self.config[i];
        let g = self.g;
        for w in std::iter::once(u).chain(g.neighbors(u).iter().copied()) {
            if self.taken[w] {
                continue;
            }
            let j = self.robot_at[w];
            if w != u && j != usize::MAX && j < i && self.next[j] == u {
                continue;
            }
            self.next[i] = w;
            self.taken[w] = true;
            let mut newly_dead = 0;
            for x in std::iter::once(u).chain(g.neighbors(u).iter().copied()) {
                self.potential[x] -= 1;
                if self.potential[x] == 0 && !self.taken[x] {
                    newly_dead += 1;
                }
            }
            self.dead += newly_dead;
            if self.dead <= self.spare {
                self.assign(i + 1);
            }
            self.dead -= newly_dead;
            for x in std::iter::once(u).chain(g.neighbors(u).iter().copied()) {
                self.potential[x] += 1;
            }
            self.taken[w] = false;
        }
    }
}

/// Simple cycles of length at least 3, each listed from its smallest vertex
/// in the direction whose second vertex is smaller than its last.
pub fn enumerate_cycles(g: &Graph) -> Vec<Vec<VertexId>> {
    let mut out = Vec::new();
    let mut on_path = vec![false; g.vertex_count()];
    for s in 0..g.vertex_count() {
        let mut path = vec![s];
        on_path[s] = true;
        cycles_from(g, s, &mut path, &mut on_path, &mut out);
        on_path[s] = false;
    }
    out
}

fn cycles_from(g: &Graph, s: VertexId, path: &mut Vec<VertexId>, on_path: &mut [bool], out: &mut Vec<Vec<VertexId>>) {
    let last = *path.last().unwrap();
    for &w in g.neighbors(last) {
        if w == s && path.len() >= 3 && path[1] < last {
            out.push(path.clone());
        } else if w > s && !on_path[w] {
            on_path[w] = true;
            path.push(w);
            cycles_from(g, s, path, on_path, out);
            path.pop();
            on_path[w] = false;
        }
    }
}

/// Successor lists keyed by occupied vertex set. Which vertex maps are legal
/// does not depend on which robot sits where, so each set is enumerated once.
struct MoveCache<'a> {
    g: &'a Graph,
    /// Per occupied set: for each joint move, the target of every vertex
    /// (`usize::MAX` where empty).
    maps: HashMap<Vec<u64>, std::rc::Rc<Vec<Vec<VertexId>>>>,
}

impl<'a> MoveCache<'a> {
    fn new(g: &'a Graph) -> Self {
        MoveCache { g, maps: HashMap::new() }
    }

    fn successors(&mut self, config: &[VertexId]) -> Vec<Vec<VertexId>> {
        let nv = self.g.vertex_count();
        let mut key = vec![0u64; nv.div_ceil(64)];
        for &v in config {
            key[v / 64] |= 1 << (v % 64);
        }
        let g = self.g;
        let maps = self
            .maps
            .entry(key)
            .or_insert_with_key(|key| {
                let occupied: Vec<VertexId> = (0..nv).filter(|&v| key[v / 64] >> (v % 64) & 1 == 1).collect();
                let moves = enumerate_joint_moves(g, &occupied)
                    .into_iter()
                    .map(|next| {
                        let mut map = vec![usize::MAX; nv];
                        for (&u, &w) in occupied.iter().zip(&next) {
                            map[u] = w;
                        }
                        map
                    })
                    .collect();
                std::rc::Rc::new(moves)
            })
            .clone();
        maps.iter().map(|m| config.iter().map(|&v| m[v]).collect()).collect()
    }
}

/// Packs configurations into integers, `bits` per robot.
struct Packer {
    bits: u32,
    n: usize,
}

impl Packer {
    fn new(inst: &Instance) -> Result<Self> {
        let nv = inst.graph().vertex_count();
        let bits = (usize::BITS - nv.saturating_sub(1).leading_zeros()).max(1);
        let n = inst.robot_count();
        if bits as usize * n > 128 {
            return Err(Error::InvalidInstance(format!(
                "{n} robots on {nv} vertices exceed the 128-bit configuration key"
            )));
        }
        Ok(Packer { bits, n })
    }

    fn pack(&self, config: &[VertexId]) -> u128 {
        config.iter().rev().fold(0u128, |k, &v| (k << self.bits) | v as u128)
    }

    fn unpack(&self, mut key: u128) -> Vec<VertexId> {
        let mask = (1u128 << self.bits) - 1;
        (0..self.n)
            .map(|_| {
                let v = (key & mask) as VertexId;
                key >>= self.bits;
                v
            })
            .collect()
    }
}

fn trace<K: Copy + Eq + std::hash::Hash>(parent: &HashMap<K, K>, end: K, config: impl Fn(K) -> Vec<VertexId>) -> Plan {
    let mut configs = vec![config(end)];
    let mut k = end;
    while parent[&k] != k {
        k = parent[&k];
        configs.push(config(k));
    }
    configs.reverse();
    Plan::from_configurations(&configs).expect("configurations share a robot count")
}

/// Optimal makespan by breadth-first search over configurations.
pub fn bfs_min_makespan(inst: &Instance, node_cap: usize) -> Result<OracleOutcome> {
    bfs_makespan(inst, node_cap, usize::MAX)
}

fn bfs_makespan(inst: &Instance, node_cap: usize, depth_cap: usize) -> Result<OracleOutcome> {
    let packer = Packer::new(inst)?;
    let start = packer.pack(inst.starts());
    let goal = packer.pack(inst.goals());
    let mut moves = MoveCache::new(inst.graph());
    let mut parent: HashMap<u128, u128> = HashMap::new();
    parent.insert(start, start);
    let mut frontier = vec![start];
    let mut depth = 0;
    while !frontier.is_empty() {
        if frontier.contains(&goal) {
            let plan = trace(&parent, goal, |k| packer.unpack(k));
            return Ok(OracleOutcome::Solved { value: depth, plan });
        }
        if depth == depth_cap {
            return Ok(OracleOutcome::Unknown);
        }
        let mut next = Vec::new();
        for &k in &frontier {
            for succ in moves.successors(&packer.unpack(k)) {
                let s = packer.pack(&succ);
                if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(s) {
                    e.insert(k);
                    next.push(s);
                    if parent.len() > node_cap {
                        return Ok(OracleOutcome::Unknown);
                    }
                }
            }
        }
        frontier = next;
        depth += 1;
    }
    Ok(OracleOutcome::Unsolvable)
}

/// Optimal value of `objective` over plans with horizon at most `t_cap`,
/// found by exhaustive search over joint-move sequences. Arrival times use
/// stabilization semantics. `Unknown` means no plan fits in `t_cap`.
pub fn exhaustive_optimal(inst: &Instance, objective: ObjectiveKind, t_cap: usize) -> Result<OracleOutcome> {
    let reach = bfs_makespan(inst, DEFAULT_NODE_CAP, t_cap)?;
    let OracleOutcome::Solved { value: t_min, .. } = reach else {
        return Ok(reach);
    };
    match objective {
        ObjectiveKind::Makespan => Ok(reach),
        ObjectiveKind::MaxDistance => max_distance_search(inst, t_cap, t_min),
        ObjectiveKind::TotalDistance | ObjectiveKind::TotalTime => layered_search(inst, objective, t_cap),
    }
}

/// Tries `D = 0, 1, ...`: breadth-first search over (configuration, lengths)
/// with every robot's traversal count capped at `D`.
fn max_distance_search(inst: &Instance, t_cap: usize, t_min: usize) -> Result<OracleOutcome> {
    let packer = Packer::new(inst)?;
    let n = inst.robot_count();
    let start = packer.pack(inst.starts());
    let goal = packer.pack(inst.goals());
    let lower = inst.robot_distances().into_iter().max().unwrap_or(0);
    let mut moves = MoveCache::new(inst.graph());
    for cap in lower..=t_min {
        type Key = (u128, Vec<u8>);
        let first: Key = (start, vec![0; n]);
        let mut parent: HashMap<Key, Key> = HashMap::new();
        parent.insert(first.clone(), first.clone());
        let mut frontier = vec![first];
        for _ in 0..=t_cap {
            if let Some(end) = frontier.iter().find(|k| k.0 == goal) {
                let plan = trace_keys(&parent, end.clone(), &packer);
                return Ok(OracleOutcome::Solved { value: cap, plan });
            }
            let mut next = Vec::new();
            for key in &frontier {
                let config = packer.unpack(key.0);
                for succ in moves.successors(&config) {
                    let mut lens = key.1.clone();
                    let mut ok = true;
                    for i in 0..n {
                        if succ[i] != config[i] {
                            lens[i] += 1;
                            ok &= lens[i] as usize <= cap;
                        }
                    }
                    let s = (packer.pack(&succ), lens);
                    if ok && !parent.contains_key(&s) {
                        parent.insert(s.clone(), key.clone());
                        next.push(s);
                    }
                }
            }
            frontier = next;
        }
    }
    // The makespan-optimal plan has no robot traversing more than `t_min`
    // edges, so some cap up to `t_min` always succeeds.
    unreachable!("no plan with traversal cap {t_min}")
}

fn trace_keys(parent: &HashMap<(u128, Vec<u8>), (u128, Vec<u8>)>, end: (u128, Vec<u8>), packer: &Packer) -> Plan {
    let mut configs = vec![packer.unpack(end.0)];
    let mut k = end;
    while parent[&k] != k {
        k = parent[&k].clone();
        configs.push(packer.unpack(k.0));
    }
    configs.reverse();
    Plan::from_configurations(&configs).expect("configurations share a robot count")
}

/// Time-layered dynamic program for the additive objectives. For total time
/// the state also records which robots have settled: a settled robot sits at
/// its goal for good, and every unsettled robot costs one per step.
fn layered_search(inst: &Instance, objective: ObjectiveKind, t_cap: usize) -> Result<OracleOutcome> {
    let packer = Packer::new(inst)?;
    let n = inst.robot_count();
    let goals = inst.goals();
    let goal = packer.pack(goals);
    let total_time = objective == ObjectiveKind::TotalTime;
    type Key = (u128, u32);
    // layers[t]: state -> (cost, predecessor in layer t - 1)
    let mut layers: Vec<HashMap<Key, (usize, Key)>> = Vec::new();
    let first = (packer.pack(inst.starts()), 0u32);
    layers.push(HashMap::from([(first, (0, first))]));
    let mut moves = MoveCache::new(inst.graph());
    let mut best: Option<(usize, usize, Key)> = None;
    for t in 0..=t_cap {
        let mut states: Vec<(&Key, &(usize, Key))> = layers[t].iter().collect();
        states.sort_unstable_by_key(|(k, _)| **k);
        for (k, (cost, _)) in &states {
            if k.0 == goal && best.is_none_or(|b| *cost < b.0) {
                best = Some((*cost, t, **k));
            }
        }
        if t == t_cap {
            break;
        }
        let mut next: HashMap<Key, (usize, Key)> = HashMap::new();
        for (&key, &(cost, _)) in states {
            let config = packer.unpack(key.0);
            let succs = moves.successors(&config);
            let settle_options: Vec<u32> = if total_time {
                let at_goal: u32 =
                    (0..n).filter(|&i| config[i] == goals[i] && key.1 & (1 << i) == 0).fold(0, |m, i| m | 1 << i);
                submasks(at_goal).map(|extra| key.1 | extra).collect()
            } else {
                vec![0]
            };
            for &mask in &settle_options {
                for succ in &succs {
                    if (0..n).any(|i| mask & (1 << i) != 0 && succ[i] != config[i]) {
                        continue;
                    }
                    let step = if total_time {
                        n - mask.count_ones() as usize
                    } else {
                        (0..n).filter(|&i| succ[i] != config[i]).count()
                    };
                    let s = (packer.pack(succ), mask);
                    let c = cost + step;
                    match next.get(&s) {
                        Some(&(old, _)) if old <= c => {}
                        _ => {
                            next.insert(s, (c, key));
                        }
                    }
                }
            }
        }
        layers.push(next);
    }
    let (value, t_end, mut key) = best.expect("the goal is reachable within the cap");
    let mut configs = vec![packer.unpack(key.0)];
    for t in (1..=t_end).rev() {
        key = layers[t][&key].1;
        configs.push(packer.unpack(key.0));
    }
    configs.reverse();
    let plan = Plan::from_configurations(&configs)?;
    Ok(OracleOutcome::Solved { value, plan })
}

/// All submasks of `mask`, the empty one included.
fn submasks(mask: u32) -> impl Iterator<Item = u32> {
    let mut sub = Some(mask);
    std::iter::from_fn(move || {
        let s = sub?;
        sub = if s == 0 { None } else { Some((s - 1) & mask) };
        Some(s)
    })
}

/// Ring of a 3x3 block in cyclic order, as (row, col) offsets.
const RING: [(usize, usize); 8] = [(0, 0), (0, 1), (0, 2), (1, 2), (2, 2), (2, 1), (2, 0), (1, 0)];

/// A cycle rotation on a 3x3 block: the robot on `cells[k]` moves to
/// `cells[k + 1]`.
type Rotation = Vec<(usize, usize)>;

/// For each ring position `k`, three rotations of the 3x3 block whose combined
/// effect exchanges the robots on `RING[k]` and `RING[k + 1]` and leaves every
/// other robot in place.
fn exchange_macros() -> &'static [[Rotation; 3]; 8] {
    static MACROS: OnceLock<[[Rotation; 3]; 8]> = OnceLock::new();
    MACROS.get_or_init(|| {
        let g = make_grid(3, 3);
        let cell = |v: VertexId| (v / 3, v % 3);
        let mut moves: Vec<Rotation> = Vec::new();
        for c in enumerate_cycles(&g) {
            let fwd: Rotation = c.iter().map(|&v| cell(v)).collect();
            let mut back = fwd.clone();
            back.reverse();
            moves.push(fwd);
            moves.push(back);
        }
        let apply = |state: &mut [usize; 9], rot: &Rotation| {
            let before = *state;
            for k in 0..rot.len() {
                let (a, b) = (rot[k], rot[(k + 1) % rot.len()]);
                state[b.0 * 3 + b.1] = before[a.0 * 3 + a.1];
            }
        };
        std::array::from_fn(|k| {
            let (a, b) = (RING[k], RING[(k + 1) % 8]);
            let mut target: [usize; 9] = std::array::from_fn(|i| i);
            target.swap(a.0 * 3 + a.1, b.0 * 3 + b.1);
            for m1 in &moves {
                for m2 in &moves {
                    for m3 in &moves {
                        let mut s: [usize; 9] = std::array::from_fn(|i| i);
                        apply(&mut s, m1);
                        apply(&mut s, m2);
                        apply(&mut s, m3);
                        if s == target {
                            return [m1.clone(), m2.clone(), m3.clone()];
                        }
                    }
                }
            }
            panic!("no three-rotation exchange for ring position {k}")
        })
    })
}

/// Working state of the constructive solver.
struct Puzzle {
    n: usize,
    /// `robot_at[r * n + c]`
    robot_at: Vec<usize>,
    pos: Vec<usize>,
    placed: Vec<bool>,
    configs: Vec<Vec<VertexId>>,
}

impl Puzzle {
    /// Rotates the robots along `cells` (the robot on `cells[k]` moves to
    /// `cells[k + 1]`) as one step.
    fn rotate(&mut self, cells: &[usize]) {
        let before: Vec<usize> = cells.iter().map(|&c| self.robot_at[c]).collect();
        for k in 0..cells.len() {
            let to = cells[(k + 1) % cells.len()];
            self.robot_at[to] = before[k];
            self.pos[before[k]] = to;
        }
        self.configs.push(self.pos.clone());
    }

    /// Exchanges the robots on adjacent cells `p` and `q` through a 3x3 block
    /// in which they are ring neighbours.
    fn exchange(&mut self, p: usize, q: usize) {
        let n = self.n;
        let (pr, pc, qr, qc) = (p / n, p % n, q / n, q % n);
        for br in 0..=n - 3 {
            for bc in 0..=n - 3 {
                let local = |r: usize, c: usize| {
                    (r >= br && c >= bc && r < br + 3 && c < bc + 3).then(|| (r - br, c - bc))
                };
                let (Some(a), Some(b)) = (local(pr, pc), local(qr, qc)) else {
                    continue;
                };
                let (Some(ia), Some(ib)) = (RING.iter().position(|&x| x == a), RING.iter().position(|&x| x == b))
                else {
                    continue;
                };
                let k = if (ia + 1) % 8 == ib {
                    ia
                } else if (ib + 1) % 8 == ia {
                    ib
                } else {
                    continue;
                };
                for rot in &exchange_macros()[k] {
                    let cells: Vec<usize> = rot.iter().map(|&(r, c)| (br + r) * n + bc + c).collect();
                    self.rotate(&cells);
                }
                return;
            }
        }
        unreachable!("cells {p} and {q} are ring neighbours in no 3x3 block");
    }

    /// Moves the robot on `p` to the adjacent cell `q`, disturbing no placed
    /// cell: a 2x2 rotation among unplaced cells when one exists, otherwise
    /// an exchange.
    fn step(&mut self, p: usize, q: usize) {
        let n = self.n;
        let (pr, pc, qr, qc) = (p / n, p % n, q / n, q % n);
        let mut squares = Vec::new();
        if pr == qr {
            let c0 = pc.min(qc);
            for r0 in [pr.checked_sub(1), Some(pr)].into_iter().flatten() {
                if r0 + 1 < n {
                    squares.push((r0, c0));
                }
            }
        } else {
            let r0 = pr.min(qr);
            for c0 in [pc.checked_sub(1), Some(pc)].into_iter().flatten() {
                if c0 + 1 < n {
                    squares.push((r0, c0));
                }
            }
        }
        for (r0, c0) in squares {
            let ring = [r0 * n + c0, r0 * n + c0 + 1, (r0 + 1) * n + c0 + 1, (r0 + 1) * n + c0];
            if ring.iter().any(|&c| self.placed[c]) {
                continue;
            }
            let k = ring.iter().position(|&c| c == p).unwrap();
            if ring[(k + 1) % 4] == q {
                self.rotate(&ring);
            } else {
                let mut back = ring;
                back.reverse();
                self.rotate(&back);
            }
            return;
        }
        self.exchange(p, q);
    }

    /// Brings `robot` to `target` along a shortest path through unplaced
    /// cells, then marks the target placed.
    fn place(&mut self, robot: usize, target: usize) {
        let n = self.n;
        let mut prev = vec![usize::MAX; n * n];
        let mut queue = VecDeque::from([target]);
        prev[target] = target;
        while let Some(c) = queue.pop_front() {
            let (r, col) = (c / n, c % n);
            let nbrs = [
                (r > 0).then(|| c - n),
                (r + 1 < n).then(|| c + n),
                (col > 0).then(|| c - 1),
                (col + 1 < n).then(|| c + 1),
            ];
            for d in nbrs.into_iter().flatten() {
                if prev[d] == usize::MAX && !self.placed[d] {
                    prev[d] = c;
                    queue.push_back(d);
                }
            }
        }
        let mut at = self.pos[robot];
        while at != target {
            let q = prev[at];
            self.step(at, q);
            at = q;
        }
        self.placed[target] = true;
    }
}

/// Solves a fully occupied `N x N` grid instance, `N >= 3`, by construction.
///
/// The top row and right column are filled first, cell by cell, and the
/// remaining lower-left square is handled the same way until it is 3x3.
/// There the centre is filled first and then the ring. Robots travel through
/// unfilled cells by rotating 2x2 squares; where no such square is free, two
/// neighbouring robots are exchanged with three rotations of a 3x3 block that
/// restore everything else. Every step rotates a single cycle.
pub fn solve_puzzle_constructive(inst: &Instance) -> Result<Plan> {
    let g = inst.graph();
    let nv = g.vertex_count();
    let n = (1..=nv).find(|k| k * k >= nv).unwrap_or(0);
    let square = g.grid().is_some_and(|l| l.rows == n && l.cols == n && l.removed.is_empty());
    if n < 3 || n * n != nv || !square || inst.robot_count() != nv {
        return Err(Error::InvalidInstance("expected a fully occupied N x N grid with N >= 3".into()));
    }
    // Unobstructed grids number vertices row-major, so vertex = cell.
    let mut robot_at = vec![0; nv];
    for (i, &v) in inst.starts().iter().enumerate() {
        robot_at[v] = i;
    }
    let mut owner = vec![0; nv];
    for (i, &v) in inst.goals().iter().enumerate() {
        owner[v] = i;
    }
    let mut p = Puzzle {
        n,
        robot_at,
        pos: inst.starts().to_vec(),
        placed: vec![false; nv],
        configs: vec![inst.starts().to_vec()],
    };
    let mut order = Vec::with_capacity(nv);
    let (mut top, mut right) = (0, n - 1);
    while n - top > 3 {
        order.extend((0..=right).map(|c| top * n + c));
        order.extend((top + 1..n).map(|r| r * n + right));
        top += 1;
        right -= 1;
    }
    order.push((top + 1) * n + 1);
    order.extend(RING.iter().map(|&(r, c)| (top + r) * n + c));
    for cell in order {
        p.place(owner[cell], cell);
    }
    Plan::from_configurations(&p.configs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_grids() {
        assert_eq!(enumerate_cycles(&make_grid(2, 2)).len(), 1);
        assert_eq!(enumerate_cycles(&make_grid(1, 5)).len(), 0);
        let full: Vec<usize> = (0..4).collect();
        assert_eq!(enumerate_joint_moves(&make_grid(2, 2), &full).len(), 3);
    }

    #[test]
    fn submask_listing() {
        let mut s: Vec<u32> = submasks(0b101).collect();
        s.sort_unstable();
        assert_eq!(s, vec![0, 1, 4, 5]);
        assert_eq!(submasks(0).count(), 1);
    }

    #[test]
    fn packing_round_trips() {
        let inst = Instance::new(make_grid(3, 3), vec![8, 0, 4], vec![0, 1, 2]).unwrap();
        let p = Packer::new(&inst).unwrap();
        assert_eq!(p.unpack(p.pack(&[8, 0, 4])), vec![8, 0, 4]);
    }

    #[test]
    fn exchange_macros_exist() {
        assert_eq!(exchange_macros().len(), 8);
    }
}
