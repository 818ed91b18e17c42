//! Time-expanded flow networks and the conversions between robot paths and
//! unit multiflows on them.
//!
//! Two encodings are built:
//!
//! * `Full`: every graph vertex has copies `v(0), v(1), v(1)', ..., v(T), v(T)'`
//!   (`v(0)` doubles as `v(0)'`). A hold arc `v(t)' -> v(t+1)` lets a robot
//!   wait, a blue arc `v(t) -> v(t)'` of capacity one keeps two robots off the
//!   same vertex, and every edge `{u, v}` and step `t` gets a merge-split
//!   gadget with two internal nodes `a`, `b`:
//!   `u(t)' -> a`, `v(t)' -> a`, `a -> b` (cost 1), `b -> u(t+1)`, `b -> v(t+1)`.
//!   Since `a -> b` has capacity one, no two robots cross the same edge in one
//!   step, which rules out head-on exchanges.
//! * `Compact`: copies `v(0), ..., v(T)`, one hold arc per vertex and step and
//!   two directed move arcs per edge and step. Meet and head-on exclusion are
//!   no longer structural and must be added as explicit rows by the model.
//!
//! In both encodings the first `n` arcs are the loopbacks, robot `i`'s arc `i`
//! running from its goal copy at the horizon back to its start copy at layer 0.
//! Node ids follow layer order, so increasing id is a topological order of the
//! non-loopback arcs.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::VertexId;
use crate::instance::Instance;
use crate::plan::Plan;

pub type NodeId = usize;
pub type ArcId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Encoding {
    Full,
    Compact,
}

impl fmt::Display for Encoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Encoding::Full => "full",
            Encoding::Compact => "compact",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArcKind {
    /// Arc belonging to an edge gadget (all five arcs of a full gadget, or a
    /// directed move arc of the compact encoding).
    GadgetMove,
    Hold,
    /// `v(t) -> v(t)'`, full encoding only.
    BlueLink,
    Loopback,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub tail: NodeId,
    pub head: NodeId,
    pub kind: ArcKind,
    pub capacity: u32,
    pub cost: i64,
    /// Time step `t` of a transition between layers `t` and `t + 1`; blue
    /// links carry the layer of the vertex they belong to; loopbacks carry the
    /// horizon.
    pub step: usize,
    /// Graph edge of a gadget arc.
    pub edge: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    /// `v(t)`.
    Copy { vertex: VertexId, layer: usize },
    /// `v(t)'` (full encoding, `t >= 1`).
    Primed { vertex: VertexId, layer: usize },
    /// Merge node `a` of the gadget for `edge` between layers `step`, `step+1`.
    GadgetMerge { edge: usize, step: usize },
    /// Split node `b`.
    GadgetSplit { edge: usize, step: usize },
}

/// Which capacity a colliding plan overruns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CollisionClass {
    Meet,
    HeadOn,
}

impl fmt::Display for CollisionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CollisionClass::Meet => "meet",
            CollisionClass::HeadOn => "head-on",
        })
    }
}

#[derive(Debug, Clone)]
pub struct TimeExpandedNetwork {
    encoding: Encoding,
    horizon: usize,
    vertex_count: usize,
    edges: Vec<(VertexId, VertexId)>,
    nodes: Vec<NodeKind>,
    arcs: Vec<Arc>,
    out_arcs: Vec<Vec<ArcId>>,
    in_arcs: Vec<Vec<ArcId>>,
    sources: Vec<NodeId>,
    sinks: Vec<NodeId>,
    /// First non-loopback arc of each step.
    step_arc_base: Vec<ArcId>,
}

impl TimeExpandedNetwork {
    pub fn encoding(&self) -> Encoding {
        self.encoding
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn robot_count(&self) -> usize {
        self.sources.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn node(&self, id: NodeId) -> NodeKind {
        self.nodes[id]
    }

    pub fn arc(&self, id: ArcId) -> &Arc {
        &self.arcs[id]
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn out_arcs(&self, node: NodeId) -> &[ArcId] {
        &self.out_arcs[node]
    }

    pub fn in_arcs(&self, node: NodeId) -> &[ArcId] {
        &self.in_arcs[node]
    }

    pub fn loopback_arc(&self, robot: usize) -> ArcId {
        robot
    }

    /// Source `start_i` at layer 0.
    pub fn source(&self, robot: usize) -> NodeId {
        self.sources[robot]
    }

    /// Sink: `goal_i(T)'` in the full encoding, `goal_i(T)` in the compact one.
    pub fn sink(&self, robot: usize) -> NodeId {
        self.sinks[robot]
    }

    fn full_block(&self) -> usize {
        2 * self.edges.len() + 2 * self.vertex_count
    }

    /// Node of `v(t)`.
    pub fn copy_node(&self, v: VertexId, t: usize) -> NodeId {
        match self.encoding {
            Encoding::Compact => t * self.vertex_count + v,
            Encoding::Full if t == 0 => v,
            Encoding::Full => {
                self.vertex_count + (t - 1) * self.full_block() + 2 * self.edges.len() + v
            }
        }
    }

    /// Node a robot leaves `v` from during step `t`: `v(t)'`, or `v(t)` in the
    /// compact encoding and at layer 0.
    pub fn departure_node(&self, v: VertexId, t: usize) -> NodeId {
        match self.encoding {
            Encoding::Compact => self.copy_node(v, t),
            Encoding::Full if t == 0 => v,
            Encoding::Full => self.copy_node(v, t) + self.vertex_count,
        }
    }

    /// Graph vertex a node stands for, if it is a vertex copy.
    pub fn node_vertex(&self, node: NodeId) -> Option<(VertexId, usize)> {
        match self.nodes[node] {
            NodeKind::Copy { vertex, layer } | NodeKind::Primed { vertex, layer } => Some((vertex, layer)),
            _ => None,
        }
    }

    pub fn hold_arc(&self, v: VertexId, t: usize) -> ArcId {
        let per_step = match self.encoding {
            Encoding::Compact => 2 * self.edges.len(),
            Encoding::Full => 5 * self.edges.len(),
        };
        self.step_arc_base[t] + per_step + v
    }

    /// `v(t) -> v(t)'`, `t >= 1`, full encoding only.
    pub fn blue_arc(&self, v: VertexId, t: usize) -> Option<ArcId> {
        (self.encoding == Encoding::Full && t >= 1)
            .then(|| self.step_arc_base[t - 1] + 5 * self.edges.len() + self.vertex_count + v)
    }

    /// Arcs carrying a robot from `u` to `v` over step `t`, in order.
    pub fn move_arcs(&self, u: VertexId, v: VertexId, t: usize) -> Option<Vec<ArcId>> {
        let e = self.edges.binary_search(&(u.min(v), u.max(v))).ok()?;
        let base = self.step_arc_base[t];
        let forward = u < v;
        Some(match self.encoding {
            Encoding::Compact => vec![base + 2 * e + usize::from(!forward)],
            Encoding::Full => {
                let g = base + 5 * e;
                // entry from the lower endpoint, entry from the upper one,
                // middle, exit to the lower endpoint, exit to the upper one.
                let (entry, exit) = if forward { (g, g + 4) } else { (g + 1, g + 3) };
                vec![entry, g + 2, exit]
            }
        })
    }

    /// For a full-encoding entry arc, the exit arc leading back to the same
    /// endpoint. A robot using both turns around inside the gadget, which
    /// would duplicate the hold arc.
    pub fn u_turn_exit(&self, entry: ArcId) -> Option<ArcId> {
        let a = &self.arcs[entry];
        if self.encoding != Encoding::Full || a.kind != ArcKind::GadgetMove {
            return None;
        }
        let off = (entry - self.step_arc_base[a.step]) % 5;
        (off < 2).then_some(entry + 3)
    }

    /// The arc paired with a compact move arc over the same edge and step.
    pub fn opposite_move(&self, arc: ArcId) -> Option<ArcId> {
        let a = &self.arcs[arc];
        if self.encoding != Encoding::Compact || a.kind != ArcKind::GadgetMove {
            return None;
        }
        let off = arc - self.step_arc_base[a.step];
        Some(if off.is_multiple_of(2) { arc + 1 } else { arc - 1 })
    }
}

/// Builds the time-expanded network of `inst` over horizon `horizon`.
pub fn build_network(inst: &Instance, horizon: usize, encoding: Encoding) -> TimeExpandedNetwork {
    let g = inst.graph();
    let nv = g.vertex_count();
    let edges = g.edges().to_vec();
    let ne = edges.len();
    let n = inst.robot_count();
    let mut net = TimeExpandedNetwork {
        encoding,
        horizon,
        vertex_count: nv,
        edges,
        nodes: Vec::new(),
        arcs: Vec::new(),
        out_arcs: Vec::new(),
        in_arcs: Vec::new(),
        sources: Vec::new(),
        sinks: Vec::new(),
        step_arc_base: Vec::with_capacity(horizon),
    };

    // Nodes.
    for v in 0..nv {
        net.nodes.push(NodeKind::Copy { vertex: v, layer: 0 });
    }
    for t in 0..horizon {
        if encoding == Encoding::Full {
            for e in 0..ne {
                net.nodes.push(NodeKind::GadgetMerge { edge: e, step: t });
                net.nodes.push(NodeKind::GadgetSplit { edge: e, step: t });
            }
        }
        for v in 0..nv {
            net.nodes.push(NodeKind::Copy { vertex: v, layer: t + 1 });
        }
        if encoding == Encoding::Full {
            for v in 0..nv {
                net.nodes.push(NodeKind::Primed { vertex: v, layer: t + 1 });
            }
        }
    }
    net.out_arcs = vec![Vec::new(); net.nodes.len()];
    net.in_arcs = vec![Vec::new(); net.nodes.len()];
    net.sources = inst.starts().iter().map(|&s| net.copy_node(s, 0)).collect();
    net.sinks = inst.goals().iter().map(|&g| net.departure_node(g, horizon)).collect();

    let push = |net: &mut TimeExpandedNetwork, tail, head, kind, cost, step, edge| {
        let id = net.arcs.len();
        net.arcs.push(Arc { tail, head, kind, capacity: 1, cost, step, edge });
        net.out_arcs[tail].push(id);
        net.in_arcs[head].push(id);
    };

    for i in 0..n {
        let (tail, head) = (net.sinks[i], net.sources[i]);
        push(&mut net, tail, head, ArcKind::Loopback, 0, horizon, None);
    }
    for t in 0..horizon {
        net.step_arc_base.push(net.arcs.len());
        let edges = net.edges.clone();
        match encoding {
            Encoding::Compact => {
                for (e, &(u, v)) in edges.iter().enumerate() {
                    let (ut, vt) = (net.copy_node(u, t), net.copy_node(v, t));
                    let (u1, v1) = (net.copy_node(u, t + 1), net.copy_node(v, t + 1));
                    push(&mut net, ut, v1, ArcKind::GadgetMove, 1, t, Some(e));
                    push(&mut net, vt, u1, ArcKind::GadgetMove, 1, t, Some(e));
                }
                for v in 0..nv {
                    let (a, b) = (net.copy_node(v, t), net.copy_node(v, t + 1));
                    push(&mut net, a, b, ArcKind::Hold, 0, t, None);
                }
            }
            Encoding::Full => {
                let gadget_base = nv + t * net.full_block();
                for (e, &(u, v)) in edges.iter().enumerate() {
                    let merge = gadget_base + 2 * e;
                    let split = merge + 1;
                    let (ud, vd) = (net.departure_node(u, t), net.departure_node(v, t));
                    let (u1, v1) = (net.copy_node(u, t + 1), net.copy_node(v, t + 1));
                    push(&mut net, ud, merge, ArcKind::GadgetMove, 0, t, Some(e));
                    push(&mut net, vd, merge, ArcKind::GadgetMove, 0, t, Some(e));
                    push(&mut net, merge, split, ArcKind::GadgetMove, 1, t, Some(e));
                    push(&mut net, split, u1, ArcKind::GadgetMove, 0, t, Some(e));
                    push(&mut net, split, v1, ArcKind::GadgetMove, 0, t, Some(e));
                }
                for v in 0..nv {
                    let (a, b) = (net.departure_node(v, t), net.copy_node(v, t + 1));
                    push(&mut net, a, b, ArcKind::Hold, 0, t, None);
                }
                for v in 0..nv {
                    let (a, b) = (net.copy_node(v, t + 1), net.departure_node(v, t + 1));
                    push(&mut net, a, b, ArcKind::BlueLink, 0, t + 1, None);
                }
            }
        }
    }
    net
}

/// Per-robot arcs that lie on some layer-monotone walk from the robot's
/// source to its sink, loopback first. A robot whose sink is unreachable
/// within the horizon gets an empty set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsableArcs {
    pub per_robot: Vec<Vec<ArcId>>,
}

impl UsableArcs {
    /// Every arc usable by every robot (own loopback only).
    pub fn unpruned(net: &TimeExpandedNetwork) -> Self {
        let n = net.robot_count();
        let per_robot = (0..n)
            .map(|i| std::iter::once(i).chain(n..net.arc_count()).collect())
            .collect();
        UsableArcs { per_robot }
    }

    pub fn is_empty_for(&self, robot: usize) -> bool {
        self.per_robot[robot].is_empty()
    }

    pub fn total(&self) -> usize {
        self.per_robot.iter().map(Vec::len).sum()
    }
}

pub fn reachability_prune(net: &TimeExpandedNetwork, inst: &Instance) -> UsableArcs {
    let n = inst.robot_count();
    let nodes = net.node_count();
    let mut per_robot = Vec::with_capacity(n);
    let mut fwd = vec![false; nodes];
    let mut bwd = vec![false; nodes];
    for i in 0..n {
        fwd.iter_mut().for_each(|x| *x = false);
        bwd.iter_mut().for_each(|x| *x = false);
        fwd[net.source(i)] = true;
        for u in 0..nodes {
            if !fwd[u] {
                continue;
            }
            for &a in net.out_arcs(u) {
                if net.arcs[a].kind != ArcKind::Loopback {
                    fwd[net.arcs[a].head] = true;
                }
            }
        }
        if !fwd[net.sink(i)] {
            per_robot.push(Vec::new());
            continue;
        }
        bwd[net.sink(i)] = true;
        for u in (0..nodes).rev() {
            if bwd[u] {
                continue;
            }
            bwd[u] = net.out_arcs(u).iter().any(|&a| {
                let arc = &net.arcs[a];
                arc.kind != ArcKind::Loopback && bwd[arc.head]
            });
        }
        let mut keep = vec![i];
        keep.extend((n..net.arc_count()).filter(|&a| {
            let arc = &net.arcs[a];
            fwd[arc.tail] && bwd[arc.head]
        }));
        per_robot.push(keep);
    }
    UsableArcs { per_robot }
}

/// Arcs carrying one unit of robot `i`'s flow, per robot, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FlowAssignment {
    pub arcs: Vec<Vec<ArcId>>,
}

fn node_throughput_class(net: &TimeExpandedNetwork, node: NodeId) -> CollisionClass {
    match net.node(node) {
        NodeKind::GadgetMerge { .. } | NodeKind::GadgetSplit { .. } => CollisionClass::HeadOn,
        _ => CollisionClass::Meet,
    }
}

fn arc_class(net: &TimeExpandedNetwork, arc: ArcId) -> CollisionClass {
    let a = net.arc(arc);
    match (net.encoding(), a.kind) {
        (Encoding::Full, ArcKind::GadgetMove) if a.cost == 1 => CollisionClass::HeadOn,
        (Encoding::Compact, ArcKind::GadgetMove) => CollisionClass::HeadOn,
        _ => CollisionClass::Meet,
    }
}

/// Capacity audit shared by both conversions: per-arc load, per-node load,
/// and (compact encoding) the joint load of the two move arcs over one edge.
/// Returns the first overrun as `(class, description)`.
fn first_overrun(net: &TimeExpandedNetwork, flow: &FlowAssignment) -> Option<(CollisionClass, String)> {
    let mut arc_load = vec![0u32; net.arc_count()];
    let mut node_load = vec![0u32; net.node_count()];
    for (i, arcs) in flow.arcs.iter().enumerate() {
        for &a in arcs {
            arc_load[a] += 1;
            if arc_load[a] > net.arc(a).capacity {
                return Some((
                    arc_class(net, a),
                    format!("arc {a} ({:?}, step {}) over capacity with robot {i}", net.arc(a).kind, net.arc(a).step),
                ));
            }
            let head = net.arc(a).head;
            node_load[head] += 1;
            if node_load[head] > 1 {
                return Some((
                    node_throughput_class(net, head),
                    format!("node {head} ({:?}) entered by more than one robot", net.node(head)),
                ));
            }
        }
    }
    if net.encoding() == Encoding::Compact {
        for a in 0..net.arc_count() {
            if let Some(b) = net.opposite_move(a) {
                if a < b && arc_load[a] + arc_load[b] > 1 {
                    return Some((
                        CollisionClass::HeadOn,
                        format!("edge {:?} crossed both ways at step {}", net.arc(a).edge, net.arc(a).step),
                    ));
                }
            }
        }
    }
    None
}

/// Recovers the robot paths from a feasible unit multiflow.
pub fn flow_to_paths(net: &TimeExpandedNetwork, flow: &FlowAssignment, inst: &Instance) -> Result<Plan> {
    let n = inst.robot_count();
    if flow.arcs.len() != n || net.robot_count() != n {
        return Err(Error::FlowStructure(format!(
            "flow has {} commodities, network {} and instance {n}",
            flow.arcs.len(),
            net.robot_count()
        )));
    }
    for arcs in &flow.arcs {
        if let Some(&a) = arcs.iter().find(|&&a| a >= net.arc_count()) {
            return Err(Error::FlowStructure(format!("arc {a} does not exist")));
        }
    }
    if let Some((class, detail)) = first_overrun(net, flow) {
        return Err(Error::FlowStructure(format!("{class} capacity: {detail}")));
    }
    let horizon = net.horizon();
    let mut paths = Vec::with_capacity(n);
    let mut used = vec![false; net.arc_count()];
    let mut balance = vec![0i64; net.node_count()];
    for i in 0..n {
        let arcs = &flow.arcs[i];
        if !arcs.contains(&net.loopback_arc(i)) {
            return Err(Error::FlowStructure(format!("robot {i} does not use its loopback arc")));
        }
        if let Some(&j) = arcs.iter().find(|&&a| a < n && a != i) {
            return Err(Error::FlowStructure(format!("robot {i} uses loopback arc of robot {j}")));
        }
        for &a in arcs {
            used[a] = true;
            balance[net.arc(a).tail] -= 1;
            balance[net.arc(a).head] += 1;
        }
        let bad = arcs
            .iter()
            .flat_map(|&a| [net.arc(a).tail, net.arc(a).head])
            .find(|&v| balance[v] != 0);
        if let Some(v) = bad {
            return Err(Error::FlowStructure(format!(
                "robot {i} violates conservation at node {v} ({:?})",
                net.node(v)
            )));
        }
        if let Some(&a) = arcs.iter().find(|&&a| net.u_turn_exit(a).is_some_and(|x| used[x])) {
            return Err(Error::FlowStructure(format!("robot {i} turns back inside the gadget entered by arc {a}")));
        }
        let mut path = Vec::with_capacity(horizon + 1);
        let mut node = net.source(i);
        let mut walked = 1;
        path.push(inst.start(i));
        while node != net.sink(i) {
            let next = net
                .out_arcs(node)
                .iter()
                .copied()
                .find(|&a| used[a] && net.arc(a).kind != ArcKind::Loopback)
                .ok_or_else(|| Error::FlowStructure(format!("robot {i} flow stops at node {node}")))?;
            walked += 1;
            node = net.arc(next).head;
            if let NodeKind::Copy { vertex, .. } = net.node(node) {
                path.push(vertex);
            }
        }
        for &a in arcs {
            used[a] = false;
        }
        if walked != arcs.len() {
            return Err(Error::FlowStructure(format!(
                "robot {i} carries {} arcs but its source-sink walk has {walked}",
                arcs.len()
            )));
        }
        debug_assert_eq!(path.len(), horizon + 1);
        paths.push(path);
    }
    if n == 0 {
        return Plan::new(Vec::new());
    }
    Plan::new(paths)
}

/// Marks each robot's path on the network. Fails with the capacity class a
/// colliding plan overruns.
pub fn paths_to_flow(plan: &Plan, net: &TimeExpandedNetwork, inst: &Instance) -> Result<FlowAssignment> {
    let n = inst.robot_count();
    if plan.robot_count() != n {
        return Err(Error::InvalidPlan(format!("plan has {} robots, instance {n}", plan.robot_count())));
    }
    if n > 0 && plan.horizon() != net.horizon() {
        return Err(Error::InvalidPlan(format!(
            "plan horizon {} differs from network horizon {}",
            plan.horizon(),
            net.horizon()
        )));
    }
    let horizon = net.horizon();
    let mut flow = FlowAssignment { arcs: Vec::with_capacity(n) };
    for i in 0..n {
        let p = plan.path(i);
        if p[0] != inst.start(i) || p[horizon] != inst.goal(i) {
            return Err(Error::InvalidPlan(format!("robot {i} does not run from its start to its goal")));
        }
        let mut arcs = vec![net.loopback_arc(i)];
        for t in 0..horizon {
            let (u, v) = (p[t], p[t + 1]);
            if u == v {
                arcs.push(net.hold_arc(u, t));
            } else {
                let m = net.move_arcs(u, v, t).ok_or_else(|| {
                    Error::InvalidPlan(format!("robot {i} jumps {u} -> {v} at step {t}"))
                })?;
                arcs.extend(m);
            }
            if let Some(b) = net.blue_arc(v, t + 1) {
                arcs.push(b);
            }
        }
        arcs.sort_unstable();
        flow.arcs.push(arcs);
    }
    if let Some((class, detail)) = first_overrun(net, &flow) {
        return Err(Error::Collision { class, detail });
    }
    Ok(flow)
}
