use std::collections::BTreeMap;
use std::fmt;

use super::{IlpModel, ObjSense, Sense, VarId, VarKind};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::timex::{
    ArcKind, Encoding, FlowAssignment, NodeId, NodeKind, TimeExpandedNetwork, UsableArcs,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ObjectiveKind {
    Makespan,
    MaxDistance,
    TotalTime,
    TotalDistance,
}

impl ObjectiveKind {
    pub const ALL: [ObjectiveKind; 4] = [
        ObjectiveKind::Makespan,
        ObjectiveKind::MaxDistance,
        ObjectiveKind::TotalTime,
        ObjectiveKind::TotalDistance,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ObjectiveKind::Makespan => "makespan",
            ObjectiveKind::MaxDistance => "maxdist",
            ObjectiveKind::TotalTime => "totaltime",
            ObjectiveKind::TotalDistance => "totaldist",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }
}

impl fmt::Display for ObjectiveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn node_label(net: &TimeExpandedNetwork, node: NodeId) -> String {
    match net.node(node) {
        NodeKind::Copy { vertex, layer } => format!("{vertex}_{layer}"),
        NodeKind::Primed { vertex, layer } => format!("{vertex}_{layer}p"),
        NodeKind::GadgetMerge { edge, step } => format!("e{edge}_{step}a"),
        NodeKind::GadgetSplit { edge, step } => format!("e{edge}_{step}b"),
    }
}

fn node_layer(net: &TimeExpandedNetwork, node: NodeId) -> u32 {
    match net.node(node) {
        NodeKind::Copy { layer, .. } | NodeKind::Primed { layer, .. } => layer as u32,
        NodeKind::GadgetMerge { step, .. } | NodeKind::GadgetSplit { step, .. } => step as u32,
    }
}

/// Preference for routing robot `i` over `arc`: twice the remaining distance
/// to the goal after the arc, plus one for arcs that cost a move.
fn arc_hint(net: &TimeExpandedNetwork, arc: usize, dist_to_goal: &[usize]) -> i64 {
    let a = net.arc(arc);
    let d = |node: NodeId| -> i64 {
        match net.node_vertex(node) {
            Some((v, _)) => dist_to_goal[v].min(1 << 20) as i64,
            None => 0,
        }
    };
    match a.kind {
        ArcKind::Loopback => 0,
        ArcKind::Hold | ArcKind::BlueLink => 2 * d(a.head),
        ArcKind::GadgetMove => match (net.node(a.tail), net.node(a.head)) {
            (_, NodeKind::GadgetMerge { .. }) => {
                // Entry arc: the robot leaves towards the other endpoint.
                let (tail_v, _) = net.node_vertex(a.tail).expect("entry arc starts at a vertex copy");
                let exits = net.out_arcs(a.head + 1);
                let other = exits
                    .iter()
                    .filter_map(|&x| net.node_vertex(net.arc(x).head))
                    .map(|(v, _)| v)
                    .find(|&v| v != tail_v)
                    .unwrap_or(tail_v);
                2 * dist_to_goal[other].min(1 << 20) as i64 + 1
            }
            (NodeKind::GadgetMerge { .. }, _) => 0,
            _ => 2 * d(a.head) + 1,
        },
    }
}

/// Variables, capacity rows and conservation rows shared by every objective.
fn base_model(
    net: &TimeExpandedNetwork,
    pruned: &UsableArcs,
    inst: &Instance,
    sense: ObjSense,
) -> Result<IlpModel> {
    let n = inst.robot_count();
    if net.robot_count() != n || pruned.per_robot.len() != n {
        return Err(Error::Model("network, usable arcs and instance disagree on the robot count".into()));
    }
    let mut m = IlpModel::new(sense);
    for i in 0..n {
        if pruned.is_empty_for(i) {
            m.trivially_infeasible.get_or_insert_with(|| {
                format!("robot {i} cannot reach its goal within horizon {}", net.horizon())
            });
        }
        let dist = inst.graph().distances_from(inst.goal(i));
        for &a in &pruned.per_robot[i] {
            if net.arc(a).kind == ArcKind::Loopback && a != i {
                return Err(Error::Model(format!("robot {i} offered loopback arc {a}")));
            }
            let x = m.add_binary(format!("x_{i}_{a}"));
            m.var_hint[x] = arc_hint(net, a, &dist);
            m.var_of_arc.insert((i, a), x);
        }
    }

    if net.encoding() == Encoding::Full {
        let mut users: Vec<Vec<VarId>> = vec![Vec::new(); net.arc_count()];
        for (&(_, a), &x) in &m.var_of_arc {
            users[a].push(x);
        }
        for (a, xs) in users.iter().enumerate() {
            if xs.len() >= 2 {
                let terms = xs.iter().map(|&x| (x, 1)).collect();
                m.add_constraint_at(format!("cap_{a}"), terms, Sense::Le, 1, net.arc(a).step as u32);
            }
        }
        // At most one robot passes a gadget, so one row per endpoint rules
        // out turning back inside it.
        for a in 0..net.arc_count() {
            if let Some(x) = net.u_turn_exit(a) {
                let terms: Vec<(VarId, i64)> = users[a].iter().chain(&users[x]).map(|&v| (v, 1)).collect();
                if !users[a].is_empty() && !users[x].is_empty() {
                    m.add_constraint_at(format!("turn_{a}"), terms, Sense::Le, 1, net.arc(a).step as u32);
                }
            }
        }
    }

    for i in 0..n {
        // node -> var -> net inflow coefficient
        let mut rows: BTreeMap<NodeId, BTreeMap<VarId, i64>> = BTreeMap::new();
        for &a in &pruned.per_robot[i] {
            let x = m.var_of_arc[&(i, a)];
            let arc = net.arc(a);
            *rows.entry(arc.head).or_default().entry(x).or_default() += 1;
            *rows.entry(arc.tail).or_default().entry(x).or_default() -= 1;
        }
        for (node, terms) in rows {
            let name = format!("cons_{i}_{}", node_label(net, node));
            m.add_constraint_at(name, terms.into_iter().collect(), Sense::Eq, 0, node_layer(net, node));
        }
    }

    if net.encoding() == Encoding::Compact {
        add_compact_collision_constraints(&mut m, net, inst)?;
    }
    Ok(m)
}

/// Head-on rows (one per edge and step) and meet rows (one per vertex copy
/// below the horizon) that stand in for the gadget structure of the full
/// encoding.
pub fn add_compact_collision_constraints(
    model: &mut IlpModel,
    net: &TimeExpandedNetwork,
    inst: &Instance,
) -> Result<()> {
    if net.encoding() != Encoding::Compact {
        return Err(Error::Model("compact collision rows require the compact encoding".into()));
    }
    let n = inst.robot_count();
    let horizon = net.horizon();
    let mut by_arc: Vec<Vec<VarId>> = vec![Vec::new(); net.arc_count()];
    for (&(_, a), &x) in &model.var_of_arc {
        by_arc[a].push(x);
    }
    let edge_count = inst.graph().edge_count();
    for t in 0..horizon {
        for e in 0..edge_count {
            let (u, v) = inst.graph().edges()[e];
            let forward = net.move_arcs(u, v, t).expect("edge exists")[0];
            let backward = net.move_arcs(v, u, t).expect("edge exists")[0];
            let terms: Vec<(VarId, i64)> =
                by_arc[forward].iter().chain(&by_arc[backward]).map(|&x| (x, 1)).collect();
            if !terms.is_empty() {
                model.add_constraint_at(format!("ho_{e}_{t}"), terms, Sense::Le, 1, t as u32);
            }
        }
        for v in 0..net.vertex_count() {
            let node = net.copy_node(v, t);
            let terms: Vec<(VarId, i64)> = net
                .out_arcs(node)
                .iter()
                .filter(|&&a| a >= n)
                .flat_map(|&a| by_arc[a].iter().map(|&x| (x, 1)))
                .collect();
            if !terms.is_empty() {
                model.add_constraint_at(format!("meet_{v}_{t}"), terms, Sense::Le, 1, t as u32);
            }
        }
    }
    Ok(())
}

fn loopback_vars(model: &IlpModel, n: usize) -> Vec<Option<VarId>> {
    (0..n).map(|i| model.var_of_arc.get(&(i, i)).copied()).collect()
}

fn force_flow(model: &mut IlpModel, n: usize) {
    for (i, x) in loopback_vars(model, n).into_iter().enumerate() {
        let terms = x.map(|x| vec![(x, 1)]).unwrap_or_default();
        model.add_constraint(format!("flow_{i}"), terms, Sense::Eq, 1);
    }
}

fn cost_terms(model: &IlpModel, net: &TimeExpandedNetwork, robot: usize) -> Vec<(VarId, i64)> {
    model
        .var_of_arc
        .range((robot, 0)..(robot + 1, 0))
        .filter(|(&(_, a), _)| net.arc(a).kind != ArcKind::Loopback && net.arc(a).cost != 0)
        .map(|(&(_, a), &x)| (x, net.arc(a).cost))
        .collect()
}

/// Maximizes the number of routed robots; objective `n` iff the instance is
/// solvable within the horizon.
pub fn build_makespan_model(net: &TimeExpandedNetwork, pruned: &UsableArcs, inst: &Instance) -> Result<IlpModel> {
    let mut m = base_model(net, pruned, inst, ObjSense::Maximize)?;
    m.objective.terms = loopback_vars(&m, inst.robot_count()).into_iter().flatten().map(|x| (x, 1)).collect();
    Ok(m)
}

/// Minimizes the largest per-robot number of edge traversals.
pub fn build_maxdist_model(net: &TimeExpandedNetwork, pruned: &UsableArcs, inst: &Instance) -> Result<IlpModel> {
    let n = inst.robot_count();
    let mut m = base_model(net, pruned, inst, ObjSense::Minimize)?;
    force_flow(&mut m, n);
    let xmax = m.add_var("xmax", VarKind::Integer, 0, net.horizon() as i64);
    m.max_var = Some(xmax);
    for i in 0..n {
        let mut terms = cost_terms(&m, net, i);
        terms.push((xmax, -1));
        m.add_constraint(format!("dist_{i}"), terms, Sense::Le, 0);
    }
    m.objective.terms = vec![(xmax, 1)];
    Ok(m)
}

/// Minimizes the sum of arrival times, `nT - sum y_i^t`.
pub fn build_totaltime_model(net: &TimeExpandedNetwork, pruned: &UsableArcs, inst: &Instance) -> Result<IlpModel> {
    let n = inst.robot_count();
    let horizon = net.horizon();
    let mut m = base_model(net, pruned, inst, ObjSense::Minimize)?;
    force_flow(&mut m, n);
    let layer = horizon as u32 + 1;
    for i in 0..n {
        let g = inst.goal(i);
        let mut x = vec![None; horizon + 1];
        let mut y = vec![0; horizon + 1];
        for t in 1..=horizon {
            x[t] = m.var_of_arc.get(&(i, net.hold_arc(g, t - 1))).copied();
            if let Some(xv) = x[t] {
                m.goal_hold_var.insert((i, t), xv);
            }
            y[t] = m.add_binary(format!("y_{i}_{t}"));
            m.stay_var.insert((i, t), y[t]);
        }
        if horizon == 0 {
            continue;
        }
        let with_x = |mut terms: Vec<(VarId, i64)>, xv: Option<VarId>, c: i64| {
            if let Some(xv) = xv {
                terms.push((xv, c));
            }
            terms
        };
        m.add_constraint_at(format!("yT_{i}"), with_x(vec![(y[horizon], 1)], x[horizon], -1), Sense::Eq, 0, layer);
        for t in 1..horizon {
            let and1 = with_x(vec![(y[t], 1), (y[t + 1], -1)], x[t], -1);
            m.add_constraint_at(format!("and1_{i}_{t}"), and1, Sense::Ge, -1, layer);
            m.add_constraint_at(format!("and2_{i}_{t}"), vec![(y[t], 1), (y[t + 1], -1)], Sense::Le, 0, layer);
            m.add_constraint_at(format!("and3_{i}_{t}"), with_x(vec![(y[t], 1)], x[t], -1), Sense::Le, 0, layer);
        }
    }
    m.objective.terms = m.stay_var.values().map(|&y| (y, -1)).collect();
    m.objective.constant = (n * horizon) as i64;
    Ok(m)
}

/// Minimizes the total number of edge traversals.
pub fn build_totaldist_model(net: &TimeExpandedNetwork, pruned: &UsableArcs, inst: &Instance) -> Result<IlpModel> {
    let n = inst.robot_count();
    let mut m = base_model(net, pruned, inst, ObjSense::Minimize)?;
    force_flow(&mut m, n);
    m.objective.terms = (0..n).flat_map(|i| cost_terms(&m, net, i)).collect();
    Ok(m)
}

pub fn build_model(
    kind: ObjectiveKind,
    net: &TimeExpandedNetwork,
    pruned: &UsableArcs,
    inst: &Instance,
) -> Result<IlpModel> {
    match kind {
        ObjectiveKind::Makespan => build_makespan_model(net, pruned, inst),
        ObjectiveKind::MaxDistance => build_maxdist_model(net, pruned, inst),
        ObjectiveKind::TotalTime => build_totaltime_model(net, pruned, inst),
        ObjectiveKind::TotalDistance => build_totaldist_model(net, pruned, inst),
    }
}

/// Reads the arc variables set to one back into per-robot arc sets.
pub fn extract_flow(model: &IlpModel, values: &[i64], robots: usize) -> FlowAssignment {
    let mut arcs = vec![Vec::new(); robots];
    for (&(i, a), &x) in &model.var_of_arc {
        if values[x] != 0 {
            arcs[i].push(a);
        }
    }
    FlowAssignment { arcs }
}

/// Inverse of [`extract_flow`] on the arc variables; `None` when the flow uses
/// an arc the model has no variable for. Other variables are zero.
pub fn flow_assignment(model: &IlpModel, flow: &FlowAssignment) -> Option<Vec<i64>> {
    let mut values = vec![0; model.var_count()];
    for (i, arcs) in flow.arcs.iter().enumerate() {
        for &a in arcs {
            values[*model.var_of_arc.get(&(i, a))?] = 1;
        }
    }
    Some(values)
}
