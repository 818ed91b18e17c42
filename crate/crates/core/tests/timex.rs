mod common;

use mpp_core::graph::{Graph, VertexId};
use mpp_core::ilp::{build_model, extract_flow, flow_assignment, ObjectiveKind, Sense, VarKind};
use mpp_core::instance::Instance;
use mpp_core::plan::Plan;
use mpp_core::solver::{solve, Backend, SolveOptions, SolveStatus};
use mpp_core::timex::{
    build_network, flow_to_paths, paths_to_flow, reachability_prune, Encoding, TimeExpandedNetwork, UsableArcs,
};
use mpp_core::validate::validate;
use proptest::prelude::*;
use rand::Rng;

const ENCODINGS: [Encoding; 2] = [Encoding::Full, Encoding::Compact];

/// Every connected graph on `nv` vertices, by edge subset.
fn connected_graphs(nv: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..nv).flat_map(|u| (u + 1..nv).map(move |v| (u, v))).collect();
    (0u32..1 << pairs.len())
        .map(|mask| {
            let edges: Vec<_> = pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &e)| e).collect();
            Graph::from_edges(nv, &edges).unwrap()
        })
        .filter(|g| g.is_connected())
        .collect()
}

/// Walks of `t` steps (stay or move) from `s` to `g`.
fn walks(graph: &Graph, s: VertexId, g: VertexId, t: usize) -> Vec<Vec<VertexId>> {
    let mut out = vec![vec![s]];
    for _ in 0..t {
        out = out
            .into_iter()
            .flat_map(|w| {
                let last = *w.last().unwrap();
                std::iter::once(last).chain(graph.neighbors(last).iter().copied()).map(move |v| {
                    let mut w = w.clone();
                    w.push(v);
                    w
                })
            })
            .collect();
    }
    out.retain(|w| *w.last().unwrap() == g);
    out
}

/// Whether the plan's flow exists on `net` and satisfies the makespan model
/// with every robot routed.
fn representable(plan: &Plan, net: &TimeExpandedNetwork, inst: &Instance) -> bool {
    let Ok(flow) = paths_to_flow(plan, net, inst) else { return false };
    let usable = reachability_prune(net, inst);
    let model = build_model(ObjectiveKind::Makespan, net, &usable, inst).unwrap();
    if model.trivially_infeasible.is_some() {
        return false;
    }
    match flow_assignment(&model, &flow) {
        Some(values) => model.check_assignment(&values).ok() == Some(inst.robot_count() as i64),
        None => false,
    }
}

#[test]
fn encodings_represent_the_same_plans() {
    let mut rng = common::rng(11);
    let mut checked = 0;
    for nv in 2..=4 {
        for g in connected_graphs(nv) {
            for t in 0..=3 {
                let n = rng.random_range(1..=nv.min(3));
                let inst = mpp_core::instance::generate_instance(&g, n, rng.random()).unwrap();
                let per_robot: Vec<Vec<Vec<VertexId>>> =
                    (0..n).map(|i| walks(&g, inst.start(i), inst.goal(i), t)).collect();
                let nets = ENCODINGS.map(|e| build_network(&inst, t, e));
                let mut idx = vec![0; n];
                if per_robot.iter().any(|w| w.is_empty()) {
                    continue;
                }
                loop {
                    let paths: Vec<Vec<VertexId>> = (0..n).map(|i| per_robot[i][idx[i]].clone()).collect();
                    let plan = Plan::new(paths).unwrap();
                    let valid = validate(&plan, &inst).is_empty();
                    for net in &nets {
                        assert_eq!(representable(&plan, net, &inst), valid, "{:?} {plan:?}", net.encoding());
                    }
                    checked += 1;
                    let mut i = 0;
                    while i < n {
                        idx[i] += 1;
                        if idx[i] < per_robot[i].len() {
                            break;
                        }
                        idx[i] = 0;
                        i += 1;
                    }
                    if i == n {
                        break;
                    }
                }
            }
        }
    }
    assert!(checked > 1000, "only {checked} plans enumerated");
}

#[test]
fn turning_back_inside_a_gadget_is_rejected() {
    let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
    let inst = Instance::new(g, vec![0], vec![0]).unwrap();
    let net = build_network(&inst, 1, Encoding::Full);
    let there = net.move_arcs(0, 1, 0).unwrap();
    let back = net.move_arcs(1, 0, 0).unwrap();
    let mut arcs = vec![net.loopback_arc(0), there[0], there[1], back[2], net.blue_arc(0, 1).unwrap()];
    arcs.sort_unstable();
    let flow = mpp_core::timex::FlowAssignment { arcs: vec![arcs] };
    assert!(matches!(flow_to_paths(&net, &flow, &inst), Err(mpp_core::Error::FlowStructure(_))));
    let usable = UsableArcs::unpruned(&net);
    let model = build_model(ObjectiveKind::Makespan, &net, &usable, &inst).unwrap();
    let values = flow_assignment(&model, &flow).unwrap();
    assert!(model.check_assignment(&values).is_err());
}

/// Solves the makespan model at `t`; true when every robot is routed.
fn routes_all(inst: &Instance, t: usize, enc: Encoding, prune: bool) -> bool {
    let net = build_network(inst, t, enc);
    let usable = if prune { reachability_prune(&net, inst) } else { UsableArcs::unpruned(&net) };
    let model = build_model(ObjectiveKind::Makespan, &net, &usable, inst).unwrap();
    let out = solve(&model, &Backend::Embedded, &SolveOptions::default()).unwrap();
    assert!(matches!(out.status, SolveStatus::Optimal | SolveStatus::Infeasible));
    out.objective == Some(inst.robot_count() as i64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn plans_round_trip_through_flows(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let g = common::small_graph(&mut rng);
        let n = rng.random_range(1..=g.vertex_count());
        let t = rng.random_range(0..=6);
        let (inst, plan) = common::random_valid_plan(&g, n, t, &mut rng);
        for enc in ENCODINGS {
            let net = build_network(&inst, t, enc);
            let flow = paths_to_flow(&plan, &net, &inst).unwrap();
            prop_assert_eq!(flow.arcs.len(), n);
            for (i, arcs) in flow.arcs.iter().enumerate() {
                prop_assert!(arcs.contains(&net.loopback_arc(i)));
            }
            prop_assert_eq!(&flow_to_paths(&net, &flow, &inst).unwrap(), &plan);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    /// Random-cost flows of value n from the solver decode to collision-free
    /// plans whose flows are the flows we started from.
    #[test]
    fn flows_round_trip_through_plans(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let g = common::random_graph(rng.random_range(3..=7), 3, &mut rng);
        let n = rng.random_range(1..=g.vertex_count().min(3));
        let inst = mpp_core::instance::generate_instance(&g, n, seed).unwrap();
        let t = mpp_core::planner::makespan_lower_bound(&inst) + rng.random_range(0..=3);
        for enc in ENCODINGS {
            let net = build_network(&inst, t, enc);
            let usable = reachability_prune(&net, &inst);
            let mut model = build_model(ObjectiveKind::Makespan, &net, &usable, &inst).unwrap();
            let loops: Vec<(usize, i64)> = model.objective.terms.clone();
            model.add_constraint("all_routed", loops, Sense::Eq, n as i64);
            model.objective.sense = mpp_core::ilp::ObjSense::Minimize;
            model.objective.terms = model
                .var_of_arc
                .values()
                .filter(|&&x| model.variables[x].kind == VarKind::Binary)
                .map(|&x| (x, rng.random_range(1..=9)))
                .collect();
            let out = solve(&model, &Backend::Embedded, &SolveOptions::default()).unwrap();
            if out.status == SolveStatus::Infeasible {
                prop_assert!(!routes_all(&inst, t, enc, false));
                continue;
            }
            let flow = extract_flow(&model, &out.assignment, n);
            let plan = flow_to_paths(&net, &flow, &inst).unwrap();
            prop_assert!(validate(&plan, &inst).is_empty());
            prop_assert_eq!(plan.horizon(), t);
            prop_assert_eq!(paths_to_flow(&plan, &net, &inst).unwrap(), flow);
        }
    }

    #[test]
    fn pruning_keeps_feasibility(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let g = common::small_graph(&mut rng);
        let n = rng.random_range(1..=g.vertex_count().min(4));
        let inst = mpp_core::instance::generate_instance(&g, n, seed).unwrap();
        let lb = mpp_core::planner::makespan_lower_bound(&inst);
        for t in lb.saturating_sub(1)..=lb + 2 {
            let enc = ENCODINGS[t % 2];
            prop_assert_eq!(routes_all(&inst, t, enc, true), routes_all(&inst, t, enc, false), "T={}", t);
        }
    }
}
