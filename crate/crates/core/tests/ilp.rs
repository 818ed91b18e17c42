mod common;

use mpp_core::graph::make_grid;
use mpp_core::ilp::{build_model, export_lp, extract_flow, flow_assignment, parse_lp, IlpModel, ObjectiveKind};
use mpp_core::instance::{generate_instance, Instance};
use mpp_core::planner::{distance_lower_bound, makespan_lower_bound};
use mpp_core::solver::{solve, Backend, SolveOptions, SolveOutcome, SolveStatus};
use mpp_core::timex::{build_network, flow_to_paths, paths_to_flow, reachability_prune, Encoding};
use mpp_core::validate::validate;
use proptest::prelude::*;
use rand::Rng;

const ENCODINGS: [Encoding; 2] = [Encoding::Full, Encoding::Compact];

fn model_at(inst: &Instance, obj: ObjectiveKind, t: usize, enc: Encoding) -> (mpp_core::timex::TimeExpandedNetwork, IlpModel) {
    let net = build_network(inst, t, enc);
    let usable = reachability_prune(&net, inst);
    let model = build_model(obj, &net, &usable, inst).unwrap();
    (net, model)
}

fn optimum(model: &IlpModel) -> SolveOutcome {
    let out = solve(model, &Backend::Embedded, &SolveOptions::default()).unwrap();
    assert!(matches!(out.status, SolveStatus::Optimal | SolveStatus::Infeasible), "{}", out.status);
    out
}

/// Small instances every objective model solves quickly.
fn regression_instances() -> Vec<Instance> {
    let mut out = Vec::new();
    for seed in 0..6 {
        out.push(generate_instance(&make_grid(2, 3), 3, seed).unwrap());
        out.push(generate_instance(&make_grid(3, 3), 3, 100 + seed).unwrap());
    }
    out
}

#[test]
fn solved_makespan_models_decode_to_valid_plans() {
    for inst in regression_instances() {
        let lb = makespan_lower_bound(&inst);
        for t in lb..=lb + 2 {
            for enc in ENCODINGS {
                let (net, model) = model_at(&inst, ObjectiveKind::Makespan, t, enc);
                let out = optimum(&model);
                if out.objective != Some(inst.robot_count() as i64) {
                    continue;
                }
                let plan = flow_to_paths(&net, &extract_flow(&model, &out.assignment, inst.robot_count()), &inst).unwrap();
                assert!(validate(&plan, &inst).is_empty());
                assert_eq!(plan.horizon(), t);
            }
        }
    }
}

#[test]
fn objectives_respect_shortest_path_bounds() {
    for inst in regression_instances() {
        let t = makespan_lower_bound(&inst) + 2;
        let bounds = distance_lower_bound(&inst);
        let value = |obj| optimum(&model_at(&inst, obj, t, Encoding::Compact).1).objective;
        let Some(maxdist) = value(ObjectiveKind::MaxDistance) else { continue };
        assert!(maxdist >= bounds.max as i64);
        assert!(value(ObjectiveKind::TotalDistance).unwrap() >= bounds.sum as i64);
        assert!(value(ObjectiveKind::TotalTime).unwrap() >= bounds.sum as i64);
    }
}

#[test]
fn encodings_share_optima() {
    for (k, inst) in regression_instances().into_iter().enumerate() {
        let lb = makespan_lower_bound(&inst);
        for obj in ObjectiveKind::ALL {
            let t = if obj == ObjectiveKind::Makespan { lb } else { lb + 2 };
            let [full, compact] = ENCODINGS.map(|e| optimum(&model_at(&inst, obj, t, e).1));
            assert_eq!(full.status, compact.status, "instance {k} {obj}");
            assert_eq!(full.objective, compact.objective, "instance {k} {obj}");
        }
    }
}

#[test]
fn lp_text_round_trips() {
    for inst in regression_instances().into_iter().take(4) {
        for obj in ObjectiveKind::ALL {
            for enc in ENCODINGS {
                let (_, model) = model_at(&inst, obj, makespan_lower_bound(&inst) + 1, enc);
                let text = export_lp(&model);
                let parsed = parse_lp(&text).unwrap();
                assert_eq!(export_lp(&parsed), text);
                assert_eq!(parsed.var_count(), model.var_count());
                assert_eq!(optimum(&parsed).objective, optimum(&model).objective);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn valid_plans_satisfy_makespan_models(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let g = common::small_graph(&mut rng);
        let n = rng.random_range(1..=g.vertex_count().min(5));
        let t = rng.random_range(0..=5);
        let (inst, plan) = common::random_valid_plan(&g, n, t, &mut rng);
        for enc in ENCODINGS {
            let (net, model) = model_at(&inst, ObjectiveKind::Makespan, t, enc);
            let flow = paths_to_flow(&plan, &net, &inst).unwrap();
            let values = flow_assignment(&model, &flow).expect("pruning keeps every arc of a valid plan");
            prop_assert_eq!(model.check_assignment(&values).unwrap(), n as i64);
        }
    }

    #[test]
    fn compact_models_are_smaller(seed in any::<u64>(), obj in 0usize..4) {
        let mut rng = common::rng(seed);
        let g = common::small_graph(&mut rng);
        prop_assume!(g.edge_count() > 0);
        let n = rng.random_range(1..=g.vertex_count());
        let inst = generate_instance(&g, n, seed).unwrap();
        let t = makespan_lower_bound(&inst) + rng.random_range(1..=3);
        let obj = ObjectiveKind::ALL[obj];
        let [full, compact] = ENCODINGS.map(|e| {
            let net = build_network(&inst, t, e);
            build_model(obj, &net, &mpp_core::timex::UsableArcs::unpruned(&net), &inst).unwrap().var_count()
        });
        prop_assert!(compact < full, "compact {} vs full {}", compact, full);
    }
}
