use mpp_core::graph::{make_grid, Graph, VertexId};
use mpp_core::ilp::ObjectiveKind;
use mpp_core::instance::{generate_instance, Instance};
use mpp_core::oracle::*;
use mpp_core::plan::Plan;
use mpp_core::planner::{makespan_lower_bound, objective_value};
use mpp_core::rng::Prng;
use mpp_core::validate::{metrics, validate};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;

const FULL_4X4_MOVES: usize = 950;

fn full(g: &Graph) -> Vec<VertexId> {
    (0..g.vertex_count()).collect()
}

fn puzzle(n: usize, seed: u64) -> Instance {
    let mut goals: Vec<usize> = (0..n * n).collect();
    goals.shuffle(&mut Prng::seed_from_u64(seed));
    Instance::new(make_grid(n, n), (0..n * n).collect(), goals).unwrap()
}

/// Every stay/adjacent tuple, filtered for distinct targets and no swaps.
fn naive_moves(g: &Graph, config: &[VertexId]) -> Vec<Vec<VertexId>> {
    let options: Vec<Vec<VertexId>> = config
        .iter()
        .map(|&v| std::iter::once(v).chain(g.neighbors(v).iter().copied()).collect())
        .collect();
    let mut out = Vec::new();
    let mut idx = vec![0; config.len()];
    loop {
        let next: Vec<VertexId> = idx.iter().enumerate().map(|(i, &k)| options[i][k]).collect();
        let mut sorted = next.clone();
        sorted.sort_unstable();
        sorted.dedup();
        let swap = (0..config.len()).any(|i| {
            (0..config.len()).any(|j| i != j && next[i] == config[j] && next[j] == config[i] && next[i] != config[i])
        });
        if sorted.len() == next.len() && !swap {
            out.push(next);
        }
        let mut i = 0;
        loop {
            if i == idx.len() {
                return out;
            }
            idx[i] += 1;
            if idx[i] < options[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

#[test]
fn grid_cycle_counts() {
    assert_eq!(enumerate_cycles(&make_grid(3, 3)).len(), 13);
    assert_eq!(enumerate_cycles(&make_grid(2, 2)).len(), 1);
    assert_eq!(enumerate_cycles(&make_grid(1, 6)).len(), 0);
}

#[test]
fn full_grid_branching() {
    let count = |r, c| {
        let g = make_grid(r, c);
        enumerate_joint_moves(&g, &full(&g)).len() - 1
    };
    assert_eq!(count(2, 2), 2);
    assert_eq!(count(3, 3), 26);
    assert_eq!(count(4, 4), FULL_4X4_MOVES);
}

#[test]
fn cycles_are_simple_and_closed() {
    let g = make_grid(3, 4);
    let cycles = enumerate_cycles(&g);
    let mut seen = std::collections::HashSet::new();
    for c in &cycles {
        assert!(c.len() >= 4 && c.len() % 2 == 0);
        let mut s = c.clone();
        s.sort_unstable();
        s.dedup();
        assert_eq!(s.len(), c.len());
        for k in 0..c.len() {
            assert!(g.has_edge(c[k], c[(k + 1) % c.len()]));
        }
        assert_eq!(c[0], *c.iter().min().unwrap());
        assert!(c[1] < c[c.len() - 1]);
        assert!(seen.insert(c.clone()), "duplicate cycle {c:?}");
    }
}

#[test]
fn bfs_triangle_rotation() {
    let g = Graph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
    let inst = Instance::new(g, vec![0, 1, 2], vec![1, 2, 0]).unwrap();
    let out = bfs_min_makespan(&inst, DEFAULT_NODE_CAP).unwrap();
    let OracleOutcome::Solved { value, plan } = out else { panic!("{out:?}") };
    assert_eq!(value, 1);
    assert!(validate(&plan, &inst).is_empty());
}

#[test]
fn bfs_swap_on_edge_is_unsolvable() {
    let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
    let inst = Instance::new(g, vec![0, 1], vec![1, 0]).unwrap();
    assert_eq!(bfs_min_makespan(&inst, DEFAULT_NODE_CAP).unwrap(), OracleOutcome::Unsolvable);
}

#[test]
fn bfs_cap_gives_unknown() {
    let inst = puzzle(3, 2);
    assert_eq!(bfs_min_makespan(&inst, 50).unwrap(), OracleOutcome::Unknown);
}

#[test]
fn exhaustive_trivial_values() {
    let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
    let inst = Instance::new(g, vec![0], vec![1]).unwrap();
    for obj in ObjectiveKind::ALL {
        assert_eq!(exhaustive_optimal(&inst, obj, 4).unwrap().value(), Some(1), "{obj}");
    }
    let inst = generate_instance(&make_grid(2, 3), 3, 1).unwrap();
    let home = inst.with_endpoints(inst.starts().to_vec(), inst.starts().to_vec()).unwrap();
    for obj in ObjectiveKind::ALL {
        assert_eq!(exhaustive_optimal(&home, obj, 4).unwrap().value(), Some(0), "{obj}");
    }
}

#[test]
fn exhaustive_horizon_too_short() {
    let g = make_grid(1, 4);
    let inst = Instance::new(g, vec![0], vec![3]).unwrap();
    assert_eq!(exhaustive_optimal(&inst, ObjectiveKind::TotalTime, 2).unwrap(), OracleOutcome::Unknown);
}

#[test]
fn exhaustive_witnesses_match_their_values() {
    for seed in 0..6 {
        let inst = generate_instance(&make_grid(1, 4), 3, seed).unwrap();
        for obj in ObjectiveKind::ALL {
            if let OracleOutcome::Solved { value, plan } = exhaustive_optimal(&inst, obj, 10).unwrap() {
                assert!(validate(&plan, &inst).is_empty());
                assert_eq!(objective_value(&metrics(&plan, &inst).unwrap(), obj), value);
            }
        }
    }
}

#[test]
fn constructive_identity_is_empty() {
    let g = make_grid(4, 4);
    let inst = Instance::new(g.clone(), full(&g), full(&g)).unwrap();
    assert_eq!(solve_puzzle_constructive(&inst).unwrap().horizon(), 0);
}

#[test]
fn constructive_adjacent_border_exchange() {
    let mut goals: Vec<usize> = (0..9).collect();
    goals.swap(0, 1);
    let inst = Instance::new(make_grid(3, 3), (0..9).collect(), goals).unwrap();
    let plan = solve_puzzle_constructive(&inst).unwrap();
    assert!(validate(&plan, &inst).is_empty());
    assert_eq!(plan.horizon(), 3);
}

#[test]
fn constructive_rejects_other_instances() {
    let inst = generate_instance(&make_grid(3, 3), 5, 0).unwrap();
    assert!(solve_puzzle_constructive(&inst).is_err());
    let g = make_grid(2, 2);
    let inst = Instance::new(g.clone(), full(&g), vec![1, 3, 0, 2]).unwrap();
    assert!(solve_puzzle_constructive(&inst).is_err());
}

#[test]
fn constructive_random_puzzles() {
    for n in 3..=5 {
        for seed in 0..100 {
            let inst = puzzle(n, seed);
            let plan = solve_puzzle_constructive(&inst).unwrap();
            assert!(validate(&plan, &inst).is_empty(), "N={n} seed={seed}");
        }
    }
}

fn single_step(config: &[VertexId], next: &[VertexId], g: &Graph) -> bool {
    let inst = Instance::new(g.clone(), config.to_vec(), next.to_vec()).unwrap();
    let plan = Plan::from_configurations(&[config.to_vec(), next.to_vec()]).unwrap();
    validate(&plan, &inst).is_empty()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn successors_sound_and_complete(rows in 1usize..=2, cols in 2usize..=3, n in 1usize..=6, seed in 0u64..1000) {
        let g = make_grid(rows, cols);
        let n = n.min(g.vertex_count());
        let inst = generate_instance(&g, n, seed).unwrap();
        let mut got = enumerate_joint_moves(&g, inst.starts());
        for s in &got {
            prop_assert!(single_step(inst.starts(), s, &g));
        }
        got.sort();
        let mut want = naive_moves(&g, inst.starts());
        want.sort();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn bfs_between_bounds(seed in 0u64..1000, n in 1usize..=5) {
        let inst = generate_instance(&make_grid(3, 3), n, seed).unwrap();
        let out = bfs_min_makespan(&inst, DEFAULT_NODE_CAP).unwrap();
        let OracleOutcome::Solved { value, plan } = out else { panic!("grid instances are solvable") };
        prop_assert!(value >= makespan_lower_bound(&inst));
        prop_assert_eq!(plan.horizon(), value);
        prop_assert!(validate(&plan, &inst).is_empty());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn bfs_not_worse_than_constructive(seed in 0u64..1000) {
        let inst = puzzle(3, seed);
        let built = solve_puzzle_constructive(&inst).unwrap();
        let best = bfs_min_makespan(&inst, DEFAULT_NODE_CAP).unwrap().value().unwrap();
        prop_assert!(best <= built.horizon());
    }
}
