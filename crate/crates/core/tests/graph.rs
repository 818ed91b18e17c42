mod common;

use mpp_core::graph::{make_grid, remove_obstacles, Graph};
use proptest::prelude::*;

/// All-pairs hop distances by Floyd-Warshall.
fn all_pairs(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let inf = usize::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = 0;
    }
    for &(u, v) in g.edges() {
        d[u][v] = 1;
        d[v][u] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

#[test]
fn grid_shapes() {
    for (r, c) in [(1, 1), (1, 7), (3, 3), (5, 2), (8, 8)] {
        let g = make_grid(r, c);
        assert_eq!(g.vertex_count(), r * c);
        assert_eq!(g.edge_count(), r * (c - 1) + c * (r - 1));
        assert!(g.is_connected());
    }
}

#[test]
fn obstacle_quota_is_floored() {
    let g = remove_obstacles(&make_grid(10, 10), 0.159, 3).unwrap();
    assert_eq!(g.vertex_count(), 85);
    assert_eq!(g.grid().unwrap().removed.len(), 15);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn obstacle_grids_are_connected(rows in 1usize..=10, cols in 1usize..=10, pct in 0u32..40, seed in any::<u64>()) {
        let grid = make_grid(rows, cols);
        prop_assert!(grid.is_connected());
        if let Ok(g) = remove_obstacles(&grid, pct as f64 / 100.0, seed) {
            prop_assert!(g.is_connected());
            let layout = g.grid().unwrap();
            prop_assert_eq!(layout.vertex_count(), g.vertex_count());
            for &(u, v) in g.edges() {
                let ((ru, cu), (rv, cv)) = (layout.row_col(u), layout.row_col(v));
                prop_assert_eq!(ru.abs_diff(rv) + cu.abs_diff(cv), 1);
            }
        }
    }

    #[test]
    fn obstacle_removal_is_deterministic(rows in 2usize..=12, cols in 2usize..=12, pct in 0u32..35, seed in any::<u64>()) {
        let grid = make_grid(rows, cols);
        let a = remove_obstacles(&grid, pct as f64 / 100.0, seed);
        let b = remove_obstacles(&grid, pct as f64 / 100.0, seed);
        match (a, b) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a, b),
            (Err(a), Err(b)) => prop_assert_eq!(a.to_string(), b.to_string()),
            _ => prop_assert!(false, "runs disagree"),
        }
    }

    #[test]
    fn shortest_paths_match_all_pairs(seed in any::<u64>(), nv in 1usize..=100, extra in 0usize..=60) {
        let mut rng = common::rng(seed);
        let g = if nv % 3 == 0 {
            remove_obstacles(&make_grid(nv / 10 + 1, 10), 0.2, seed).unwrap()
        } else {
            common::random_graph(nv, extra, &mut rng)
        };
        prop_assert!(g.is_connected());
        let d = all_pairs(&g);
        let n = g.vertex_count();
        for src in (0..n).step_by(n / 8 + 1) {
            for dst in 0..n {
                let path = g.shortest_path(src, dst).unwrap();
                prop_assert_eq!(path.len() - 1, d[src][dst]);
                prop_assert_eq!(path[0], src);
                prop_assert_eq!(*path.last().unwrap(), dst);
                for w in path.windows(2) {
                    prop_assert!(g.has_edge(w[0], w[1]));
                }
            }
            let from = g.distances_from(src);
            prop_assert_eq!(&from[..], &d[src][..]);
        }
    }
}
