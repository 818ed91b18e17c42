mod common;

use std::collections::HashSet;

use mpp_core::graph::{make_grid, remove_obstacles};
use mpp_core::instance::{generate_grid_instance, generate_instance, parse_instance, serialize_instance, Instance};
use mpp_core::Error;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn arbitrary_instance(seed: u64) -> Instance {
    let mut rng = common::rng(seed);
    let g = if rng.random_bool(0.5) {
        let (r, c) = (rng.random_range(1..=6), rng.random_range(2..=6));
        remove_obstacles(&make_grid(r, c), rng.random_range(0.0..0.3), seed).unwrap()
    } else {
        let nv = rng.random_range(2..=20);
        let extra = rng.random_range(0..=nv);
        common::random_graph(nv, extra, &mut rng)
    };
    let n = rng.random_range(1..=g.vertex_count());
    generate_instance(&g, n, seed).unwrap()
}

/// Same content as the canonical text, written with comments, blank lines,
/// odd spacing, reversed edge endpoints and shuffled edge order.
fn scrambled(inst: &Instance, seed: u64) -> String {
    let mut rng = common::rng(seed);
    let g = inst.graph();
    let mut edges: Vec<(usize, usize)> = g.edges().to_vec();
    edges.shuffle(&mut rng);
    let mut s = String::from("# scrambled\n\nmpp   1\n");
    s += &format!("vertices\t{}  # count\n", g.vertex_count());
    s += &format!("edges {}\n", edges.len());
    for (u, v) in edges {
        if rng.random_bool(0.5) {
            s += &format!("  {v} {u}\n");
        } else {
            s += &format!("{u}   {v}\n\n");
        }
    }
    s += &format!("robots {}\n", inst.robot_count());
    for i in 0..inst.robot_count() {
        s += &format!("{} {} # robot {i}\n", inst.start(i), inst.goal(i));
    }
    if let Some(l) = g.grid() {
        let mut cells = l.removed.clone();
        cells.shuffle(&mut rng);
        s += &format!("grid {} {}\nremoved {}\n", l.rows, l.cols, cells.len());
        for c in cells {
            s += &format!("{c}\n");
        }
    }
    s + "\n# end\n"
}

fn line_of(e: Error) -> usize {
    match e {
        Error::Parse { line, .. } => line,
        other => panic!("expected a parse error, got {other}"),
    }
}

#[test]
fn parse_errors_carry_line_numbers() {
    let bad = [
        ("mpp 2\n", 1),
        ("mpp 1\nvertices 2\nedges 1\n0 2\n", 4),
        ("mpp 1\nvertices 3\nedges 1\n0 1\nrobots 0\n", 5),
        ("mpp 1\nvertices 2\nedges 1\n0 1\nrobots 2\n0 1\n1 1\n", 7),
        ("mpp 1\nvertices 2\nedges 1\n0 1\nrobots 1\n0 x\n", 6),
        ("mpp 1\nvertices 2\nedges 1\n0 1\nrobots 1\n0 1\nextra\n", 7),
    ];
    for (text, line) in bad {
        assert_eq!(line_of(parse_instance(text).unwrap_err()), line, "{text:?}");
    }
}

#[test]
fn too_many_robots_is_a_generation_error() {
    assert!(matches!(generate_instance(&make_grid(2, 2), 5, 0), Err(Error::Generation(_))));
    assert!(matches!(generate_grid_instance(0, 3, 0.0, 1, 0), Err(Error::Generation(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn parse_inverts_serialize(seed in any::<u64>()) {
        let inst = arbitrary_instance(seed);
        let text = serialize_instance(&inst);
        prop_assert_eq!(parse_instance(&text).unwrap(), inst);
    }

    #[test]
    fn serialize_canonicalizes(seed in any::<u64>()) {
        let inst = arbitrary_instance(seed);
        let canonical = serialize_instance(&inst);
        let once = serialize_instance(&parse_instance(&scrambled(&inst, seed)).unwrap());
        prop_assert_eq!(&once, &canonical);
        let twice = serialize_instance(&parse_instance(&once).unwrap());
        prop_assert_eq!(twice, once);
    }

    #[test]
    fn generated_instances_are_injective(rows in 1usize..=8, cols in 2usize..=8, pct in 0u32..30, frac in 0.0f64..=1.0, seed in any::<u64>()) {
        let Ok(g) = remove_obstacles(&make_grid(rows, cols), pct as f64 / 100.0, seed) else { return Ok(()) };
        let n = ((g.vertex_count() as f64 * frac) as usize).max(1);
        let inst = generate_instance(&g, n, seed).unwrap();
        prop_assert_eq!(inst.robot_count(), n);
        prop_assert_eq!(inst.starts().iter().collect::<HashSet<_>>().len(), n);
        prop_assert_eq!(inst.goals().iter().collect::<HashSet<_>>().len(), n);
        prop_assert!(inst.starts().iter().chain(inst.goals()).all(|&v| v < g.vertex_count()));
        prop_assert_eq!(generate_instance(&g, n, seed).unwrap(), inst);
    }
}
